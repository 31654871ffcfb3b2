use std::fs;
use std::process::{Command, Output};

fn cdss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdss"))
        .args(args)
        .output()
        .expect("run cdss")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// CSV rows as vectors of fields, header first.
fn rows(out: &Output) -> Vec<Vec<String>> {
    stdout(out)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> usize {
    rows[0].iter().position(|h| h == name).unwrap()
}

#[test]
fn capacity_with_bandwidths() {
    let out = cdss(&["capacity", "-n", "6", "-k", "5", "-L", "2", "--alpha", "10", "--beta-i", "5", "--beta-c", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    let last = r.last().unwrap();
    assert_eq!(last[0], "total");
    assert_eq!(last[column(&r, "cumulative")], "30");
    assert_eq!(last[column(&r, "cumulative_decimal")], "30.000000000000");
}

#[test]
fn capacity_with_gamma_and_epsilon() {
    let out = cdss(&["capacity", "-n", "100", "-k", "85", "-L", "10", "--alpha", "1", "--gamma", "1", "--epsilon", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r.last().unwrap()[column(&r, "cumulative")], "1615/33");
}

#[test]
fn invalid_system_exits_two() {
    let out = cdss(&["capacity", "-n", "15", "-k", "4", "-L", "3", "--alpha", "1", "--gamma", "1", "--epsilon", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k must exceed n_I"));
}

#[test]
fn mixed_resource_styles_rejected() {
    let out = cdss(&["capacity", "-n", "6", "-k", "5", "-L", "2", "--alpha", "1", "--beta-i", "1", "--gamma", "1", "--epsilon", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cdss(&["capacity", "-n", "6", "-k", "5", "-L", "2", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_number_exits_two() {
    let out = cdss(&["capacity", "-n", "6", "-k", "5", "-L", "2", "--alpha", "x", "--beta-i", "1", "--beta-c", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_eps_endpoints_and_monotone() {
    let out = cdss(&["sweep-eps", "--steps", "2"]);
    let r = rows(&out);
    assert!(r[0].starts_with(&["epsilon".to_string(), "capacity".to_string()]));
    assert_eq!(r.len(), 3);
    assert_eq!(r[1][0], "0");
    assert_eq!(r[2][0], "1");

    let out = cdss(&["sweep-eps"]);
    let r = rows(&out);
    assert_eq!(r.len(), 102);
    let caps: Vec<f64> = r[1..].iter().map(|x| x[3].parse().unwrap()).collect();
    assert!(caps.windows(2).all(|w| w[0] <= w[1]));
    assert!(caps[0] < caps[100]);
    assert!((caps[100] - 48.94).abs() < 0.01);

    let out = cdss(&["sweep-eps", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_l_rows() {
    let r = rows(&cdss(&["sweep-l", "--uniform"]));
    assert!(r[1..].iter().all(|x| x[1] == "80"));
    let r = rows(&cdss(&["sweep-l"]));
    let caps: Vec<f64> = r[1..].iter().map(|x| x[3].parse().unwrap()).collect();
    assert!(caps.windows(2).all(|w| w[0] > w[1]));
    let r = rows(&cdss(&["sweep-l", "--gamma", "1", "--xi", "1/2"]));
    assert!(r[1..].iter().all(|x| !x[2].is_empty()));
}

#[test]
fn tradeoff_leftmost_points() {
    let base = ["tradeoff", "-n", "15", "-k", "8", "-L", "3", "-M", "8", "--epsilon"];
    let first = |eps: &str| {
        let mut args = base.to_vec();
        args.push(eps);
        rows(&cdss(&args))[1].clone()
    };
    let r = first("1");
    assert_eq!((r[0].as_str(), r[1].as_str()), ("1", "2"));
    assert_eq!(first("0")[0], "8/7");
    assert_eq!(first("1/7")[0], "1");
}

#[test]
fn tradeoff_includes_samples_and_breakpoints() {
    let out = cdss(&["tradeoff", "-n", "15", "-k", "8", "-L", "3", "-M", "8", "--epsilon", "1/2", "--samples", "50"]);
    let r = rows(&out);
    let bp = column(&r, "breakpoint");
    let breakpoints = r[1..].iter().filter(|x| x[bp] == "1").count();
    assert!(breakpoints >= 2);
    assert!(r.len() > 50);
    let alphas: Vec<f64> = r[1..].iter().map(|x| x[column(&r, "alpha_decimal")].parse().unwrap()).collect();
    assert!(alphas.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn betac_curve_values() {
    let out = cdss(&[
        "betac-curve", "-n", "100", "-k", "85", "-L", "10", "-M", "85",
        "--alpha", "1.05", "--alpha", "0.999", "--alpha", "85/77", "--alpha", "2",
    ]);
    let r = rows(&out);
    assert_eq!(r[1][1], "83/2960");
    assert_eq!(r[2][1], "inf");
    assert_eq!(r[3][1], "0");
    assert_eq!(r[4][1], "0");
}

#[test]
fn msr_mbr_default_epsilons() {
    let r = rows(&cdss(&["msr-mbr", "-n", "15", "-k", "8", "-L", "3", "-M", "8"]));
    assert_eq!(r.len(), 5);
    assert_eq!(r[3][..4], ["1", "MSR", "1", "2"]);
}

#[test]
fn lrc_check_default_alpha() {
    let r = rows(&cdss(&["lrc-check", "-n", "15", "-k", "8", "-L", "3", "-M", "8"]));
    assert_eq!(r[1][column(&r, "slack")], "0");
    assert_eq!(r[1][column(&r, "equality")], "1");
    let out = cdss(&["lrc-check", "-n", "15", "-k", "8", "-L", "3", "-M", "8", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format() {
    let out = cdss(&["--format", "json", "sweep-eps", "--steps", "3"]);
    let text = stdout(&out);
    assert!(text.trim_start().starts_with('['));
    assert!(text.contains("\"epsilon\": \"1/2\""));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps.csv");
    let out = cdss(&["sweep-eps", "--steps", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(path).unwrap().starts_with("epsilon,capacity"));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# capacity example\nn = 6\nk = 5\nL = 2\nalpha = 10\nbeta_i = 5\nbeta_c = 0\n").unwrap();
    let c = cfg.to_str().unwrap();
    let r = rows(&cdss(&["capacity", "--config", c]));
    assert_eq!(r.last().unwrap()[3], "30");
    let r = rows(&cdss(&["capacity", "--config", c, "--alpha", "5"]));
    assert_eq!(r.last().unwrap()[3], "20");
}

#[test]
fn verify_suites_pass() {
    let out = cdss(&["verify", "oracle", "--max-n", "6", "--max-k", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS oracle"));

    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("graphs");
    let out = cdss(&[
        "verify", "flowgraph", "--max-n", "6", "--max-k", "5", "--histories", "3",
        "--dump", dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let files: Vec<_> = fs::read_dir(&dump).unwrap().collect();
    assert!(!files.is_empty());
    let text = fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert!(text.contains("source S") && text.contains(" -> "));

    let out = cdss(&["--seed", "1", "verify", "rlnc", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn required_above_trials_rejected() {
    let out = cdss(&["verify", "rlnc", "--trials", "2", "--required", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
