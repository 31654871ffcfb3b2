use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use cdss::flowgraph::build_gstar;
use cdss::lrc::{alpha_msr_zero, irc_lrc_params, lrc_bound_check};
use cdss::sweep::{sweep_clusters, sweep_epsilon, CrossShare};
use cdss::tradeoff::{beta_c_curve, beta_c_star, mbr_point, msr_point, tradeoff_curve, Threshold, TradeoffCurve};
use cdss::verify::{
    grid_points, rlnc_points, system_grid, verify_flowgraph, verify_helper_counts, verify_oracle,
    verify_orderings, verify_rlnc, verify_universal_bound, GridPoint, SuiteReport, GRID_NODE_COUNTS,
};
use cdss::{capacity, Rational, ResourcePoint, SystemParams};
use serde_json::json;

use crate::cli::{
    BetacArgs, CapacityArgs, Format, LrcArgs, MsrMbrArgs, Suite, SweepEpsArgs, SweepLArgs, System,
    TradeoffArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::table::{Cell, Kind, Table};

/// Collector subsets per history are enumerated up to this many.
const SUBSET_LIMIT: u64 = 500;

pub enum Output {
    Table(Table),
    Reports(Vec<SuiteReport>),
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Table(_) => true,
            Output::Reports(r) => r.iter().all(SuiteReport::passed),
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match self {
            Output::Table(t) => t.write(out, format),
            Output::Reports(reports) => match format {
                Format::Csv => write_reports(out, reports),
                Format::Json => {
                    let value: Vec<_> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "suite": r.name,
                                "passed": r.passed(),
                                "checked": r.checked(),
                                "lines": r.lines,
                                "failures": r.failures,
                            })
                        })
                        .collect();
                    let text = serde_json::to_string_pretty(&value).map_err(io::Error::other)?;
                    writeln!(out, "{text}")
                }
            },
        }
    }
}

fn write_reports(out: &mut dyn Write, reports: &[SuiteReport]) -> io::Result<()> {
    for r in reports {
        for line in &r.lines {
            writeln!(out, "[{}] {line}", r.name)?;
        }
    }
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{verdict} {}: {} checked, {} failed",
            r.name,
            r.checked(),
            r.failures.len()
        )?;
        if let Some(first) = r.failures.first() {
            writeln!(out, "  first failure: {first}")?;
        }
    }
    Ok(())
}

fn system(s: &System) -> Result<SystemParams, CliError> {
    Ok(SystemParams::new(s.n, s.k, s.clusters)?)
}

/// `count` evenly spaced values from `lo` to `hi`.
fn spaced(lo: Rational, hi: Rational, count: u32) -> Vec<Rational> {
    if count < 2 {
        return vec![lo];
    }
    let last = i128::from(count - 1);
    (0..=last)
        .map(|i| lo + (hi - lo) * Rational::new(i, last))
        .collect()
}

/// Breakpoints merged with `samples` evenly spaced storage values running
/// from the curve's floor to a quarter past its last breakpoint.
fn curve_alphas(curve: &TradeoffCurve, samples: u32) -> BTreeMap<Rational, bool> {
    let lo = curve.infeasible_below;
    let last = curve.segments.last().map_or(lo, |s| s.alpha_lo).max(lo);
    let mut alphas: BTreeMap<Rational, bool> = spaced(lo, last * Rational::new(5, 4), samples)
        .into_iter()
        .map(|a| (a, false))
        .collect();
    for (a, _) in curve.breakpoints() {
        alphas.insert(a, true);
    }
    alphas
}

fn threshold_cell(t: Threshold) -> Cell {
    match t {
        Threshold::Feasible(v) => Cell::Exact(v),
        Threshold::Infeasible => Cell::Infinite,
    }
}

pub fn capacity_cmd(a: &CapacityArgs) -> Result<Output, CliError> {
    let p = system(&a.system)?;
    let r = match (a.beta_i, a.beta_c, a.gamma, a.epsilon) {
        (Some(bi), Some(bc), None, None) => ResourcePoint::new(&p, a.alpha, bi, bc)?,
        (None, None, Some(g), Some(e)) => ResourcePoint::from_gamma_epsilon(&p, a.alpha, g, e)?,
        _ => {
            return Err(CliError::Argument(
                "give either --beta-i and --beta-c, or --gamma and --epsilon".into(),
            ))
        }
    };
    let b = capacity(&p, &r);
    if b.beta_i_exceeds_alpha {
        eprintln!("note: beta_I exceeds alpha, so intra-cluster helpers cannot use all of their bandwidth");
    }
    let mut t = Table::new(&[
        ("t", Kind::Integer),
        ("omega", Kind::Exact),
        ("term", Kind::Exact),
        ("cumulative", Kind::Exact),
    ]);
    let mut sum = Rational::zero();
    for (i, (w, term)) in b.omegas.iter().zip(&b.terms).enumerate() {
        sum += *term;
        t.push(vec![(i as u32 + 1).into(), (*w).into(), (*term).into(), sum.into()]);
    }
    t.push(vec![Cell::Label("total".into()), Cell::Missing, Cell::Missing, b.total.into()]);
    Ok(Output::Table(t))
}

pub fn sweep_eps_cmd(a: &SweepEpsArgs) -> Result<Output, CliError> {
    let p = SystemParams::new(a.n, a.k, a.clusters)?;
    let mut t = Table::new(&[("epsilon", Kind::Exact), ("capacity", Kind::Exact)]);
    for (e, c) in sweep_epsilon(&p, a.alpha, a.gamma, a.steps)? {
        t.push(vec![e.into(), c.into()]);
    }
    Ok(Output::Table(t))
}

pub fn sweep_l_cmd(a: &SweepLArgs) -> Result<Output, CliError> {
    let share = if a.uniform {
        CrossShare::Uniform
    } else {
        CrossShare::Fixed(a.xi)
    };
    let mut t = Table::new(&[("L", Kind::Integer), ("capacity", Kind::Exact), ("c_bar", Kind::Exact)]);
    for row in sweep_clusters(a.n, a.k, a.alpha, a.gamma, share)? {
        t.push(vec![row.clusters.into(), row.capacity.into(), row.lower_estimate.into()]);
    }
    Ok(Output::Table(t))
}

pub fn tradeoff_cmd(a: &TradeoffArgs) -> Result<Output, CliError> {
    let p = system(&a.system)?;
    let curve = tradeoff_curve(&p, a.epsilon, a.file_size)?;
    let mut t = Table::new(&[
        ("alpha", Kind::Exact),
        ("gamma_star", Kind::Exact),
        ("breakpoint", Kind::Flag),
    ]);
    for (alpha, bp) in curve_alphas(&curve, a.samples) {
        t.push(vec![alpha.into(), threshold_cell(curve.eval(alpha)), bp.into()]);
    }
    Ok(Output::Table(t))
}

pub fn betac_cmd(a: &BetacArgs) -> Result<Output, CliError> {
    let p = system(&a.system)?;
    let mut t = Table::new(&[
        ("alpha", Kind::Exact),
        ("beta_c_star", Kind::Exact),
        ("breakpoint", Kind::Flag),
    ]);
    if a.alpha.is_empty() {
        let curve = beta_c_curve(&p, a.file_size)?;
        for (alpha, bp) in curve_alphas(&curve, a.samples) {
            t.push(vec![alpha.into(), threshold_cell(curve.eval(alpha)), bp.into()]);
        }
    } else {
        for &alpha in &a.alpha {
            let v = beta_c_star(&p, a.file_size, alpha)?;
            t.push(vec![alpha.into(), threshold_cell(v), false.into()]);
        }
    }
    Ok(Output::Table(t))
}

pub fn msr_mbr_cmd(a: &MsrMbrArgs) -> Result<Output, CliError> {
    let p = system(&a.system)?;
    let epsilons = if a.epsilon.is_empty() {
        vec![Rational::zero(), Rational::one()]
    } else {
        a.epsilon.clone()
    };
    let mut t = Table::new(&[
        ("epsilon", Kind::Exact),
        ("point", Kind::Label),
        ("alpha", Kind::Exact),
        ("gamma", Kind::Exact),
    ]);
    for e in epsilons {
        for pt in [msr_point(&p, e, a.file_size)?, mbr_point(&p, e, a.file_size)?] {
            t.push(vec![e.into(), Cell::Label(pt.kind.to_string()), pt.alpha.into(), pt.gamma.into()]);
        }
    }
    Ok(Output::Table(t))
}

pub fn lrc_cmd(a: &LrcArgs) -> Result<Output, CliError> {
    let p = system(&a.system)?;
    let alpha = a.alpha.unwrap_or_else(|| alpha_msr_zero(&p, a.file_size));
    let params = irc_lrc_params(&p, a.file_size, alpha)?;
    let rep = lrc_bound_check(&params);
    let mut t = Table::new(&[
        ("n", Kind::Integer),
        ("l0", Kind::Integer),
        ("m0", Kind::Integer),
        ("file_size", Kind::Exact),
        ("alpha", Kind::Exact),
        ("lhs", Kind::Integer),
        ("rhs", Kind::Integer),
        ("slack", Kind::Integer),
        ("equality", Kind::Flag),
    ]);
    t.push(vec![
        params.n.into(),
        params.l0.into(),
        params.m0.into(),
        params.file_size.into(),
        params.alpha.into(),
        rep.lhs.into(),
        rep.rhs.into(),
        rep.slack.into(),
        rep.equality.into(),
    ]);
    Ok(Output::Table(t))
}

fn dump_graphs(dir: &Path, points: &[GridPoint]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: Some(dir.to_path_buf()),
        source,
    };
    fs::create_dir_all(dir).map_err(io_err)?;
    for (i, pt) in points.iter().enumerate() {
        let p = &pt.params;
        let name = format!("gstar_{i:04}_n{}_k{}_L{}.txt", p.n, p.k, p.clusters);
        let text = format!("# {pt}\n{}", build_gstar(p, &pt.resources).dump());
        fs::write(dir.join(name), text).map_err(io_err)?;
    }
    Ok(())
}

pub fn verify_cmd(a: &VerifyArgs, seed: u64) -> Result<Output, CliError> {
    if a.required > a.trials {
        return Err(CliError::Argument(format!(
            "--required {} exceeds --trials {}",
            a.required, a.trials
        )));
    }
    let nodes: Vec<u32> = GRID_NODE_COUNTS.into_iter().filter(|&n| n <= a.max_n).collect();
    let points = grid_points(&system_grid(&nodes, a.max_k));
    let mut reports = Vec::new();
    if matches!(a.suite, Suite::Oracle | Suite::All) {
        reports.push(verify_oracle(&points)?);
        reports.push(verify_orderings(&points)?);
        reports.push(verify_helper_counts(&points)?);
    }
    if matches!(a.suite, Suite::Flowgraph | Suite::All) {
        if let Some(dir) = &a.dump {
            dump_graphs(dir, &points)?;
        }
        reports.push(verify_flowgraph(&points));
        let small: Vec<GridPoint> = points
            .iter()
            .copied()
            .filter(|pt| pt.params.n <= a.history_max_n)
            .collect();
        reports.push(verify_universal_bound(&small, a.histories, seed, SUBSET_LIMIT));
    }
    if matches!(a.suite, Suite::Rlnc | Suite::All) {
        reports.push(verify_rlnc(&rlnc_points(), a.trials, a.required, a.field_bits, seed)?);
    }
    Ok(Output::Reports(reports))
}
