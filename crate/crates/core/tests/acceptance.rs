//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::process::ExitCode;
use std::time::Instant;

use cdss::capacity::{aux_sequences, capacity, capacity_gamma_form, h_vector};
use cdss::lrc::{alpha_msr_zero, irc_lrc_params, lrc_bound_check};
use cdss::sweep::{sweep_clusters, sweep_epsilon, CrossShare};
use cdss::tradeoff::{
    asymptotic_bounds, beta_c_curve, beta_c_star, gamma_star, mbr_point, mbr_ratio,
    mbr_ratio_bound, tradeoff_curve, Threshold,
};
use cdss::verify::{
    acceptance_grid, grid_points, rlnc_points, system_grid, verify_flowgraph,
    verify_helper_counts, verify_oracle, verify_orderings, verify_rlnc, verify_universal_bound,
    SuiteReport, GRID_MAX_K, GRID_NODE_COUNTS,
};
use cdss::{Rational, ResourcePoint, SystemParams};

type Outcome = Result<String, String>;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn suite(report: SuiteReport) -> Outcome {
    if report.passed() {
        Ok(format!("{} configurations", report.checked()))
    } else {
        Err(format!(
            "{}/{} failed; first: {}",
            report.failures.len(),
            report.checked(),
            report.failures[0]
        ))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    suite(verify_oracle(&acceptance_grid()).map_err(|e| e.to_string())?)
}

fn flowgraph_achievement() -> Outcome {
    suite(verify_flowgraph(&acceptance_grid()))
}

fn universal_cut_bound() -> Outcome {
    let systems: Vec<_> = system_grid(&GRID_NODE_COUNTS, GRID_MAX_K)
        .into_iter()
        .filter(|p| p.n <= 9)
        .collect();
    suite(verify_universal_bound(&grid_points(&systems), 50, 2024, 500))
}

fn mbr_example() -> Outcome {
    let p = SystemParams::new(6, 5, 2).unwrap();
    for (bi, bc, eps) in [(r(5, 1), r(0, 1), r(0, 1)), (r(2, 1), r(2, 1), r(1, 1))] {
        let rp = ResourcePoint::new(&p, r(10, 1), bi, bc).unwrap();
        let c = capacity(&p, &rp).total;
        check(c == r(30, 1), || format!("eps={eps}: capacity {c}"))?;
        let pt = mbr_point(&p, eps, r(30, 1)).unwrap();
        check((pt.alpha, pt.gamma) == (r(10, 1), r(10, 1)), || {
            format!("eps={eps}: MBR ({}, {})", pt.alpha, pt.gamma)
        })?;
    }
    Ok("capacity 30 and MBR (10, 10) at eps 0 and 1".into())
}

fn epsilon_sweep_shape() -> Outcome {
    let p = SystemParams::new(100, 85, 10).unwrap();
    let rows = sweep_epsilon(&p, r(1, 1), r(1, 1), 101).map_err(|e| e.to_string())?;
    check(rows.windows(2).all(|w| w[0].1 <= w[1].1), || "not monotone".into())?;
    let (first, last) = (rows[0].1, rows[rows.len() - 1].1);
    check(last == r(4845, 99), || format!("C(1) = {last}"))?;
    check(last >= r(48, 1), || format!("C(1) = {last} < 48"))?;
    check(first < last, || format!("C(0) = {first} not below C(1)"))?;
    Ok(format!("C(0) = {first}, C(1) = {last}"))
}

fn cluster_sweep_shape() -> Outcome {
    let flat = sweep_clusters(100, 80, r(1, 1), r(10, 1), CrossShare::Uniform)
        .map_err(|e| e.to_string())?;
    check(flat.iter().all(|row| row.capacity == r(80, 1)), || {
        format!("uniform bandwidth rows: {flat:?}")
    })?;
    let rows = sweep_clusters(100, 80, r(1, 1), r(10, 1), CrossShare::Fixed(r(1, 5)))
        .map_err(|e| e.to_string())?;
    check(rows.windows(2).all(|w| w[0].capacity > w[1].capacity), || {
        format!("xi=1/5 rows not strictly decreasing: {rows:?}")
    })?;
    Ok(format!("{} values of L", rows.len()))
}

fn sandwich() -> Outcome {
    let mut count = 0;
    for pt in acceptance_grid() {
        let (p, rp) = (&pt.params, &pt.resources);
        if rp.gamma() != rp.alpha {
            continue;
        }
        let (lower, delta) = asymptotic_bounds(p, rp).map_err(|e| e.to_string())?;
        let c = capacity(p, rp).total;
        check(lower <= c && c <= lower + delta, || {
            format!("{pt}: C={c}, lower={lower}, delta={delta}")
        })?;
        if delta.is_zero() {
            check(c == lower, || format!("{pt}: delta 0 but C={c} != {lower}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} configurations with gamma = alpha"))
}

/// `k = R n` rounded to the nearest integer where `R n` is fractional.
fn trend_ratios() -> Vec<(u32, u32, f64)> {
    [16u32, 36, 64, 100]
        .into_iter()
        .map(|n| {
            let l = (n as f64).sqrt() as u32;
            let k = (r(4 * n as i128, 5) + r(1, 2)).floor() as u32;
            let p = SystemParams::new(n, k, l).unwrap();
            let rp = ResourcePoint::from_gamma_xi(&p, r(1, 1), r(1, 1), r(1, 5)).unwrap();
            let (lower, _) = asymptotic_bounds(&p, &rp).unwrap();
            let ratio = capacity(&p, &rp).total / lower;
            (n, k, ratio.to_f64())
        })
        .collect()
}

fn ratio_trend() -> Outcome {
    let rows = trend_ratios();
    let text = rows
        .iter()
        .map(|(n, k, q)| format!("n={n},k={k}: {q:.5}"))
        .collect::<Vec<_>>()
        .join("; ");
    check(rows.iter().all(|x| x.2 >= 1.0), || format!("ratio below 1: {text}"))?;
    check(rows.windows(2).all(|w| w[1].2 <= w[0].2), || {
        format!("not nonincreasing: {text}")
    })?;
    Ok(text)
}

/// `Σ min{α, γ z_t / D}` in floating point, for bisection.
fn capacity_f64(z: &[f64], d: f64, alpha: f64, gamma: f64) -> f64 {
    z.iter().map(|zt| alpha.min(gamma * zt / d)).sum()
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn gamma_inversion() -> Outcome {
    let p = SystemParams::new(15, 8, 3).unwrap();
    let m = r(8, 1);
    let mut checked = 0;
    for eps in [r(0, 1), r(1, 7), r(1, 2), r(1, 1)] {
        let aux = aux_sequences(&p, eps).unwrap();
        let z: Vec<f64> = (1..=8).map(|t| aux.z_finite(t).to_f64()).collect();
        let d = p.bandwidth_factor(eps).to_f64();
        let curve = tradeoff_curve(&p, eps, m).unwrap();
        for (a, g) in curve.breakpoints() {
            let c = capacity_gamma_form(&p, a, g, eps).unwrap().total;
            check(c == m, || format!("eps={eps} breakpoint ({a}, {g}) gives {c}"))?;
        }
        let lo = curve.infeasible_below.to_f64() * 0.8;
        let hi = curve.segments.last().unwrap().alpha_lo.to_f64() * 1.3;
        for i in 0..20 {
            let a = lo + (hi - lo) * i as f64 / 19.0;
            let alpha = r((a * 1e9).round() as i128, 1_000_000_000);
            let af = alpha.to_f64();
            let gmax = d * af;
            let numeric = if capacity_f64(&z, d, af, gmax) < 8.0 * (1.0 - 1e-15) {
                None
            } else {
                Some(bisect(0.0, gmax, |g| capacity_f64(&z, d, af, g) >= 8.0))
            };
            let exact = gamma_star(&p, eps, alpha, m).unwrap().value();
            match (exact, numeric) {
                (Some(e), Some(nv)) => check((e.to_f64() - nv).abs() <= 1e-12, || {
                    format!("eps={eps} alpha={alpha}: exact {e} vs bisection {nv}")
                })?,
                (None, None) => {}
                _ => {
                    return Err(format!(
                        "eps={eps} alpha={alpha}: feasibility differs ({exact:?} vs {numeric:?})"
                    ))
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sampled alphas plus all breakpoints"))
}

fn min_storage_boundary() -> Outcome {
    let p = SystemParams::new(15, 8, 3).unwrap();
    let m = r(8, 1);
    let alpha = m / r(8, 1);
    let at = gamma_star(&p, r(1, 7), alpha, m).unwrap();
    check(matches!(at, Threshold::Feasible(_)), || "infeasible at eps = 1/7".into())?;
    let below = gamma_star(&p, r(1, 7) - r(1, 1_000_000_000), alpha, m).unwrap();
    check(below == Threshold::Infeasible, || format!("feasible below boundary: {below}"))?;
    Ok(format!("gamma*(M/k) = {at} at eps = 1/7, infeasible just below"))
}

fn beta_c_regression() -> Outcome {
    let p = SystemParams::new(100, 85, 10).unwrap();
    let m = r(85, 1);
    for a in [r(85, 77), r(23, 20), r(2, 1), r(100, 1)] {
        let v = beta_c_star(&p, m, a).unwrap();
        check(v == Threshold::Feasible(Rational::zero()), || format!("alpha={a}: {v}"))?;
    }
    let at = beta_c_star(&p, m, r(21, 20)).unwrap().value().ok_or("infeasible at 1.05")?;
    check((at.to_f64() - 0.03).abs() <= 0.005, || format!("beta_c*(1.05) = {at}"))?;

    let curve = beta_c_curve(&p, m).unwrap();
    let h: Vec<f64> = h_vector(&p).into_iter().map(f64::from).collect();
    let lo = curve.infeasible_below.to_f64();
    let hi = 85.0 / 77.0 * 1.02;
    for i in 0..20 {
        let a = lo + (hi - lo) * i as f64 / 19.0;
        let alpha = r((a * 1e9).round() as i128, 1_000_000_000);
        let af = alpha.to_f64();
        let cap = |bc: f64| -> f64 {
            h.iter()
                .enumerate()
                .map(|(i, &ht)| {
                    let t = i as f64 + 1.0;
                    let w = (10.0 - ht) * af + (90.0 - t + ht) * bc;
                    af.min(w)
                })
                .sum()
        };
        let exact = beta_c_star(&p, m, alpha).unwrap().value();
        let numeric = if cap(af) < 85.0 * (1.0 - 1e-15) {
            None
        } else if cap(0.0) >= 85.0 {
            Some(0.0)
        } else {
            Some(bisect(0.0, af, |bc| cap(bc) >= 85.0))
        };
        match (exact, numeric) {
            (Some(e), Some(nv)) => check((e.to_f64() - nv).abs() <= 1e-9, || {
                format!("alpha={alpha}: exact {e} vs bisection {nv}")
            })?,
            (None, None) => {}
            _ => return Err(format!("alpha={alpha}: feasibility differs ({exact:?} vs {numeric:?})")),
        }
    }
    Ok(format!("beta_c*(1.05) = {at} ~ {:.5}", at.to_f64()))
}

fn mbr_ratio_check() -> Outcome {
    let systems = system_grid(&GRID_NODE_COUNTS, GRID_MAX_K);
    for p in &systems {
        let q = mbr_ratio(p).unwrap();
        let b = mbr_ratio_bound(p);
        check(q <= b, || format!("n={} k={} L={}: {q} > {b}", p.n, p.k, p.clusters))?;
    }
    Ok(format!("{} systems", systems.len()))
}

fn lrc_bound() -> Outcome {
    let systems = system_grid(&GRID_NODE_COUNTS, GRID_MAX_K);
    let mut checked = 0;
    for p in &systems {
        let m = Rational::from(p.k);
        let a0 = alpha_msr_zero(p, m);
        for j in 0..20 {
            let alpha = a0 * (Rational::one() + r(j, 19));
            let rep = lrc_bound_check(&irc_lrc_params(p, m, alpha).unwrap());
            check(rep.slack >= 0, || format!("n={} k={} L={} alpha={alpha}: {rep:?}", p.n, p.k, p.clusters))?;
            if j == 0 {
                let remainder = p.k % p.nodes_per_cluster != 0;
                check(rep.equality == remainder, || {
                    format!("n={} k={} L={}: equality {} at alpha_msr", p.n, p.k, p.clusters, rep.equality)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (system, alpha) pairs"))
}

fn ordering_minimality() -> Outcome {
    suite(verify_orderings(&acceptance_grid()).map_err(|e| e.to_string())?)
}

fn helper_counts() -> Outcome {
    let systems: Vec<_> = system_grid(&GRID_NODE_COUNTS, GRID_MAX_K)
        .into_iter()
        .filter(|p| p.n <= 9)
        .collect();
    suite(verify_helper_counts(&grid_points(&systems)).map_err(|e| e.to_string())?)
}

fn rlnc() -> Outcome {
    suite(verify_rlnc(&rlnc_points(), 10, 9, 16, 1).map_err(|e| e.to_string())?)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 16] = [
        ("closed form equals exhaustive cut minimum", oracle_equivalence),
        ("min-cut of the attaining graph equals capacity", flowgraph_achievement),
        ("random repair histories never cut below capacity", universal_cut_bound),
        ("(6,5,2) capacity 30 and MBR point (10,10)", mbr_example),
        ("capacity nondecreasing in epsilon, C(1) = 4845/99", epsilon_sweep_shape),
        ("capacity flat for uniform bandwidth, decreasing in L at xi = 1/5", cluster_sweep_shape),
        ("lower estimate sandwich with gap n_I^2 (beta_I - beta_c)/8", sandwich),
        ("C / C_bar nonincreasing along n = 16, 36, 64, 100", ratio_trend),
        ("gamma* agrees with bisection and is exact at breakpoints", gamma_inversion),
        ("storage M/k feasible exactly from eps = 1/(n-k)", min_storage_boundary),
        ("beta_c* regression and inversion on (100,85,10)", beta_c_regression),
        ("MBR bandwidth ratio bound", mbr_ratio_check),
        ("locality bound slack and equality", lrc_bound),
        ("vertical ordering and horizontal selection minimize the cut bound", ordering_minimality),
        ("all surviving helpers is the best helper count", helper_counts),
        ("random linear coding reaches min-cut rank", rlnc),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} [{detail}] ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} [{detail}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
