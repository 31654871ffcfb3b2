//! Cross-checks between the closed-form capacity and independent oracles,
//! over a fixed grid of small systems.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::capacity::capacity;
use crate::error::Result;
use crate::flowgraph::{build_gstar, min_cut, rlnc_rank, simulate_history};
use crate::oracle::{
    brute_force_capacity, cut_lower_bound, enumerate_ordering_vectors,
    enumerate_selection_vectors, general_capacity, horizontal_selection, vertical_ordering,
    DEFAULT_ENUMERATION_CAP,
};
use crate::params::{ResourcePoint, SystemParams};
use crate::rational::{Extended, Rational};

pub const GRID_NODE_COUNTS: [u32; 6] = [4, 6, 8, 9, 10, 12];
pub const GRID_MAX_K: u32 = 9;

/// One system and resource point under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub params: SystemParams,
    pub resources: ResourcePoint,
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (p, r) = (&self.params, &self.resources);
        write!(
            f,
            "n={} k={} L={} alpha={} beta_I={} beta_c={}",
            p.n, p.k, p.clusters, r.alpha, r.beta_i, r.beta_c
        )
    }
}

/// Every valid `(n, k, L)` with `n` from `node_counts` and `k ≤ max_k`.
pub fn system_grid(node_counts: &[u32], max_k: u32) -> Vec<SystemParams> {
    let mut out = Vec::new();
    for &n in node_counts {
        for l in 2..=n / 2 {
            if n % l != 0 {
                continue;
            }
            for k in n / l + 1..=n.min(max_k) {
                out.push(SystemParams::new(n, k, l).expect("grid parameters are valid"));
            }
        }
    }
    out
}

/// `(β_I, β_c)` with `β_I ∈ {1, 1/2}` and `β_c ∈ {0, 1/4, β_I}`.
pub fn bandwidth_pairs() -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for bi in [Rational::one(), Rational::new(1, 2)] {
        for bc in [Rational::zero(), Rational::new(1, 4), bi] {
            out.push((bi, bc));
        }
    }
    out
}

/// Storage values that leave every term unsaturated (`β_I/2`), split the
/// terms at `ω_⌈k/2⌉`, and saturate every term (`γ`).
pub fn alpha_samples(p: &SystemParams, beta_i: Rational, beta_c: Rational) -> [Rational; 3] {
    let probe = ResourcePoint::new(p, Rational::zero(), beta_i, beta_c).expect("valid pair");
    let omegas = capacity(p, &probe).omegas;
    let mid = omegas[(p.k as usize).div_ceil(2) - 1];
    [beta_i / Rational::from(2), mid, probe.gamma()]
}

pub fn resource_grid(p: &SystemParams) -> Vec<ResourcePoint> {
    bandwidth_pairs()
        .into_iter()
        .flat_map(|(bi, bc)| {
            alpha_samples(p, bi, bc)
                .into_iter()
                .map(move |a| ResourcePoint::new(p, a, bi, bc).expect("valid point"))
        })
        .collect()
}

pub fn acceptance_grid() -> Vec<GridPoint> {
    grid_points(&system_grid(&GRID_NODE_COUNTS, GRID_MAX_K))
}

pub fn grid_points(systems: &[SystemParams]) -> Vec<GridPoint> {
    systems
        .iter()
        .flat_map(|p| {
            resource_grid(p).into_iter().map(|r| GridPoint {
                params: *p,
                resources: r,
            })
        })
        .collect()
}

/// Outcome of a verification suite: one line per configuration and the
/// failing ones repeated in `failures`.
#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: String,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn collect(name: &str, results: Vec<(String, bool)>) -> Self {
        let mut report = SuiteReport {
            name: name.to_string(),
            ..Default::default()
        };
        for (line, ok) in results {
            if !ok {
                report.failures.push(line.clone());
            }
            report.lines.push(line);
        }
        report
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.lines.len()
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Closed form against exhaustive cut enumeration.
pub fn verify_oracle(points: &[GridPoint]) -> Result<SuiteReport> {
    let results = points
        .par_iter()
        .map(|pt| {
            let closed = capacity(&pt.params, &pt.resources).total;
            let brute = brute_force_capacity(&pt.params, &pt.resources)?;
            let ok = closed == brute.capacity;
            Ok((
                format!(
                    "{} {pt}: closed={closed} brute={} s={:?} pi={:?}",
                    status(ok),
                    brute.capacity,
                    brute.selection.counts(),
                    brute.ordering.labels()
                ),
                ok,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect("oracle", results))
}

/// Closed form against the min-cut of the capacity-attaining graph.
pub fn verify_flowgraph(points: &[GridPoint]) -> SuiteReport {
    let results = points
        .par_iter()
        .map(|pt| {
            let closed = capacity(&pt.params, &pt.resources).total;
            let g = build_gstar(&pt.params, &pt.resources);
            let cut = min_cut(&g);
            let ok = cut.value == Extended::Finite(closed) && cut.crossing_value(&g) == cut.value;
            (
                format!("{} {pt}: closed={closed} min_cut={}", status(ok), cut.value),
                ok,
            )
        })
        .collect();
    SuiteReport::collect("flowgraph", results)
}

/// Number of `k`-subsets of `n` items.
fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random failure histories must never cut below capacity. Every collector
/// choice is tried when there are at most `subset_limit` of them, otherwise
/// one random choice per history.
pub fn verify_universal_bound(
    points: &[GridPoint],
    histories: usize,
    seed: u64,
    subset_limit: u64,
) -> SuiteReport {
    let results = points
        .par_iter()
        .enumerate()
        .map(|(idx, pt)| {
            let (p, r) = (&pt.params, &pt.resources);
            let closed = Extended::Finite(capacity(p, r).total);
            let exhaustive = binomial(p.n as u64, p.k as u64) <= subset_limit;
            let mut worst: Option<Extended> = None;
            let mut checked = 0usize;
            for h in 0..histories {
                let hseed = seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add((idx * histories + h) as u64);
                let failures = 1 + (hseed % (2 * p.n as u64)) as usize;
                let history = simulate_history(p, r, failures, hseed);
                let subsets = if exhaustive {
                    history.collector_subsets()
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(hseed);
                    let mut chosen = sample(&mut rng, p.n as usize, p.k as usize).into_vec();
                    chosen.sort_unstable();
                    vec![chosen]
                };
                for s in subsets {
                    let v = min_cut(&history.with_collector(&s)).value;
                    checked += 1;
                    if worst.is_none_or(|w| v < w) {
                        worst = Some(v);
                    }
                }
            }
            let worst = worst.expect("at least one cut");
            let ok = worst >= closed;
            (
                format!(
                    "{} {pt}: capacity={closed} smallest_cut={worst} cuts={checked}",
                    status(ok)
                ),
                ok,
            )
        })
        .collect();
    SuiteReport::collect("universal-bound", results)
}

/// Random linear network coding on the capacity-attaining graph with the file
/// size set to its min-cut; passes when at least `required` of `trials` seeds
/// reach full rank.
pub fn verify_rlnc(
    points: &[GridPoint],
    trials: u64,
    required: u64,
    field_bits: u32,
    seed: u64,
) -> Result<SuiteReport> {
    let results = points
        .par_iter()
        .map(|pt| {
            let g = build_gstar(&pt.params, &pt.resources);
            let cut = min_cut(&g).value.finite().expect("finite storage");
            let units = (cut * Rational::from(g.unit_scale())).numer() as usize;
            let mut ok_count = 0;
            for t in 0..trials {
                if rlnc_rank(&g, units, field_bits, seed.wrapping_add(t))? == units {
                    ok_count += 1;
                }
            }
            let ok = ok_count >= required;
            Ok((
                format!(
                    "{} {pt}: file_units={units} full_rank={ok_count}/{trials}",
                    status(ok)
                ),
                ok,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect("rlnc", results))
}

/// Systems and integer resources used for coding trials.
pub fn rlnc_points() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for (n, k, l) in [(6, 5, 2), (8, 5, 2)] {
        let p = SystemParams::new(n, k, l).expect("valid");
        for (a, bi, bc) in [(4, 2, 1), (6, 3, 0), (2, 1, 1)] {
            let r = ResourcePoint::new(&p, a.into(), bi.into(), bc.into()).expect("valid");
            out.push(GridPoint {
                params: p,
                resources: r,
            });
        }
    }
    out
}

/// Vertical ordering minimizes the cut bound for each selection, and the
/// horizontal selection minimizes it among vertical orderings.
pub fn verify_orderings(points: &[GridPoint]) -> Result<SuiteReport> {
    let results = points
        .par_iter()
        .map(|pt| {
            let (p, r) = (&pt.params, &pt.resources);
            let sh = horizontal_selection(p);
            let at_h = cut_lower_bound(p, r, &sh, &vertical_ordering(&sh))?;
            let mut witness = None;
            for s in enumerate_selection_vectors(p) {
                let v = cut_lower_bound(p, r, &s, &vertical_ordering(&s))?;
                if at_h > v && witness.is_none() {
                    witness = Some(format!("s={:?} beats horizontal", s.counts()));
                }
                for pi in enumerate_ordering_vectors(&s, DEFAULT_ENUMERATION_CAP)? {
                    if cut_lower_bound(p, r, &s, &pi)? < v && witness.is_none() {
                        witness = Some(format!("s={:?} pi={:?} beats vertical", s.counts(), pi.labels()));
                    }
                }
            }
            let ok = witness.is_none();
            let line = match witness {
                None => format!("ok {pt}"),
                Some(w) => format!("MISMATCH {pt}: {w}"),
            };
            Ok((line, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect("orderings", results))
}

/// Using every surviving node as a helper is never worse than any smaller
/// helper set with the same total bandwidths.
pub fn verify_helper_counts(points: &[GridPoint]) -> Result<SuiteReport> {
    let results = points
        .par_iter()
        .map(|pt| {
            let (p, r) = (&pt.params, &pt.resources);
            let full = general_capacity(p, p.intra_helpers, p.cross_helpers, r)?;
            let mut witness = None;
            for d_i in 1..=p.intra_helpers {
                for d_c in 1..=p.cross_helpers {
                    let v = general_capacity(p, d_i, d_c, r)?;
                    if v > full && witness.is_none() {
                        witness = Some((d_i, d_c, v));
                    }
                }
            }
            let ok = witness.is_none();
            let line = match witness {
                None => format!("ok {pt}: full={full}"),
                Some((a, b, v)) => format!("MISMATCH {pt}: d_I={a} d_c={b} gives {v} > {full}"),
            };
            Ok((line, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect("helper-counts", results))
}
