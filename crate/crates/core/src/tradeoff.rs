//! Threshold curves: the least repair bandwidth `γ*(α)` that stores a file of
//! size `M`, its extremal points, and the cross-cluster threshold `β_c*(α)`
//! when intra-cluster helpers send everything they store.

use std::fmt;

use crate::capacity::{aux_sequences, AuxSequences};
use crate::error::{Error, Result};
use crate::params::{check_unit_interval, ResourcePoint, SystemParams};
use crate::rational::Rational;

/// Result of a threshold query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Feasible(Rational),
    Infeasible,
}

impl Threshold {
    pub fn value(&self) -> Option<Rational> {
        match self {
            Threshold::Feasible(v) => Some(*v),
            Threshold::Infeasible => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Feasible(v) => write!(f, "{v}"),
            Threshold::Infeasible => f.write_str("infeasible"),
        }
    }
}

/// Affine piece `value = intercept + slope · α` on `[alpha_lo, alpha_hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    /// Number of capacity terms saturated at `α` on this piece.
    pub saturated: u32,
    pub alpha_lo: Rational,
    /// `None` for the final, unbounded piece.
    pub alpha_hi: Option<Rational>,
    pub intercept: Rational,
    pub slope: Rational,
}

impl Segment {
    pub fn eval(&self, alpha: Rational) -> Rational {
        self.intercept + self.slope * alpha
    }

    pub fn contains(&self, alpha: Rational) -> bool {
        alpha >= self.alpha_lo && self.alpha_hi.is_none_or(|hi| alpha < hi)
    }
}

/// Piecewise-linear threshold curve over `α`, infeasible below
/// `infeasible_below` and given by `segments` (in increasing `α`) above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeoffCurve {
    pub file_size: Rational,
    pub segments: Vec<Segment>,
    pub infeasible_below: Rational,
}

impl TradeoffCurve {
    pub fn eval(&self, alpha: Rational) -> Threshold {
        if alpha < self.infeasible_below {
            return Threshold::Infeasible;
        }
        self.segments
            .iter()
            .find(|s| s.contains(alpha))
            .map_or(Threshold::Infeasible, |s| Threshold::Feasible(s.eval(alpha)))
    }

    /// `(α, value)` at the left end of every segment.
    pub fn breakpoints(&self) -> Vec<(Rational, Rational)> {
        self.segments
            .iter()
            .map(|s| (s.alpha_lo, s.eval(s.alpha_lo)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Msr,
    Mbr,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Msr => "MSR",
            PointKind::Mbr => "MBR",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalPoint {
    pub alpha: Rational,
    pub gamma: Rational,
    pub kind: PointKind,
    pub epsilon: Rational,
}

fn check_file_size(m: Rational) -> Result<()> {
    if m.is_positive() {
        Ok(())
    } else {
        Err(Error::NotPositive {
            name: "M",
            value: m,
        })
    }
}

/// True when `z_k ≥ 1`, i.e. `ε ≥ 1/(n-k)`: the minimum storage `M/k` is
/// reachable.
fn large_epsilon(aux: &AuxSequences) -> bool {
    aux.z_finite(aux.k()) >= Rational::one()
}

/// Storage below which no bandwidth suffices.
///
/// With `z_k ≥ 1` this is `M/k`; otherwise helper bandwidth is capped by
/// `β_I ≤ α` and the bound is `M/(τ + Σ_{i>τ} z_i)`. At `z_k = 1` the two
/// expressions coincide.
fn storage_floor(aux: &AuxSequences, m: Rational) -> (usize, Rational) {
    let k = aux.k();
    let capped = |top: usize| m / (Rational::from(top) + aux.z_tail(top));
    if large_epsilon(aux) {
        let floor = m / Rational::from(k);
        debug_assert!(aux.z_finite(k) != Rational::one() || capped(k - 1) == floor);
        (k - 1, floor)
    } else {
        (aux.tau, capped(aux.tau))
    }
}

/// `M / (t + s_t y_t)`, the upper end of segment `t` (infinite for `t = 0`).
fn segment_upper(aux: &AuxSequences, t: usize, m: Rational) -> Option<Rational> {
    if t == 0 {
        return None;
    }
    let y = aux.y(t).finite().expect("z_t > 0 below the top segment");
    Some(m / (Rational::from(t) + aux.s(t) * y))
}

pub fn tradeoff_curve(p: &SystemParams, epsilon: Rational, m: Rational) -> Result<TradeoffCurve> {
    check_unit_interval(epsilon, Error::EpsilonOutOfRange)?;
    check_file_size(m)?;
    let aux = aux_sequences(p, epsilon)?;
    let (top, floor) = storage_floor(&aux, m);

    let mut segments = Vec::new();
    let mut lo = floor;
    for t in (0..=top).rev() {
        let s = aux.s(t);
        if s.is_zero() {
            continue;
        }
        let hi = segment_upper(&aux, t, m);
        if hi.is_some_and(|hi| hi <= lo) {
            continue;
        }
        segments.push(Segment {
            saturated: t as u32,
            alpha_lo: lo,
            alpha_hi: hi,
            intercept: m / s,
            slope: -Rational::from(t) / s,
        });
        if let Some(hi) = hi {
            lo = hi;
        }
    }
    Ok(TradeoffCurve {
        file_size: m,
        segments,
        infeasible_below: floor,
    })
}

/// Least `γ` such that capacity reaches `M` at storage `α`.
pub fn gamma_star(
    p: &SystemParams,
    epsilon: Rational,
    alpha: Rational,
    m: Rational,
) -> Result<Threshold> {
    if !alpha.is_positive() {
        return Err(Error::NotPositive {
            name: "alpha",
            value: alpha,
        });
    }
    Ok(tradeoff_curve(p, epsilon, m)?.eval(alpha))
}

/// Minimum-storage point: the leftmost feasible point of the curve.
pub fn msr_point(p: &SystemParams, epsilon: Rational, m: Rational) -> Result<ExtremalPoint> {
    let curve = tradeoff_curve(p, epsilon, m)?;
    let alpha = curve.infeasible_below;
    let gamma = curve.eval(alpha).value().expect("floor is feasible");
    Ok(ExtremalPoint {
        alpha,
        gamma,
        kind: PointKind::Msr,
        epsilon,
    })
}

/// Minimum-bandwidth point `(M/s_0, M/s_0)`.
pub fn mbr_point(p: &SystemParams, epsilon: Rational, m: Rational) -> Result<ExtremalPoint> {
    check_unit_interval(epsilon, Error::EpsilonOutOfRange)?;
    check_file_size(m)?;
    let aux = aux_sequences(p, epsilon)?;
    let v = m / aux.s(0);
    Ok(ExtremalPoint {
        alpha: v,
        gamma: v,
        kind: PointKind::Mbr,
        epsilon,
    })
}

/// Whether storage `M/k` is achievable: `ε ≥ 1/(n-k)`.
pub fn min_storage_feasible(p: &SystemParams, epsilon: Rational) -> Result<bool> {
    check_unit_interval(epsilon, Error::EpsilonOutOfRange)?;
    if p.k == p.n {
        return Err(Error::KEqualsN);
    }
    Ok(epsilon * Rational::from(p.n - p.k) >= Rational::one())
}

/// `Σ_{i=m+1}^{k} (n - i)`.
fn cross_tail(p: &SystemParams, m: u32) -> Rational {
    Rational::from((m + 1..=p.k).map(|i| (p.n - i) as i128).sum::<i128>())
}

/// `m + Σ_{i=m+1}^{k} (n-i) / (n-m)`; equals `k` at `m = k`.
fn f_m(p: &SystemParams, m: u32) -> Rational {
    if m == p.k {
        return Rational::from(p.k);
    }
    Rational::from(m) + cross_tail(p, m) / Rational::from(p.n - m)
}

/// The curve `β_c*(α)` under `β_I = α`, ending with the zero piece from
/// `M/k_0` onward.
pub fn beta_c_curve(p: &SystemParams, m: Rational) -> Result<TradeoffCurve> {
    check_file_size(m)?;
    let k0 = p.k0();
    let mut segments = Vec::new();
    let mut floor = None;
    let mut lo = Rational::zero();
    for j in (k0..p.k).rev() {
        let tail = cross_tail(p, j);
        if tail.is_zero() {
            continue;
        }
        let start = m / f_m(p, j + 1);
        if floor.is_none() {
            floor = Some(start);
            lo = start;
        }
        let hi = if j == k0 {
            m / Rational::from(k0)
        } else {
            m / f_m(p, j)
        };
        segments.push(Segment {
            saturated: j,
            alpha_lo: lo,
            alpha_hi: Some(hi),
            intercept: m / tail,
            slope: -Rational::from(j) / tail,
        });
        lo = hi;
    }
    segments.push(Segment {
        saturated: k0,
        alpha_lo: lo,
        alpha_hi: None,
        intercept: Rational::zero(),
        slope: Rational::zero(),
    });
    Ok(TradeoffCurve {
        file_size: m,
        segments,
        infeasible_below: floor.unwrap_or(lo),
    })
}

/// Least `β_c` storing `M` with `β_I = α`.
pub fn beta_c_star(p: &SystemParams, m: Rational, alpha: Rational) -> Result<Threshold> {
    if !alpha.is_positive() {
        return Err(Error::NotPositive {
            name: "alpha",
            value: alpha,
        });
    }
    Ok(beta_c_curve(p, m)?.eval(alpha))
}

/// Lower estimate `C̄` of capacity and the gap bound `δ`, valid when `γ = α`:
/// `C̄ ≤ C ≤ C̄ + δ`.
pub fn asymptotic_bounds(p: &SystemParams, r: &ResourcePoint) -> Result<(Rational, Rational)> {
    let gamma = r.gamma();
    if gamma != r.alpha {
        return Err(Error::NotBandwidthLimited {
            alpha: r.alpha,
            gamma,
        });
    }
    let n = Rational::from(p.n);
    let k = Rational::from(p.k);
    let ni = Rational::from(p.nodes_per_cluster);
    let lower = k / Rational::from(2)
        * (gamma + (n - k) / Rational::from(p.cross_helpers) * r.gamma_c);
    let delta = ni * ni * (r.beta_i - r.beta_c) / Rational::from(8);
    Ok((lower, delta))
}

/// `γ_mbr` at `ε = 0` over `γ_mbr` at `ε = 1`; independent of `M`.
pub fn mbr_ratio(p: &SystemParams) -> Result<Rational> {
    let one = Rational::one();
    let at_zero = mbr_point(p, Rational::zero(), one)?.gamma;
    let at_one = mbr_point(p, one, one)?.gamma;
    Ok(at_zero / at_one)
}

/// `2 - (k-1)/(n-1)`, the upper bound on [`mbr_ratio`].
pub fn mbr_ratio_bound(p: &SystemParams) -> Rational {
    Rational::from(2) - Rational::from(p.k - 1) / Rational::from(p.n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{capacity, capacity_gamma_form};

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn p(n: u32, k: u32, l: u32) -> SystemParams {
        SystemParams::new(n, k, l).unwrap()
    }

    #[test]
    fn full_epsilon_msr() {
        let sys = p(15, 8, 3);
        assert_eq!(
            gamma_star(&sys, r(1, 1), r(1, 1), r(8, 1)).unwrap(),
            Threshold::Feasible(r(2, 1))
        );
        assert_eq!(
            tradeoff_curve(&sys, r(1, 1), r(8, 1)).unwrap().infeasible_below,
            r(1, 1)
        );
    }

    #[test]
    fn zero_epsilon_floor() {
        let sys = p(15, 8, 3);
        let m = r(8, 1);
        let curve = tradeoff_curve(&sys, r(0, 1), m).unwrap();
        assert_eq!(curve.infeasible_below, r(8, 7));
        assert_eq!(curve.eval(r(8, 7) - r(1, 1_000_000)), Threshold::Infeasible);
        assert!(matches!(curve.eval(r(8, 7)), Threshold::Feasible(_)));
    }

    #[test]
    fn final_segment_is_constant() {
        for eps in [r(0, 1), r(1, 3), r(1, 1)] {
            let sys = p(15, 8, 3);
            let curve = tradeoff_curve(&sys, eps, r(8, 1)).unwrap();
            let last = curve.segments.last().unwrap();
            assert_eq!(last.saturated, 0);
            assert_eq!(last.alpha_hi, None);
            let mbr = mbr_point(&sys, eps, r(8, 1)).unwrap();
            assert_eq!(last.alpha_lo, mbr.alpha);
            assert_eq!(curve.eval(r(1000, 1)), Threshold::Feasible(mbr.gamma));
        }
    }

    #[test]
    fn breakpoints_hit_file_size_exactly() {
        let sys = p(15, 8, 3);
        let m = r(8, 1);
        for eps in [r(0, 1), r(1, 10), r(1, 7), r(1, 2), r(1, 1)] {
            let curve = tradeoff_curve(&sys, eps, m).unwrap();
            for w in curve.segments.windows(2) {
                assert_eq!(w[0].alpha_hi, Some(w[1].alpha_lo));
                assert_eq!(w[0].eval(w[1].alpha_lo), w[1].eval(w[1].alpha_lo));
            }
            for (a, g) in curve.breakpoints() {
                let c = capacity_gamma_form(&sys, a, g, eps).unwrap();
                assert_eq!(c.total, m, "eps {eps} alpha {a}");
                let below = capacity_gamma_form(&sys, a, g - r(1, 1_000_000), eps).unwrap();
                assert!(below.total < m);
            }
        }
    }

    #[test]
    fn regime_boundary_agrees() {
        let sys = p(15, 8, 3);
        let aux = aux_sequences(&sys, r(1, 7)).unwrap();
        assert_eq!(aux.z_finite(8), r(1, 1));
        assert_eq!(aux.tau, 7);
        let m = r(8, 1);
        assert_eq!(storage_floor(&aux, m), (7, r(1, 1)));
        assert_eq!(
            r(8, 1) / (r(7, 1) + aux.z_tail(7)),
            m / r(8, 1),
        );
    }

    #[test]
    fn msr_at_boundary_is_m_over_k() {
        let sys = p(15, 8, 3);
        let pt = msr_point(&sys, r(1, 7), r(8, 1)).unwrap();
        assert_eq!(pt.alpha, r(1, 1));
    }

    #[test]
    fn mbr_points() {
        let sys = p(6, 5, 2);
        for eps in [r(0, 1), r(1, 1)] {
            let pt = mbr_point(&sys, eps, r(30, 1)).unwrap();
            assert_eq!((pt.alpha, pt.gamma), (r(10, 1), r(10, 1)));
        }
        assert!(mbr_ratio(&p(15, 8, 3)).unwrap() <= mbr_ratio_bound(&p(15, 8, 3)));
    }

    #[test]
    fn msr_large_system() {
        let pt = msr_point(&p(100, 85, 10), r(0, 1), r(85, 1)).unwrap();
        assert_eq!(pt.alpha, r(85, 77));
    }

    #[test]
    fn min_storage_condition() {
        let sys = p(15, 8, 3);
        assert!(min_storage_feasible(&sys, r(1, 7)).unwrap());
        assert!(!min_storage_feasible(&sys, r(1, 7) - r(1, 1000)).unwrap());
        assert!(min_storage_feasible(&sys, r(1, 1)).unwrap());
        assert_eq!(min_storage_feasible(&p(6, 6, 2), r(1, 1)), Err(Error::KEqualsN));
    }

    #[test]
    fn beta_c_examples() {
        let sys = p(100, 85, 10);
        let m = r(85, 1);
        assert_eq!(
            beta_c_star(&sys, m, r(85, 77)).unwrap(),
            Threshold::Feasible(r(0, 1))
        );
        assert_eq!(
            beta_c_star(&sys, m, r(2, 1)).unwrap(),
            Threshold::Feasible(r(0, 1))
        );
        assert_eq!(
            beta_c_star(&sys, m, r(21, 20)).unwrap(),
            Threshold::Feasible(r(83, 2960))
        );
        assert_eq!(
            beta_c_star(&sys, m, r(1, 1) - r(1, 1000)).unwrap(),
            Threshold::Infeasible
        );
        assert!(matches!(
            beta_c_star(&sys, m, r(1, 1)).unwrap(),
            Threshold::Feasible(_)
        ));
    }

    #[test]
    fn beta_c_star_stores_exactly() {
        let sys = p(15, 8, 3);
        let m = r(8, 1);
        let curve = beta_c_curve(&sys, m).unwrap();
        for seg in &curve.segments[..curve.segments.len() - 1] {
            let a = seg.alpha_lo;
            let b = seg.eval(a);
            let rp = ResourcePoint::new(&sys, a, a, b).unwrap();
            assert_eq!(capacity(&sys, &rp).total, m);
            let less = ResourcePoint::new(&sys, a, a, b - r(1, 1_000_000)).unwrap();
            assert!(capacity(&sys, &less).total < m);
        }
    }

    #[test]
    fn beta_c_when_all_nodes_contacted() {
        let sys = p(6, 6, 2);
        let m = r(5, 1);
        let curve = beta_c_curve(&sys, m).unwrap();
        assert_eq!(curve.infeasible_below, r(1, 1));
        let rp = ResourcePoint::new(&sys, r(1, 1), r(1, 1), r(1, 1)).unwrap();
        assert_eq!(capacity(&sys, &rp).total, r(5, 1));
    }

    #[test]
    fn bounds_need_gamma_equal_alpha() {
        let sys = p(15, 8, 3);
        let rp = ResourcePoint::new(&sys, r(1, 1), r(1, 1), r(1, 1)).unwrap();
        assert!(matches!(
            asymptotic_bounds(&sys, &rp),
            Err(Error::NotBandwidthLimited { .. })
        ));
        let rp = ResourcePoint::from_gamma_epsilon(&sys, r(14, 1), r(14, 1), r(1, 1)).unwrap();
        let (lower, delta) = asymptotic_bounds(&sys, &rp).unwrap();
        assert_eq!(delta, r(0, 1));
        assert_eq!(lower, capacity(&sys, &rp).total);
    }

    #[test]
    fn bounds_sandwich_large_system() {
        let sys = p(100, 80, 10);
        let rp = ResourcePoint::from_gamma_xi(&sys, r(10, 1), r(10, 1), r(1, 5)).unwrap();
        let (lower, delta) = asymptotic_bounds(&sys, &rp).unwrap();
        let c = capacity(&sys, &rp).total;
        assert!(lower <= c && c <= lower + delta);
    }
}
