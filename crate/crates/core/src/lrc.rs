//! Codes that repair within a cluster are locally repairable: locality
//! `n_I - 1` and minimum distance `n - k + 1`. This module checks the
//! locality/distance bound `m_0 ≤ n - ⌈M/α⌉ - ⌈M/(l_0 α)⌉ + 2` for them.

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrcParams {
    pub n: u32,
    pub l0: u32,
    pub m0: u32,
    pub file_size: Rational,
    pub alpha: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrcReport {
    pub lhs: i128,
    pub rhs: i128,
    pub slack: i128,
    pub equality: bool,
}

/// Storage `M/k_0` at which cross-cluster repair traffic can vanish.
pub fn alpha_msr_zero(p: &SystemParams, m: Rational) -> Rational {
    m / Rational::from(p.k0())
}

pub fn irc_lrc_params(p: &SystemParams, m: Rational, alpha: Rational) -> Result<LrcParams> {
    if !m.is_positive() {
        return Err(Error::NotPositive {
            name: "M",
            value: m,
        });
    }
    let minimum = alpha_msr_zero(p, m);
    if alpha < minimum {
        return Err(Error::InfeasibleAlpha { alpha, minimum });
    }
    Ok(LrcParams {
        n: p.n,
        l0: p.nodes_per_cluster - 1,
        m0: p.n - p.k + 1,
        file_size: m,
        alpha,
    })
}

pub fn lrc_bound_check(params: &LrcParams) -> LrcReport {
    let m = params.file_size;
    let a = params.alpha;
    let rhs = params.n as i128 - (m / a).ceil() - (m / (Rational::from(params.l0) * a)).ceil() + 2;
    let lhs = params.m0 as i128;
    let slack = rhs - lhs;
    LrcReport {
        lhs,
        rhs,
        slack,
        equality: slack == 0,
    }
}
