//! Parameter sweeps over `ε` and over the number of clusters.

use rayon::prelude::*;

use crate::capacity::{capacity, capacity_gamma_form};
use crate::error::{Error, Result};
use crate::params::{ResourcePoint, SystemParams};
use crate::rational::Rational;
use crate::tradeoff::asymptotic_bounds;

/// Capacity at `steps` evenly spaced `ε` in `[0, 1]`.
pub fn sweep_epsilon(
    p: &SystemParams,
    alpha: Rational,
    gamma: Rational,
    steps: u32,
) -> Result<Vec<(Rational, Rational)>> {
    if steps < 2 {
        return Err(Error::NotPositive {
            name: "steps - 1",
            value: Rational::from(steps) - Rational::one(),
        });
    }
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let eps = Rational::new(i as i128, (steps - 1) as i128);
            Ok((eps, capacity_gamma_form(p, alpha, gamma, eps)?.total))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRow {
    pub clusters: u32,
    pub capacity: Rational,
    /// The estimate `C̄`, present only when `γ = α`.
    pub lower_estimate: Option<Rational>,
}

/// How repair bandwidth `γ` splits between intra- and cross-cluster helpers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossShare {
    /// Fixed `ξ = γ_c / γ`.
    Fixed(Rational),
    /// `β_c = β_I`, so `ξ` depends on the cluster size.
    Uniform,
}

/// Capacity for every valid cluster count `L`, with `β_I, β_c` derived from
/// `γ` and the cross-cluster share.
pub fn sweep_clusters(
    n: u32,
    k: u32,
    alpha: Rational,
    gamma: Rational,
    share: CrossShare,
) -> Result<Vec<ClusterRow>> {
    let valid: Vec<SystemParams> = (2..=n)
        .filter_map(|l| SystemParams::new(n, k, l).ok())
        .collect();
    if valid.is_empty() {
        return Err(SystemParams::new(n, k, 2).err().unwrap_or(Error::KOutOfRange {
            k,
            nodes_per_cluster: n / 2,
            nodes: n,
        }));
    }
    valid
        .par_iter()
        .map(|p| {
            let xi = match share {
                CrossShare::Fixed(xi) => xi,
                CrossShare::Uniform => uniform_xi(p),
            };
            let r = ResourcePoint::from_gamma_xi(p, alpha, gamma, xi)?;
            let lower_estimate = asymptotic_bounds(p, &r).ok().map(|(c, _)| c);
            Ok(ClusterRow {
                clusters: p.clusters,
                capacity: capacity(p, &r).total,
                lower_estimate,
            })
        })
        .collect()
}

/// `ξ` at which `β_c = β_I`: `(n - n_I)/(n - 1)`.
pub fn uniform_xi(p: &SystemParams) -> Rational {
    Rational::from(p.cross_helpers) / Rational::from(p.n - 1)
}
