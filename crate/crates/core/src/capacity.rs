//! Closed-form storage capacity and the auxiliary sequences behind it.
//!
//! The capacity is a sum of `k` terms `min{α, ω_t}`, where `ω_t` is the
//! information a newly repaired node can still pass to the data collector
//! once the `t - 1` previously contacted nodes are accounted for. Nodes are
//! contacted column by column across clusters; `g_m` counts how many
//! contacted nodes sit in column `m` of the cluster grid.

use crate::error::Result;
use crate::params::{check_unit_interval, ResourcePoint, SystemParams};
use crate::rational::{Extended, Rational};
use crate::Error;

/// `g_m = ⌊k/n_I⌋ + 1` for `m ≤ k mod n_I`, else `⌊k/n_I⌋`, for `m = 1..=n_I`.
pub fn g_vector(p: &SystemParams) -> Vec<u32> {
    let q = p.k / p.nodes_per_cluster;
    let r = p.k % p.nodes_per_cluster;
    (1..=p.nodes_per_cluster)
        .map(|m| if m <= r { q + 1 } else { q })
        .collect()
}

/// `h_t = min{s : g_1 + … + g_s ≥ t}` for `t = 1..=k`.
pub fn h_vector(p: &SystemParams) -> Vec<u32> {
    let g = g_vector(p);
    let mut h = Vec::with_capacity(p.k as usize);
    let mut column = 0usize;
    let mut covered = g[0];
    for t in 1..=p.k {
        while covered < t {
            column += 1;
            covered += g[column];
        }
        h.push(column as u32 + 1);
    }
    h
}

/// Auxiliary sequences of the `(α, γ)` tradeoff for a fixed `ε`.
///
/// Vectors are stored 0-based; use the accessors for 1-based indexing.
/// `z` and `s` hold indices `0..=k` (`z[0]` is infinite), `y` holds
/// `0..=k` with `y[0] = 0`, `g` holds `1..=n_I` and `h` holds `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSequences {
    pub epsilon: Rational,
    pub g: Vec<u32>,
    pub h: Vec<u32>,
    pub z: Vec<Extended>,
    pub y: Vec<Extended>,
    pub s: Vec<Rational>,
    pub tau: usize,
}

impl AuxSequences {
    pub fn g(&self, m: usize) -> u32 {
        self.g[m - 1]
    }

    pub fn h(&self, t: usize) -> u32 {
        self.h[t - 1]
    }

    pub fn z(&self, t: usize) -> Extended {
        self.z[t]
    }

    /// `z_t` for `t ≥ 1`, which is always finite.
    pub fn z_finite(&self, t: usize) -> Rational {
        self.z[t]
            .finite()
            .expect("z_t is finite for t >= 1")
    }

    pub fn y(&self, t: usize) -> Extended {
        self.y[t]
    }

    pub fn s(&self, t: usize) -> Rational {
        self.s[t]
    }

    pub fn k(&self) -> usize {
        self.h.len()
    }

    /// `z_{t+1} + … + z_k`.
    pub fn z_tail(&self, t: usize) -> Rational {
        (t + 1..=self.k()).map(|i| self.z_finite(i)).sum()
    }
}

pub fn aux_sequences(p: &SystemParams, epsilon: Rational) -> Result<AuxSequences> {
    check_unit_interval(epsilon, Error::EpsilonOutOfRange)?;
    let g = g_vector(p);
    let h = h_vector(p);
    let k = p.k as usize;
    let n = Rational::from(p.n);
    let n_i = Rational::from(p.nodes_per_cluster);
    let factor = p.bandwidth_factor(epsilon);

    let mut z = Vec::with_capacity(k + 1);
    z.push(Extended::Infinite);
    for t in 1..=k {
        let ht = Rational::from(h[t - 1]);
        let zt = (n - n_i - Rational::from(t) + ht) * epsilon + (n_i - ht);
        z.push(Extended::Finite(zt));
    }

    let mut y = Vec::with_capacity(k + 1);
    y.push(Extended::Finite(Rational::zero()));
    for zt in z.iter().skip(1) {
        let zt = zt.finite().unwrap();
        y.push(if zt.is_zero() {
            Extended::Infinite
        } else {
            Extended::Finite(factor / zt)
        });
    }

    let mut s = vec![Rational::zero(); k + 1];
    let mut tail = Rational::zero();
    for t in (0..k).rev() {
        tail += z[t + 1].finite().unwrap();
        s[t] = tail / factor;
    }

    let one = Extended::Finite(Rational::one());
    let tau = (0..k).rev().find(|&t| z[t] >= one).unwrap_or(0);

    Ok(AuxSequences {
        epsilon,
        g,
        h,
        z,
        y,
        s,
        tau,
    })
}

/// Per-term view of a capacity evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityBreakdown {
    /// `min{α, ω_t}` for `t = 1..=k`.
    pub terms: Vec<Rational>,
    /// `ω_t` for `t = 1..=k`, nonincreasing.
    pub omegas: Vec<Rational>,
    pub total: Rational,
    /// Set when the resources need `β_I > α`, i.e. a helper would send more
    /// than it stores. The value is still the formula's, but such points lie
    /// outside the physically meaningful region.
    pub beta_i_exceeds_alpha: bool,
}

impl CapacityBreakdown {
    fn from_omegas(alpha: Rational, omegas: Vec<Rational>, beta_i_exceeds_alpha: bool) -> Self {
        let terms: Vec<Rational> = omegas.iter().map(|w| alpha.min(*w)).collect();
        let total = terms.iter().sum();
        CapacityBreakdown {
            terms,
            omegas,
            total,
            beta_i_exceeds_alpha,
        }
    }
}

/// Capacity as the double sum over columns `i` and their `g_i` contacted nodes.
pub fn capacity(p: &SystemParams, r: &ResourcePoint) -> CapacityBreakdown {
    let g = g_vector(p);
    debug_assert_eq!(g.iter().sum::<u32>(), p.k);
    let n = i128::from(p.n);
    let mut omegas = Vec::with_capacity(p.k as usize);
    let mut before = 0i128;
    for (idx, &gi) in g.iter().enumerate() {
        let rho = i128::from(p.nodes_per_cluster) - (idx as i128 + 1);
        for j in 1..=i128::from(gi) {
            let cross = n - rho - j - before;
            omegas.push(Rational::from(rho) * r.beta_i + Rational::from(cross) * r.beta_c);
        }
        before += i128::from(gi);
    }
    let gamma = r.gamma();
    debug_assert!(omegas.iter().all(|w| *w <= gamma));
    debug_assert!(omegas.windows(2).all(|w| w[0] >= w[1]));
    CapacityBreakdown::from_omegas(r.alpha, omegas, r.beta_i > r.alpha)
}

/// Capacity from `(α, γ, ε)` as `Σ min{α, γ / y_t}`.
pub fn capacity_gamma_form(
    p: &SystemParams,
    alpha: Rational,
    gamma: Rational,
    epsilon: Rational,
) -> Result<CapacityBreakdown> {
    if gamma.is_negative() {
        return Err(Error::Negative {
            name: "gamma",
            value: gamma,
        });
    }
    let aux = aux_sequences(p, epsilon)?;
    Ok(capacity_from_aux(p, &aux, alpha, gamma))
}

pub(crate) fn capacity_from_aux(
    p: &SystemParams,
    aux: &AuxSequences,
    alpha: Rational,
    gamma: Rational,
) -> CapacityBreakdown {
    let factor = p.bandwidth_factor(aux.epsilon);
    let omegas = (1..=aux.k())
        .map(|t| gamma * aux.z_finite(t) / factor)
        .collect();
    let beta_i = gamma / factor;
    CapacityBreakdown::from_omegas(alpha, omegas, beta_i > alpha)
}

/// Capacity of the unclustered system with per-helper bandwidth `β`: `Σ_{i=1}^k min{α, (n-i)β}`.
pub fn unclustered_capacity(n: u32, k: u32, alpha: Rational, beta: Rational) -> Rational {
    (1..=k)
        .map(|i| alpha.min(Rational::from(n - i) * beta))
        .sum()
}
