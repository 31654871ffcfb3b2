//! System parameters `(n, k, L)` and per-repair resource points.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A validated clustered storage layout.
///
/// `n` nodes are split evenly into `clusters` groups of `nodes_per_cluster`;
/// a data collector contacts `k` of them. Repairs use every surviving node as
/// a helper: `intra_helpers = n_I - 1` from the same cluster and
/// `cross_helpers = n - n_I` from the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemParams {
    pub n: u32,
    pub k: u32,
    pub clusters: u32,
    pub nodes_per_cluster: u32,
    pub intra_helpers: u32,
    pub cross_helpers: u32,
}

impl SystemParams {
    pub fn new(n: u32, k: u32, clusters: u32) -> Result<Self> {
        if clusters < 2 {
            return Err(Error::TooFewClusters(clusters));
        }
        if !n.is_multiple_of(clusters) {
            return Err(Error::NonDivisible { nodes: n, clusters });
        }
        let nodes_per_cluster = n / clusters;
        if nodes_per_cluster < 2 {
            return Err(Error::DegenerateCluster(nodes_per_cluster));
        }
        if k <= nodes_per_cluster || k > n {
            return Err(Error::KOutOfRange {
                k,
                nodes_per_cluster,
                nodes: n,
            });
        }
        Ok(SystemParams {
            n,
            k,
            clusters,
            nodes_per_cluster,
            intra_helpers: nodes_per_cluster - 1,
            cross_helpers: n - nodes_per_cluster,
        })
    }

    /// `n_I - 1 + ε (n - n_I)`: total repair bandwidth per unit of `β_I`.
    pub fn bandwidth_factor(&self, epsilon: Rational) -> Rational {
        Rational::from(self.intra_helpers) + epsilon * Rational::from(self.cross_helpers)
    }

    /// `k - ⌊k / n_I⌋`, the number of contacted nodes that always keep an
    /// intra-cluster helper outside the contacted set.
    pub fn k0(&self) -> u32 {
        self.k - self.k / self.nodes_per_cluster
    }
}

/// Node storage and per-helper repair bandwidths `(α, β_I, β_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResourcePoint {
    pub alpha: Rational,
    pub beta_i: Rational,
    pub beta_c: Rational,
    pub gamma_i: Rational,
    pub gamma_c: Rational,
}

impl ResourcePoint {
    pub fn new(
        params: &SystemParams,
        alpha: Rational,
        beta_i: Rational,
        beta_c: Rational,
    ) -> Result<Self> {
        for (name, value) in [("alpha", alpha), ("beta_I", beta_i), ("beta_c", beta_c)] {
            if value.is_negative() {
                return Err(Error::Negative { name, value });
            }
        }
        if beta_c > beta_i {
            return Err(Error::BetaCExceedsBetaI { beta_i, beta_c });
        }
        Ok(ResourcePoint {
            alpha,
            beta_i,
            beta_c,
            gamma_i: Rational::from(params.intra_helpers) * beta_i,
            gamma_c: Rational::from(params.cross_helpers) * beta_c,
        })
    }

    /// Resources from total repair bandwidth `γ` and the ratio `ε = β_c / β_I`.
    pub fn from_gamma_epsilon(
        params: &SystemParams,
        alpha: Rational,
        gamma: Rational,
        epsilon: Rational,
    ) -> Result<Self> {
        check_unit_interval(epsilon, Error::EpsilonOutOfRange)?;
        if gamma.is_negative() {
            return Err(Error::Negative {
                name: "gamma",
                value: gamma,
            });
        }
        let beta_i = gamma / params.bandwidth_factor(epsilon);
        Self::new(params, alpha, beta_i, epsilon * beta_i)
    }

    /// Resources from total repair bandwidth `γ` and the cross-cluster share `ξ = γ_c / γ`.
    pub fn from_gamma_xi(
        params: &SystemParams,
        alpha: Rational,
        gamma: Rational,
        xi: Rational,
    ) -> Result<Self> {
        check_unit_interval(xi, Error::XiOutOfRange)?;
        if gamma.is_negative() {
            return Err(Error::Negative {
                name: "gamma",
                value: gamma,
            });
        }
        let gamma_c = gamma * xi;
        let beta_i = (gamma - gamma_c) / Rational::from(params.intra_helpers);
        let beta_c = gamma_c / Rational::from(params.cross_helpers);
        Self::new(params, alpha, beta_i, beta_c)
    }

    pub fn gamma(&self) -> Rational {
        self.gamma_i + self.gamma_c
    }

    /// `β_c / β_I`, undefined when `β_I = 0`.
    pub fn epsilon(&self) -> Option<Rational> {
        (!self.beta_i.is_zero()).then(|| self.beta_c / self.beta_i)
    }

    /// `γ_c / γ`, undefined when `γ = 0`.
    pub fn xi(&self) -> Option<Rational> {
        let gamma = self.gamma();
        (!gamma.is_zero()).then(|| self.gamma_c / gamma)
    }

    /// Multiply every quantity by `factor`.
    pub fn scaled(&self, factor: Rational) -> Self {
        ResourcePoint {
            alpha: self.alpha * factor,
            beta_i: self.beta_i * factor,
            beta_c: self.beta_c * factor,
            gamma_i: self.gamma_i * factor,
            gamma_c: self.gamma_c * factor,
        }
    }
}

pub(crate) fn check_unit_interval(v: Rational, err: fn(Rational) -> Error) -> Result<()> {
    if v.is_negative() || v > Rational::one() {
        Err(err(v))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn derived_counts() {
        let p = SystemParams::new(15, 8, 3).unwrap();
        assert_eq!(
            (p.nodes_per_cluster, p.intra_helpers, p.cross_helpers),
            (5, 4, 10)
        );
        let p = SystemParams::new(6, 5, 2).unwrap();
        assert_eq!(
            (p.nodes_per_cluster, p.intra_helpers, p.cross_helpers),
            (3, 2, 3)
        );
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            SystemParams::new(15, 4, 3),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            SystemParams::new(15, 16, 3),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            SystemParams::new(10, 6, 3),
            Err(Error::NonDivisible { .. })
        ));
        assert!(matches!(
            SystemParams::new(10, 6, 1),
            Err(Error::TooFewClusters(1))
        ));
        assert!(matches!(
            SystemParams::new(5, 3, 5),
            Err(Error::DegenerateCluster(1))
        ));
    }

    #[test]
    fn gamma_identity() {
        let p = SystemParams::new(15, 8, 3).unwrap();
        let rp = ResourcePoint::new(&p, r(1, 1), r(1, 2), r(1, 4)).unwrap();
        assert_eq!(rp.gamma(), r(4, 2) + r(10, 4));
        assert_eq!(rp.epsilon(), Some(r(1, 2)));
    }

    #[test]
    fn rejects_bad_bandwidths() {
        let p = SystemParams::new(6, 5, 2).unwrap();
        assert!(matches!(
            ResourcePoint::new(&p, r(1, 1), r(1, 4), r(1, 2)),
            Err(Error::BetaCExceedsBetaI { .. })
        ));
        assert!(matches!(
            ResourcePoint::new(&p, r(1, 1), r(0, 1), r(1, 2)),
            Err(Error::BetaCExceedsBetaI { .. })
        ));
        assert!(matches!(
            ResourcePoint::new(&p, r(-1, 1), r(1, 1), r(0, 1)),
            Err(Error::Negative { .. })
        ));
        assert!(matches!(
            ResourcePoint::from_gamma_epsilon(&p, r(1, 1), r(1, 1), r(3, 2)),
            Err(Error::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn zero_bandwidth_has_undefined_epsilon() {
        let p = SystemParams::new(6, 5, 2).unwrap();
        let rp = ResourcePoint::new(&p, r(1, 1), r(0, 1), r(0, 1)).unwrap();
        assert_eq!(rp.epsilon(), None);
        assert_eq!(rp.xi(), None);
    }

    #[test]
    fn gamma_epsilon_conversion() {
        let p = SystemParams::new(6, 5, 2).unwrap();
        let rp = ResourcePoint::from_gamma_epsilon(&p, r(10, 1), r(10, 1), r(0, 1)).unwrap();
        assert_eq!((rp.beta_i, rp.beta_c), (r(5, 1), r(0, 1)));
        let rp = ResourcePoint::from_gamma_epsilon(&p, r(10, 1), r(10, 1), r(1, 1)).unwrap();
        assert_eq!((rp.beta_i, rp.beta_c), (r(2, 1), r(2, 1)));
    }
}
