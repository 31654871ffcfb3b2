use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of clusters L = {clusters} must divide n = {nodes}")]
    NonDivisible { nodes: u32, clusters: u32 },

    #[error("need at least two clusters (L = {0})")]
    TooFewClusters(u32),

    #[error("k must exceed n_I and be at most n (k = {k}, n_I = {nodes_per_cluster}, n = {nodes})")]
    KOutOfRange {
        k: u32,
        nodes_per_cluster: u32,
        nodes: u32,
    },

    #[error("each cluster needs at least two nodes (n_I = {0})")]
    DegenerateCluster(u32),

    #[error("{name} must be nonnegative (got {value})")]
    Negative { name: &'static str, value: Rational },

    #[error("beta_c = {beta_c} exceeds beta_I = {beta_i}; cross-cluster bandwidth may not exceed intra-cluster bandwidth")]
    BetaCExceedsBetaI { beta_i: Rational, beta_c: Rational },

    #[error("epsilon = {0} is outside [0, 1]")]
    EpsilonOutOfRange(Rational),

    #[error("xi = {0} is outside [0, 1]")]
    XiOutOfRange(Rational),

    #[error("{name} must be positive (got {value})")]
    NotPositive { name: &'static str, value: Rational },

    #[error("invalid selection vector {0:?}")]
    InvalidSelection(Vec<u32>),

    #[error("ordering vector {0:?} does not match its selection vector")]
    OrderingMismatch(Vec<u32>),

    #[error("enumeration of {count} orderings exceeds the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },

    #[error("helper counts d_I = {d_i}, d_c = {d_c} out of range (1..={max_i}, 1..={max_c})")]
    HelperCountOutOfRange {
        d_i: u32,
        d_c: u32,
        max_i: u32,
        max_c: u32,
    },

    #[error("scaled graph needs {needed} unit sub-edges, above the limit of {limit}")]
    ScalingOverflow { needed: u128, limit: u128 },

    #[error("unsupported field size 2^{0}; use 8 or 16")]
    UnsupportedField(u32),

    #[error("bounds require gamma = alpha (gamma = {gamma}, alpha = {alpha})")]
    NotBandwidthLimited { alpha: Rational, gamma: Rational },

    #[error("minimum-storage condition is vacuous when k = n")]
    KEqualsN,

    #[error("alpha = {alpha} is below the epsilon = 0 minimum storage {minimum}")]
    InfeasibleAlpha { alpha: Rational, minimum: Rational },

    #[error("cannot parse '{0}' as an exact rational")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
