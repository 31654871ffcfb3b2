//! Brute-force capacity by enumerating which clusters the data collector's
//! nodes come from (selection vectors) and the order they were repaired in
//! (ordering vectors).
//!
//! Cluster labels in selection and ordering vectors are 1-based.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{ResourcePoint, SystemParams};
use crate::rational::Rational;

/// Default cap on orderings enumerated per selection vector.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Counts of contacted nodes per cluster, sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelectionVector(Vec<u32>);

impl SelectionVector {
    /// Rejects vectors that are not sorted nonincreasing, have an entry above
    /// `n_I`, have the wrong length, or do not sum to `k`.
    pub fn new(p: &SystemParams, counts: Vec<u32>) -> Result<Self> {
        let ok = counts.len() == p.clusters as usize
            && counts.iter().all(|&c| c <= p.nodes_per_cluster)
            && counts.windows(2).all(|w| w[0] >= w[1])
            && counts.iter().sum::<u32>() == p.k;
        if ok {
            Ok(SelectionVector(counts))
        } else {
            Err(Error::InvalidSelection(counts))
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `k! / Π s_l!`, the number of distinct ordering vectors.
    pub fn ordering_count(&self) -> u128 {
        multinomial(&self.0)
    }
}

/// Cluster label of each contacted node in repair order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderingVector(Vec<u32>);

impl OrderingVector {
    pub fn new(s: &SelectionVector, labels: Vec<u32>) -> Result<Self> {
        let mut counts = vec![0u32; s.0.len()];
        for &l in &labels {
            if l == 0 || l as usize > counts.len() {
                return Err(Error::OrderingMismatch(labels));
            }
            counts[l as usize - 1] += 1;
        }
        if counts != s.0 {
            return Err(Error::OrderingMismatch(labels));
        }
        Ok(OrderingVector(labels))
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    fn matches(&self, s: &SelectionVector) -> bool {
        let mut counts = vec![0u32; s.0.len()];
        for &l in &self.0 {
            match counts.get_mut((l as usize).wrapping_sub(1)) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        counts == s.0
    }
}

fn multinomial(counts: &[u32]) -> u128 {
    let mut result: u128 = 1;
    let mut placed: u128 = 0;
    for &c in counts {
        for i in 1..=u128::from(c) {
            placed += 1;
            // C(placed, i) built incrementally; the division is exact.
            result = result.saturating_mul(placed) / i;
        }
    }
    result
}

/// All partitions of `k` into at most `L` parts of size at most `n_I`,
/// padded with zeros to length `L`, in lexicographically decreasing order.
pub fn enumerate_selection_vectors(p: &SystemParams) -> Vec<SelectionVector> {
    fn rec(remaining: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if remaining > max_part * slots as u32 {
            return;
        }
        for part in (0..=max_part.min(remaining)).rev() {
            cur.push(part);
            rec(remaining - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        p.k,
        p.nodes_per_cluster,
        p.clusters as usize,
        &mut Vec::new(),
        &mut out,
    );
    out.into_iter().map(SelectionVector).collect()
}

/// Streams every distinct ordering vector for `s` in lexicographic order.
pub fn enumerate_ordering_vectors(
    s: &SelectionVector,
    cap: u128,
) -> Result<impl Iterator<Item = OrderingVector>> {
    let count = s.ordering_count();
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    let first: Vec<u32> = s
        .0
        .iter()
        .enumerate()
        .flat_map(|(l, &c)| std::iter::repeat_n(l as u32 + 1, c as usize))
        .collect();
    Ok(MultisetPermutations { next: Some(first) })
}

struct MultisetPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for MultisetPermutations {
    type Item = OrderingVector;

    fn next(&mut self) -> Option<OrderingVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(OrderingVector(current))
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Round-robin ordering over clusters that still have contacted nodes,
/// jumping back to cluster 1 whenever the current cluster is exhausted.
pub fn vertical_ordering(s: &SelectionVector) -> OrderingVector {
    let mut remaining = s.0.clone();
    let clusters = remaining.len();
    let k = s.k() as usize;
    let mut labels = Vec::with_capacity(k);
    let mut l = 0usize;
    for _ in 0..k {
        if remaining[l] == 0 {
            l = 0;
        }
        labels.push(l as u32 + 1);
        remaining[l] -= 1;
        l = (l + 1) % clusters;
    }
    OrderingVector(labels)
}

/// Fill whole clusters first: `s_i = n_I` for `i ≤ ⌊k/n_I⌋`, then the remainder.
pub fn horizontal_selection(p: &SystemParams) -> SelectionVector {
    let full = p.k / p.nodes_per_cluster;
    let rem = p.k % p.nodes_per_cluster;
    let counts = (0..p.clusters)
        .map(|i| match i.cmp(&full) {
            std::cmp::Ordering::Less => p.nodes_per_cluster,
            std::cmp::Ordering::Equal => rem,
            std::cmp::Ordering::Greater => 0,
        })
        .collect();
    SelectionVector(counts)
}

/// `Σ_i min{α, a_i β_I + (n - i - a_i) β_c}` where `a_i` counts the same-cluster
/// helpers of the `i`-th node that are not among the earlier contacted nodes.
pub fn cut_lower_bound(
    p: &SystemParams,
    r: &ResourcePoint,
    s: &SelectionVector,
    pi: &OrderingVector,
) -> Result<Rational> {
    if !pi.matches(s) {
        return Err(Error::OrderingMismatch(pi.0.clone()));
    }
    let mut seen = vec![0u32; s.0.len()];
    let mut total = Rational::zero();
    for (idx, &l) in pi.0.iter().enumerate() {
        let i = idx as u32 + 1;
        let slot = &mut seen[l as usize - 1];
        let a = p.nodes_per_cluster - 1 - *slot;
        *slot += 1;
        let omega = Rational::from(a) * r.beta_i + Rational::from(p.n - i - a) * r.beta_c;
        total += r.alpha.min(omega);
    }
    Ok(total)
}

/// The minimizing selection/ordering pair found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub capacity: Rational,
    pub selection: SelectionVector,
    pub ordering: OrderingVector,
}

/// Depth-first minimum over all orderings of `s`, with `term(i, e)` giving the
/// `i`-th summand (1-based) when `e` earlier nodes share its cluster.
/// Branches whose partial sum already reaches `bound` are pruned.
fn min_over_orderings<F>(s: &SelectionVector, bound: Option<Rational>, term: &F) -> Option<(Rational, Vec<u32>)>
where
    F: Fn(u32, u32) -> Rational,
{
    struct Search<'a, F> {
        term: &'a F,
        remaining: Vec<u32>,
        used: Vec<u32>,
        path: Vec<u32>,
        k: usize,
        best: Option<(Rational, Vec<u32>)>,
        bound: Option<Rational>,
    }

    impl<F: Fn(u32, u32) -> Rational> Search<'_, F> {
        fn limit(&self) -> Option<Rational> {
            match (&self.best, self.bound) {
                (Some((b, _)), Some(c)) => Some((*b).min(c)),
                (Some((b, _)), None) => Some(*b),
                (None, c) => c,
            }
        }

        fn go(&mut self, partial: Rational) {
            if let Some(lim) = self.limit() {
                if partial >= lim {
                    return;
                }
            }
            if self.path.len() == self.k {
                self.best = Some((partial, self.path.clone()));
                return;
            }
            let i = self.path.len() as u32 + 1;
            for l in 0..self.remaining.len() {
                if self.remaining[l] == 0 {
                    continue;
                }
                let t = (self.term)(i, self.used[l]);
                self.remaining[l] -= 1;
                self.used[l] += 1;
                self.path.push(l as u32 + 1);
                self.go(partial + t);
                self.path.pop();
                self.used[l] -= 1;
                self.remaining[l] += 1;
            }
        }
    }

    let mut search = Search {
        term,
        remaining: s.0.clone(),
        used: vec![0; s.0.len()],
        path: Vec::with_capacity(s.k() as usize),
        k: s.k() as usize,
        best: None,
        bound,
    };
    search.go(Rational::zero());
    search.best
}

fn minimize_over_selections<F>(p: &SystemParams, cap: u128, term: F) -> Result<BruteForceResult>
where
    F: Fn(u32, u32) -> Rational + Sync,
{
    let selections = enumerate_selection_vectors(p);
    for s in &selections {
        let count = s.ordering_count();
        if count > cap {
            return Err(Error::EnumerationTooLarge { count, cap });
        }
    }
    // Each selection vector is searched independently; the per-partition
    // minima are merged in enumeration order so the witness is deterministic.
    let minima: Vec<(Rational, Vec<u32>)> = selections
        .par_iter()
        .map(|s| min_over_orderings(s, None, &term).expect("nonempty ordering set"))
        .collect();
    let (idx, (value, labels)) = minima
        .into_iter()
        .enumerate()
        .min_by(|(ia, (a, _)), (ib, (b, _))| a.cmp(b).then(ia.cmp(ib)))
        .expect("at least one selection vector");
    Ok(BruteForceResult {
        capacity: value,
        selection: selections[idx].clone(),
        ordering: OrderingVector(labels),
    })
}

/// Exact minimum of [`cut_lower_bound`] over every selection and ordering vector.
pub fn brute_force_capacity(p: &SystemParams, r: &ResourcePoint) -> Result<BruteForceResult> {
    brute_force_capacity_with_cap(p, r, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_capacity_with_cap(
    p: &SystemParams,
    r: &ResourcePoint,
    cap: u128,
) -> Result<BruteForceResult> {
    let n_i = p.nodes_per_cluster;
    let n = p.n;
    let (alpha, beta_i, beta_c) = (r.alpha, r.beta_i, r.beta_c);
    minimize_over_selections(p, cap, move |i, earlier_same| {
        let a = n_i - 1 - earlier_same;
        alpha.min(Rational::from(a) * beta_i + Rational::from(n - i - a) * beta_c)
    })
}

/// Capacity when each newcomer uses only `d_i` intra-cluster and `d_c`
/// cross-cluster helpers, holding the totals `γ_I` and `γ_c` of `r` fixed.
pub fn general_capacity(
    p: &SystemParams,
    d_i: u32,
    d_c: u32,
    r: &ResourcePoint,
) -> Result<Rational> {
    general_capacity_with_cap(p, d_i, d_c, r, DEFAULT_ENUMERATION_CAP)
}

pub fn general_capacity_with_cap(
    p: &SystemParams,
    d_i: u32,
    d_c: u32,
    r: &ResourcePoint,
    cap: u128,
) -> Result<Rational> {
    if d_i < 1 || d_i > p.intra_helpers || d_c < 1 || d_c > p.cross_helpers {
        return Err(Error::HelperCountOutOfRange {
            d_i,
            d_c,
            max_i: p.intra_helpers,
            max_c: p.cross_helpers,
        });
    }
    let gamma = r.gamma();
    let beta_i = r.gamma_i / Rational::from(d_i);
    let beta_c = r.gamma_c / Rational::from(d_c);
    let alpha = r.alpha;
    let result = minimize_over_selections(p, cap, move |i, e| {
        let omega = gamma
            - Rational::from(d_i.min(e)) * beta_i
            - Rational::from(d_c.min(i - 1 - e)) * beta_c;
        alpha.min(omega)
    })?;
    Ok(result.capacity)
}
