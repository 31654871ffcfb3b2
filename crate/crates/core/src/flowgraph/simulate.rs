use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{add_newcomer, all_positions, FlowGraph, Position};
use crate::params::{ResourcePoint, SystemParams};

/// A failure/repair history without a data collector attached.
#[derive(Debug, Clone)]
pub struct RepairHistory {
    graph: FlowGraph,
    live: Vec<(Position, usize)>,
    k: usize,
}

impl RepairHistory {
    pub fn graph(&self) -> &FlowGraph {
        &self.graph
    }

    /// Current incarnation of each storage position, cluster-major.
    pub fn live(&self) -> &[(Position, usize)] {
        &self.live
    }

    /// The history with a collector on the current nodes at the given
    /// position indices.
    pub fn with_collector(&self, positions: &[usize]) -> FlowGraph {
        let mut g = self.graph.clone();
        for &i in positions {
            g.connect_collector(self.live[i].1);
        }
        g
    }

    /// Every `k`-subset of positions, in lexicographic order.
    pub fn collector_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.live.len();
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..self.k).collect();
        loop {
            out.push(cur.clone());
            let Some(i) = (0..self.k).rev().find(|&i| cur[i] != i + n - self.k) else {
                return out;
            };
            cur[i] += 1;
            for j in i + 1..self.k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
}

fn run_history(
    p: &SystemParams,
    r: &ResourcePoint,
    failure_count: usize,
    rng: &mut ChaCha8Rng,
) -> RepairHistory {
    let mut graph = FlowGraph::new();
    let mut live = Vec::with_capacity(p.n as usize);
    for pos in all_positions(p) {
        let node = graph.add_storage_node(pos, r.alpha);
        graph.connect_source(node);
        live.push((pos, node));
    }
    for _ in 0..failure_count {
        let failed = rng.gen_range(0..live.len());
        let pos = live[failed].0;
        live[failed].1 = add_newcomer(&mut graph, r, pos, &live, failed);
    }
    RepairHistory {
        graph,
        live,
        k: p.k as usize,
    }
}

/// Random failure/repair history, deterministic in `seed`.
pub fn simulate_history(
    p: &SystemParams,
    r: &ResourcePoint,
    failure_count: usize,
    seed: u64,
) -> RepairHistory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_history(p, r, failure_count, &mut rng)
}

/// Random history followed by a collector on a uniformly random `k`-subset of
/// the current nodes.
pub fn simulate_graph(
    p: &SystemParams,
    r: &ResourcePoint,
    failure_count: usize,
    seed: u64,
) -> FlowGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let history = run_history(p, r, failure_count, &mut rng);
    let mut chosen = sample(&mut rng, p.n as usize, p.k as usize).into_vec();
    chosen.sort_unstable();
    history.with_collector(&chosen)
}
