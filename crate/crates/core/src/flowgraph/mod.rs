//! Information flow graphs: construction, exact min-cut and coding checks.
//!
//! Vertex `0` is the source, vertex `1` the data collector, and storage node
//! `v` owns vertices `2 + 2v` (input half) and `3 + 2v` (output half).

mod maxflow;
mod gf;
mod rlnc;
mod simulate;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::capacity::g_vector;
use crate::error::{Error, Result};
use crate::params::{ResourcePoint, SystemParams};
use crate::rational::{common_denominator, Extended, Rational};

pub use gf::BinaryField;
pub use maxflow::{min_cut, CutValue};
pub use rlnc::{rlnc_rank, rlnc_rank_with_limit, DEFAULT_SUB_EDGE_LIMIT};
pub use simulate::{simulate_graph, simulate_history, RepairHistory};

pub type VertexId = usize;

pub const SOURCE: VertexId = 0;
pub const COLLECTOR: VertexId = 1;

/// Cluster and slot of a storage node, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub cluster: u32,
    pub slot: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: Extended,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowGraph {
    placement: Vec<Position>,
    edges: Vec<Edge>,
}

impl FlowGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn input(node: usize) -> VertexId {
        2 + 2 * node
    }

    pub fn output(node: usize) -> VertexId {
        3 + 2 * node
    }

    /// Adds a storage node with its `α` in→out edge and returns its index.
    pub fn add_storage_node(&mut self, position: Position, alpha: Rational) -> usize {
        let node = self.placement.len();
        self.placement.push(position);
        self.add_edge(
            Self::input(node),
            Self::output(node),
            Extended::Finite(alpha),
        );
        node
    }

    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, capacity: Extended) {
        self.edges.push(Edge {
            tail,
            head,
            capacity,
        });
    }

    pub fn connect_source(&mut self, node: usize) {
        self.add_edge(SOURCE, Self::input(node), Extended::Infinite);
    }

    pub fn connect_collector(&mut self, node: usize) {
        self.add_edge(Self::output(node), COLLECTOR, Extended::Infinite);
    }

    /// Removes every edge `tail → head`; returns how many were removed.
    pub fn remove_edge(&mut self, tail: VertexId, head: VertexId) -> usize {
        let before = self.edges.len();
        self.edges.retain(|e| !(e.tail == tail && e.head == head));
        before - self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 + 2 * self.placement.len()
    }

    pub fn storage_node_count(&self) -> usize {
        self.placement.len()
    }

    pub fn placement(&self, node: usize) -> Position {
        self.placement[node]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Nodes that feed the data collector, in edge order.
    pub fn collector_nodes(&self) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.head == COLLECTOR)
            .map(|e| (e.tail - 2) / 2)
            .collect()
    }

    /// Kahn's algorithm; `None` if the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let nv = self.vertex_count();
        let mut indeg = vec![0usize; nv];
        let mut adj = vec![Vec::new(); nv];
        for e in &self.edges {
            indeg[e.head] += 1;
            adj[e.tail].push(e.head);
        }
        let mut stack: Vec<VertexId> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        stack.reverse();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in adj[v].iter().rev() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == nv).then_some(order)
    }

    /// Smallest positive integer that turns every finite capacity into an integer.
    pub fn unit_scale(&self) -> i128 {
        common_denominator(self.edges.iter().filter_map(|e| match &e.capacity {
            Extended::Finite(c) => Some(c),
            Extended::Infinite => None,
        }))
    }

    pub fn vertex_name(v: VertexId) -> String {
        match v {
            SOURCE => "S".to_string(),
            COLLECTOR => "DC".to_string(),
            _ => {
                let node = (v - 2) / 2 + 1;
                let half = if v.is_multiple_of(2) { "in" } else { "out" };
                format!("x{node}_{half}")
            }
        }
    }

    /// Text dump: a header naming the source, collector and node placements,
    /// then one `tail -> head capacity` line per edge (`inf` when unbounded).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "source S").unwrap();
        writeln!(out, "sink DC").unwrap();
        for (i, pos) in self.placement.iter().enumerate() {
            writeln!(out, "node x{} cluster {} slot {}", i + 1, pos.cluster, pos.slot).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "{} -> {} {}",
                Self::vertex_name(e.tail),
                Self::vertex_name(e.head),
                e.capacity
            )
            .unwrap();
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<FlowGraph> {
        let bad = |line: &str| Error::Parse(line.to_string());
        let mut placement = Vec::new();
        let mut edges = Vec::new();
        let mut names: HashMap<String, VertexId> = HashMap::new();
        names.insert("S".into(), SOURCE);
        names.insert("DC".into(), COLLECTOR);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["source", "S"] | ["sink", "DC"] => {}
                ["node", name, "cluster", c, "slot", s] => {
                    let idx = placement.len();
                    if *name != format!("x{}", idx + 1) {
                        return Err(bad(line));
                    }
                    placement.push(Position {
                        cluster: c.parse().map_err(|_| bad(line))?,
                        slot: s.parse().map_err(|_| bad(line))?,
                    });
                    names.insert(format!("{name}_in"), Self::input(idx));
                    names.insert(format!("{name}_out"), Self::output(idx));
                }
                [tail, "->", head, cap] => {
                    let tail = *names.get(*tail).ok_or_else(|| bad(line))?;
                    let head = *names.get(*head).ok_or_else(|| bad(line))?;
                    let capacity = if *cap == "inf" {
                        Extended::Infinite
                    } else {
                        Extended::Finite(cap.parse()?)
                    };
                    edges.push(Edge {
                        tail,
                        head,
                        capacity,
                    });
                }
                _ => return Err(bad(line)),
            }
        }
        Ok(FlowGraph { placement, edges })
    }
}

/// `(i_t, j_t)` for `t = 1..=k`: column `i_t` is the first with cumulative
/// `g` reaching `t`; `j_t` is the offset inside that column. The newcomer for
/// step `t` sits in cluster `j_t`, slot `i_t`.
pub fn newcomer_positions(p: &SystemParams) -> Vec<Position> {
    let g = g_vector(p);
    let mut out = Vec::with_capacity(p.k as usize);
    for (col, &gi) in g.iter().enumerate() {
        for j in 1..=gi {
            out.push(Position {
                cluster: j,
                slot: col as u32 + 1,
            });
        }
    }
    out
}

fn all_positions(p: &SystemParams) -> Vec<Position> {
    (1..=p.clusters)
        .flat_map(|cluster| (1..=p.nodes_per_cluster).map(move |slot| Position { cluster, slot }))
        .collect()
}

/// Graph attaining the capacity: the first `k` original nodes fail in turn and
/// are replaced at the positions of [`newcomer_positions`]; the collector
/// contacts exactly the `k` newcomers.
pub fn build_gstar(p: &SystemParams, r: &ResourcePoint) -> FlowGraph {
    let newcomer = newcomer_positions(p);
    let mut initial = newcomer.clone();
    initial.extend(all_positions(p).into_iter().filter(|pos| !newcomer.contains(pos)));

    let mut g = FlowGraph::new();
    let mut live: Vec<(Position, usize)> = Vec::with_capacity(p.n as usize);
    for pos in initial {
        let node = g.add_storage_node(pos, r.alpha);
        g.connect_source(node);
        live.push((pos, node));
    }
    let mut collected = Vec::with_capacity(p.k as usize);
    for t in 0..p.k as usize {
        let pos = live[t].0;
        let node = add_newcomer(&mut g, r, pos, &live, t);
        live[t].1 = node;
        collected.push(node);
    }
    for node in collected {
        g.connect_collector(node);
    }
    g
}

/// Adds a node at `pos` helped by every live node other than `live[failed]`.
pub(crate) fn add_newcomer(
    g: &mut FlowGraph,
    r: &ResourcePoint,
    pos: Position,
    live: &[(Position, usize)],
    failed: usize,
) -> usize {
    let node = g.add_storage_node(pos, r.alpha);
    for (idx, &(hpos, helper)) in live.iter().enumerate() {
        if idx == failed {
            continue;
        }
        let beta = if hpos.cluster == pos.cluster {
            r.beta_i
        } else {
            r.beta_c
        };
        g.add_edge(
            FlowGraph::output(helper),
            FlowGraph::input(node),
            Extended::Finite(beta),
        );
    }
    node
}
