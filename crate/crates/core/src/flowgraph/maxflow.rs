use std::collections::VecDeque;

use super::{FlowGraph, COLLECTOR, SOURCE};
use crate::rational::{Extended, Rational};

/// Minimum `S`–`DC` cut with a witness source side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutValue {
    pub value: Extended,
    /// `source_side[v]` is true for vertices reachable from `S` in the final
    /// residual graph.
    pub source_side: Vec<bool>,
}

impl CutValue {
    /// Sum of capacities of edges leaving the witness source side.
    pub fn crossing_value(&self, g: &FlowGraph) -> Extended {
        let mut total = Rational::zero();
        for e in g.edges() {
            if self.source_side[e.tail] && !self.source_side[e.head] {
                match &e.capacity {
                    Extended::Finite(c) => total += *c,
                    Extended::Infinite => return Extended::Infinite,
                }
            }
        }
        Extended::Finite(total)
    }
}

struct Arc {
    to: usize,
    cap: i128,
}

struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            arcs: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![-1; n],
            next: vec![0; n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i128) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i128) -> i128 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

/// Exact max-flow/min-cut from `S` to `DC`.
///
/// Finite capacities are scaled to integers by their common denominator and
/// infinite edges get one more than the total finite capacity, so a flow that
/// reaches that value means no finite cut exists.
pub fn min_cut(g: &FlowGraph) -> CutValue {
    let scale = g.unit_scale();
    let scaled = |c: &Rational| c.numer() * (scale / c.denom());
    let finite_total: i128 = g
        .edges()
        .iter()
        .filter_map(|e| e.capacity.finite().map(|c| scaled(&c)))
        .sum();
    let big = finite_total + 1;

    let mut dinic = Dinic::new(g.vertex_count());
    for e in g.edges() {
        let cap = match &e.capacity {
            Extended::Finite(c) => scaled(c),
            Extended::Infinite => big,
        };
        dinic.add(e.tail, e.head, cap);
    }
    let flow = dinic.run(SOURCE, COLLECTOR);
    let value = if flow >= big {
        Extended::Infinite
    } else {
        Extended::Finite(Rational::new(flow, scale))
    };
    CutValue {
        value,
        source_side: dinic.reachable(SOURCE),
    }
}
