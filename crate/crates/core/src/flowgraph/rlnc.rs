use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BinaryField, FlowGraph, COLLECTOR, SOURCE};
use crate::error::{Error, Result};
use crate::rational::Extended;

pub const DEFAULT_SUB_EDGE_LIMIT: u128 = 10_000;

/// Random linear network coding over the graph; returns the rank of the
/// coding vectors that reach the data collector.
///
/// Finite capacities are scaled to integer unit counts by their common
/// denominator. Each unit sub-edge carries a uniformly random combination of
/// everything entering its tail; infinite edges forward all of it.
pub fn rlnc_rank(g: &FlowGraph, file_units: usize, field_bits: u32, seed: u64) -> Result<usize> {
    rlnc_rank_with_limit(g, file_units, field_bits, seed, DEFAULT_SUB_EDGE_LIMIT)
}

pub fn rlnc_rank_with_limit(
    g: &FlowGraph,
    file_units: usize,
    field_bits: u32,
    seed: u64,
    limit: u128,
) -> Result<usize> {
    let field = BinaryField::new(field_bits)?;
    let scale = g.unit_scale();
    let mut units = Vec::with_capacity(g.edges().len());
    let mut needed: u128 = 0;
    for e in g.edges() {
        let u = e.capacity.finite().map(|c| c.numer() * (scale / c.denom()));
        if let Some(u) = u {
            needed += u as u128;
        }
        units.push(u);
    }
    if needed > limit {
        return Err(Error::ScalingOverflow { needed, limit });
    }
    let order = g
        .topological_order()
        .expect("information flow graphs are acyclic");

    let mut out_edges = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        out_edges[e.tail].push(i);
    }
    let mut received: Vec<Vec<Vec<u16>>> = vec![Vec::new(); g.vertex_count()];
    received[SOURCE] = (0..file_units)
        .map(|i| {
            let mut v = vec![0u16; file_units];
            v[i] = 1;
            v
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field_order = field.order();
    for v in order {
        if v == COLLECTOR {
            continue;
        }
        let incoming = std::mem::take(&mut received[v]);
        for &ei in &out_edges[v] {
            let head = g.edges()[ei].head;
            match (&g.edges()[ei].capacity, units[ei]) {
                (Extended::Infinite, _) => received[head].extend(incoming.iter().cloned()),
                (Extended::Finite(_), Some(count)) => {
                    for _ in 0..count {
                        let mut sym = vec![0u16; file_units];
                        for src in &incoming {
                            let coef = rng.gen_range(0..field_order) as u16;
                            if coef == 0 {
                                continue;
                            }
                            for (s, &x) in sym.iter_mut().zip(src) {
                                *s ^= field.mul(coef, x);
                            }
                        }
                        received[head].push(sym);
                    }
                }
                (Extended::Finite(_), None) => unreachable!(),
            }
        }
    }
    Ok(field.rank(&received[COLLECTOR]))
}
