use crate::error::{Error, Result};

/// Binary extension field `GF(2^m)` for `m ∈ {8, 16}` using log/exp tables.
#[derive(Debug, Clone)]
pub struct BinaryField {
    bits: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl BinaryField {
    pub fn new(bits: u32) -> Result<Self> {
        let poly: u32 = match bits {
            8 => 0x11D,
            16 => 0x1100B,
            _ => return Err(Error::UnsupportedField(bits)),
        };
        let order = 1usize << bits;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order];
        let mut x: u32 = 1;
        for i in 0..order - 1 {
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << bits) != 0 {
                x ^= poly;
            }
        }
        for i in order - 1..2 * order {
            exp[i] = exp[i - (order - 1)];
        }
        Ok(BinaryField { bits, exp, log })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn order(&self) -> usize {
        1 << self.bits
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        self.exp[self.order() - 1 - self.log[a as usize] as usize]
    }

    /// Rank of the given row vectors by Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<u16>]) -> usize {
        let mut m: Vec<Vec<u16>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][c]);
            for v in m[rank].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in c..cols {
                        let t = self.mul(f, m[rank][j]);
                        m[i][j] ^= t;
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}
