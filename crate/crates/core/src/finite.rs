//! Table-driven arithmetic for pastures with a finite unit group.
//!
//! Units are numbered by their position in [`AbelianGroup::elements`].

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::pasture::Pasture;

pub(crate) const TABLE_LIMIT: usize = 1 << 12;

#[derive(Debug, Clone)]
pub(crate) struct FiniteTable {
    pub radices: Vec<usize>,
    pub n: usize,
    pub mul: Vec<u32>,
    pub one: u32,
    pub eps: u32,
    null: HashSet<[u32; 3]>,
}

impl FiniteTable {
    pub fn new(p: &Pasture) -> Result<Self> {
        let g = p.units();
        let radices = g.small_torsion()?;
        let n: usize = radices.iter().product();
        if n > TABLE_LIMIT {
            return Err(Error::SearchSpaceExceeded {
                size: n.to_string(),
                cap: TABLE_LIMIT as u64,
            });
        }
        let decode = |mut i: usize| {
            let mut c = vec![0usize; radices.len()];
            for j in (0..radices.len()).rev() {
                c[j] = i % radices[j];
                i /= radices[j];
            }
            c
        };
        let encode = |c: &[usize]| c.iter().zip(&radices).fold(0usize, |acc, (x, r)| acc * r + x);
        let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<usize> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&radices)
                    .map(|((x, y), r)| (x + y) % r)
                    .collect();
                mul[a * n + b] = encode(&s) as u32;
            }
        }
        let eps = g.index_of(p.epsilon()) as u32;
        let mut t = FiniteTable {
            radices,
            n,
            mul,
            one: 0,
            eps,
            null: HashSet::new(),
        };
        for o in p.null_orbits() {
            let r: Vec<u32> = o.representative().iter().map(|x| g.index_of(x) as u32).collect();
            for u in 0..n as u32 {
                let mut s = [t.m(u, r[0]), t.m(u, r[1]), t.m(u, r[2])];
                s.sort_unstable();
                t.null.insert(s);
            }
        }
        Ok(t)
    }

    #[inline]
    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn null_units(&self, a: u32, b: u32, c: u32) -> bool {
        let mut s = [a, b, c];
        s.sort_unstable();
        self.null.contains(&s)
    }

    /// Null test with `None` standing for zero.
    pub fn null(&self, a: Option<u32>, b: Option<u32>, c: Option<u32>) -> bool {
        match (a, b, c) {
            (Some(x), Some(y), Some(z)) => self.null_units(x, y, z),
            (None, None, None) => true,
            (Some(x), Some(y), None) | (Some(x), None, Some(y)) | (None, Some(x), Some(y)) => {
                y == self.m(self.eps, x)
            }
            _ => false,
        }
    }

    /// Exponent of the group, the lcm of the invariant factors.
    pub fn exponent(&self) -> usize {
        self.radices.iter().fold(1usize, |a, &r| a.lcm(&r))
    }

    /// Index of `x^k` for a unit given by index.
    pub fn pow(&self, x: u32, k: &BigInt) -> u32 {
        let e = self.exponent();
        let k = k.mod_floor(&BigInt::from(e)).to_usize().unwrap();
        let mut r = self.one;
        for _ in 0..k {
            r = self.m(r, x);
        }
        r
    }
}

/// Reduces canonical coordinates of a source element modulo `e`.
pub(crate) fn small_coords(x: &GroupElement, e: usize) -> Vec<usize> {
    let e = BigInt::from(e);
    x.coords().iter().map(|c| c.mod_floor(&e).to_usize().unwrap()).collect()
}
