//! Standard Levi subgroups of `GL_n` as ordered compositions.

use crate::{Error, Result};
use std::ops::Range;

/// An ordered composition `(n_1, ..., n_m)` of `n`, fixing the standard
/// Levi `L = GL_{n_1} x ... x GL_{n_m}` inside the block-lower-triangular
/// parabolic `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviDatum {
    parts: Vec<usize>,
}

impl LeviDatum {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            let n = parts.iter().sum();
            return Err(Error::InvalidComposition { n, parts });
        }
        Ok(LeviDatum { parts })
    }

    /// Like [`LeviDatum::new`] but also checks the total.
    pub fn new_for(parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.iter().sum::<usize>() != n {
            return Err(Error::InvalidComposition { n, parts });
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks `m`.
    pub fn num_blocks(&self) -> usize {
        self.parts.len()
    }

    /// Ambient rank `n`.
    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }

    /// True unless this is the improper Levi `(n)`.
    pub fn is_proper(&self) -> bool {
        self.parts.len() > 1
    }

    /// Coordinate range of block `i`.
    pub fn block_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.parts[..i].iter().sum();
        start..start + self.parts[i]
    }

    pub fn block_ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        (0..self.parts.len()).map(|i| self.block_range(i))
    }

    /// Block index of coordinate `c`.
    pub fn block_of(&self, c: usize) -> usize {
        let mut acc = 0;
        for (i, &p) in self.parts.iter().enumerate() {
            acc += p;
            if c < acc {
                return i;
            }
        }
        panic!("coordinate {c} outside composition of {}", self.rank());
    }

    /// All compositions of `n`, ordered by decreasing number of parts and
    /// lexicographically within a part count. The finest Levi (the torus)
    /// comes first, the improper Levi `(n)` last. This is the search order
    /// of the HN-reducibility witness search.
    pub fn all_compositions(n: usize) -> Vec<LeviDatum> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for first in 1..=n {
                cur.push(first);
                rec(n - first, cur, out);
                cur.pop();
            }
        }
        rec(n, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        out.into_iter().map(|parts| LeviDatum { parts }).collect()
    }
}
