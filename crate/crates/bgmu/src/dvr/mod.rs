//! Exact linear algebra over the discrete valuation ring `Z_(p)`.
//!
//! The DVR is the localization of the integers at a prime `p`, modeled by
//! arbitrary-precision rationals together with the p-adic valuation. The
//! type of an invertible matrix is its vector of elementary-divisor
//! exponents, i.e. the Cartan double-coset invariant.

#![allow(clippy::needless_range_loop)]

pub mod quotient;

pub use quotient::{verify_quotient_lemma, verify_quotient_lemma_all, QuotientReport, VerifyBudget};

use crate::levi::LeviDatum;
use crate::rational::{is_prime, valuation, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// A square matrix over the fraction field of `Z_(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DvrMatrix {
    entries: Vec<Vec<Rat>>,
    prime: u64,
}

impl DvrMatrix {
    pub fn new(entries: Vec<Vec<Rat>>, prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(Error::PreconditionFailed(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(DvrMatrix { entries, prime })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }
}

/// Elementary-divisor exponents, weakly decreasing. Entries may be negative
/// for matrices that are integral only up to a power of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixType(pub Vec<i64>);

impl MatrixType {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(MatrixType(exponents))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }
}

/// The shape `(k_1 >= ... >= k_n >= 0)` of a finite torsion module
/// `R/m^{k_1} + ... + R/m^{k_n}` over a DVR.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleShape(pub Vec<u32>);

impl ModuleShape {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(ModuleShape(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_length(&self) -> u64 {
        self.0.iter().map(|&k| k as u64).sum()
    }
}

/// The type of `g`: exponents of the Smith normal form over `Z_(p)`.
///
/// Pivoting picks the entry of minimal valuation, ties broken by smallest
/// `(row, column)`; the pivot row and column are then cleared with
/// multipliers in `Z_(p)`, so the exponents come out deterministically and
/// the result is invariant under left/right multiplication by matrices that
/// are unimodular over `Z_(p)`.
pub fn matrix_type(g: &DvrMatrix) -> Result<MatrixType> {
    let n = g.size();
    let p = g.prime();
    let mut a = g.entries.clone();
    let mut exponents = Vec::with_capacity(n);
    for step in 0..n {
        // Minimal-valuation pivot in the trailing minor.
        let mut pivot: Option<(i64, usize, usize)> = None;
        for i in step..n {
            for j in step..n {
                if let Some(v) = valuation(&a[i][j], p) {
                    let better = match pivot {
                        None => true,
                        Some((bv, _, _)) => v < bv,
                    };
                    if better {
                        pivot = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = pivot else {
            // The whole minor is zero, so det(g) = 0.
            return Err(Error::SingularMatrix);
        };
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        let pivot_val = a[step][step].clone();
        for i in step + 1..n {
            if !a[i][step].is_zero() {
                let factor = &a[i][step] / &pivot_val;
                for j in step..n {
                    let sub = &factor * &a[step][j];
                    a[i][j] -= sub;
                }
            }
        }
        for j in step + 1..n {
            if !a[step][j].is_zero() {
                let factor = &a[step][j] / &pivot_val;
                for i in step..n {
                    let sub = &factor * &a[i][step];
                    a[i][j] -= sub;
                }
            }
        }
        exponents.push(v);
    }
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    Ok(MatrixType(exponents))
}

/// Partial sum `k_1 + ... + k_j`: the maximal length of a quotient of the
/// module generated by `j` elements.
pub fn quotient_length_bound(shape: &ModuleShape, j: i64) -> Result<u64> {
    let n = shape.0.len();
    if j < 0 || j as usize > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    Ok(shape.0[..j as usize].iter().map(|&k| k as u64).sum())
}

fn block_submatrix(g: &DvrMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<Rat>> {
    rows.map(|i| cols.clone().map(|j| g.entries[i][j].clone()).collect())
        .collect()
}

/// Check membership in the block-lower-triangular parabolic `P(F)`:
/// strictly-upper blocks vanish and the diagonal blocks are invertible.
fn check_in_parabolic(g: &DvrMatrix, levi: &LeviDatum) -> Result<()> {
    if levi.rank() != g.size() {
        return Err(Error::InvalidComposition {
            n: g.size(),
            parts: levi.parts().to_vec(),
        });
    }
    let m = levi.num_blocks();
    for bi in 0..m {
        for bj in bi + 1..m {
            for i in levi.block_range(bi) {
                for j in levi.block_range(bj) {
                    if !g.entries[i][j].is_zero() {
                        return Err(Error::NotInParabolic(format!(
                            "entry ({i}, {j}) above the block diagonal is nonzero"
                        )));
                    }
                }
            }
        }
    }
    for bi in 0..m {
        let r = levi.block_range(bi);
        let block = block_submatrix(g, r.clone(), r);
        if det(&block).is_zero() {
            return Err(Error::NotInParabolic(format!(
                "diagonal block {bi} is singular"
            )));
        }
    }
    Ok(())
}

/// Determinant by fraction-free-ish Gaussian elimination over the rationals.
fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut result = Rat::new(1.into(), 1.into());
    for step in 0..n {
        let Some(pi) = (step..n).find(|&i| !m[i][step].is_zero()) else {
            return Rat::zero();
        };
        if pi != step {
            m.swap(step, pi);
            result = -result;
        }
        let pivot = m[step][step].clone();
        result *= &pivot;
        for i in step + 1..n {
            if !m[i][step].is_zero() {
                let factor = &m[i][step] / &pivot;
                for j in step..n {
                    let sub = &factor * &m[step][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    result
}

/// Inverse of an invertible rational matrix, by Gauss-Jordan.
fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::new(1.into(), 1.into()) } else { Rat::zero() })
                .collect()
        })
        .collect();
    for step in 0..n {
        let pi = (step..n).find(|&i| !m[i][step].is_zero())?;
        m.swap(step, pi);
        inv.swap(step, pi);
        let pivot = m[step][step].clone();
        for j in 0..n {
            m[step][j] /= &pivot;
            inv[step][j] /= &pivot;
        }
        for i in 0..n {
            if i != step && !m[i][step].is_zero() {
                let factor = m[i][step].clone();
                for j in 0..n {
                    let sub = &factor * &m[step][j];
                    m[i][j] -= sub;
                    let sub = &factor * &inv[step][j];
                    inv[i][j] -= sub;
                }
            }
        }
    }
    Some(inv)
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let add = &a[i][l] * &b[l][j];
                out[i][j] += add;
            }
        }
    }
    out
}

/// Image of `g` in the Levi quotient, as the block-diagonal matrix of its
/// diagonal blocks. Requires `g` to lie in `P(F)`.
pub fn levi_projection(g: &DvrMatrix, levi: &LeviDatum) -> Result<DvrMatrix> {
    check_in_parabolic(g, levi)?;
    let n = g.size();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for r in levi.block_ranges() {
        for i in r.clone() {
            for j in r.clone() {
                out[i][j] = g.entries[i][j].clone();
            }
        }
    }
    DvrMatrix::new(out, g.prime())
}

/// Verdict of the Levi-projection integrality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlgVerdict {
    /// Every trailing corner `(g_ij)_{i,j > N_l}` has type `(k_{N_l+1}, ..., k_n)`.
    pub hypothesis_holds: bool,
    /// `g_L^{-1} g` lies in `P(Z_(p))`.
    pub conclusion_holds: bool,
}

/// Check both sides of the implication "trailing types correct implies
/// `g_L^{-1} g` integral".
///
/// The hypothesis inspects, for each `0 <= l < m`, the trailing corner of
/// `g` starting at block `l`; the conclusion demands that every entry of
/// `g_L^{-1} g` has valuation >= 0 (its diagonal blocks are then identity
/// blocks, so integrality alone puts it in `P(Z_(p))`). Both sides are
/// insensitive to scaling `g` by a power of `p`, so types with negative
/// entries need no separate normalization.
pub fn glg_check(g: &DvrMatrix, levi: &LeviDatum, ty: &MatrixType) -> Result<GlgVerdict> {
    check_in_parabolic(g, levi)?;
    let n = g.size();
    if ty.0.len() != n {
        return Err(Error::LengthMismatch {
            left: ty.0.len(),
            right: n,
        });
    }
    let p = g.prime();

    let mut hypothesis_holds = true;
    let mut offset = 0usize;
    for l in 0..levi.num_blocks() {
        let trailing = block_submatrix(g, offset..n, offset..n);
        let trailing = DvrMatrix::new(trailing, p)?;
        match matrix_type(&trailing) {
            Ok(t) => {
                if t.exponents() != &ty.0[offset..] {
                    hypothesis_holds = false;
                    break;
                }
            }
            Err(Error::SingularMatrix) => {
                hypothesis_holds = false;
                break;
            }
            Err(e) => return Err(e),
        }
        offset += levi.parts()[l];
    }

    let gl = levi_projection(g, levi)?;
    let gl_inv = invert(gl.entries()).expect("diagonal blocks are invertible");
    let h = mat_mul(&gl_inv, &g.entries);
    let conclusion_holds = h
        .iter()
        .flatten()
        .all(|x| valuation(x, p).is_none_or(|v| v >= 0));

    Ok(GlgVerdict {
        hypothesis_holds,
        conclusion_holds,
    })
}
