//! Root-datum combinatorics of split `GL_n`: dominance order, Weyl
//! conjugacy, half-sums of roots and classes in `pi_1` of a Levi.
//!
//! Positivity is fixed by the upper-triangular Borel, so the positive roots
//! are `e_i - e_j` with `i < j` and the dominant cocharacters are the weakly
//! decreasing vectors. Since the group is split, the Galois action on
//! cocharacters is trivial; [`galois_average`] and [`mu_natural`] exist so
//! the API matches the usual symbols, but they are the identity and the
//! blockwise class map respectively.

use crate::levi::LeviDatum;
use crate::rational::{rat, rat_int, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// An integral cocharacter of the diagonal torus, as its coordinate vector.
pub type Cocharacter = Vec<i64>;

/// A rational coweight, e.g. a Newton point or a difference of them.
pub type RationalVector = Vec<Rat>;

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

pub fn to_rational(mu: &[i64]) -> RationalVector {
    mu.iter().map(|&c| rat_int(c)).collect()
}

pub fn is_dominant(mu: &[i64]) -> bool {
    mu.windows(2).all(|w| w[0] >= w[1])
}

/// Dominance order: `x <= y` iff `y - x` is a non-negative rational
/// combination of simple coroots `e_i - e_{i+1}`. Concretely: every proper
/// partial sum of `x` is at most that of `y`, and the totals agree. Neither
/// argument needs to be dominant.
pub fn dominance_leq(x: &[Rat], y: &[Rat]) -> Result<bool> {
    check_len(x.len(), y.len())?;
    let mut px = Rat::zero();
    let mut py = Rat::zero();
    for i in 0..x.len() {
        px += &x[i];
        py += &y[i];
        if i + 1 < x.len() {
            if px > py {
                return Ok(false);
            }
        } else if px != py {
            return Ok(false);
        }
    }
    Ok(true)
}

/// G-conjugacy of torus cocharacters is Weyl conjugacy (permutation).
pub fn weyl_conjugate(mu: &[i64], mu2: &[i64]) -> Result<bool> {
    check_len(mu.len(), mu2.len())?;
    let mut a = mu.to_vec();
    let mut b = mu2.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// The unique dominant representative of the Weyl orbit.
pub fn dominant_representative(mu: &[i64]) -> Cocharacter {
    let mut v = mu.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// L-dominant: weakly decreasing within each block of `levi`.
pub fn l_dominant(mu: &[i64], levi: &LeviDatum) -> Result<bool> {
    check_len(mu.len(), levi.rank())?;
    Ok(levi
        .block_ranges()
        .all(|r| is_dominant(&mu[r])))
}

/// `rho = ((n-1)/2, (n-3)/2, ..., -(n-1)/2)`, the half-sum of positive roots.
pub fn rho(n: usize) -> RationalVector {
    (0..n)
        .map(|i| rat(n as i64 - 1 - 2 * i as i64, 2))
        .collect()
}

/// Sum of the roots `e_i - e_j` with `block(i) < block(j)`, i.e. twice the
/// half-sum of the roots in the unipotent radical, with the sign chosen so
/// that the pairing against a dominant block-constant vector is >= 0.
pub fn two_rho_u(levi: &LeviDatum) -> RationalVector {
    let n = levi.rank();
    let mut out = Vec::with_capacity(n);
    for c in 0..n {
        let r = levi.block_range(levi.block_of(c));
        let before = r.start as i64;
        let after = (n - r.end) as i64;
        out.push(rat_int(after - before));
    }
    out
}

/// Both half-sums at once.
pub fn half_sums(n: usize, levi: &LeviDatum) -> Result<(RationalVector, RationalVector)> {
    if levi.rank() != n {
        return Err(Error::InvalidComposition {
            n,
            parts: levi.parts().to_vec(),
        });
    }
    Ok((rho(n), two_rho_u(levi)))
}

/// Coordinate dot product.
pub fn pairing(chi: &[Rat], x: &[Rat]) -> Result<Rat> {
    check_len(chi.len(), x.len())?;
    Ok(chi.iter().zip(x).map(|(a, b)| a * b).sum())
}

/// The class of `mu` in `pi_1(L) = X_*(T) / <coroots of L>`, isomorphic to
/// `Z^m` via blockwise coordinate sums.
pub fn pi1_levi_class(mu: &[i64], levi: &LeviDatum) -> Result<Vec<i64>> {
    check_len(mu.len(), levi.rank())?;
    Ok(levi
        .block_ranges()
        .map(|r| mu[r].iter().sum())
        .collect())
}

/// Galois average of `mu`. Trivial action in the split case.
pub fn galois_average(mu: &[i64]) -> RationalVector {
    to_rational(mu)
}

/// Image of `mu` in `pi_1(L)_Gamma`; with trivial Galois action this is
/// exactly [`pi1_levi_class`].
pub fn mu_natural(mu: &[i64], levi: &LeviDatum) -> Result<Vec<i64>> {
    pi1_levi_class(mu, levi)
}

/// All distinct permutations of `mu` (the Weyl orbit), in descending
/// lexicographic order.
pub fn weyl_orbit(mu: &[i64]) -> Vec<Cocharacter> {
    let mut values = mu.to_vec();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let mut counts: Vec<usize> = values
        .iter()
        .map(|v| mu.iter().filter(|&&x| x == *v).count())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(mu.len());
    fn rec(
        values: &[i64],
        counts: &mut [usize],
        cur: &mut Vec<i64>,
        n: usize,
        out: &mut Vec<Cocharacter>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..values.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(values[i]);
                rec(values, counts, cur, n, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&values, &mut counts, &mut cur, mu.len(), &mut out);
    out
}
