//! Twisted Kottwitz sets `B(G, mu, [b'])`, HN-reducibility witnesses, and
//! the dimension, shift and twist bookkeeping of parabolic induction.
//!
//! A class `[b]` is *acceptable* for `(mu, [b'])` if `nu_b - nu_b' <= mu`
//! in the dominance order, and *neutral* if the Kottwitz points differ by
//! the total of `mu`; the twisted set collects the classes satisfying both.
//! A triple `(b, b', mu)` is *HN-reducible* when both classes lift to a
//! common standard Levi with blockwise membership for some L-dominant
//! conjugate of `mu`. For fixed lifts the L-dominant conjugate is unique
//! when one exists, which [`i_set`] makes checkable by enumeration.

use crate::levi::LeviDatum;
use crate::newton::{
    kappa, levi_embed, make_newton, FFBundle, LeviNewtonPoint, NewtonPoint,
};
use crate::rational::{is_integer, rat_int, Rat};
use crate::roots::{
    dominance_leq, galois_average, is_dominant, l_dominant, pairing, rho, two_rho_u, weyl_orbit,
    Cocharacter, RationalVector,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Membership flags for the twisted Kottwitz set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmuMembership {
    pub acceptable: bool,
    pub neutral: bool,
}

impl BmuMembership {
    pub fn is_member(&self) -> bool {
        self.acceptable && self.neutral
    }
}

/// Acceptability and neutrality of `b` for `(mu, [bp])`.
pub fn membership(b: &NewtonPoint, bp: &NewtonPoint, mu: &[i64]) -> Result<BmuMembership> {
    if b.rank() != bp.rank() {
        return Err(Error::LengthMismatch {
            left: b.rank(),
            right: bp.rank(),
        });
    }
    if b.rank() != mu.len() {
        return Err(Error::LengthMismatch {
            left: b.rank(),
            right: mu.len(),
        });
    }
    if !is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let diff: Vec<Rat> = b
        .slopes()
        .iter()
        .zip(bp.slopes())
        .map(|(x, y)| x - y)
        .collect();
    let acceptable = dominance_leq(&diff, &galois_average(mu))?;
    let neutral = kappa(b) - kappa(bp) == mu.iter().sum::<i64>();
    Ok(BmuMembership {
        acceptable,
        neutral,
    })
}

fn lcm_upto(n: usize) -> u64 {
    (1..=n as u64).fold(1, |acc, k| acc.lcm(&k))
}

fn floor_to_i64(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("desk scale")
}

/// The complete twisted set `B(G, mu, [bp])`, sorted lexicographically.
///
/// Completeness: slopes of any member have denominators dividing
/// `lcm(1..n)` by break-point integrality; the total is pinned by
/// neutrality; each prefix sum is bounded above by acceptability and below
/// by weak decrease against the fixed total. The search walks exactly that
/// finite lattice and validates each leaf.
pub fn enumerate_bmu(bp: &NewtonPoint, mu: &[i64]) -> Result<Vec<NewtonPoint>> {
    let n = bp.rank();
    if n != mu.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: mu.len(),
        });
    }
    if !is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let denom = lcm_upto(n);
    let total: i64 = kappa(bp) + mu.iter().sum::<i64>();
    // Scaled prefix caps: D * (prefix(bp) + prefix(mu)).
    let mut prefix_caps = Vec::with_capacity(n);
    let mut acc = Rat::zero();
    for (slope, &m) in bp.slopes().iter().zip(mu) {
        acc += slope + rat_int(m);
        prefix_caps.push(floor_to_i64(&(&acc * rat_int(denom as i64))));
    }
    let scaled_total = total
        .checked_mul(denom as i64)
        .ok_or_else(|| Error::BudgetExceeded("scaled total overflows".into()))?;

    let mut out = Vec::new();
    let mut stack: Vec<i64> = Vec::with_capacity(n);
    let mut nodes: u64 = 0;
    const NODE_CAP: u64 = 50_000_000;
    dfs(
        n,
        denom as i64,
        scaled_total,
        &prefix_caps,
        &mut stack,
        &mut nodes,
        NODE_CAP,
        &mut |scaled| {
            let slopes: Vec<Rat> = scaled
                .iter()
                .map(|&m| Rat::new(BigInt::from(m), BigInt::from(denom)))
                .collect();
            if let Ok(candidate) = make_newton(slopes) {
                if membership(&candidate, bp, mu)
                    .map(|m| m.is_member())
                    .unwrap_or(false)
                {
                    out.push(candidate);
                }
            }
        },
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    n: usize,
    denom: i64,
    scaled_total: i64,
    prefix_caps: &[i64],
    stack: &mut Vec<i64>,
    nodes: &mut u64,
    cap: u64,
    emit: &mut impl FnMut(&[i64]),
) -> Result<()> {
    let _ = denom;
    let i = stack.len();
    let prefix: i64 = stack.iter().sum();
    if i == n {
        emit(stack);
        return Ok(());
    }
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::BudgetExceeded(
            "twisted-set search lattice too large".into(),
        ));
    }
    let remaining_slots = (n - i) as i64;
    let rest = scaled_total - prefix;
    // Weak decrease forces each remaining value <= the current one, so the
    // current value must cover its share of the rest.
    let lower = num_integer::Integer::div_ceil(&rest, &remaining_slots);
    let mut upper = prefix_caps[i] - prefix;
    if let Some(&prev) = stack.last() {
        upper = upper.min(prev);
    }
    if i + 1 == n {
        // Last coordinate is forced.
        if rest >= lower && rest <= upper {
            stack.push(rest);
            emit(stack);
            stack.pop();
        }
        return Ok(());
    }
    for m in (lower..=upper).rev() {
        stack.push(m);
        dfs(
            n,
            denom,
            scaled_total,
            prefix_caps,
            stack,
            nodes,
            cap,
            emit,
        )?;
        stack.pop();
    }
    Ok(())
}

fn block_slice<'a, T>(xs: &'a [T], levi: &LeviDatum, i: usize) -> &'a [T] {
    &xs[levi.block_range(i)]
}

/// Blockwise membership of Levi Newton points for an L-dominant `mu`.
fn blockwise_member(
    b0: &LeviNewtonPoint,
    b0p: &LeviNewtonPoint,
    mu: &[i64],
    levi: &LeviDatum,
) -> Result<bool> {
    for i in 0..levi.num_blocks() {
        let m = membership(&b0.blocks[i], &b0p.blocks[i], block_slice(mu, levi, i))?;
        if !m.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I_{b0, b0p, mu, L}`: the L-dominant Weyl conjugates `mu'` of `mu` with
/// blockwise membership `[b0] in B(L, mu', [b0p])`. When nonempty under the
/// singleton lemma's preconditions the result has exactly one element.
pub fn i_set(
    b0: &LeviNewtonPoint,
    b0p: &LeviNewtonPoint,
    mu: &[i64],
    levi: &LeviDatum,
) -> Result<Vec<Cocharacter>> {
    if !b0.matches(levi) || !b0p.matches(levi) {
        return Err(Error::BlockMismatch);
    }
    if mu.len() != levi.rank() {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: levi.rank(),
        });
    }
    if !is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let mut out = Vec::new();
    for mu_prime in weyl_orbit(mu) {
        if !l_dominant(&mu_prime, levi)? {
            continue;
        }
        if blockwise_member(b0, b0p, &mu_prime, levi)? {
            out.push(mu_prime);
        }
    }
    Ok(out)
}

/// A Levi refinement certifying HN-reducibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNWitness {
    pub levi: LeviDatum,
    pub b0: LeviNewtonPoint,
    pub b0p: LeviNewtonPoint,
    /// The L-dominant conjugate of `mu` realizing blockwise membership.
    pub mu_prime: Cocharacter,
    /// False exactly for the improper Levi `(n)`.
    pub proper: bool,
}

/// Search options for [`hn_reducible_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct HnSearchOptions {
    /// Only accept proper Levi subgroups.
    pub proper_only: bool,
    /// Demand blockwise membership for `mu` itself instead of an L-dominant
    /// conjugate.
    pub strict_mu: bool,
}

/// All ordered assignments of the slope multiset to blocks of the given
/// sizes, each block a valid Newton point, in descending lexicographic
/// order of the concatenated block vectors.
fn lifts(b: &NewtonPoint, levi: &LeviDatum) -> Vec<LeviNewtonPoint> {
    let mut values: Vec<Rat> = b.slopes().to_vec();
    values.dedup();
    let counts: Vec<usize> = values
        .iter()
        .map(|v| b.slopes().iter().filter(|s| *s == v).count())
        .collect();
    let mut out = Vec::new();
    let mut blocks: Vec<NewtonPoint> = Vec::new();
    fn rec(
        values: &[Rat],
        counts: &mut Vec<usize>,
        levi: &LeviDatum,
        blocks: &mut Vec<NewtonPoint>,
        out: &mut Vec<LeviNewtonPoint>,
    ) {
        let bi = blocks.len();
        if bi == levi.num_blocks() {
            out.push(LeviNewtonPoint::new(blocks.clone()));
            return;
        }
        let size = levi.parts()[bi];
        // Choose a sub-multiset of the remaining slopes, largest-first so
        // the whole enumeration is lexicographically descending.
        #[allow(clippy::too_many_arguments)]
        fn choose(
            values: &[Rat],
            counts: &mut Vec<usize>,
            vi: usize,
            need: usize,
            chosen: &mut Vec<Rat>,
            levi: &LeviDatum,
            blocks: &mut Vec<NewtonPoint>,
            out: &mut Vec<LeviNewtonPoint>,
        ) {
            if need == 0 {
                if let Ok(block) = make_newton(chosen.clone()) {
                    blocks.push(block);
                    rec(values, counts, levi, blocks, out);
                    blocks.pop();
                }
                return;
            }
            if vi == values.len() {
                return;
            }
            let available = counts[vi].min(need);
            for take in (0..=available).rev() {
                counts[vi] -= take;
                for _ in 0..take {
                    chosen.push(values[vi].clone());
                }
                choose(values, counts, vi + 1, need - take, chosen, levi, blocks, out);
                for _ in 0..take {
                    chosen.pop();
                }
                counts[vi] += take;
            }
        }
        choose(
            values,
            counts,
            0,
            size,
            &mut Vec::with_capacity(size),
            levi,
            blocks,
            out,
        );
    }
    rec(&values, &mut counts.clone(), levi, &mut blocks, &mut out);
    out
}

/// First HN-reducibility witness in the documented deterministic order:
/// Levi compositions finest-first, lifts in descending lexicographic order
/// of blockwise slope assignment. The improper Levi is admitted, so under
/// the membership precondition a witness always exists; restrict with
/// [`HnSearchOptions::proper_only`] for the proper-Levi question.
pub fn hn_reducible(
    b: &NewtonPoint,
    bp: &NewtonPoint,
    mu: &[i64],
) -> Result<Option<HNWitness>> {
    hn_reducible_with(b, bp, mu, HnSearchOptions::default())
}

pub fn hn_reducible_with(
    b: &NewtonPoint,
    bp: &NewtonPoint,
    mu: &[i64],
    opts: HnSearchOptions,
) -> Result<Option<HNWitness>> {
    let m = membership(b, bp, mu)?;
    if !m.is_member() {
        return Err(Error::PreconditionFailed(
            "the triple is not in the twisted Kottwitz set".into(),
        ));
    }
    let n = b.rank();
    for levi in LeviDatum::all_compositions(n) {
        if opts.proper_only && !levi.is_proper() {
            continue;
        }
        for b0 in lifts(b, &levi) {
            debug_assert_eq!(levi_embed(&b0, &levi).as_ref(), Ok(b));
            for b0p in lifts(bp, &levi) {
                let mu_prime = if opts.strict_mu {
                    blockwise_member(&b0, &b0p, mu, &levi)?.then(|| mu.to_vec())
                } else {
                    i_set(&b0, &b0p, mu, &levi)?.into_iter().next()
                };
                if let Some(mu_prime) = mu_prime {
                    let proper = levi.is_proper();
                    return Ok(Some(HNWitness {
                        levi,
                        b0,
                        b0p,
                        mu_prime,
                        proper,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `N_{U, b} = <2 rho_U, nu_b>` for `nu_b` constant on the blocks of `L`.
pub fn dimension_n_ub(nu_b: &[Rat], levi: &LeviDatum) -> Result<Rat> {
    if nu_b.len() != levi.rank() {
        return Err(Error::LengthMismatch {
            left: nu_b.len(),
            right: levi.rank(),
        });
    }
    for r in levi.block_ranges() {
        let block = &nu_b[r];
        if block.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::NotLCentral);
        }
    }
    pairing(&two_rho_u(levi), nu_b)
}

/// Cohomological shift and Tate twist of the induction isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InductionNumerology {
    pub degree_shift: i64,
    pub tate_twist: i64,
}

pub fn induction_numerology(nu_b: &[Rat], levi: &LeviDatum) -> Result<InductionNumerology> {
    let n = dimension_n_ub(nu_b, levi)?;
    if !is_integer(&n) {
        return Err(Error::NonIntegralDimension);
    }
    let n = n.to_integer().to_i64().expect("desk scale");
    Ok(InductionNumerology {
        degree_shift: 2 * n,
        tate_twist: n,
    })
}

/// Normalization of the intersection-complex coefficient: Tate twist
/// `<rho, mu>` and degree shift `<2 rho, mu>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcShift {
    pub twist: Rat,
    pub shift: i64,
}

pub fn ic_shift(mu: &[i64]) -> Result<IcShift> {
    if !is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    let mu_rat: RationalVector = mu.iter().map(|&c| rat_int(c)).collect();
    let twist = pairing(&rho(mu.len()), &mu_rat)?;
    let shift = &twist * rat_int(2);
    debug_assert!(is_integer(&shift));
    Ok(IcShift {
        twist,
        shift: shift.to_integer().to_i64().expect("desk scale"),
    })
}

/// One graded level of the slope decomposition of the unipotent radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLevel {
    /// The slopes `alpha` contributed by the roots at this level, one entry
    /// per root, sorted descending.
    pub slopes: Vec<Rat>,
    /// The bundle `+ O(-alpha)` they assemble into.
    pub bundle: FFBundle,
    /// Its degree, `sum -alpha`; always an integer.
    pub degree: i64,
}

/// Slope decomposition of the graded pieces of the unipotent radical.
///
/// Grading is by the block-separating cocharacter: a root from block `r`
/// into block `s > r` sits at level `s - r` and contributes the slope
/// `nu_j - nu_i` (the root pairs the lower-triangular radical against
/// `nu`), so the bundle at each level is `+ O(nu_i - nu_j)` and the total
/// degree over all levels is `N_{U, b}`.
pub fn graded_slopes(
    b0: &LeviNewtonPoint,
    levi: &LeviDatum,
) -> Result<BTreeMap<u32, GradedLevel>> {
    if !b0.matches(levi) {
        return Err(Error::BlockMismatch);
    }
    let nu: Vec<Rat> = b0
        .blocks
        .iter()
        .flat_map(|b| b.slopes().iter().cloned())
        .collect();
    let mut levels: BTreeMap<u32, Vec<Rat>> = BTreeMap::new();
    let m = levi.num_blocks();
    for r in 0..m {
        for s in r + 1..m {
            let level = (s - r) as u32;
            for i in levi.block_range(r) {
                for j in levi.block_range(s) {
                    let alpha = &nu[j] - &nu[i];
                    levels.entry(level).or_default().push(alpha);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (level, mut slopes) in levels {
        slopes.sort_by(|a, b| b.cmp(a));
        let negated: Vec<Rat> = slopes.iter().map(|a| -a).collect();
        let bundle = FFBundle::from_slopes(&negated)?;
        let degree_rat: Rat = negated.iter().sum();
        debug_assert!(is_integer(&degree_rat));
        let degree = degree_rat.to_integer().to_i64().expect("desk scale");
        out.insert(
            level,
            GradedLevel {
                slopes,
                bundle,
                degree,
            },
        );
    }
    Ok(out)
}

/// The basic member of a twisted set, when the base point is basic: the
/// unique member with all slopes equal.
pub fn basic_member(bp: &NewtonPoint, mu: &[i64]) -> NewtonPoint {
    let n = bp.rank();
    crate::newton::basic_class(kappa(bp) + mu.iter().sum::<i64>(), n)
}
