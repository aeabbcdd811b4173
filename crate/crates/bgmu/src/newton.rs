//! Newton points of `B(GL_n)`, their invariants, and vector bundles on the
//! Fargues-Fontaine curve as slope multisets.
//!
//! A class in `B(GL_n)` is identified with its Newton point: a weakly
//! decreasing rational vector whose partial sums at slope breaks (and at the
//! end) are integers. The bundle attached to `b` has slope multiset `-nu_b`;
//! this is the one sign normalization of the crate. It is forced jointly by
//! the Harder-Narasimhan map `b -> w(-nu_b)` and by the degree bookkeeping
//! of the Lubin-Tate modification: the rank-n basic class of Kottwitz point
//! `mn + 1` must give a bundle of degree `-(mn + 1)` whose degree-one
//! modification is the semistable bundle `O(-m)^n` of degree `-mn`.

use crate::levi::LeviDatum;
use crate::rational::{is_integer, Rat};
use crate::roots::RationalVector;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// A sigma-conjugacy class of `GL_n`, as its Newton point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPoint {
    slopes: Vec<Rat>,
}

impl NewtonPoint {
    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    pub fn rank(&self) -> usize {
        self.slopes.len()
    }
}

/// Validate a slope vector: weakly decreasing, with integral partial sums at
/// every slope break and at the end.
pub fn make_newton(slopes: Vec<Rat>) -> Result<NewtonPoint> {
    if slopes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDecreasing);
    }
    let mut partial = Rat::zero();
    for (i, s) in slopes.iter().enumerate() {
        partial += s;
        let at_break = i + 1 == slopes.len() || slopes[i + 1] != *s;
        if at_break && !is_integer(&partial) {
            return Err(Error::NonIntegralBreakpoint);
        }
    }
    Ok(NewtonPoint { slopes })
}

/// Kottwitz point, basicness, and the Harder-Narasimhan point of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonInvariants {
    /// Sum of the slopes; an integer by the break-point invariant.
    pub kappa: BigInt,
    /// True iff all slopes are equal (the Newton point is central).
    pub basic: bool,
    /// `w(-nu_b)`: the negated slopes re-sorted weakly decreasing.
    pub hn: RationalVector,
}

pub fn newton_invariants(b: &NewtonPoint) -> NewtonInvariants {
    let sum: Rat = b.slopes.iter().sum();
    debug_assert!(is_integer(&sum));
    let basic = b.slopes.windows(2).all(|w| w[0] == w[1]);
    let hn: Vec<Rat> = b.slopes.iter().rev().map(|s| -s).collect();
    NewtonInvariants {
        kappa: sum.to_integer(),
        basic,
        hn,
    }
}

/// Kottwitz point as an `i64` (desk-scale inputs never overflow).
pub fn kappa(b: &NewtonPoint) -> i64 {
    newton_invariants(b).kappa.to_i64().expect("kappa fits i64")
}

/// The basic class `b_1^N` of `B(GL_n)`: slope vector `(N/n, ..., N/n)`.
pub fn basic_class(big_n: i64, n: usize) -> NewtonPoint {
    assert!(n > 0);
    let slope = Rat::new(BigInt::from(big_n), BigInt::from(n));
    NewtonPoint {
        slopes: vec![slope; n],
    }
}

/// A Newton point of a Levi: one Newton point per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeviNewtonPoint {
    pub blocks: Vec<NewtonPoint>,
}

impl LeviNewtonPoint {
    pub fn new(blocks: Vec<NewtonPoint>) -> Self {
        LeviNewtonPoint { blocks }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn matches(&self, levi: &LeviDatum) -> bool {
        self.blocks.len() == levi.num_blocks()
            && self
                .blocks
                .iter()
                .zip(levi.parts())
                .all(|(b, &p)| b.rank() == p)
    }

    /// Blockwise Kottwitz points.
    pub fn kappas(&self) -> Vec<i64> {
        self.blocks.iter().map(kappa).collect()
    }
}

/// Image of a Levi Newton point in `B(GL_n)`: concatenate the block slopes
/// and re-sort into the dominant chamber. Kottwitz points add up.
pub fn levi_embed(b0: &LeviNewtonPoint, levi: &LeviDatum) -> Result<NewtonPoint> {
    if !b0.matches(levi) {
        return Err(Error::BlockMismatch);
    }
    let mut slopes: Vec<Rat> = b0
        .blocks
        .iter()
        .flat_map(|b| b.slopes().iter().cloned())
        .collect();
    slopes.sort_by(|a, b| b.cmp(a));
    make_newton(slopes)
}

/// One isoclinic summand `O(d/h)^mult` with `gcd(d, h) = 1`, `h >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    pub d: i64,
    pub h: i64,
    pub mult: i64,
}

impl Summand {
    pub fn slope(&self) -> Rat {
        Rat::new(BigInt::from(self.d), BigInt::from(self.h))
    }

    pub fn rank(&self) -> i64 {
        self.h * self.mult
    }

    pub fn degree(&self) -> i64 {
        self.d * self.mult
    }
}

/// A semisimple vector bundle on the Fargues-Fontaine curve, as its multiset
/// of stable summands, kept sorted by slope descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFBundle {
    summands: Vec<Summand>,
}

impl FFBundle {
    /// Normalize a list of summands: validate coprimality, merge equal
    /// slopes, sort by slope descending.
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if s.h < 1 || s.mult < 1 {
                return Err(Error::InvalidBundle(format!(
                    "h and mult must be positive, got ({}, {}, {})",
                    s.d, s.h, s.mult
                )));
            }
            if s.d.gcd(&s.h) != 1 {
                return Err(Error::InvalidBundle(format!(
                    "gcd({}, {}) != 1",
                    s.d, s.h
                )));
            }
        }
        let mut merged: Vec<Summand> = Vec::new();
        let mut sorted = summands;
        sorted.sort_by_key(|s| std::cmp::Reverse(s.slope()));
        for s in sorted {
            match merged.last_mut() {
                Some(last) if last.slope() == s.slope() => last.mult += s.mult,
                _ => merged.push(s),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidBundle("bundle must have rank >= 1".into()));
        }
        Ok(FFBundle { summands: merged })
    }

    /// Build from a multiset of slopes (with multiplicity), grouping each
    /// isoclinic part into coprime form. The count of each slope `d/h` must
    /// be divisible by `h`.
    pub fn from_slopes(slopes: &[Rat]) -> Result<Self> {
        let mut sorted = slopes.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut summands = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let s = sorted[i].clone();
            let count = sorted[i..].iter().take_while(|x| **x == s).count();
            let d = s
                .numer()
                .to_i64()
                .ok_or_else(|| Error::InvalidBundle("slope numerator overflow".into()))?;
            let h = s
                .denom()
                .to_i64()
                .ok_or_else(|| Error::InvalidBundle("slope denominator overflow".into()))?;
            if count as i64 % h != 0 {
                return Err(Error::InvalidBundle(format!(
                    "slope {} appears {} times, not a multiple of {}",
                    s, count, h
                )));
            }
            summands.push(Summand {
                d,
                h,
                mult: count as i64 / h,
            });
            i += count;
        }
        FFBundle::new(summands)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn rank(&self) -> i64 {
        self.summands.iter().map(Summand::rank).sum()
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().map(Summand::degree).sum()
    }

    /// Slope multiset, each slope repeated `rank` times, descending.
    pub fn slope_multiset(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for s in &self.summands {
            for _ in 0..s.rank() {
                out.push(s.slope());
            }
        }
        out
    }
}

/// `O(lambda)^mult` for `lambda = d / h` already in lowest terms.
pub fn line(d: i64, h: i64, mult: i64) -> Summand {
    Summand { d, h, mult }
}

/// The bundle attached to a Newton point: slope multiset `-nu_b`, so
/// `deg = -kappa(b)`.
pub fn bundle_of(b: &NewtonPoint) -> FFBundle {
    let negated: Vec<Rat> = b.slopes.iter().map(|s| -s).collect();
    FFBundle::from_slopes(&negated).expect("negated Newton point is a valid slope multiset")
}

/// Rank, degree, semistability and the Harder-Narasimhan polygon of a
/// bundle. The polygon is the concave chain of `(rank, degree)` partial sums
/// in decreasing slope order, starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: i64,
    pub degree: i64,
    pub semistable: bool,
    pub hn_polygon: Vec<(i64, i64)>,
}

pub fn bundle_invariants(e: &FFBundle) -> BundleInvariants {
    let mut polygon = vec![(0, 0)];
    let (mut r, mut d) = (0, 0);
    for s in &e.summands {
        r += s.rank();
        d += s.degree();
        polygon.push((r, d));
    }
    BundleInvariants {
        rank: e.rank(),
        degree: e.degree(),
        semistable: e.summands.len() == 1,
        hn_polygon: polygon,
    }
}

/// Newton polygon of a Newton point: partial sums of the slopes, as
/// `(index, sum)` vertices at the slope breaks.
pub fn newton_polygon(b: &NewtonPoint) -> Vec<(i64, Rat)> {
    let mut out = vec![(0, Rat::zero())];
    let mut partial = Rat::zero();
    for (i, s) in b.slopes.iter().enumerate() {
        partial += s;
        let at_break = i + 1 == b.slopes.len() || b.slopes[i + 1] != *s;
        if at_break {
            out.push((i as i64 + 1, partial.clone()));
        }
    }
    out
}

/// Shorthand for tests and the CLI: parse slopes, validate.
pub fn newton_from_rats(slopes: Vec<Rat>) -> Result<NewtonPoint> {
    make_newton(slopes)
}

/// Translation by a central vector `(c, ..., c)` with `n c` integral.
pub fn translate(b: &NewtonPoint, c: &Rat) -> Result<NewtonPoint> {
    let shifted: Vec<Rat> = b.slopes.iter().map(|s| s + c).collect();
    make_newton(shifted)
}

impl std::fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .slopes
            .iter()
            .map(crate::rational::format_rat)
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl std::fmt::Display for FFBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let slope = crate::rational::format_rat(&s.slope());
                if s.mult == 1 {
                    format!("O({slope})")
                } else {
                    format!("O({slope})^{}", s.mult)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
