//! Degree bookkeeping for bundle modifications on the Fargues-Fontaine
//! curve, and the rank-2 non-semistable classification.
//!
//! The frozen orientation: a modification of type `mu` is a map
//! `f: E -> E'` with torsion cokernel of length `sum k_i`, so the target
//! degree is the source degree plus `|mu|`. For rank 2 and minuscule `mu`
//! the classification is complete: a non-semistable source admits a
//! semistable degree-one modification exactly when its two line summands
//! have adjacent degrees.

use crate::kottwitz::membership;
use crate::newton::{
    basic_class, bundle_invariants, bundle_of, line, FFBundle, NewtonPoint,
};
use crate::rational::{is_integer, rat_int, Rat};
use crate::roots::is_dominant;
use crate::{Error, Result};

/// Degree of the target of a type-`mu` modification.
pub fn modified_degree(source_degree: i64, mu: &[i64]) -> i64 {
    source_degree + mu.iter().sum::<i64>()
}

/// Outcome of the rank-2 classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Classification {
    /// `m` when the source is `O(m) + O(m-1)`.
    pub m: Option<i64>,
    /// The unique semistable target `O(m)^2` of a degree-one modification,
    /// when one exists.
    pub target: Option<FFBundle>,
}

/// Classify a non-semistable rank-2 bundle: `O(m) + O(m-1)` modifies to
/// `O(m)^2`; any wider slope gap admits no semistable degree-one
/// modification.
pub fn classify_rank2(e: &FFBundle) -> Result<Rank2Classification> {
    if e.rank() != 2 {
        return Err(Error::Unsupported(format!(
            "classification needs rank 2, got rank {}",
            e.rank()
        )));
    }
    let inv = bundle_invariants(e);
    if inv.semistable {
        return Err(Error::SemistableInput);
    }
    // Non-semistable rank 2 means two line summands of distinct integer
    // degrees.
    let a = e.summands()[0].d;
    let b = e.summands()[1].d;
    debug_assert!(e.summands().iter().all(|s| s.h == 1) && a > b);
    if a == b + 1 {
        Ok(Rank2Classification {
            m: Some(a),
            target: Some(FFBundle::new(vec![line(a, 1, 2)])?),
        })
    } else {
        Ok(Rank2Classification {
            m: None,
            target: None,
        })
    }
}

/// The Lubin-Tate bookkeeping: source bundle of the basic class with
/// Kottwitz point `mn + 1`, target `O(-m)^n`, and the degree identity
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LubinTateTarget {
    pub source: FFBundle,
    pub target: FFBundle,
    pub source_degree: i64,
    pub target_degree: i64,
    /// `source_degree + 1 == target_degree`.
    pub degree_identity: bool,
    pub target_semistable: bool,
    pub target_slope: Rat,
}

pub fn lubin_tate_target(n: usize, m: i64) -> LubinTateTarget {
    assert!(n > 0);
    let source = bundle_of(&basic_class(m * n as i64 + 1, n));
    let target = FFBundle::new(vec![line(-m, 1, n as i64)]).expect("valid summand");
    let source_degree = source.degree();
    let target_degree = target.degree();
    let mut minuscule = vec![0i64; n];
    minuscule[0] = 1;
    let degree_identity = modified_degree(source_degree, &minuscule) == target_degree;
    let inv = bundle_invariants(&target);
    LubinTateTarget {
        source,
        target,
        source_degree,
        target_degree,
        degree_identity,
        target_semistable: inv.semistable,
        target_slope: rat_int(-m),
    }
}

/// Prediction of the saturated-subbundle slope equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubbundlePrediction {
    /// The equation holds: the induced subbundle of the target is
    /// semistable of this rank and slope.
    Semistable { rank: i64, slope: Rat },
    /// The equation fails by this defect.
    Rejected { defect: Rat },
}

/// Check `deg_plus + k_n + k_{n-1} + ... + k_{n-r+1} = r s` and report the
/// prediction for the induced subbundle.
pub fn induced_subbundle_check(
    mu: &[i64],
    r: i64,
    deg_plus: i64,
    s: &Rat,
) -> Result<SubbundlePrediction> {
    let n = mu.len();
    if !is_dominant(mu) {
        return Err(Error::NotDominant);
    }
    if r < 1 || r as usize > n {
        return Err(Error::RankOutOfRange { rank: r, max: n });
    }
    let rs = rat_int(r) * s;
    if !is_integer(&rs) {
        return Err(Error::NonIntegralDegree);
    }
    let tail: i64 = mu[n - r as usize..].iter().sum();
    let lhs = rat_int(deg_plus + tail);
    if lhs == rs {
        Ok(SubbundlePrediction::Semistable {
            rank: r,
            slope: s.clone(),
        })
    } else {
        Ok(SubbundlePrediction::Rejected { defect: lhs - rs })
    }
}

/// Whether the rank-2 minuscule stratum attached to `(b, bp)` can be
/// non-empty: membership must hold, and the bundle pair must be realizable
/// by a degree-one modification. For non-semistable `bundle_of(b)` that is
/// the classification above; for basic `b` every degree-one step between
/// semistable bundles is realizable (integer pair to half-slope stable and
/// back), so membership decides.
pub fn stratum_nonempty_rank2(
    b: &NewtonPoint,
    bp: &NewtonPoint,
    mu: &[i64],
) -> Result<bool> {
    if b.rank() != 2 || bp.rank() != 2 || mu != [1, 0] {
        return Err(Error::Unsupported(
            "stratum test is specific to rank 2 with minuscule mu".into(),
        ));
    }
    let bp_basic = bp.slopes()[0] == bp.slopes()[1];
    if !bp_basic {
        return Err(Error::Unsupported("the base point must be basic".into()));
    }
    let member = membership(b, bp, mu)?;
    if !member.is_member() {
        return Ok(false);
    }
    let source = bundle_of(b);
    let target = bundle_of(bp);
    if bundle_invariants(&source).semistable {
        // Basic to basic: both semistable with degrees differing by one;
        // always realizable in rank 2.
        return Ok(true);
    }
    let classified = classify_rank2(&source)?;
    Ok(classified.target.as_ref() == Some(&target))
}

/// Kottwitz point of the class whose bundle this is; used by callers that
/// move between the two indexings.
pub fn degree_as_kappa(e: &FFBundle) -> i64 {
    -e.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{kappa, make_newton};
    use crate::rational::{rat, rat_int};
    use num_traits::Zero;

    fn np(v: &[(i64, i64)]) -> NewtonPoint {
        make_newton(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn degree_bookkeeping() {
        assert_eq!(modified_degree(-3, &[1, 0]), -2);
        assert_eq!(modified_degree(17, &[0, 0, 0]), 17);
        assert_eq!(modified_degree(0, &[2, 1, 0]), 3);
    }

    #[test]
    fn rank2_classification() {
        let e = FFBundle::new(vec![line(0, 1, 1), line(-1, 1, 1)]).unwrap();
        let c = classify_rank2(&e).unwrap();
        assert_eq!(c.m, Some(0));
        assert_eq!(c.target.unwrap(), FFBundle::new(vec![line(0, 1, 2)]).unwrap());

        let e = FFBundle::new(vec![line(1, 1, 1), line(0, 1, 1)]).unwrap();
        let c = classify_rank2(&e).unwrap();
        assert_eq!(c.m, Some(1));
        assert_eq!(c.target.unwrap(), FFBundle::new(vec![line(1, 1, 2)]).unwrap());

        let e = FFBundle::new(vec![line(2, 1, 1), line(0, 1, 1)]).unwrap();
        let c = classify_rank2(&e).unwrap();
        assert_eq!(c.m, None);
        assert!(c.target.is_none());

        let e = FFBundle::new(vec![line(0, 1, 2)]).unwrap();
        assert_eq!(classify_rank2(&e).unwrap_err(), Error::SemistableInput);
        let e = FFBundle::new(vec![line(0, 1, 3)]).unwrap();
        assert!(matches!(classify_rank2(&e).unwrap_err(), Error::Unsupported(_)));
    }

    #[test]
    fn lubin_tate_cases() {
        let lt = lubin_tate_target(2, 0);
        assert_eq!(lt.source, FFBundle::new(vec![line(-1, 2, 1)]).unwrap());
        assert_eq!(lt.target, FFBundle::new(vec![line(0, 1, 2)]).unwrap());
        assert_eq!((lt.source_degree, lt.target_degree), (-1, 0));
        assert!(lt.degree_identity && lt.target_semistable);

        let lt = lubin_tate_target(2, 1);
        assert_eq!(lt.source, FFBundle::new(vec![line(-3, 2, 1)]).unwrap());
        assert_eq!(lt.target, FFBundle::new(vec![line(-1, 1, 2)]).unwrap());
        assert_eq!((lt.source_degree, lt.target_degree), (-3, -2));
        assert!(lt.degree_identity);

        let lt = lubin_tate_target(3, 1);
        assert_eq!(lt.source, FFBundle::new(vec![line(-4, 3, 1)]).unwrap());
        assert_eq!(lt.target, FFBundle::new(vec![line(-1, 1, 3)]).unwrap());
        assert_eq!((lt.source_degree, lt.target_degree), (-4, -3));
        assert!(lt.degree_identity);
    }

    #[test]
    fn subbundle_equation() {
        let got = induced_subbundle_check(&[1, 0], 1, 0, &Rat::zero()).unwrap();
        assert_eq!(
            got,
            SubbundlePrediction::Semistable { rank: 1, slope: Rat::zero() }
        );
        let got = induced_subbundle_check(&[1, 0], 2, -1, &Rat::zero()).unwrap();
        assert_eq!(
            got,
            SubbundlePrediction::Semistable { rank: 2, slope: Rat::zero() }
        );
        let got = induced_subbundle_check(&[1, 0], 1, 1, &Rat::zero()).unwrap();
        assert_eq!(got, SubbundlePrediction::Rejected { defect: rat_int(1) });
        assert_eq!(
            induced_subbundle_check(&[1, 0], 3, 0, &Rat::zero()).unwrap_err(),
            Error::RankOutOfRange { rank: 3, max: 2 }
        );
        assert_eq!(
            induced_subbundle_check(&[1, 0], 1, 0, &rat(1, 2)).unwrap_err(),
            Error::NonIntegralDegree
        );
    }

    #[test]
    fn stratum_examples() {
        let zero = np(&[(0, 1), (0, 1)]);
        assert!(stratum_nonempty_rank2(&np(&[(1, 1), (0, 1)]), &zero, &[1, 0]).unwrap());
        assert!(!stratum_nonempty_rank2(&np(&[(1, 1), (1, 1)]), &zero, &[1, 0]).unwrap());
        assert!(stratum_nonempty_rank2(&np(&[(1, 2), (1, 2)]), &zero, &[1, 0]).unwrap());
        // Wide slope gap: membership already fails.
        assert!(!stratum_nonempty_rank2(&np(&[(2, 1), (-1, 1)]), &zero, &[1, 0]).unwrap());
        assert!(matches!(
            stratum_nonempty_rank2(&np(&[(1, 1), (0, 1)]), &np(&[(1, 1), (0, 1)]), &[1, 0])
                .unwrap_err(),
            Error::Unsupported(_)
        ));
    }

    #[test]
    fn kappa_degree_sign() {
        for b in [np(&[(1, 2), (1, 2)]), np(&[(1, 1), (0, 1)]), np(&[(3, 2), (3, 2)])] {
            assert_eq!(degree_as_kappa(&bundle_of(&b)), kappa(&b));
        }
    }
}
