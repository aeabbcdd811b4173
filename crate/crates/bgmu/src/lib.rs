//! Exact-arithmetic combinatorics of isocrystals and vector bundles on the
//! Fargues-Fontaine curve, for split `GL_n` and its standard Levi subgroups.
//!
//! The library computes, with arbitrary-precision rational arithmetic:
//!
//! * Newton points of `B(GL_n)`, Kottwitz points, basic classes and the
//!   Harder-Narasimhan map ([`newton`]);
//! * the root-datum combinatorics of `GL_n`: dominance order, Weyl orbits,
//!   half-sums of roots and `pi_1` of Levi subgroups ([`roots`]);
//! * twisted Kottwitz sets `B(G, mu, [b'])`, HN-reducibility witnesses and
//!   the dimension/shift/twist bookkeeping of parabolic induction
//!   ([`kottwitz`]);
//! * matrix types over the discrete valuation ring `Z_(p)`, quotient-length
//!   bounds for finite torsion modules, and Levi-projection integrality
//!   ([`dvr`]);
//! * degree bookkeeping of rank-2 bundle modifications and the Lubin-Tate
//!   bundle bookkeeping ([`modifications`]).
//!
//! One normalization is global and worth stating once: the bundle attached to
//! a Newton point `b` has slope multiset `-nu_b`, hence `deg = -kappa(b)`.
//! See [`newton::bundle_of`].

pub mod dvr;
pub mod error;
pub mod json;
pub mod kottwitz;
pub mod levi;
pub mod modifications;
pub mod newton;
pub mod rational;
pub mod roots;

pub use error::Error;
pub use levi::LeviDatum;
pub use rational::Rat;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
