//! Exact symbolic toolkit for *-ary polynomial function families.
//!
//! A *-ary family assigns one polynomial `F_n` in `x1..xn` to each arity
//! `n ≥ 1`. The crate constructs the weighted-arithmetic-mean families
//! `M^z`, checks barycentric associativity (replacing any contiguous block
//! of `k` arguments by `k` copies of `F_k` of that block leaves the value
//! unchanged) as an exact polynomial identity, classifies B-associative
//! families into their two canonical shapes, and cross-validates the
//! symbolic checker against randomized evaluation and brute-force
//! enumeration oracles.
//!
//! All arithmetic is exact. Coefficients live in one of four infinite
//! commutative integral domains: the integers, the rationals, the Gaussian
//! integers and the Gaussian rationals, abstracted by the [`ring::Ring`]
//! trait so the core is generic over the scalar type.

pub mod bassoc;
pub mod cli;
pub mod family;
pub mod oracle;
pub mod poly;
pub mod ring;

pub use bassoc::{check_b_associative, classify, classify_symmetric, lemma3_diagnostic};
pub use bassoc::{Classification, Lemma3Report, SplitWitness, SymmetricClassification};
pub use family::{
    case_ii_family, delta, mz_family, n_of_z, truncate, weighted_mean, DeltaReport, NzBound,
    PolyFamily,
};
pub use poly::{Monomial, Polynomial, RangeIdempotence};
pub use ring::{Ring, RingId};

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rationals, kept reduced with positive denominator.
pub type Rat = num_rational::BigRational;
/// Gaussian integers `a + b·i` with arbitrary-precision components.
pub type GaussInt = num_complex::Complex<Int>;
/// Gaussian rationals `a + b·i` with arbitrary-precision rational components.
pub type GaussRat = num_complex::Complex<Rat>;

pub type IntPoly = Polynomial<Int>;
pub type RatPoly = Polynomial<Rat>;
pub type GaussIntPoly = Polynomial<GaussInt>;
pub type GaussRatPoly = Polynomial<GaussRat>;
