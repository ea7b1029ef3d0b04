//! *-ary polynomial families and the weighted-mean constructions.
//!
//! A family holds one polynomial per arity `1..=N`. The weighted mean
//! `M_n^z` has weights `z^{n-i} (1-z)^{i-1}` normalized by their sum
//! `delta_n^z`; it exists at arity `n` exactly when that sum is a unit.
//! `n(z)` is the first arity where it is not (never below 3, possibly
//! never within any finite bound).

use std::fmt;


use thiserror::Error;

use crate::poly::{Polynomial, PolyError};
use crate::ring::Ring;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("member F{arity} uses variable x{var} beyond its arity")]
    MemberArity { arity: usize, var: usize },
    #[error("a family needs at least one member")]
    Empty,
    #[error("delta_{n} is not a unit, so the weighted mean of arity {n} is undefined")]
    DeltaNotInvertible { n: usize },
    #[error("expected {expected} tail constants, got {got}")]
    TailLengthMismatch { expected: usize, got: usize },
    #[error("truncation point {k} out of range 1..={max}")]
    TruncationOutOfRange { k: usize, max: usize },
    #[error("the blend polynomial must have degree at least 1")]
    DegreeTooLow,
}

impl From<PolyError> for FamilyError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::VarOutOfRange { var, arity } => FamilyError::MemberArity { arity, var },
            // remaining poly errors cannot escape family construction
            other => panic!("unexpected polynomial error: {other}"),
        }
    }
}

/// A *-ary polynomial family: entry `n` (1-based) is the member of arity
/// `n`, a polynomial in `x1..xn`. There is no arity-0 member; the empty
/// tuple is fixed by convention.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFamily<R: Ring> {
    members: Vec<Polynomial<R>>,
}

impl<R: Ring> PolyFamily<R> {
    /// Builds a family from members listed by ascending arity, starting
    /// at 1. Member `n` may use only `x1..xn`.
    pub fn new(members: Vec<Polynomial<R>>) -> Result<Self, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        let members = members
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.with_num_vars(i + 1)
                    .map_err(|_| FamilyError::MemberArity {
                        arity: i + 1,
                        var: p.max_used_var(),
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(PolyFamily { members })
    }

    pub fn max_arity(&self) -> usize {
        self.members.len()
    }

    /// Member of arity `n` (1-based). Panics when out of range.
    pub fn member(&self, n: usize) -> &Polynomial<R> {
        &self.members[n - 1]
    }

    pub fn members(&self) -> &[Polynomial<R>] {
        &self.members
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> PolyFamily<S> {
        PolyFamily {
            members: self.members.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }
}

/// The normalizer `delta_n^z = sum_{i=1..n} z^{n-i} (1-z)^{i-1}`, computed
/// through the recurrence `delta_{n+1} = (1-z) delta_n + z^n` from
/// `delta_1 = 1`.
pub fn delta<R: Ring>(z: &R, n: usize) -> R {
    assert!(n >= 1, "delta is defined for arity >= 1");
    delta_sequence(z, n).pop().unwrap()
}

/// `delta_1^z ..= delta_{n}^z` in one pass.
pub fn delta_sequence<R: Ring>(z: &R, n: usize) -> Vec<R> {
    assert!(n >= 1);
    let one_minus_z = R::one() - z.clone();
    let mut values = Vec::with_capacity(n);
    let mut d = R::one();
    let mut z_pow = z.clone(); // z^m while computing delta_{m+1}
    values.push(d.clone());
    for _ in 1..n {
        d = one_minus_z.clone() * d + z_pow.clone();
        z_pow = z_pow * z.clone();
        values.push(d.clone());
    }
    values
}

/// Result of the truncated search for the first non-unit normalizer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NzBound {
    /// Least `n` with `delta_n^z` not a unit; always at least 3.
    Finite(usize),
    /// Every `delta_n^z` up to the bound is a unit.
    AboveBound(usize),
}

impl fmt::Display for NzBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NzBound::Finite(n) => write!(f, "{n}"),
            NzBound::AboveBound(b) => write!(f, ">{b}"),
        }
    }
}

/// Least `n <= bound` at which `delta_n^z` fails to be a unit of the
/// coefficient domain. The true value may be infinite, so the search is
/// truncated and an exhausted bound is reported as such, never as a value.
pub fn n_of_z<R: Ring>(z: &R, bound: usize) -> NzBound {
    assert!(bound >= 3, "the first non-unit arity is never below 3");
    for (i, d) in delta_sequence(z, bound).iter().enumerate() {
        if !d.is_unit() {
            return NzBound::Finite(i + 1);
        }
    }
    NzBound::AboveBound(bound)
}

/// Normalizer values together with the truncated `n(z)` search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaReport<R: Ring> {
    pub z: R,
    pub values: Vec<R>,
    pub n_of_z: NzBound,
}

impl<R: Ring> DeltaReport<R> {
    pub fn compute(z: &R, max_n: usize) -> Self {
        assert!(max_n >= 3);
        let values = delta_sequence(z, max_n);
        let n_of_z = values
            .iter()
            .position(|d| !d.is_unit())
            .map(|i| NzBound::Finite(i + 1))
            .unwrap_or(NzBound::AboveBound(max_n));
        DeltaReport {
            z: z.clone(),
            values,
            n_of_z,
        }
    }
}

/// The weighted arithmetic mean `M_n^z`, defined when `delta_n^z` is a
/// unit; idempotent by construction since the weights sum to one after
/// normalization.
pub fn weighted_mean<R: Ring>(z: &R, n: usize) -> Result<Polynomial<R>, FamilyError> {
    assert!(n >= 1);
    let inv = delta(z, n)
        .try_invert()
        .ok_or(FamilyError::DeltaNotInvertible { n })?;
    let one_minus_z = R::one() - z.clone();
    let mut poly = Polynomial::zero(n);
    for i in 1..=n {
        let weight = z.pow((n - i) as u32) * one_minus_z.pow((i - 1) as u32);
        poly = &poly + &Polynomial::var(i, n).scale(&(inv.clone() * weight));
    }
    Ok(poly)
}

/// The family whose member of arity `n` is `M_n^z` below the first
/// non-unit normalizer and a caller-chosen constant from there on.
pub fn mz_family<R: Ring>(z: &R, max_arity: usize, tail: &[R]) -> Result<PolyFamily<R>, FamilyError> {
    assert!(max_arity >= 1);
    let first_const = match n_of_z(z, max_arity.max(3)) {
        NzBound::Finite(n) if n <= max_arity => n,
        _ => max_arity + 1,
    };
    let expected = max_arity + 1 - first_const;
    if tail.len() != expected {
        return Err(FamilyError::TailLengthMismatch {
            expected,
            got: tail.len(),
        });
    }
    let mut members = Vec::with_capacity(max_arity);
    for n in 1..first_const {
        members.push(weighted_mean(z, n).expect("unit normalizer below n(z)"));
    }
    for (offset, c) in tail.iter().enumerate() {
        members.push(Polynomial::constant(c.clone(), first_const + offset));
    }
    PolyFamily::new(members)
}

/// Replaces every member of arity `>= k` by the given constants,
/// producing a member of the truncation class of the input family.
pub fn truncate<R: Ring>(
    fam: &PolyFamily<R>,
    k: usize,
    constants: &[R],
) -> Result<PolyFamily<R>, FamilyError> {
    let max = fam.max_arity();
    if k < 1 || k > max + 1 {
        return Err(FamilyError::TruncationOutOfRange { k, max: max + 1 });
    }
    let expected = max + 1 - k;
    if constants.len() != expected {
        return Err(FamilyError::TailLengthMismatch {
            expected,
            got: constants.len(),
        });
    }
    let mut members: Vec<_> = fam.members()[..k - 1].to_vec();
    for (offset, c) in constants.iter().enumerate() {
        members.push(Polynomial::constant(c.clone(), k + offset));
    }
    PolyFamily::new(members)
}

/// The second canonical shape: `F_1 = x1`, `F_2 = Q·x1 + (1-Q)·x2` for a
/// blend polynomial `Q` of degree at least 1, constants from arity 3 on.
pub fn case_ii_family<R: Ring>(
    q: &Polynomial<R>,
    max_arity: usize,
    tail: &[R],
) -> Result<PolyFamily<R>, FamilyError> {
    assert!(max_arity >= 1);
    if q.total_degree().unwrap_or(0) < 1 {
        return Err(FamilyError::DegreeTooLow);
    }
    let expected = max_arity.saturating_sub(2);
    if tail.len() != expected {
        return Err(FamilyError::TailLengthMismatch {
            expected,
            got: tail.len(),
        });
    }
    let q = q.with_num_vars(2)?;
    let mut members = vec![Polynomial::var(1, 1)];
    if max_arity >= 2 {
        let x1 = Polynomial::var(1, 2);
        let x2 = Polynomial::var(2, 2);
        let one = Polynomial::constant(R::one(), 2);
        members.push(&(&q * &x1) + &(&(&one - &q) * &x2));
    }
    for (offset, c) in tail.iter().enumerate() {
        members.push(Polynomial::constant(c.clone(), 3 + offset));
    }
    PolyFamily::new(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::{GaussRat, Int, Rat};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    /// z = 1/2 - 1/2 i, the rationalized form of 1/(1+i).
    fn z_gauss() -> GaussRat {
        GaussRat::new(rat(1, 2), rat(-1, 2))
    }

    /// Direct-sum oracle for the normalizer, independent of the recurrence.
    fn delta_direct<R: Ring>(z: &R, n: usize) -> R {
        let one_minus_z = R::one() - z.clone();
        let mut acc = R::zero();
        for i in 1..=n {
            acc = acc + z.pow((n - i) as u32) * one_minus_z.pow((i - 1) as u32);
        }
        acc
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&rat(9, 7), 1), Rat::from_int(1));
        assert_eq!(delta(&int(2), 3), int(3)); // 4 - 2 + 1
        assert_eq!(delta(&z_gauss(), 4), GaussRat::from_int(0));
        assert_eq!(delta(&rat(1, 2), 4), rat(1, 2)); // 4 * (1/2)^3
    }

    #[test]
    fn delta_matches_direct_sum() {
        for z in [int(0), int(1), int(2), int(-3), int(7)] {
            for n in 1..=12 {
                assert_eq!(delta(&z, n), delta_direct(&z, n));
            }
        }
        for n in 1..=12 {
            assert_eq!(delta(&z_gauss(), n), delta_direct(&z_gauss(), n));
        }
    }

    #[test]
    fn delta_is_symmetric_in_z_and_one_minus_z() {
        for z in [rat(1, 3), rat(2, 5), rat(-1, 1), rat(0, 1)] {
            let mirror = Rat::from_int(1) - z.clone();
            for n in 1..=10 {
                assert_eq!(delta(&z, n), delta(&mirror, n));
            }
        }
    }

    #[test]
    fn n_of_z_examples() {
        assert_eq!(n_of_z(&int(0), 50), NzBound::AboveBound(50));
        assert_eq!(n_of_z(&int(1), 50), NzBound::AboveBound(50));
        assert_eq!(n_of_z(&int(2), 50), NzBound::Finite(3));
        assert_eq!(n_of_z(&z_gauss(), 50), NzBound::Finite(4));
        assert_eq!(n_of_z(&rat(1, 3), 50), NzBound::AboveBound(50));
    }

    #[test]
    fn n_of_z_is_never_below_three() {
        for v in -20i64..=20 {
            if let NzBound::Finite(n) = n_of_z(&int(v), 40) {
                assert!(n >= 3, "n({v}) = {n}");
            }
        }
    }

    #[test]
    fn delta_report_recurrence_consistency() {
        let report = DeltaReport::compute(&int(2), 10);
        assert_eq!(report.n_of_z, NzBound::Finite(3));
        for (i, v) in report.values.iter().enumerate() {
            assert_eq!(v, &delta_direct(&int(2), i + 1));
        }
    }

    #[test]
    fn weighted_mean_projections_and_means() {
        // z = 1: first projection at every arity
        for n in 1..=5 {
            assert_eq!(weighted_mean(&rat(1, 1), n).unwrap(), Polynomial::var(1, n));
        }
        // z = 0: last projection
        assert_eq!(weighted_mean(&rat(0, 1), 3).unwrap(), Polynomial::var(3, 3));
        // z = 1/2: arithmetic mean
        let m3 = weighted_mean(&rat(1, 2), 3).unwrap();
        let expected = (&(&Polynomial::var(1, 3) + &Polynomial::var(2, 3))
            + &Polynomial::var(3, 3))
            .scale(&rat(1, 3));
        assert_eq!(m3, expected);
        // z = 1/3 at arity 2
        let m2 = weighted_mean(&rat(1, 3), 2).unwrap();
        let expected = &Polynomial::var(1, 2).scale(&rat(1, 3))
            + &Polynomial::var(2, 2).scale(&rat(2, 3));
        assert_eq!(m2, expected);
        assert_eq!(m2.to_string(), "1/3*x1 + 2/3*x2");
    }

    #[test]
    fn weighted_mean_over_integers() {
        let m2 = weighted_mean(&int(2), 2).unwrap();
        let expected = &Polynomial::var(1, 2).scale(&int(2)) - &Polynomial::var(2, 2);
        assert_eq!(m2, expected);
        assert_eq!(
            weighted_mean(&int(2), 3).unwrap_err(),
            FamilyError::DeltaNotInvertible { n: 3 }
        );
    }

    #[test]
    fn weighted_mean_is_idempotent() {
        for z in [rat(1, 3), rat(2, 5), rat(-1, 1), rat(1, 2)] {
            for n in 1..=6 {
                assert!(weighted_mean(&z, n).unwrap().is_idempotent());
            }
        }
        assert!(weighted_mean(&z_gauss(), 3).unwrap().is_idempotent());
    }

    #[test]
    fn weighted_mean_recurrence() {
        // M_{n+1}^z = c * M_n^z + (1-c) * x_{n+1} with c = z delta_n / delta_{n+1}
        for z in [rat(1, 3), rat(2, 5), rat(1, 2), rat(-2, 7)] {
            for n in 1..=5 {
                let c = z.clone() * delta(&z, n)
                    * delta(&z, n + 1).try_invert().unwrap();
                let lower = weighted_mean(&z, n)
                    .unwrap()
                    .with_num_vars(n + 1)
                    .unwrap();
                let blended = &lower.scale(&c)
                    + &Polynomial::var(n + 1, n + 1).scale(&(Rat::from_int(1) - c.clone()));
                assert_eq!(weighted_mean(&z, n + 1).unwrap(), blended);
            }
        }
    }

    #[test]
    fn mz_family_shapes() {
        let fam = mz_family(&rat(1, 2), 5, &[]).unwrap();
        assert_eq!(fam.max_arity(), 5);
        for n in 1..=5 {
            assert_eq!(fam.member(n), &weighted_mean(&rat(1, 2), n).unwrap());
        }

        // n(2) = 3 over the integers, so arities 3 and 4 take the tail
        let fam = mz_family(&int(2), 4, &[int(0), int(0)]).unwrap();
        assert_eq!(fam.member(1), &Polynomial::var(1, 1));
        assert_eq!(
            fam.member(2),
            &(&Polynomial::var(1, 2).scale(&int(2)) - &Polynomial::var(2, 2))
        );
        assert!(fam.member(3).is_zero());
        assert!(fam.member(4).is_zero());

        // first non-unit normalizer at 4 over the Gaussian rationals
        let fam = mz_family(&z_gauss(), 4, &[GaussRat::from_int(5)]).unwrap();
        assert_eq!(fam.member(3), &weighted_mean(&z_gauss(), 3).unwrap());
        assert_eq!(fam.member(4).constant_value(), Some(GaussRat::from_int(5)));

        assert_eq!(
            mz_family(&int(2), 4, &[]).unwrap_err(),
            FamilyError::TailLengthMismatch { expected: 2, got: 0 }
        );
    }

    #[test]
    fn truncation() {
        let fam = mz_family(&rat(1, 2), 4, &[]).unwrap();
        let cut = truncate(&fam, 3, &[rat(7, 1), rat(9, 1)]).unwrap();
        assert_eq!(cut.member(1), fam.member(1));
        assert_eq!(cut.member(2), fam.member(2));
        assert_eq!(cut.member(3).constant_value(), Some(rat(7, 1)));
        assert_eq!(cut.member(4).constant_value(), Some(rat(9, 1)));

        // k = max_arity + 1 leaves the family untouched
        assert_eq!(truncate(&fam, 5, &[]).unwrap(), fam);

        // k = 1 replaces everything
        let all = truncate(&fam, 1, &[rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)]).unwrap();
        assert!(all.members().iter().all(Polynomial::is_constant));

        assert!(matches!(
            truncate(&fam, 6, &[]),
            Err(FamilyError::TruncationOutOfRange { .. })
        ));
    }

    #[test]
    fn case_ii_shapes() {
        // Q = x1: F_2 = x1^2 + x2 - x1*x2
        let q = Polynomial::<Int>::var(1, 2);
        let fam = case_ii_family(&q, 3, &[int(0)]).unwrap();
        let x1 = Polynomial::<Int>::var(1, 2);
        let x2 = Polynomial::<Int>::var(2, 2);
        assert_eq!(fam.member(1), &Polynomial::var(1, 1));
        assert_eq!(fam.member(2), &(&(&x1.pow(2) + &x2) - &(&x1 * &x2)));
        assert!(fam.member(3).is_zero());

        // Q = x1 - x2: F_2 = (x1-x2)^2 + x2
        let q = &x1 - &x2;
        let fam = case_ii_family(&q, 2, &[]).unwrap();
        assert_eq!(fam.member(2), &(&(&x1 - &x2).pow(2) + &x2));

        assert_eq!(
            case_ii_family(&Polynomial::constant(int(1), 2), 3, &[int(0)]).unwrap_err(),
            FamilyError::DegreeTooLow
        );
    }

    #[test]
    fn family_member_arity_enforced() {
        let bad = vec![Polynomial::<Int>::var(1, 1), Polynomial::var(3, 3)];
        assert!(matches!(
            PolyFamily::new(bad),
            Err(FamilyError::MemberArity { arity: 2, var: 3 })
        ));
        assert!(matches!(PolyFamily::<Int>::new(vec![]), Err(FamilyError::Empty)));
    }
}
