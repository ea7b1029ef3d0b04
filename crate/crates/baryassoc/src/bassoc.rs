//! Barycentric associativity: the symbolic checker, the classifier and
//! the binary-reconstruction diagnostic.
//!
//! A family is B-associative when for every arity `n` and every split
//! `n = a + k + c` with `k >= 1`,
//!
//! ```text
//! F_n(x1..xn) = F_n(x1..xa, k copies of F_k(x_{a+1}..x_{a+k}), x_{a+k+1}..xn)
//! ```
//!
//! holds. Over an infinite integral domain this is an exact polynomial
//! identity per split, so checking coefficients is both sound and
//! complete for arities up to the family's maximum. Splits with an empty
//! middle block are trivially true and skipped.
//!
//! The classifier decides which of the two canonical shapes a
//! B-associative family has: a weighted-mean family `M^z` truncated to
//! constants at some arity `k` (case (i)), or the binary blend
//! `F_2 = Q·x1 + (1-Q)·x2` with `deg Q >= 1` and constants from arity 3
//! on (case (ii)). Anything else is refuted with a concrete witness.

use std::fmt;


use thiserror::Error;

use crate::family::{delta, weighted_mean, PolyFamily};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BassocError {
    #[error("arity {n} out of range: the diagnostic needs 2 <= n < {max}")]
    ArityOutOfRange { n: usize, max: usize },
    #[error("member F{0} is constant; the diagnostic needs a nonconstant successor")]
    ConstantMember(usize),
}

/// A refutation: a split whose two sides differ, with their nonzero
/// difference.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitWitness<R: Ring> {
    /// Outer arity `n`.
    pub arity: usize,
    /// `(a, k, c)` with `a + k + c = n` and `k >= 1`.
    pub split: (usize, usize, usize),
    /// `F_n(x1..xn) - F_n(x1..xa, k·F_k(...), ...)`, nonzero.
    pub difference: Polynomial<R>,
}

impl<R: Ring> fmt::Display for SplitWitness<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, k, c) = self.split;
        write!(
            f,
            "arity {}, split (a, k, c) = ({}, {}, {}), difference {}",
            self.arity, a, k, c, self.difference
        )
    }
}

/// Decision outcome for a family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification<R: Ring> {
    /// Weighted-mean shape: members below `k` are `M_n^z`, members from
    /// `k` on are the listed constants. `k` is the first constant arity
    /// (`max_arity + 1` when there is none). `z` is unidentifiable when
    /// every member from arity 2 on is constant, and omitted then.
    CaseI {
        z: Option<R>,
        k: usize,
        tail: Vec<R>,
    },
    /// Binary-blend shape: `F_1 = x1`, `F_2 = Q·x1 + (1-Q)·x2` with
    /// `deg Q >= 1`, constants from arity 3 on.
    CaseII { q: Polynomial<R>, tail: Vec<R> },
    NotBAssociative(SplitWitness<R>),
}

impl<R: Ring> fmt::Display for Classification<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::CaseI { z, k, tail } => {
                match z {
                    Some(z) => write!(f, "case (i): z = {}, k = {k}", z.render())?,
                    None => write!(f, "case (i): z unidentifiable, k = {k}")?,
                }
                write!(f, ", tail = [{}]", render_tail(tail))
            }
            Classification::CaseII { q, tail } => {
                write!(f, "case (ii): Q = {q}, tail = [{}]", render_tail(tail))
            }
            Classification::NotBAssociative(w) => write!(f, "not B-associative: {w}"),
        }
    }
}

fn render_tail<R: Ring>(tail: &[R]) -> String {
    tail.iter()
        .map(Ring::render)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Outcome of the symmetric-family specialization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymmetricClassification<R: Ring> {
    /// Every member is constant.
    AllConstant,
    /// Arithmetic-mean shape `[M^{1/2}]_k` with `k >= 2`.
    CaseIHalf { k: usize, tail: Vec<R> },
    /// `F_2 = (x1+x2)/2 + (x1-x2)·Q` with `Q` nonzero antisymmetric.
    CaseIIAntisym { q: Polynomial<R>, tail: Vec<R> },
    NotBAssociative(SplitWitness<R>),
    NotSymmetric { arity: usize },
}

impl<R: Ring> fmt::Display for SymmetricClassification<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricClassification::AllConstant => write!(f, "all members constant"),
            SymmetricClassification::CaseIHalf { k, tail } => {
                write!(f, "case (i) with z = 1/2: k = {k}, tail = [{}]", render_tail(tail))
            }
            SymmetricClassification::CaseIIAntisym { q, tail } => write!(
                f,
                "case (ii) antisymmetric: Q = {q}, tail = [{}]",
                render_tail(tail)
            ),
            SymmetricClassification::NotBAssociative(w) => {
                write!(f, "not B-associative: {w}")
            }
            SymmetricClassification::NotSymmetric { arity } => {
                write!(f, "not symmetric at arity {arity}")
            }
        }
    }
}

/// Report of the three binary-reconstruction identities at one arity
/// step: with `P(x, y) = F_{n+1}(n·x, y)`, a B-associative family
/// satisfies
///
/// ```text
/// F_{n+1}(x1..x_{n+1}) = P(F_n(x1..xn), x_{n+1})
///                      = P(F_n(x1, (n-1)·G), G)      with G = F_n(x2..x_{n+1})
/// P(F_n(G, x2..xn), x_{n+1}) = G
/// ```
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lemma3Report<R: Ring> {
    pub n: usize,
    /// `P(x1, x2) = F_{n+1}(n·x1, x2)`.
    pub p: Polynomial<R>,
    pub reconstruction_holds: bool,
    pub inner_substitution_holds: bool,
    pub fixed_point_holds: bool,
}

impl<R: Ring> Lemma3Report<R> {
    pub fn all_hold(&self) -> bool {
        self.reconstruction_holds && self.inner_substitution_holds && self.fixed_point_holds
    }
}

impl<R: Ring> fmt::Display for Lemma3Report<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "holds" } else { "FAILS" };
        writeln!(f, "P = {}", self.p)?;
        writeln!(f, "reconstruction identity: {}", yn(self.reconstruction_holds))?;
        writeln!(
            f,
            "inner substitution identity: {}",
            yn(self.inner_substitution_holds)
        )?;
        write!(f, "fixed point identity: {}", yn(self.fixed_point_holds))
    }
}

/// Right-hand side of the split identity: `F_n` with the block
/// `x_{a+1}..x_{a+k}` replaced by `k` copies of `F_k` of that block.
fn split_rhs<R: Ring>(
    outer: &Polynomial<R>,
    inner: &Polynomial<R>,
    n: usize,
    a: usize,
    k: usize,
) -> Polynomial<R> {
    let shifted: Vec<Polynomial<R>> = (1..=k).map(|i| Polynomial::var(a + i, n)).collect();
    let inner_shifted = inner
        .substitute(&shifted)
        .expect("inner substitution covers x1..xk");
    let images: Vec<Polynomial<R>> = (1..=n)
        .map(|j| {
            if j > a && j <= a + k {
                inner_shifted.clone()
            } else {
                Polynomial::var(j, n)
            }
        })
        .collect();
    outer
        .substitute(&images)
        .expect("outer substitution covers x1..xn")
}

/// First violated split at outer arity `n`, scanning `a` ascending then
/// `k` ascending, or `None` when every split identity at `n` holds.
pub(crate) fn first_violation_at_arity<R: Ring>(
    members: &[Polynomial<R>],
    n: usize,
) -> Option<SplitWitness<R>> {
    let outer = &members[n - 1];
    if outer.is_constant() {
        // substituting into a constant cannot change it
        return None;
    }
    for a in 0..n {
        for k in 1..=(n - a) {
            let rhs = split_rhs(outer, &members[k - 1], n, a, k);
            if rhs != *outer {
                return Some(SplitWitness {
                    arity: n,
                    split: (a, k, n - a - k),
                    difference: outer - &rhs,
                });
            }
        }
    }
    None
}

/// Checks every split identity up to the family's maximum arity, in
/// canonical order (ascending arity, then block start, then block
/// length), returning the first violation.
pub fn check_b_associative<R: Ring>(fam: &PolyFamily<R>) -> Result<(), SplitWitness<R>> {
    for n in 1..=fam.max_arity() {
        if let Some(w) = first_violation_at_arity(fam.members(), n) {
            return Err(w);
        }
    }
    Ok(())
}

/// Refutation fallback: deductions in the classifier imply some split
/// identity fails, so the checker must produce a witness.
fn refute<R: Ring>(fam: &PolyFamily<R>) -> Classification<R> {
    match check_b_associative(fam) {
        Err(w) => Classification::NotBAssociative(w),
        Ok(()) => unreachable!(
            "classifier deduced a violation but the checker found none; \
             this contradicts the classification theorem"
        ),
    }
}

/// Decides B-associativity and, on success, identifies the canonical
/// shape. Sound and complete for the family's arities: the result is
/// `NotBAssociative` exactly when [`check_b_associative`] refutes.
///
/// Over a non-field the weighted-mean comparison runs in the fraction
/// field and descends: mean coefficients must lie in the base ring and
/// every normalizer below the constant cutoff must be a base-ring unit.
pub fn classify<R: Ring>(fam: &PolyFamily<R>) -> Classification<R> {
    let max = fam.max_arity();

    // first constant arity; everything from there on must stay constant
    let k = (1..=max)
        .find(|&n| fam.member(n).is_constant())
        .unwrap_or(max + 1);
    for n in k..=max {
        if !fam.member(n).is_constant() {
            return refute(fam);
        }
    }
    let tail: Vec<R> = (k..=max)
        .map(|n| fam.member(n).constant_value().expect("constant tail"))
        .collect();

    // below the cutoff every member must be idempotent (the nonconstant
    // half of the range-idempotence dichotomy)
    for n in 1..k {
        if !fam.member(n).is_idempotent() {
            return refute(fam);
        }
    }

    if k <= 2 {
        // no nonconstant binary member: the shape parameter cannot be
        // read off, and any choice yields the same truncation class
        return Classification::CaseI { z: None, k, tail };
    }

    // k >= 3: F_1 = x1 (idempotence at arity 1) and F_2 is nonconstant
    let f2 = fam.member(2);
    let one = R::one();
    let zero = R::zero();
    let z = f2
        .evaluate(&[one.clone(), zero.clone()])
        .expect("arity-2 evaluation");

    if f2.total_degree() == Some(1) {
        // candidate for the weighted-mean shape with parameter z
        let blend = &Polynomial::var(1, 2).scale(&z)
            + &Polynomial::var(2, 2).scale(&(one.clone() - z.clone()));
        if *f2 != blend {
            return refute(fam);
        }
        let zf = z.to_frac();
        for n in 3..k {
            let mean = match weighted_mean::<R::Frac>(&zf, n) {
                Ok(m) => m,
                Err(_) => return refute(fam), // normalizer vanishes in the field
            };
            if fam.member(n).map_coeffs(Ring::to_frac) != mean {
                return refute(fam);
            }
            if !mean.terms().all(|(_, c)| R::is_in_base_ring(c)) {
                return refute(fam);
            }
            if !delta(&z, n).is_unit() {
                return refute(fam);
            }
        }
        Classification::CaseI { z: Some(z), k, tail }
    } else {
        // degree >= 2 forces constants from arity 3 on
        if k > 3 {
            return refute(fam);
        }
        let x2 = Polynomial::var(2, 2);
        let q = match (f2 - &x2).divide_by_difference(1, 2) {
            Ok(q) => q,
            Err(_) => return refute(fam), // cannot happen for an idempotent F_2
        };
        debug_assert!(q.total_degree().unwrap_or(0) >= 1);
        Classification::CaseII { q, tail }
    }
}

/// Specializes [`classify`] to families whose members are all symmetric:
/// the mean parameter collapses to `1/2` and the binary blend decomposes
/// around the midpoint with a nonzero antisymmetric remainder.
pub fn classify_symmetric<R: Ring>(fam: &PolyFamily<R>) -> SymmetricClassification<R> {
    // adjacent transpositions generate the full symmetric group
    for n in 1..=fam.max_arity() {
        let member = fam.member(n);
        for i in 1..n {
            if member.swap_vars(i, i + 1) != *member {
                return SymmetricClassification::NotSymmetric { arity: n };
            }
        }
    }

    match classify(fam) {
        Classification::NotBAssociative(w) => SymmetricClassification::NotBAssociative(w),
        Classification::CaseI { z, k, tail } => {
            if k == 1 {
                return SymmetricClassification::AllConstant;
            }
            if let Some(z) = z {
                // a symmetric nonconstant blend forces z = 1 - z
                assert!(
                    z.clone() + z.clone() == R::one(),
                    "symmetric mean family with parameter other than 1/2"
                );
            }
            SymmetricClassification::CaseIHalf { k, tail }
        }
        Classification::CaseII { q, tail } => {
            // symmetry of F_2 pins the constant term of Q at 1/2 and
            // leaves an antisymmetric remainder
            let half = q.constant_term();
            assert!(
                half.clone() + half.clone() == R::one(),
                "symmetric blend whose constant term is not one half"
            );
            let q_anti = &q - &Polynomial::constant(half.clone(), 2);
            assert!(
                q_anti.swap_vars(1, 2) == -&q_anti && !q_anti.is_zero(),
                "symmetric blend without antisymmetric remainder"
            );
            // F_2 = (x1 + x2)/2 + (x1 - x2)·Q
            let x1 = Polynomial::var(1, 2);
            let x2 = Polynomial::var(2, 2);
            let midpoint = (&x1 + &x2).scale(&half);
            let decomposed = &midpoint + &(&(&x1 - &x2) * &q_anti);
            debug_assert!(decomposed == *fam.member(2));
            SymmetricClassification::CaseIIAntisym { q: q_anti, tail }
        }
    }
}

/// Builds `P(x1, x2) = F_{n+1}(n·x1, x2)` and checks the three
/// reconstruction identities as exact polynomial equalities. All three
/// hold for a B-associative family with nonconstant `F_{n+1}`.
pub fn lemma3_diagnostic<R: Ring>(
    fam: &PolyFamily<R>,
    n: usize,
) -> Result<Lemma3Report<R>, BassocError> {
    if n < 2 || n >= fam.max_arity() {
        return Err(BassocError::ArityOutOfRange {
            n,
            max: fam.max_arity(),
        });
    }
    let f_next = fam.member(n + 1);
    if f_next.is_constant() {
        return Err(BassocError::ConstantMember(n + 1));
    }
    let f_n = fam.member(n);
    let nv = n + 1;

    // P(x1, x2) = F_{n+1}(n copies of x1, x2)
    let mut images: Vec<Polynomial<R>> = vec![Polynomial::var(1, 2); n];
    images.push(Polynomial::var(2, 2));
    let p = f_next.substitute(&images).expect("diagonal pair substitution");

    let subst2 = |target: &Polynomial<R>, first: &Polynomial<R>, second: &Polynomial<R>| {
        target
            .substitute(&[first.clone(), second.clone()])
            .expect("binary substitution")
    };

    // F_{n+1} = P(F_n(x1..xn), x_{n+1})
    let f_n_wide = f_n.with_num_vars(nv).expect("widening");
    let x_last = Polynomial::var(nv, nv);
    let reconstruction_holds = subst2(&p, &f_n_wide, &x_last) == *f_next;

    // G = F_n(x2..x_{n+1})
    let shift_up: Vec<Polynomial<R>> = (2..=nv).map(|i| Polynomial::var(i, nv)).collect();
    let g = f_n.substitute(&shift_up).expect("shift substitution");

    // F_{n+1} = P(F_n(x1, (n-1)·G), G)
    let mut head_images = vec![Polynomial::var(1, nv)];
    head_images.extend(std::iter::repeat_n(g.clone(), n - 1));
    let h = f_n.substitute(&head_images).expect("head substitution");
    let inner_substitution_holds = subst2(&p, &h, &g) == *f_next;

    // P(F_n(G, x2..xn), x_{n+1}) = G
    let mut fixed_images = vec![g.clone()];
    fixed_images.extend((2..=n).map(|i| Polynomial::var(i, nv)));
    let inner_fixed = f_n.substitute(&fixed_images).expect("fixed-point substitution");
    let fixed_point_holds = subst2(&p, &inner_fixed, &x_last) == g;

    Ok(Lemma3Report {
        n,
        p,
        reconstruction_holds,
        inner_substitution_holds,
        fixed_point_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{case_ii_family, mz_family, truncate};
    use crate::poly::RangeIdempotence;
    use crate::{Int, Rat};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn x<R: Ring>(i: usize, nv: usize) -> Polynomial<R> {
        Polynomial::var(i, nv)
    }

    fn c<R: Ring>(v: R, nv: usize) -> Polynomial<R> {
        Polynomial::constant(v, nv)
    }

    fn fam<R: Ring>(members: Vec<Polynomial<R>>) -> PolyFamily<R> {
        PolyFamily::new(members).unwrap()
    }

    #[test]
    fn mean_families_pass_the_checker() {
        assert!(check_b_associative(&mz_family(&rat(1, 3), 5, &[]).unwrap()).is_ok());
        assert!(check_b_associative(&mz_family(&rat(1, 2), 6, &[]).unwrap()).is_ok());
        assert!(check_b_associative(&mz_family(&int(0), 5, &[]).unwrap()).is_ok());
        assert!(
            check_b_associative(&mz_family(&int(2), 4, &[int(5), int(7)]).unwrap()).is_ok()
        );
    }

    #[test]
    fn constant_families_pass() {
        let f = fam(vec![c(int(3), 1), c(int(1), 2), c(int(4), 3)]);
        assert!(check_b_associative(&f).is_ok());
    }

    #[test]
    fn product_family_fails_with_canonical_witness() {
        // (x1; x1*x2; x1*x2*x3): the first violated split in canonical
        // order is the full-block replacement at arity 2.
        let f = fam(vec![
            x(1, 1),
            &x(1, 2) * &x(2, 2),
            &(&x(1, 3) * &x(2, 3)) * &x(3, 3),
        ]);
        let w = check_b_associative(&f).unwrap_err();
        assert_eq!(w.arity, 2);
        assert_eq!(w.split, (0, 2, 0));
        let prod = &x::<Int>(1, 2) * &x(2, 2);
        assert_eq!(w.difference, &prod - &prod.pow(2));
    }

    #[test]
    fn witness_is_sound() {
        let f = fam(vec![x::<Int>(1, 1), &x(1, 2) * &x(2, 2)]);
        let w = check_b_associative(&f).unwrap_err();
        // re-substituting reproduces the difference exactly
        let rhs = split_rhs(
            f.member(w.arity),
            f.member(w.split.1),
            w.arity,
            w.split.0,
            w.split.1,
        );
        assert_eq!(&(f.member(w.arity) - &rhs), &w.difference);
        assert!(!w.difference.is_zero());
    }

    #[test]
    fn case_ii_families_pass() {
        let q = x::<Int>(1, 2);
        assert!(check_b_associative(&case_ii_family(&q, 3, &[int(0)]).unwrap()).is_ok());
        let q = &x::<Rat>(1, 2) - &x(2, 2);
        assert!(check_b_associative(&case_ii_family(&q, 4, &[rat(1, 2), rat(-3, 1)]).unwrap())
            .is_ok());
    }

    #[test]
    fn classify_integer_mean_family() {
        let f = fam(vec![
            x(1, 1),
            &x(1, 2).scale(&int(2)) - &x(2, 2),
            c(int(5), 3),
            c(int(7), 4),
        ]);
        assert_eq!(
            classify(&f),
            Classification::CaseI {
                z: Some(int(2)),
                k: 3,
                tail: vec![int(5), int(7)],
            }
        );
    }

    #[test]
    fn classify_case_ii() {
        let f2 = &(&x::<Rat>(1, 2).pow(2) + &x(2, 2)) - &(&x(1, 2) * &x(2, 2));
        let f = fam(vec![x(1, 1), f2, c(rat(0, 1), 3)]);
        assert_eq!(
            classify(&f),
            Classification::CaseII {
                q: x(1, 2),
                tail: vec![rat(0, 1)],
            }
        );
    }

    #[test]
    fn classify_rejects_non_idempotent_product() {
        let f = fam(vec![x::<Int>(1, 1), &x(1, 2) * &x(2, 2)]);
        match classify(&f) {
            Classification::NotBAssociative(w) => {
                assert_eq!(w.arity, 2);
                assert_eq!(w.split, (0, 2, 0));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn classify_arithmetic_means_without_tail() {
        let f = mz_family(&rat(1, 2), 6, &[]).unwrap();
        assert_eq!(
            classify(&f),
            Classification::CaseI {
                z: Some(rat(1, 2)),
                k: 7,
                tail: vec![],
            }
        );
    }

    #[test]
    fn classify_degenerate_truncations() {
        // constant from arity 1: no parameter to read
        let f = fam(vec![c(int(3), 1), c(int(1), 2)]);
        assert_eq!(
            classify(&f),
            Classification::CaseI {
                z: None,
                k: 1,
                tail: vec![int(3), int(1)],
            }
        );
        // constant from arity 2
        let f = fam(vec![x(1, 1), c(int(9), 2)]);
        assert_eq!(
            classify(&f),
            Classification::CaseI {
                z: None,
                k: 2,
                tail: vec![int(9)],
            }
        );
    }

    #[test]
    fn classify_rejects_constant_gap() {
        // constant at arity 2 but nonconstant at arity 3
        let f = fam(vec![x(1, 1), c(int(0), 2), x(3, 3)]);
        assert!(matches!(classify(&f), Classification::NotBAssociative(_)));
    }

    #[test]
    fn classify_rejects_wrong_mean_extension() {
        // F_2 = M_2^{2/3} but F_3 is the arithmetic mean
        let f = fam(vec![
            x(1, 1),
            weighted_mean(&rat(2, 3), 2).unwrap(),
            weighted_mean(&rat(1, 2), 3).unwrap(),
        ]);
        assert!(matches!(classify(&f), Classification::NotBAssociative(_)));
        assert!(check_b_associative(&f).is_err());
    }

    #[test]
    fn classify_rejects_nonunit_normalizer_over_integers() {
        // z = 2 has its first non-unit normalizer at arity 3, so a
        // nonconstant integer F_3 cannot continue the family
        let f = fam(vec![
            x(1, 1),
            &x(1, 2).scale(&int(2)) - &x(2, 2),
            &(&x(1, 3).scale(&int(4)) - &x(2, 3).scale(&int(2))) + &x(3, 3),
        ]);
        assert!(matches!(classify(&f), Classification::NotBAssociative(_)));
        assert!(check_b_associative(&f).is_err());
    }

    #[test]
    fn classifier_and_checker_agree_on_truncations() {
        let base = mz_family(&rat(1, 3), 5, &[]).unwrap();
        for k in 1..=5 {
            let consts: Vec<Rat> = (k..=5).map(|i| rat(i as i64, 1)).collect();
            let cut = truncate(&base, k, &consts).unwrap();
            assert!(check_b_associative(&cut).is_ok(), "truncation at {k}");
            match classify(&cut) {
                Classification::CaseI { k: kk, tail, .. } => {
                    assert_eq!(kk, k);
                    assert_eq!(tail, consts);
                }
                other => panic!("unexpected classification {other:?}"),
            }
        }
    }

    #[test]
    fn members_of_b_associative_families_obey_the_dichotomy() {
        for famly in [
            mz_family(&rat(1, 3), 5, &[]).unwrap(),
            case_ii_family(&x::<Rat>(1, 2), 4, &[rat(2, 1), rat(3, 1)]).unwrap(),
        ] {
            assert!(check_b_associative(&famly).is_ok());
            for member in famly.members() {
                assert!(!matches!(
                    member.range_idempotence_class(),
                    RangeIdempotence::Neither
                ));
            }
        }
    }

    #[test]
    fn symmetric_classification() {
        let means = mz_family(&rat(1, 2), 4, &[]).unwrap();
        assert_eq!(
            classify_symmetric(&means),
            SymmetricClassification::CaseIHalf { k: 5, tail: vec![] }
        );

        // F_2 = (x1+x2)/2 + (x1-x2)^2, antisymmetric part x1 - x2
        let x1 = x::<Rat>(1, 2);
        let x2 = x::<Rat>(2, 2);
        let f2 = &(&x1 + &x2).scale(&rat(1, 2)) + &(&x1 - &x2).pow(2);
        let f = fam(vec![x(1, 1), f2, c(rat(0, 1), 3)]);
        assert_eq!(
            classify_symmetric(&f),
            SymmetricClassification::CaseIIAntisym {
                q: &x1 - &x2,
                tail: vec![rat(0, 1)],
            }
        );

        let skew = fam(vec![x(1, 1), &x1.scale(&rat(2, 1)) - &x2, c(rat(0, 1), 3)]);
        assert_eq!(
            classify_symmetric(&skew),
            SymmetricClassification::NotSymmetric { arity: 2 }
        );

        let consts = fam(vec![c(rat(1, 1), 1), c(rat(2, 1), 2)]);
        assert_eq!(classify_symmetric(&consts), SymmetricClassification::AllConstant);
    }

    #[test]
    fn lemma3_on_arithmetic_means() {
        let f = mz_family(&rat(1, 2), 4, &[]).unwrap();
        let report = lemma3_diagnostic(&f, 2).unwrap();
        assert!(report.all_hold());
        // P(x, y) = F_3(x, x, y) = (2x + y)/3
        let expected = &x::<Rat>(1, 2).scale(&rat(2, 3)) + &x(2, 2).scale(&rat(1, 3));
        assert_eq!(report.p, expected);
    }

    #[test]
    fn lemma3_exposes_broken_families() {
        let f = fam(vec![
            x::<Int>(1, 1),
            &x(1, 2) * &x(2, 2),
            &(&x(1, 3) + &x(2, 3)) - &x(3, 3),
        ]);
        let report = lemma3_diagnostic(&f, 2).unwrap();
        assert!(!report.all_hold());
    }

    #[test]
    fn lemma3_preconditions() {
        let f = mz_family(&rat(1, 2), 3, &[]).unwrap();
        assert_eq!(
            lemma3_diagnostic(&f, 1).unwrap_err(),
            BassocError::ArityOutOfRange { n: 1, max: 3 }
        );
        assert_eq!(
            lemma3_diagnostic(&f, 3).unwrap_err(),
            BassocError::ArityOutOfRange { n: 3, max: 3 }
        );
        let cut = truncate(&f, 3, &[rat(0, 1)]).unwrap();
        assert_eq!(
            lemma3_diagnostic(&cut, 2).unwrap_err(),
            BassocError::ConstantMember(3)
        );
    }

    #[test]
    fn gaussian_mean_family_round_trip() {
        use crate::GaussInt;
        // n(i) = 4 over the Gaussian integers
        let zi = GaussInt::new(int(0), int(1));
        let f = mz_family(&zi, 4, &[GaussInt::from_int(3)]).unwrap();
        assert!(check_b_associative(&f).is_ok());
        assert_eq!(
            classify(&f),
            Classification::CaseI {
                z: Some(zi),
                k: 4,
                tail: vec![GaussInt::from_int(3)],
            }
        );
    }
}
