//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are positional: `x1..xn` for a polynomial of arity
//! `num_vars = n`. Terms live in a `BTreeMap` keyed by monomials in
//! graded-lexicographic order, so iteration and rendering are canonical
//! and equality is structural. Because every coefficient domain here is
//! an infinite integral domain, structural equality coincides with
//! equality of polynomial functions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use thiserror::Error;

use crate::ring::Ring;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("no substitution image for variable x{0}")]
    MissingAssignment(usize),
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not divisible: the polynomial does not vanish under x{i} -> x{j}")]
    NotDivisible { i: usize, j: usize },
    #[error("variable x{var} exceeds arity {arity}")]
    VarOutOfRange { var: usize, arity: usize },
}

/// Power product of variables, stored as an exponent vector without
/// trailing zeros; the empty vector is the constant monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial (all exponents zero).
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The single variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are numbered from x1");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        let mut exps: Vec<u32> = exps.into_iter().collect();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// Exponent of `x_i` (1-based), zero when absent.
    pub fn exponent(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Largest variable index with a nonzero exponent (0 for the constant).
    pub fn max_var(&self) -> usize {
        self.exps.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    /// Nonzero `(variable, exponent)` pairs, variables ascending.
    pub fn vars(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().max(other.exps.len());
        let exps = (0..len)
            .map(|i| {
                self.exps.get(i).copied().unwrap_or(0) + other.exps.get(i).copied().unwrap_or(0)
            })
            .collect();
        // No trimming needed: exponent sums cannot create new trailing zeros.
        Monomial { exps }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::unit();
        }
        Monomial {
            exps: self.exps.iter().map(|&x| x * e).collect(),
        }
    }

    fn with_swapped(&self, i: usize, j: usize) -> Monomial {
        let len = self.exps.len().max(i).max(j);
        let mut exps = self.exps.clone();
        exps.resize(len, 0);
        exps.swap(i - 1, j - 1);
        Monomial::from_exponents(exps)
    }
}

/// Graded-lexicographic order: total degree first, then lexicographic on
/// exponent vectors with `x1 > x2 > ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let len = self.exps.len().max(other.exps.len());
                for k in 0..len {
                    let a = self.exps.get(k).copied().unwrap_or(0);
                    let b = other.exps.get(k).copied().unwrap_or(0);
                    match a.cmp(&b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of the range-idempotence dichotomy test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RangeIdempotence<R: Ring> {
    Constant(R),
    Idempotent,
    Neither,
}

/// Sparse exact polynomial in `x1..x{num_vars}`.
///
/// Invariants: no stored coefficient is zero, every used variable index is
/// at most `num_vars`, and the term map is the unique canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<R: Ring> {
    num_vars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R, num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(), c);
        }
        p
    }

    /// The variable `x_i` as a polynomial of the given arity.
    ///
    /// Panics when `i` is zero or exceeds `num_vars`.
    pub fn var(i: usize, num_vars: usize) -> Self {
        assert!(i >= 1 && i <= num_vars, "x{i} out of range for arity {num_vars}");
        let mut p = Self::zero(num_vars);
        p.terms.insert(Monomial::var(i), R::one());
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, R)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            if m.max_var() > num_vars {
                return Err(PolyError::VarOutOfRange {
                    var: m.max_var(),
                    arity: num_vars,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    /// Coefficient of the constant monomial (zero when absent).
    pub fn constant_term(&self) -> R {
        self.terms
            .get(&Monomial::unit())
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// Largest variable index actually used (0 for constants).
    pub fn max_used_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Same terms reinterpreted at a different arity; fails when a used
    /// variable would fall out of range.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Self, PolyError> {
        if self.max_used_var() > num_vars {
            return Err(PolyError::VarOutOfRange {
                var: self.max_used_var(),
                arity: num_vars,
            });
        }
        Ok(Polynomial {
            num_vars,
            terms: self.terms.clone(),
        })
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        let mut p = Polynomial::zero(self.num_vars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    /// Total degree; `None` encodes minus infinity for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in `x_i`; `None` for the zero polynomial.
    pub fn degree_in_var(&self, i: usize) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        self.terms.keys().map(|m| m.exponent(i)).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// The value of a constant polynomial (`None` when nonconstant).
    pub fn constant_value(&self) -> Option<R> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one(), self.num_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a point of matching arity.
    pub fn evaluate(&self, point: &[R]) -> Result<R, PolyError> {
        if point.len() != self.num_vars {
            return Err(PolyError::ArityMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                t = t * point[v - 1].pow(e);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Composition: replaces `x_i` by `images[i-1]` for every variable.
    /// Every variable needs an image; the result arity is the largest
    /// image arity.
    pub fn substitute(&self, images: &[Polynomial<R>]) -> Result<Self, PolyError> {
        if images.len() < self.num_vars {
            return Err(PolyError::MissingAssignment(images.len() + 1));
        }
        let out_vars = images.iter().map(|p| p.num_vars).max().unwrap_or(0);
        let mut pow_cache: HashMap<(usize, u32), Polynomial<R>> = HashMap::new();
        let mut acc = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), out_vars);
            for (v, e) in m.vars() {
                let img = pow_cache
                    .entry((v, e))
                    .or_insert_with(|| images[v - 1].pow(e).with_num_vars_lossless(out_vars));
                t = &t * img;
            }
            for (mono, coeff) in t.terms {
                acc.add_term(mono, coeff);
            }
        }
        Ok(acc)
    }

    /// Internal widening that can only grow the arity.
    fn with_num_vars_lossless(&self, num_vars: usize) -> Self {
        debug_assert!(num_vars >= self.max_used_var());
        Polynomial {
            num_vars,
            terms: self.terms.clone(),
        }
    }

    /// Diagonal section: every variable replaced by `x1`, yielding a
    /// univariate polynomial.
    pub fn diagonal(&self) -> Self {
        let x1 = Polynomial::var(1, 1);
        let images = vec![x1; self.num_vars.max(1)];
        self.substitute(&images)
            .expect("diagonal substitution covers all variables")
            .with_num_vars_lossless(1)
    }

    /// True iff the diagonal section is the identity `x1`.
    pub fn is_idempotent(&self) -> bool {
        self.diagonal() == Polynomial::var(1, 1)
    }

    /// Dichotomy test: a range-idempotent polynomial (one with
    /// `delta ∘ f = f`, and then necessarily `delta ∘ delta = delta`)
    /// over an integral domain is constant or idempotent; anything else
    /// reports `Neither`.
    pub fn range_idempotence_class(&self) -> RangeIdempotence<R> {
        if let Some(c) = self.constant_value() {
            return RangeIdempotence::Constant(c);
        }
        let diag = self.diagonal();
        let diag_idem = diag.substitute(&[diag.clone()]).expect("univariate") == diag;
        let fixes_range = diag.substitute(&[self.clone()]).expect("univariate") == *self;
        if diag_idem && fixes_range {
            debug_assert!(self.is_idempotent(), "nonconstant range-idempotent must be idempotent");
            RangeIdempotence::Idempotent
        } else {
            RangeIdempotence::Neither
        }
    }

    /// Exact division by `x_i - x_j`: returns `q` with
    /// `self = (x_i - x_j) * q`, which exists iff `self` vanishes under
    /// the substitution `x_i -> x_j`.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Self, PolyError> {
        assert!(i != j, "division requires distinct variables");
        assert!(
            i >= 1 && i <= self.num_vars && j >= 1 && j <= self.num_vars,
            "variables out of range"
        );
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.num_vars);
        // x_i - x_j is monic in x_i, so peeling leading x_i-terms is exact.
        loop {
            if rem.is_zero() {
                return Ok(quot);
            }
            let d = rem.degree_in_var(i).unwrap();
            if d == 0 {
                return Err(PolyError::NotDivisible { i, j });
            }
            let mut lead = Polynomial::zero(self.num_vars);
            for (m, c) in &rem.terms {
                if m.exponent(i) == d {
                    // strip x_i^d, then append x_i^{d-1}
                    let mut exps: Vec<u32> = (0..m.max_var().max(i))
                        .map(|k| m.exponent(k + 1))
                        .collect();
                    exps[i - 1] = d - 1;
                    lead.add_term(Monomial::from_exponents(exps), c.clone());
                }
            }
            let xi = Polynomial::var(i, self.num_vars);
            let xj = Polynomial::var(j, self.num_vars);
            rem = &rem - &(&(&xi - &xj) * &lead);
            quot = &quot + &lead;
        }
    }

    /// Transposes two variables, preserving the arity.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        assert!(
            i >= 1 && i <= self.num_vars && j >= 1 && j <= self.num_vars,
            "variables out of range"
        );
        let mut p = Polynomial::zero(self.num_vars);
        for (m, c) in &self.terms {
            p.add_term(m.with_swapped(i, j), c.clone());
        }
        p
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn add(self, rhs: Self) -> Polynomial<R> {
        let mut out = Polynomial {
            num_vars: self.num_vars.max(rhs.num_vars),
            terms: self.terms.clone(),
        };
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn sub(self, rhs: Self) -> Polynomial<R> {
        let mut out = Polynomial {
            num_vars: self.num_vars.max(rhs.num_vars),
            terms: self.terms.clone(),
        };
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn neg(self) -> Polynomial<R> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn mul(self, rhs: Self) -> Polynomial<R> {
        let mut out = Polynomial::zero(self.num_vars.max(rhs.num_vars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Canonical text: terms in graded-lex descending order, `*` explicit,
/// `^` for powers, unit coefficients folded away. Gaussian coefficients
/// with both components nonzero are parenthesized so the output re-parses
/// to the same polynomial.
impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(c) = self.constant_value() {
            return write!(f, "{}", c.render());
        }
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = coeff.sign_magnitude();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_constant() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}
