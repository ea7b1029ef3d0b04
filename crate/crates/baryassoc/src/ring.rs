//! The four supported coefficient domains and the scalar trait over them.
//!
//! Every domain here is an infinite commutative integral domain, so two
//! polynomials are equal as functions exactly when they are equal
//! coefficient-wise. The non-fields (integers, Gaussian integers) embed
//! into their fraction fields (rationals, Gaussian rationals), which the
//! classifier uses to run field-level arguments and descend afterwards.

use std::fmt;
use std::ops::{Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Tag naming one of the four supported domains.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingId {
    Int,
    Rat,
    GaussInt,
    GaussRat,
}

impl RingId {
    /// True for the two domains in which every nonzero element is a unit.
    pub fn is_field(self) -> bool {
        matches!(self, RingId::Rat | RingId::GaussRat)
    }

    pub fn name(self) -> &'static str {
        match self {
            RingId::Int => "int",
            RingId::Rat => "rat",
            RingId::GaussInt => "gaussint",
            RingId::GaussRat => "gaussrat",
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("unknown ring `{0}` (expected int, rat, gaussint or gaussrat)")]
pub struct UnknownRing(pub String);

impl FromStr for RingId {
    type Err = UnknownRing;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(RingId::Int),
            "rat" => Ok(RingId::Rat),
            "gaussint" => Ok(RingId::GaussInt),
            "gaussrat" => Ok(RingId::GaussRat),
            other => Err(UnknownRing(other.to_string())),
        }
    }
}

/// Element of an infinite commutative integral domain with decidable unit
/// testing and a computable fraction field.
///
/// Values are immutable and all operations are pure, so they can be shared
/// freely across threads. Canonical form is unique per value (fractions
/// reduced with positive denominator, Gaussian values component-wise), so
/// `Eq` is structural equality of values.
pub trait Ring:
    Clone
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The field of fractions; `Self` when the domain is already a field.
    type Frac: Ring<Frac = Self::Frac>;

    const ID: RingId;

    /// True iff the value has a multiplicative inverse in this domain.
    fn is_unit(&self) -> bool;

    /// The inverse when [`Ring::is_unit`] holds, `None` otherwise.
    fn try_invert(&self) -> Option<Self>;

    /// Canonical embedding into the fraction field.
    fn to_frac(&self) -> Self::Frac;

    /// Descent from the fraction field: `Some` exactly when `x` is the
    /// image of an element of this domain.
    fn from_frac(x: &Self::Frac) -> Option<Self>;

    /// Whether a fraction-field value lies in the image of this domain.
    fn is_in_base_ring(x: &Self::Frac) -> bool {
        Self::from_frac(x).is_some()
    }

    /// Builds a value from rational real and imaginary parts, when the
    /// parts lie in this domain. Drives literal parsing.
    fn from_parts(re: &BigRational, im: &BigRational) -> Option<Self>;

    /// Embedding of the small integers, shared by all four domains.
    fn from_int(n: i64) -> Self;

    /// Canonical literal text: `-12`, `3/4`, `2+3i`, `-i`, `1/2-1/3i`.
    fn render(&self) -> String;

    /// Splits the value into a leading sign and an unsigned magnitude
    /// string for term-by-term polynomial rendering. Gaussian values with
    /// both components nonzero carry no usable sign and come back as a
    /// parenthesized literal instead.
    fn sign_magnitude(&self) -> (bool, String);

    fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Ring for BigInt {
    type Frac = BigRational;

    const ID: RingId = RingId::Int;

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn try_invert(&self) -> Option<Self> {
        // 1 and -1 are their own inverses.
        self.is_unit().then(|| self.clone())
    }

    fn to_frac(&self) -> BigRational {
        BigRational::from(self.clone())
    }

    fn from_frac(x: &BigRational) -> Option<Self> {
        x.is_integer().then(|| x.to_integer())
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Option<Self> {
        (im.is_zero() && re.is_integer()).then(|| re.to_integer())
    }

    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn sign_magnitude(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl Ring for BigRational {
    type Frac = BigRational;

    const ID: RingId = RingId::Rat;

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn try_invert(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn to_frac(&self) -> BigRational {
        self.clone()
    }

    fn from_frac(x: &BigRational) -> Option<Self> {
        Some(x.clone())
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Option<Self> {
        im.is_zero().then(|| re.clone())
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn sign_magnitude(&self) -> (bool, String) {
        (self.is_negative(), self.abs().render())
    }
}

impl Ring for Complex<BigInt> {
    type Frac = Complex<BigRational>;

    const ID: RingId = RingId::GaussInt;

    fn is_unit(&self) -> bool {
        // Units of the Gaussian integers are exactly the norm-1 elements
        // 1, -1, i, -i.
        self.norm_sqr().is_one()
    }

    fn try_invert(&self) -> Option<Self> {
        // For a unit the conjugate is the inverse: (a+bi)(a-bi) = 1.
        self.is_unit().then(|| self.conj())
    }

    fn to_frac(&self) -> Complex<BigRational> {
        Complex::new(self.re.to_frac(), self.im.to_frac())
    }

    fn from_frac(x: &Complex<BigRational>) -> Option<Self> {
        Some(Complex::new(
            BigInt::from_frac(&x.re)?,
            BigInt::from_frac(&x.im)?,
        ))
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Option<Self> {
        (re.is_integer() && im.is_integer())
            .then(|| Complex::new(re.to_integer(), im.to_integer()))
    }

    fn from_int(n: i64) -> Self {
        Complex::new(BigInt::from(n), BigInt::zero())
    }

    fn render(&self) -> String {
        render_gauss(&self.re, &self.im)
    }

    fn sign_magnitude(&self) -> (bool, String) {
        sign_magnitude_gauss(&self.re, &self.im)
    }
}

impl Ring for Complex<BigRational> {
    type Frac = Complex<BigRational>;

    const ID: RingId = RingId::GaussRat;

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn try_invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Complex::new(self.re.clone() / n.clone(), -self.im.clone() / n))
    }

    fn to_frac(&self) -> Complex<BigRational> {
        self.clone()
    }

    fn from_frac(x: &Complex<BigRational>) -> Option<Self> {
        Some(x.clone())
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Option<Self> {
        Some(Complex::new(re.clone(), im.clone()))
    }

    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_int(n), BigRational::zero())
    }

    fn render(&self) -> String {
        render_gauss(&self.re, &self.im)
    }

    fn sign_magnitude(&self) -> (bool, String) {
        sign_magnitude_gauss(&self.re, &self.im)
    }
}

/// Minimal Gaussian literal: omit a zero imaginary part, render the
/// magnitude-one imaginary unit as bare `i`.
fn render_gauss<T: Ring>(re: &T, im: &T) -> String {
    if im.is_zero() {
        return re.render();
    }
    let (im_neg, im_mag) = im.sign_magnitude();
    let im_txt = if im_mag == "1" {
        "i".to_string()
    } else {
        format!("{im_mag}i")
    };
    if re.is_zero() {
        if im_neg {
            format!("-{im_txt}")
        } else {
            im_txt
        }
    } else {
        format!("{}{}{}", re.render(), if im_neg { "-" } else { "+" }, im_txt)
    }
}

fn sign_magnitude_gauss<T: Ring>(re: &T, im: &T) -> (bool, String) {
    if im.is_zero() {
        re.sign_magnitude()
    } else if re.is_zero() {
        let (neg, mag) = im.sign_magnitude();
        let txt = if mag == "1" {
            "i".to_string()
        } else {
            format!("{mag}i")
        };
        (neg, txt)
    } else {
        (false, format!("({})", render_gauss(re, im)))
    }
}
