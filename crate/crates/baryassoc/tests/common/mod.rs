//! Shared fixtures: value constructors and the family corpus used by the
//! agreement and truncation suites.
#![allow(dead_code)]

use baryassoc::family::{case_ii_family, mz_family, weighted_mean};
use baryassoc::poly::Polynomial;
use baryassoc::ring::Ring;
use baryassoc::{GaussInt, GaussRat, Int, PolyFamily, Rat};

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn gi(a: i64, b: i64) -> GaussInt {
    GaussInt::new(int(a), int(b))
}

pub fn gr(re: (i64, i64), im: (i64, i64)) -> GaussRat {
    GaussRat::new(rat(re.0, re.1), rat(im.0, im.1))
}

pub fn x<R: Ring>(i: usize, nv: usize) -> Polynomial<R> {
    Polynomial::var(i, nv)
}

pub fn c<R: Ring>(v: R, nv: usize) -> Polynomial<R> {
    Polynomial::constant(v, nv)
}

pub fn fam<R: Ring>(members: Vec<Polynomial<R>>) -> PolyFamily<R> {
    PolyFamily::new(members).unwrap()
}

/// The rationalized form of 1/(1+i).
pub fn z_example_one() -> GaussRat {
    gr((1, 2), (-1, 2))
}

/// Rational corpus: mean families, truncations, binary blends and a
/// handful of broken families.
pub fn corpus_rat() -> Vec<PolyFamily<Rat>> {
    let mut out = Vec::new();
    for z in [
        rat(0, 1),
        rat(1, 1),
        rat(1, 2),
        rat(1, 3),
        rat(2, 5),
        rat(-1, 1),
        rat(3, 7),
        rat(-2, 5),
        rat(5, 2),
        rat(7, 1),
    ] {
        out.push(mz_family(&z, 5, &[]).unwrap());
    }
    let base = mz_family(&rat(1, 3), 5, &[]).unwrap();
    for k in 1..=5 {
        let consts: Vec<Rat> = (k..=5).map(|i| rat(2 * i as i64 - 7, 3)).collect();
        out.push(baryassoc::family::truncate(&base, k, &consts).unwrap());
    }
    let half = mz_family(&rat(1, 2), 5, &[]).unwrap();
    out.push(baryassoc::family::truncate(&half, 3, &[rat(1, 1), rat(0, 1), rat(-4, 1)]).unwrap());

    let x1 = x::<Rat>(1, 2);
    let x2 = x::<Rat>(2, 2);
    for q in [
        x1.clone(),
        &x1 - &x2,
        &x1 * &x2,
        &x1.pow(2) + &x2,
        &x1 + &c(rat(1, 1), 2),
        &x2.pow(2) - &x1,
    ] {
        out.push(case_ii_family(&q, 4, &[rat(0, 1), rat(5, 2)]).unwrap());
    }
    // symmetric blend: F_2 = (x1+x2)/2 + (x1-x2)^2
    let f2 = &(&x1 + &x2).scale(&rat(1, 2)) + &(&x1 - &x2).pow(2);
    out.push(fam(vec![x(1, 1), f2, c(rat(0, 1), 3)]));

    // broken families
    out.push(fam(vec![x(1, 1), &x1 * &x2]));
    out.push(fam(vec![
        x(1, 1),
        &x1 * &x2,
        &(&x::<Rat>(1, 3) * &x(2, 3)) * &x(3, 3),
    ]));
    out.push(fam(vec![x(1, 1), &x1 + &x2]));
    out.push(fam(vec![
        x(1, 1),
        weighted_mean(&rat(2, 3), 2).unwrap(),
        weighted_mean(&rat(1, 2), 3).unwrap(),
    ]));
    out.push(fam(vec![
        x(1, 1),
        &(&x1.pow(2) + &x2) - &(&x1 * &x2),
        x(3, 3),
    ]));
    out.push(fam(vec![x(1, 1), &(&x1 + &x2) - &c(rat(1, 1), 2)]));
    out
}

/// Integer corpus.
pub fn corpus_int() -> Vec<PolyFamily<Int>> {
    let mut out = Vec::new();
    out.push(mz_family(&int(0), 5, &[]).unwrap());
    out.push(mz_family(&int(1), 5, &[]).unwrap());
    out.push(mz_family(&int(2), 4, &[int(5), int(7)]).unwrap());
    out.push(mz_family(&int(-1), 4, &[int(0), int(0)]).unwrap());
    out.push(mz_family(&int(3), 4, &[int(-2), int(9)]).unwrap());
    out.push(fam(vec![c(int(3), 1), c(int(1), 2), c(int(4), 3)]));

    let x1 = x::<Int>(1, 2);
    let x2 = x::<Int>(2, 2);
    out.push(case_ii_family(&x1, 3, &[int(0)]).unwrap());
    out.push(case_ii_family(&(&x1 - &x2), 4, &[int(1), int(-1)]).unwrap());

    out.push(fam(vec![x(1, 1), &x1 * &x2]));
    out.push(fam(vec![
        x(1, 1),
        &x1.scale(&int(2)) - &x2,
        &(&x::<Int>(1, 3) + &x(2, 3)) - &x(3, 3),
    ]));
    out.push(fam(vec![c(int(5), 1), x(2, 2)]));
    out
}

/// Gaussian-integer corpus; n(i) = n(1+i) = 4 and n(2) = 3 here.
pub fn corpus_gauss_int() -> Vec<PolyFamily<GaussInt>> {
    let mut out = Vec::new();
    out.push(mz_family(&gi(0, 0), 4, &[]).unwrap());
    out.push(mz_family(&gi(1, 0), 4, &[]).unwrap());
    out.push(mz_family(&gi(0, 1), 4, &[gi(3, 0)]).unwrap());
    out.push(mz_family(&gi(1, 1), 4, &[gi(0, -2)]).unwrap());
    out.push(mz_family(&gi(2, 0), 4, &[gi(1, 1), gi(0, 0)]).unwrap());
    out.push(fam(vec![
        x(1, 1),
        &x::<GaussInt>(1, 2) * &x(2, 2),
    ]));
    out
}

/// Gaussian-rational corpus, including the normalizer-vanishing
/// parameter 1/2 - 1/2 i.
pub fn corpus_gauss_rat() -> Vec<PolyFamily<GaussRat>> {
    let mut out = Vec::new();
    out.push(mz_family(&gr((0, 1), (1, 1)), 5, &[]).unwrap());
    out.push(mz_family(&z_example_one(), 4, &[gr((3, 1), (0, 1))]).unwrap());
    out.push(mz_family(&gr((1, 3), (0, 1)), 5, &[]).unwrap());
    out.push(mz_family(&gr((1, 1), (2, 1)), 5, &[]).unwrap());
    let qi = x::<GaussRat>(1, 2).scale(&gr((0, 1), (1, 1)));
    out.push(case_ii_family(&qi, 3, &[gr((0, 1), (0, 1))]).unwrap());
    out.push(fam(vec![
        x(1, 1),
        &x::<GaussRat>(1, 2) * &x(2, 2),
        &(&x::<GaussRat>(1, 3) * &x(2, 3)) * &x(3, 3),
    ]));
    out
}
