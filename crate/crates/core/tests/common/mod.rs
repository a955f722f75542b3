#![allow(dead_code)]

use std::sync::Arc;

use hypercert::cli::validate;
use hypercert::ffield::{fq_field_make, FqField, FqPoly};
use hypercert::localfield::{LocalElement, LocalField};
use hypercert::ratfunc::{PolyX, RatFunc};
use rand::Rng;

pub const CORPUS_PRIMES: [u64; 4] = [5, 7, 11, 13];

/// Random `c_0 + c_1 s + c_2 s^2` with `c_0 != 0`.
fn unit_poly<R: Rng>(fp: &Arc<FqField>, rng: &mut R) -> FqPoly {
    let p = fp.characteristic() as i64;
    let c0 = rng.gen_range(1..p);
    let c1 = rng.gen_range(0..p);
    let c2 = rng.gen_range(0..p);
    FqPoly::from_ints(fp, &[c0, c1, c2])
}

/// Random square-free `f` of degree `2..=min(6, p - 1)` whose coefficients
/// are `unit * s^k` (`k <= 3`) or zero.
pub fn random_input<R: Rng>(rng: &mut R) -> (u64, PolyX) {
    loop {
        let p = CORPUS_PRIMES[rng.gen_range(0..CORPUS_PRIMES.len())];
        let fp = fq_field_make(p, 1).unwrap();
        let n = rng.gen_range(2..=6usize.min(p as usize - 1));
        let mut coeffs = vec![];
        for i in 0..=n {
            if i < n && rng.gen_bool(0.25) {
                coeffs.push(RatFunc::zero(&fp));
                continue;
            }
            let k = rng.gen_range(0..=3);
            let mut shift = vec![0i64; k + 1];
            shift[k] = 1;
            let sk = FqPoly::from_ints(&fp, &shift);
            coeffs.push(RatFunc::from_poly(unit_poly(&fp, rng).mul(&sk)));
        }
        let f = PolyX::new(&fp, coeffs);
        if validate(&f, p).is_ok() {
            return (p, f);
        }
    }
}

pub fn corpus<R: Rng>(rng: &mut R, size: usize) -> Vec<(u64, PolyX)> {
    (0..size).map(|_| random_input(rng)).collect()
}

/// Random unit of `k` with up to four known digits, exact.
pub fn random_unit<R: Rng>(k: &LocalField, rng: &mut R) -> LocalElement {
    let r = k.residue_field();
    let mut digits = vec![];
    loop {
        let d = r.random(rng);
        if !r.is_zero(&d) {
            digits.push(d);
            break;
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        digits.push(r.random(rng));
    }
    k.make(0, digits, None)
}

/// Random element: exact zero now and then, otherwise a series with random
/// lead, length and (sometimes) finite precision.
pub fn random_element<R: Rng>(k: &LocalField, rng: &mut R) -> LocalElement {
    if rng.gen_ratio(1, 40) {
        return LocalElement::exact_zero();
    }
    let r = k.residue_field();
    let lead = rng.gen_range(-6..=6);
    let len = rng.gen_range(1..=k.precision_cap());
    let mut digits: Vec<_> = (0..len).map(|_| r.random(rng)).collect();
    while r.is_zero(&digits[0]) {
        digits[0] = r.random(rng);
    }
    let known = if rng.gen_bool(0.5) { None } else { Some(lead + len as i64) };
    k.make(lead, digits, known)
}

/// Product of linear factors `X - r` with roots drawn from a small set of
/// `s`-adic clusters, and of ramified factors `X^e - c s^k (1 + c' s)`.
/// These force repeated residue roots and deep recursion.
pub fn clustered_input<R: Rng>(rng: &mut R) -> (u64, PolyX) {
    loop {
        let p = CORPUS_PRIMES[rng.gen_range(0..CORPUS_PRIMES.len())];
        let fp = fq_field_make(p, 1).unwrap();
        let n = rng.gen_range(2..=6usize.min(p as usize - 1));
        let one = PolyX::constant(RatFunc::from_i64(&fp, 1));
        let x = PolyX::x(&fp);
        let mut f = one.clone();
        let mut deg = 0;
        while deg < n {
            let left = n - deg;
            if left >= 2 && rng.gen_bool(0.35) {
                // X^e - c s^k (1 + c' s^j): clusters around a ramified point
                let e = rng.gen_range(2..=left.min(3));
                let k = rng.gen_range(1..=2);
                let j = rng.gen_range(1..=3);
                let mut c = vec![0i64; k + j + 1];
                c[k] = rng.gen_range(1..=2);
                c[k + j] = c[k] * rng.gen_range(0..p as i64);
                let tail = PolyX::constant(RatFunc::from_poly(FqPoly::from_ints(&fp, &c)));
                f = f.mul(&x.pow(e as u64).sub(&tail));
                deg += e;
            } else if left >= 2 && rng.gen_bool(0.3) {
                // X^2 - a (1 + c s^j) with a a non-square: unramified cluster
                let a = (2..p as i64).find(|a| (0..p as i64).all(|y| (y * y - a) % p as i64 != 0)).unwrap();
                let j = rng.gen_range(1..=3);
                let mut c = vec![0i64; j + 1];
                c[0] = a;
                c[j] = a * rng.gen_range(0..p as i64);
                let tail = PolyX::constant(RatFunc::from_poly(FqPoly::from_ints(&fp, &c)));
                f = f.mul(&x.pow(2).sub(&tail));
                deg += 2;
            } else {
                let c: Vec<i64> = (0..4).map(|_| rng.gen_range(0..3)).collect();
                let r = PolyX::constant(RatFunc::from_poly(FqPoly::from_ints(&fp, &c)));
                f = f.mul(&x.sub(&r));
                deg += 1;
            }
        }
        if validate(&f, p).is_ok() {
            return (p, f);
        }
    }
}
