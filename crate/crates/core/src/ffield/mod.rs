//! Finite fields `F_{p^k}` and dense univariate polynomials over them.
//!
//! A field is a context object: elements ([`Fq`]) are bare coefficient
//! vectors and all arithmetic goes through the owning [`FqField`]. Fields are
//! shared behind `Arc` and never mutated after construction.

mod embed;
mod factor;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use embed::{fq_embed, FqEmbedding};
pub use factor::{fq_factor, fq_purely_inseparable_profile, is_irreducible, squarefree_decomposition};
pub use poly::FqPoly;

/// Element of `F_{p^k}`: coefficients of a polynomial of degree `< k` in the
/// field generator, lowest degree first. Always exactly `k` entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fq(pub(crate) SmallVec<[u64; 4]>);

impl Fq {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// Canonical order: compare as the integer `sum c_i p^i`, i.e. highest
/// coefficient first.
impl Ord for Fq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The finite field `F_p[a]/(modulus(a))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqField {
    p: u64,
    k: usize,
    /// Monic, `k + 1` entries, lowest degree first. `[0, 1]` for `k = 1`.
    modulus: Vec<u64>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^k}` with the least monic irreducible modulus of degree `k`.
///
/// Candidates `t^k + c_{k-1} t^{k-1} + ... + c_0` are scanned in increasing
/// order of the integer `sum c_i p^i`.
pub fn fq_field_make(p: u64, k: usize) -> Result<Arc<FqField>> {
    if p >= 1 << 31 {
        return Err(Error::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 1 || k > 24 {
        return Err(Error::DegreeOutOfRange(k));
    }
    let prime = Arc::new(FqField { p, k: 1, modulus: vec![0, 1] });
    if k == 1 {
        return Ok(prime);
    }
    let mut digits = vec![0u64; k];
    loop {
        let mut coeffs: Vec<Fq> = digits.iter().map(|&c| prime.from_u64(c)).collect();
        coeffs.push(prime.one());
        let cand = FqPoly::new(&prime, coeffs);
        if digits[0] != 0 && is_irreducible(&cand)? {
            let mut modulus = digits.clone();
            modulus.push(1);
            return Ok(Arc::new(FqField { p, k, modulus }));
        }
        // odometer increment, lowest digit fastest
        let mut i = 0;
        loop {
            if i == k {
                return Err(Error::inconsistent("no irreducible polynomial found"));
            }
            digits[i] += 1;
            if digits[i] == p {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

impl FqField {
    /// Field with an explicitly supplied modulus over `F_p` (monic, lowest
    /// degree first). Irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Arc<FqField>> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let k = modulus.len().saturating_sub(1);
        if k < 1 || modulus[k] != 1 {
            return Err(Error::DegreeOutOfRange(k));
        }
        if k == 1 {
            return fq_field_make(p, 1);
        }
        let prime = fq_field_make(p, 1)?;
        let cand = FqPoly::new(&prime, modulus.iter().map(|&c| prime.from_u64(c)).collect());
        if !is_irreducible(&cand)? {
            return Err(Error::NotIrreducible);
        }
        Ok(Arc::new(FqField { p, k, modulus: modulus.iter().map(|c| c % p).collect() }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order `p^k`, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq(SmallVec::from_elem(0, self.k))
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Fq {
        let mut v = SmallVec::from_elem(0, self.k);
        v[0] = c % self.p;
        Fq(v)
    }

    pub fn from_i64(&self, c: i64) -> Fq {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    /// Element from its coefficient vector (shorter vectors are zero-padded,
    /// longer ones reduced modulo the field modulus).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fq {
        let mut acc: SmallVec<[u64; 8]> = coeffs.iter().map(|c| c % self.p).collect();
        self.reduce(&mut acc);
        let mut v: SmallVec<[u64; 4]> = acc.into_iter().take(self.k).collect();
        v.resize(self.k, 0);
        Fq(v)
    }

    /// The class of the generator `a`. Equal to `0` in the prime field,
    /// where the modulus is `t - 0`.
    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            return self.zero();
        }
        let mut v = SmallVec::from_elem(0, self.k);
        v[1] = 1;
        Fq(v)
    }

    /// Integer encoding `sum c_i p^i`.
    pub fn encode(&self, x: &Fq) -> u128 {
        x.0.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn decode(&self, mut n: u128) -> Fq {
        let mut v = SmallVec::from_elem(0, self.k);
        for c in v.iter_mut() {
            *c = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        Fq(v)
    }

    pub fn is_zero(&self, x: &Fq) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, x: &Fq) -> bool {
        x.0[0] == 1 && x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &Fq, y: &Fq) -> Fq {
        let p = self.p;
        Fq(x.0.iter().zip(y.0.iter()).map(|(&a, &b)| (a + b) % p).collect())
    }

    pub fn sub(&self, x: &Fq, y: &Fq) -> Fq {
        let p = self.p;
        Fq(x.0.iter().zip(y.0.iter()).map(|(&a, &b)| (a + p - b) % p).collect())
    }

    pub fn neg(&self, x: &Fq) -> Fq {
        let p = self.p;
        Fq(x.0.iter().map(|&a| (p - a) % p).collect())
    }

    fn reduce(&self, acc: &mut SmallVec<[u64; 8]>) {
        let (p, k) = (self.p, self.k);
        if k == 1 {
            return;
        }
        for i in (k..acc.len()).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    acc[i - k + j] = (acc[i - k + j] + (p - c) * m) % p;
                }
            }
            acc[i] = 0;
        }
    }

    pub fn mul(&self, x: &Fq, y: &Fq) -> Fq {
        let (p, k) = (self.p, self.k);
        if k == 1 {
            let mut v = SmallVec::new();
            v.push(x.0[0] * y.0[0] % p);
            return Fq(v);
        }
        let mut acc: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * k - 1);
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a * b) % p;
            }
        }
        self.reduce(&mut acc);
        Fq(acc[..k].iter().copied().collect())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `F_p[t]`.
    pub fn inv(&self, x: &Fq) -> Result<Fq> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        if self.k == 1 {
            return Ok(self.from_u64(inv_mod(x.0[0], p)));
        }
        // invariant: s * x == r (mod modulus)
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(x.0.to_vec());
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = inv_mod(r1[0], p);
        let scaled: Vec<u64> = s1.iter().map(|&a| a * c % p).collect();
        Ok(self.from_coeffs(&scaled))
    }

    pub fn div(&self, x: &Fq, y: &Fq) -> Result<Fq> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &Fq, mut e: u128) -> Fq {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^p`.
    pub fn frobenius(&self, x: &Fq) -> Fq {
        self.pow(x, self.p as u128)
    }

    /// Unique `y` with `y^p = x` (finite fields are perfect).
    pub fn pth_root(&self, x: &Fq) -> Fq {
        let mut y = x.clone();
        for _ in 1..self.k {
            y = self.frobenius(&y);
        }
        y
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq((0..self.k).map(|_| rng.gen_range(0..self.p)).collect())
    }

    /// All elements in encoding order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        let q = self.order().expect("field too large to enumerate");
        (0..q).map(move |n| self.decode(n))
    }

    /// Human-readable element: an integer in the prime field, otherwise a
    /// polynomial in the generator `a`.
    pub fn display(&self, x: &Fq) -> String {
        if self.k == 1 {
            return x.0[0].to_string();
        }
        let terms: Vec<String> = x
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else if terms.len() == 1 {
            terms[0].clone()
        } else {
            format!("({})", terms.join(" + "))
        }
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u64
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let lc_inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1] * lc_inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + (p - c) * bj) % p;
            }
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}
