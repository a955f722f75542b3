use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{Fq, FqField};
use crate::error::{Error, Result};

/// Dense polynomial over `F_{p^k}`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct FqPoly {
    field: Arc<FqField>,
    coeffs: Vec<Fq>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl Eq for FqPoly {}

impl FqPoly {
    pub fn new(field: &Arc<FqField>, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        FqPoly { field: field.clone(), coeffs }
    }

    /// Polynomial with prime-field integer coefficients, lowest degree first.
    pub fn from_ints(field: &Arc<FqField>, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Arc<FqField>) -> Self {
        FqPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn constant(field: &Arc<FqField>, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: &Arc<FqField>) -> Self {
        Self::constant(field, field.one())
    }

    /// The monomial `t`.
    pub fn x(field: &Arc<FqField>) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `t - root`.
    pub fn linear(field: &Arc<FqField>, root: &Fq) -> Self {
        Self::new(field, vec![field.neg(root), field.one()])
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Fq {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    fn check_field(&self, other: &FqPoly) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        FqPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        FqPoly::new(f, coeffs)
    }

    pub fn neg(&self) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        FqPoly::new(f, out)
    }

    pub fn scale(&self, c: &Fq) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> FqPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn divrem(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs.len() < dlen {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.coeffs.last().unwrap())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dlen + 1];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dlen - 1], &lc_inv);
            if !f.is_zero(&c) {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, d));
                }
            }
            q[i] = c;
        }
        r.truncate(dlen - 1);
        Ok((FqPoly::new(f, q), FqPoly::new(f, r)))
    }

    pub fn rem(&self, divisor: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::inconsistent("inexact polynomial division"));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> FqPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        FqPoly::new(f, coeffs)
    }

    pub fn eval(&self, x: &Fq) -> Fq {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`, with `e` given as a `u128`.
    pub fn pow_mod(&self, mut e: u128, m: &FqPoly) -> Result<FqPoly> {
        let mut base = self.rem(m)?;
        let mut acc = FqPoly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `self^(q^j) mod m` where `q` is the field order, by `j * k` Frobenius steps.
    pub fn frobenius_pow_mod(&self, j: usize, m: &FqPoly) -> Result<FqPoly> {
        let mut acc = self.rem(m)?;
        for _ in 0..j * self.field.degree() {
            acc = acc.pow_mod(self.field.characteristic() as u128, m)?;
        }
        Ok(acc)
    }

    /// Substitute `t -> t^p` inverse: requires every exponent to be a
    /// multiple of `p` and takes `p`-th roots of the coefficients.
    pub(crate) fn pth_root(&self) -> FqPoly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self.coeffs.iter().step_by(p).map(|c| f.pth_root(c)).collect();
        FqPoly::new(f, coeffs)
    }

    /// Image of every coefficient under `g`, landing in `target`.
    pub fn map_coeffs(&self, target: &Arc<FqField>, g: impl Fn(&Fq) -> Fq) -> FqPoly {
        FqPoly::new(target, self.coeffs.iter().map(g).collect())
    }

    /// Canonical order: degree, then coefficients from the constant term up,
    /// each compared by its integer encoding.
    pub fn canonical_cmp(&self, other: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().cmp(other.coeffs.iter()))
    }

    /// Coefficients as integer vectors (one vector of `k` digits each).
    pub fn to_digit_vectors(&self) -> Vec<Vec<u64>> {
        self.coeffs.iter().map(|c| c.0.to_vec()).collect()
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.display(c);
            match (i, f.is_one(c)) {
                (0, _) => write!(out, "{cs}")?,
                (1, true) => write!(out, "t")?,
                (1, false) => write!(out, "{cs}*t")?,
                (_, true) => write!(out, "t^{i}")?,
                (_, false) => write!(out, "{cs}*t^{i}")?,
            }
        }
        Ok(())
    }
}
