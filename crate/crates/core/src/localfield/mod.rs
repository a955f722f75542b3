//! Truncated Laurent series over a finite residue field: the completion
//! `F_p((s))` and its tame towers `F_{p^k}((Pi))`.
//!
//! Elements carry their own precision. An element is either exact (finitely
//! many nonzero digits, all known) or known modulo `Pi^known_to`. Valuations
//! are stored in internal units (powers of the current uniformizer `Pi`);
//! [`LocalField::val`] converts to absolute units where `v(s) = 1`.

mod hensel;
mod poly;
mod tower;

use std::cmp::{max, min};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffield::{fq_field_make, Fq, FqField, FqPoly};

pub use hensel::hensel_root;
pub use poly::LocalPolynomial;
pub use tower::{kummer_step, unramified_step, Embedding};

/// Smallest precision cap accepted by [`base_field`].
pub const MIN_PRECISION: usize = 8;

/// Absolute valuation: a rational, or `+inf` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(Rational64),
    Infinite,
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

/// One step of a field tower, recorded for the descriptor.
#[derive(Clone, Debug)]
pub enum ExtensionStep {
    /// Residue field enlarged by a root of `q` (irreducible over the old residue field).
    Unramified { q: FqPoly },
    /// `Pi_new^e = relation`, where `relation` lives in the old field and has
    /// value one old unit, built as `u^x * Pi_old^(y e)` from `x M + y e = 1`.
    Kummer { e: u64, relation: LocalElement, bezout: (i64, i64) },
}

/// A complete discretely valued field `F_{p^k}((Pi))` with its construction history.
#[derive(Clone, Debug)]
pub struct LocalField {
    p: u64,
    residue: Arc<FqField>,
    e_abs: u64,
    steps: Vec<ExtensionStep>,
    cap: usize,
}

/// `F_p((s))` with relative precision capped at `cap` digits.
pub fn base_field(p: u64, cap: usize) -> Result<Arc<LocalField>> {
    let residue = fq_field_make(p, 1)?;
    if cap < MIN_PRECISION {
        return Err(Error::PrecisionTooSmall(cap));
    }
    Ok(Arc::new(LocalField { p, residue, e_abs: 1, steps: vec![], cap }))
}

/// Truncated series element. See the module docs for the precision model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElement {
    /// Internal valuation of `digits[0]`; equals `known_to` for an inexact zero.
    lead: i64,
    /// `digits[i]` is the coefficient of `Pi^(lead + i)`; first entry nonzero.
    digits: Vec<Fq>,
    /// `None` when exact, else the element is known modulo `Pi^known_to`.
    known_to: Option<i64>,
}

impl LocalElement {
    pub fn exact_zero() -> Self {
        LocalElement { lead: 0, digits: vec![], known_to: None }
    }

    /// Zero known only modulo `Pi^k`.
    pub fn inexact_zero(k: i64) -> Self {
        LocalElement { lead: k, digits: vec![], known_to: Some(k) }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.digits.is_empty() && self.known_to.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.known_to.is_none()
    }

    /// True when no nonzero digit is known (exact or inexact zero).
    pub fn is_zero_to_precision(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn digits(&self) -> &[Fq] {
        &self.digits
    }

    pub fn known_to(&self) -> Option<i64> {
        self.known_to
    }

    /// Internal valuation; `None` for exact zero.
    pub fn ival(&self) -> Result<Option<i64>> {
        if !self.digits.is_empty() {
            Ok(Some(self.lead))
        } else if self.known_to.is_none() {
            Ok(None)
        } else {
            Err(Error::exhausted(format!("valuation indeterminate (zero modulo Pi^{})", self.lead)))
        }
    }

    /// Relative precision; `None` when exact or zero.
    pub fn rel_prec(&self) -> Option<i64> {
        match (self.known_to, self.digits.is_empty()) {
            (Some(k), false) => Some(k - self.lead),
            _ => None,
        }
    }

    fn end(&self) -> i64 {
        self.lead + self.digits.len() as i64
    }

    fn digit<'a>(&'a self, i: i64, zero: &'a Fq) -> &'a Fq {
        if i < self.lead || i >= self.end() {
            zero
        } else {
            &self.digits[(i - self.lead) as usize]
        }
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LocalField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn residue_field(&self) -> &Arc<FqField> {
        &self.residue
    }

    pub fn residue_degree(&self) -> usize {
        self.residue.degree()
    }

    /// Absolute ramification index over `F_p((s))`.
    pub fn e_abs(&self) -> u64 {
        self.e_abs
    }

    pub fn steps(&self) -> &[ExtensionStep] {
        &self.steps
    }

    pub fn precision_cap(&self) -> usize {
        self.cap
    }

    /// Same field with a different relative precision cap.
    pub fn with_cap(&self, cap: usize) -> LocalField {
        LocalField { cap, ..self.clone() }
    }

    /// Builds a normalized element from digits starting at `lead`.
    /// Digits at or beyond `known_to` are discarded.
    pub fn make(&self, mut lead: i64, mut digits: Vec<Fq>, known_to: Option<i64>) -> LocalElement {
        let r = &self.residue;
        if let Some(k) = known_to {
            digits.truncate(max(0, k - lead) as usize);
        }
        let Some(first) = digits.iter().position(|d| !r.is_zero(d)) else {
            return match known_to {
                None => LocalElement::exact_zero(),
                Some(k) => LocalElement::inexact_zero(k),
            };
        };
        digits.drain(..first);
        lead += first as i64;
        let cap = self.cap as i64;
        match known_to {
            None => {
                while digits.last().is_some_and(|d| r.is_zero(d)) {
                    digits.pop();
                }
                if digits.len() > self.cap {
                    digits.truncate(self.cap);
                    return LocalElement { lead, digits, known_to: Some(lead + cap) };
                }
                LocalElement { lead, digits, known_to: None }
            }
            Some(k) => {
                let k = min(k, lead + cap);
                digits.resize((k - lead) as usize, r.zero());
                LocalElement { lead, digits, known_to: Some(k) }
            }
        }
    }

    pub fn zero(&self) -> LocalElement {
        LocalElement::exact_zero()
    }

    pub fn one(&self) -> LocalElement {
        self.lift(&self.residue.one())
    }

    /// Exact `c * Pi^n`.
    pub fn monomial(&self, c: &Fq, n: i64) -> LocalElement {
        self.make(n, vec![c.clone()], None)
    }

    /// The uniformizer `Pi`.
    pub fn uniformizer(&self) -> LocalElement {
        self.monomial(&self.residue.one(), 1)
    }

    /// Exact constant series with the given residue.
    pub fn lift(&self, r: &Fq) -> LocalElement {
        self.monomial(r, 0)
    }

    pub fn from_i64(&self, c: i64) -> LocalElement {
        self.lift(&self.residue.from_i64(c))
    }

    /// Absolute valuation `lead / e_abs`.
    pub fn val(&self, x: &LocalElement) -> Result<Val> {
        Ok(match x.ival()? {
            None => Val::Infinite,
            Some(l) => Val::Finite(Rational64::new(l, self.e_abs as i64)),
        })
    }

    /// Digit at value 0 of an element with nonnegative valuation.
    pub fn residue(&self, x: &LocalElement) -> Result<Fq> {
        match x.ival() {
            Ok(None) => Ok(self.residue.zero()),
            Ok(Some(l)) if l < 0 => Err(Error::NegativeValuation),
            Ok(Some(0)) => Ok(x.digits[0].clone()),
            Ok(Some(_)) => Ok(self.residue.zero()),
            Err(e) => {
                if x.lead > 0 {
                    Ok(self.residue.zero())
                } else {
                    Err(e)
                }
            }
        }
    }

    pub fn neg(&self, x: &LocalElement) -> LocalElement {
        let r = &self.residue;
        LocalElement {
            lead: x.lead,
            digits: x.digits.iter().map(|d| r.neg(d)).collect(),
            known_to: x.known_to,
        }
    }

    pub fn add(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        if x.is_exact_zero() {
            return self.make(y.lead, y.digits.clone(), y.known_to);
        }
        if y.is_exact_zero() {
            return self.make(x.lead, x.digits.clone(), x.known_to);
        }
        let known = min_opt(x.known_to, y.known_to);
        let start = match (x.digits.is_empty(), y.digits.is_empty()) {
            (true, true) => return LocalElement::inexact_zero(known.expect("inexact")),
            (true, false) => y.lead,
            (false, true) => x.lead,
            (false, false) => min(x.lead, y.lead),
        };
        let mut end = match known {
            Some(k) => k,
            None => max(x.end(), y.end()),
        };
        end = min(end, start + 2 * self.cap as i64);
        if end <= start {
            return LocalElement::inexact_zero(known.expect("empty exact range"));
        }
        let r = &self.residue;
        let z = r.zero();
        let digits = (start..end).map(|i| r.add(x.digit(i, &z), y.digit(i, &z))).collect();
        let known = known.map(|k| min(k, end));
        self.make(start, digits, known)
    }

    pub fn sub(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &LocalElement, c: &Fq) -> LocalElement {
        let r = &self.residue;
        if r.is_zero(c) {
            return LocalElement::exact_zero();
        }
        LocalElement {
            lead: x.lead,
            digits: x.digits.iter().map(|d| r.mul(d, c)).collect(),
            known_to: x.known_to,
        }
    }

    /// Multiplication by `Pi^n`.
    pub fn shift(&self, x: &LocalElement, n: i64) -> LocalElement {
        if x.is_exact_zero() {
            return x.clone();
        }
        LocalElement { lead: x.lead + n, digits: x.digits.clone(), known_to: x.known_to.map(|k| k + n) }
    }

    pub fn mul(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        if x.is_exact_zero() || y.is_exact_zero() {
            return LocalElement::exact_zero();
        }
        match (x.digits.is_empty(), y.digits.is_empty()) {
            (true, true) => return LocalElement::inexact_zero(x.lead + y.lead),
            (true, false) => return LocalElement::inexact_zero(x.lead + y.lead),
            (false, true) => return LocalElement::inexact_zero(x.lead + y.lead),
            _ => {}
        }
        let r = &self.residue;
        let lead = x.lead + y.lead;
        let rel = min_opt(x.rel_prec(), y.rel_prec());
        let n = match rel {
            None => x.digits.len() + y.digits.len() - 1,
            Some(m) => min(m as usize, self.cap),
        };
        let mut out = vec![r.zero(); n];
        for (i, a) in x.digits.iter().enumerate().take(n) {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in y.digits.iter().enumerate().take(n - i) {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        self.make(lead, out, rel.map(|_| lead + n as i64))
    }

    pub fn inv(&self, x: &LocalElement) -> Result<LocalElement> {
        if x.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        x.ival()?;
        let r = &self.residue;
        let lead = -x.lead;
        let b0 = r.inv(&x.digits[0])?;
        if x.is_exact() && x.digits.len() == 1 {
            return Ok(self.make(lead, vec![b0], None));
        }
        let n = min(x.rel_prec().map_or(self.cap, |m| m as usize), self.cap);
        let mut b = Vec::with_capacity(n);
        b.push(b0.clone());
        for i in 1..n {
            let mut acc = r.zero();
            for j in 1..=min(i, x.digits.len() - 1) {
                acc = r.add(&acc, &r.mul(&x.digits[j], &b[i - j]));
            }
            b.push(r.neg(&r.mul(&b0, &acc)));
        }
        Ok(self.make(lead, b, Some(lead + n as i64)))
    }

    pub fn div(&self, x: &LocalElement, y: &LocalElement) -> Result<LocalElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &LocalElement, n: i64) -> Result<LocalElement> {
        let base = if n < 0 { self.inv(x)? } else { x.clone() };
        let mut e = n.unsigned_abs();
        let mut sq = base;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Formal derivative with respect to `Pi`.
    pub fn derivative(&self, x: &LocalElement) -> LocalElement {
        let r = &self.residue;
        let digits = x
            .digits
            .iter()
            .enumerate()
            .map(|(i, d)| r.mul(d, &r.from_i64(x.lead + i as i64)))
            .collect();
        self.make(x.lead - 1, digits, x.known_to.map(|k| k - 1))
    }

    /// Series composition `a(b)` for `b` of positive valuation.
    pub fn compose(&self, a: &LocalElement, b: &LocalElement) -> Result<LocalElement> {
        if a.is_exact_zero() {
            return Ok(a.clone());
        }
        let vb = b.ival()?.ok_or(Error::DivisionByZero)?;
        if vb < 1 {
            return Err(Error::inconsistent("composition needs an argument of positive valuation"));
        }
        if a.digits.is_empty() {
            return Ok(LocalElement::inexact_zero(a.lead * vb));
        }
        let terms = min(a.digits.len(), self.cap.div_ceil(vb as usize) + 1);
        let mut acc = LocalElement::exact_zero();
        for d in a.digits[..terms].iter().rev() {
            acc = self.add(&self.mul(&acc, b), &self.lift(d));
        }
        if let Some(m) = a.rel_prec() {
            acc = self.add(&acc, &LocalElement::inexact_zero(m * vb));
        } else if terms < a.digits.len() {
            acc = self.add(&acc, &LocalElement::inexact_zero(terms as i64 * vb));
        }
        Ok(self.mul(&acc, &self.pow(b, a.lead)?))
    }

    /// `s`-adic expansion of `num / den` (polynomials in `s` over `F_p`).
    ///
    /// Only defined while `s` is the uniformizer, i.e. `e_abs = 1`.
    pub fn from_rational_function(&self, num: &FqPoly, den: &FqPoly) -> Result<LocalElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.e_abs != 1 {
            return Err(Error::inconsistent("rational functions in s enter only unramified fields"));
        }
        if num.is_zero() {
            return Ok(LocalElement::exact_zero());
        }
        let to_res = |c: &Fq| self.residue.from_u64(c.coeffs()[0]);
        let ord = |f: &FqPoly| f.coeffs().iter().position(|c| !f.field().is_zero(c)).unwrap();
        let (a, b) = (ord(num), ord(den));
        let n: Vec<Fq> = num.coeffs()[a..].iter().map(to_res).collect();
        let d: Vec<Fq> = den.coeffs()[b..].iter().map(to_res).collect();
        let lead = a as i64 - b as i64;
        let r = &self.residue;
        let d0_inv = r.inv(&d[0])?;
        // long division, which terminates exactly when d divides n
        let mut rem = n.clone();
        let mut quot = vec![];
        for i in 0..self.cap + 1 {
            if i + d.len() > rem.len() && rem[i..].iter().all(|c| r.is_zero(c)) {
                return Ok(self.make(lead, quot, None));
            }
            if i >= rem.len() {
                rem.resize(i + 1, r.zero());
            }
            let c = r.mul(&rem[i], &d0_inv);
            if !r.is_zero(&c) {
                if rem.len() < i + d.len() {
                    rem.resize(i + d.len(), r.zero());
                }
                for (j, dj) in d.iter().enumerate() {
                    rem[i + j] = r.sub(&rem[i + j], &r.mul(&c, dj));
                }
            }
            quot.push(c);
        }
        let n = self.cap as i64;
        Ok(self.make(lead, quot, Some(lead + n)))
    }

    /// Short description such as `F_7((Pi)), e=2, cap 64`.
    pub fn describe(&self) -> String {
        format!("{}((Pi)), e_abs={}, cap {}", self.residue, self.e_abs, self.cap)
    }

    pub fn display(&self, x: &LocalElement) -> String {
        if x.digits.is_empty() {
            return match x.known_to {
                None => "0".into(),
                Some(k) => format!("O(Pi^{k})"),
            };
        }
        let r = &self.residue;
        let mut terms: Vec<String> = x
            .digits
            .iter()
            .enumerate()
            .filter(|(_, d)| !r.is_zero(d))
            .map(|(i, d)| {
                let n = x.lead + i as i64;
                let c = r.display(d);
                match (n, r.is_one(d)) {
                    (0, _) => c,
                    (1, true) => "Pi".into(),
                    (_, true) => format!("Pi^{n}"),
                    (1, false) => format!("{c}*Pi"),
                    (_, false) => format!("{c}*Pi^{n}"),
                }
            })
            .collect();
        if let Some(k) = x.known_to {
            terms.push(format!("O(Pi^{k})"));
        }
        terms.join(" + ")
    }
}

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.residue == other.residue
            && self.e_abs == other.e_abs
            && self.cap == other.cap
            && self.steps.len() == other.steps.len()
    }
}
