//! Exact arithmetic in `F_p(s)` and in `F_p(s)[X]`, used for input handling
//! before anything is truncated.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{FqField, FqPoly};
use crate::localfield::{LocalField, LocalPolynomial};

/// Reduced fraction `num / den` of polynomials in `s`, `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let (n, d) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lc_inv = d.field().inv(&d.lc())?;
        Ok(RatFunc { num: n.scale(&lc_inv), den: d.scale(&lc_inv) })
    }

    pub fn zero(field: &Arc<FqField>) -> Self {
        RatFunc { num: FqPoly::zero(field), den: FqPoly::one(field) }
    }

    pub fn from_poly(num: FqPoly) -> Self {
        let den = FqPoly::one(num.field());
        RatFunc { num, den }
    }

    pub fn from_i64(field: &Arc<FqField>, c: i64) -> Self {
        RatFunc::from_poly(FqPoly::from_ints(field, &[c]))
    }

    pub fn s(field: &Arc<FqField>) -> Self {
        RatFunc::from_poly(FqPoly::x(field))
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(n), den: base.den.pow(n) })
    }
}

fn s_poly_text(f: &FqPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let field = f.field();
    let mut terms = vec![];
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let c = field.display(c);
        terms.push(match (i, c.as_str()) {
            (0, _) => c,
            (1, "1") => "s".into(),
            (1, _) => format!("{c}*s"),
            (_, "1") => format!("s^{i}"),
            _ => format!("{c}*s^{i}"),
        });
    }
    terms.join(" + ")
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", s_poly_text(&self.num))
        } else {
            write!(f, "({})/({})", s_poly_text(&self.num), s_poly_text(&self.den))
        }
    }
}

/// Polynomial in `X` over `F_p(s)`, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyX {
    field: Arc<FqField>,
    coeffs: Vec<RatFunc>,
}

impl PolyX {
    pub fn new(field: &Arc<FqField>, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { field: field.clone(), coeffs }
    }

    pub fn constant(c: RatFunc) -> Self {
        let field = c.field().clone();
        PolyX::new(&field, vec![c])
    }

    pub fn x(field: &Arc<FqField>) -> Self {
        PolyX::new(field, vec![RatFunc::zero(field), RatFunc::from_i64(field, 1)])
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyX::new(&self.field, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> PolyX {
        PolyX::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &PolyX) -> PolyX {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PolyX) -> PolyX {
        if self.is_zero() || o.is_zero() {
            return PolyX::new(&self.field, vec![]);
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        PolyX::new(&self.field, out)
    }

    pub fn scale(&self, c: &RatFunc) -> PolyX {
        PolyX::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u64) -> PolyX {
        let mut acc = PolyX::constant(RatFunc::from_i64(&self.field, 1));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> PolyX {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&RatFunc::from_i64(&self.field, i as i64)))
            .collect();
        PolyX::new(&self.field, coeffs)
    }

    fn rem(&self, d: &PolyX) -> Result<PolyX> {
        let dn = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = d.coeffs[dn].inv()?;
        let mut r = self.clone();
        while let Some(rn) = r.degree() {
            if rn < dn {
                break;
            }
            let c = r.coeffs[rn].mul(&lc_inv);
            let mut shifted = vec![RatFunc::zero(&self.field); rn - dn];
            shifted.extend(d.coeffs.iter().map(|a| a.mul(&c)));
            r = r.sub(&PolyX::new(&self.field, shifted));
        }
        Ok(r)
    }

    /// Gcd up to a unit of `F_p(s)`, by Euclid.
    pub fn gcd(&self, o: &PolyX) -> Result<PolyX> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Coefficientwise `s`-adic expansion into `field` (residue field must
    /// contain `F_p`, ramification one).
    pub fn to_local(&self, field: &Arc<LocalField>) -> Result<LocalPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.from_rational_function(c.num(), c.den()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalPolynomial::new(field, coeffs))
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
