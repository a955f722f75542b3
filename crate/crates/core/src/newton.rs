//! Lower Newton hull of a polynomial over a local field.
//!
//! Sign convention: `mu` is the candidate value of `X`, i.e. minus the
//! geometric slope of a hull segment.

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::localfield::{LocalElement, LocalPolynomial};

/// Slope data for one index set `S` with `|S| >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SData {
    /// Sorted indices attaining the minimum of `v(a_i) + i mu`.
    pub s: Vec<usize>,
    /// Absolute value of `X` forced by `S`.
    pub mu: Rational64,
    /// Denominator of `mu` in internal units.
    pub e_s: u64,
    /// Internal exponent `k` with `c_S = Pi^k`.
    pub c_exp: i64,
    pub c_s: LocalElement,
    /// Gcd of the index differences of `S`.
    pub d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeFilter {
    All,
    PositiveOnly,
}

fn points(f: &LocalPolynomial) -> Result<Vec<(i64, i64)>> {
    let mut pts = vec![];
    for (i, a) in f.coeffs().iter().enumerate() {
        if let Some(v) = a.ival()? {
            pts.push((i as i64, v));
        }
    }
    Ok(pts)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// One entry per segment of the lower hull, ordered left to right.
pub fn critical_segments(f: &LocalPolynomial, filter: SlopeFilter) -> Result<Vec<SData>> {
    let pts = points(f)?;
    if pts.len() < 2 {
        return Err(Error::EmptyHull);
    }
    // monotone chain, dropping collinear points from the vertex list
    let mut hull: Vec<(i64, i64)> = vec![];
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let k = f.field();
    let e_abs = k.e_abs() as i64;
    let mut out = vec![];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mu_int = Rational64::new(-(b.1 - a.1), b.0 - a.0);
        let mu = mu_int / e_abs;
        if filter == SlopeFilter::PositiveOnly && mu <= Rational64::from(0) {
            continue;
        }
        let s: Vec<usize> = pts
            .iter()
            .filter(|&&q| cross(a, b, q) == 0)
            .map(|&(i, _)| i as usize)
            .collect();
        let d = s.windows(2).fold(0usize, |g, w| g.gcd(&(w[1] - w[0])));
        let e_s = *mu_int.denom() as u64;
        let c_exp = -*mu_int.numer();
        let c_s = k.monomial(&k.residue_field().one(), c_exp);
        out.push(SData { s, mu, e_s, c_exp, c_s, d });
    }
    Ok(out)
}

/// Indices attaining `min_i v(a_i) + i mu` (`mu` in absolute units).
pub fn s_of_mu(f: &LocalPolynomial, mu: Rational64) -> Result<Vec<usize>> {
    let pts = points(f)?;
    let mu_int = mu * f.field().e_abs() as i64;
    let vals: Vec<(usize, Rational64)> =
        pts.iter().map(|&(i, v)| (i as usize, Rational64::from(v) + mu_int * i)).collect();
    let Some(min) = vals.iter().map(|(_, v)| *v).min() else {
        return Ok(vec![]);
    };
    Ok(vals.into_iter().filter(|(_, v)| *v == min).map(|(i, _)| i).collect())
}
