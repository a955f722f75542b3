//! Residue polynomials attached to a hull segment and their root
//! multiplicities.

use crate::error::{Error, Result};
use crate::ffield::{fq_factor, Fq, FqPoly};
use crate::localfield::{LocalElement, LocalPolynomial};
use crate::newton::SData;

#[derive(Clone, Debug)]
pub struct ResiduePolyData {
    pub poly: FqPoly,
    /// `(i_j, n_j)` with `n_j = (i_j - i_0) / e_S`.
    pub exponents: Vec<(usize, usize)>,
    pub sdata: SData,
    /// Monic irreducible factors with multiplicities, canonical order.
    pub factors: Vec<(FqPoly, usize)>,
    /// Root multiplicities over the algebraic closure, sorted descending.
    pub mult_profile: Vec<usize>,
}

/// `sum_j res(a_(i_j) a_(i_0)^-1 c^(-n_j)) t^(n_j)`.
pub fn build_residue_poly(f: &LocalPolynomial, sdata: &SData) -> Result<ResiduePolyData> {
    let k = f.field();
    let r = k.residue_field();
    let i0 = sdata.s[0];
    let e = sdata.e_s as usize;
    // only leading digits matter: the leading digit of a product is the
    // product of the leading digits
    let lead = |x: &LocalElement| -> Result<(i64, Fq)> {
        let v = x.ival()?.ok_or_else(|| Error::inconsistent("zero coefficient on a hull segment"))?;
        Ok((v, x.digits()[0].clone()))
    };
    let (v0, d0) = lead(&f.coeff(i0))?;
    let (vc, dc) = lead(&sdata.c_s)?;
    let (d0_inv, dc_inv) = (r.inv(&d0)?, r.inv(&dc)?);
    let mut exponents = vec![];
    let mut coeffs = vec![];
    for &i in &sdata.s {
        if (i - i0) % e != 0 {
            return Err(Error::inconsistent(format!("index {i} not on the e_S lattice")));
        }
        let n = (i - i0) / e;
        let (vi, di) = lead(&f.coeff(i))?;
        if vi - v0 - n as i64 * vc != 0 {
            return Err(Error::inconsistent(format!("coefficient {i} is not a unit after scaling")));
        }
        coeffs.resize(n + 1, r.zero());
        coeffs[n] = r.mul(&r.mul(&di, &d0_inv), &r.pow(&dc_inv, n as u128));
        exponents.push((i, n));
    }
    let poly = FqPoly::new(r, coeffs);
    let max_s = *sdata.s.last().unwrap();
    if poly.deg() != (max_s - i0) / e || poly.deg() > max_s || !r.is_one(&poly.coeff(0)) {
        return Err(Error::inconsistent("residue polynomial shape"));
    }
    let factors = fq_factor(&poly)?;
    let mut mult_profile: Vec<usize> =
        factors.iter().flat_map(|(q, m)| std::iter::repeat(*m).take(q.deg())).collect();
    mult_profile.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ResiduePolyData { poly, exponents, sdata: sdata.clone(), factors, mult_profile })
}

/// Largest root multiplicity and the factorization it came from.
pub fn mult_profile(rp: &ResiduePolyData) -> (usize, Vec<(FqPoly, usize)>) {
    let max = rp.factors.iter().map(|(_, m)| *m).max().unwrap_or(0);
    (max, rp.factors.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::base_field;
    use crate::newton::{critical_segments, SlopeFilter};

    fn ints(p: &FqPoly) -> Vec<u64> {
        p.coeffs().iter().map(|c| p.field().encode(c) as u64).collect()
    }

    #[test]
    fn elliptic_residue_polynomial() {
        let k = base_field(7, 32).unwrap();
        let f = LocalPolynomial::new(
            &k,
            vec![k.add(&k.from_i64(2), &k.uniformizer()), k.one(), k.zero(), k.one()],
        );
        let sd = &critical_segments(&f, SlopeFilter::All).unwrap()[0];
        let rp = build_residue_poly(&f, sd).unwrap();
        assert_eq!(ints(&rp.poly), vec![1, 4, 0, 4]);
        assert_eq!(rp.exponents, vec![(0, 0), (1, 1), (3, 3)]);
        let (m, fac) = mult_profile(&rp);
        assert_eq!(m, 2);
        let fac: Vec<_> = fac.iter().map(|(q, r)| (ints(q), *r)).collect();
        assert_eq!(fac, vec![(vec![1, 1], 1), (vec![3, 1], 2)]);
        assert_eq!(rp.mult_profile, vec![2, 1]);
    }

    #[test]
    fn ramified_and_inseparable_examples() {
        let k = base_field(7, 32).unwrap();
        let f = LocalPolynomial::new(&k, vec![k.neg(&k.uniformizer()), k.zero(), k.one()]);
        let sd = &critical_segments(&f, SlopeFilter::All).unwrap()[0];
        let rp = build_residue_poly(&f, sd).unwrap();
        assert_eq!(ints(&rp.poly), vec![1, 6]);
        assert_eq!(mult_profile(&rp).0, 1);

        let g = LocalPolynomial::new(
            &k,
            vec![k.add(&k.one(), &k.uniformizer()), k.from_i64(-2), k.one()],
        );
        let sd = &critical_segments(&g, SlopeFilter::All).unwrap()[0];
        let rp = build_residue_poly(&g, sd).unwrap();
        assert_eq!(ints(&rp.poly), vec![1, 5, 1]);
        let (m, fac) = mult_profile(&rp);
        assert_eq!((m, fac.len(), ints(&fac[0].0)), (2, 1, vec![6, 1]));
    }
}
