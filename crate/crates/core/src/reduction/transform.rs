use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{fq_purely_inseparable_profile, Fq, FqPoly};
use crate::localfield::{hensel_root, kummer_step, unramified_step, LocalElement, LocalField, LocalPolynomial};
use crate::newton::SData;
use crate::respoly::ResiduePolyData;

/// Data recorded by the purely inseparable transform.
#[derive(Clone, Debug)]
pub struct CaseAMeta {
    pub r: usize,
    pub beta: Fq,
    pub alpha: LocalElement,
}

/// Data recorded by the separable transform.
#[derive(Clone, Debug)]
pub struct CaseBMeta {
    pub alpha: LocalElement,
    pub lambda: LocalElement,
}

fn positive(x: &LocalElement) -> Result<bool> {
    match x.ival() {
        Ok(None) => Ok(true),
        Ok(Some(v)) => Ok(v > 0),
        Err(e) => match x.known_to() {
            Some(k) if k > 0 => Ok(true),
            _ => Err(e),
        },
    }
}

/// `true` when the purely inseparable transform applies: the residue
/// polynomial is `lc (t - beta)^r` with `r >= 2`, `e_S = 1` and `S` is a
/// run of consecutive indices.
pub fn case_a_applies(sdata: &SData, rp: &ResiduePolyData) -> bool {
    let contiguous = sdata.s.windows(2).all(|w| w[1] == w[0] + 1);
    matches!(rp.factors.as_slice(), [(q, r)] if q.deg() == 1 && *r >= 2) && contiguous && sdata.e_s == 1
}

/// Recentres `f` at the unique lift of the repeated residue root.
///
/// With `B(t) = a_(i0)^-1 c^(i0) f(c^-1 t)`, the root `beta` of
/// `B bar = t^(i0) lc (t - beta)^r` is simple for the `(r-1)`-th Hasse
/// derivative `C` of `B`; `alpha` is its lift and `g(t) = B(t + alpha)`.
/// The coefficient of `t^(r-1)` in `g` equals `C(alpha) = 0` and is stored
/// as exact zero.
pub fn case_a_transform(f: &LocalPolynomial, sdata: &SData, rp: &ResiduePolyData) -> Result<(LocalPolynomial, CaseAMeta)> {
    let (beta_check, r) = fq_purely_inseparable_profile(&rp.poly)?.ok_or(Error::NotPurelyInseparable)?;
    if !case_a_applies(sdata, rp) {
        return Err(Error::NotPurelyInseparable);
    }
    let k = f.field();
    let res = k.residue_field();
    let rho = |j: usize| rp.poly.coeff(j);
    let beta = res.neg(&res.div(&rho(r - 1), &res.mul(&res.from_u64(r as u64), &rho(r)))?);
    if beta != beta_check {
        return Err(Error::inconsistent("repeated root disagrees with the coefficient formula"));
    }
    let i0 = sdata.s[0];
    let c = &sdata.c_s;
    let norm = k.div(&k.pow(c, i0 as i64)?, &f.coeff(i0))?;
    let b = f.substitute_affine(&k.inv(c)?, &k.zero())?.scale(&norm);
    let cpoly = b.hasse_derivative(r - 1);
    let alpha = hensel_root(&cpoly, &beta)?;
    let g = b.substitute_affine(&k.one(), &alpha)?;

    let mut coeffs = g.coeffs().to_vec();
    if !coeffs[r - 1].is_zero_to_precision() {
        return Err(Error::inconsistent(format!("coefficient {} survived recentring", r - 1)));
    }
    coeffs[r - 1] = LocalElement::exact_zero();
    let g = LocalPolynomial::new(k, coeffs);
    if g.coeff(r).ival()? != Some(0) {
        return Err(Error::inconsistent("leading coefficient of the repeated block is not a unit"));
    }
    for i in 0..r {
        if !positive(&g.coeff(i))? {
            return Err(Error::inconsistent(format!("coefficient {i} is not in the maximal ideal")));
        }
    }
    Ok((g, CaseAMeta { r, beta, alpha }))
}

/// Moves to the field where `c_S X^(e_S)` meets the root of `q`, then
/// recentres: `g(t) = f(lambda^-1 (t + 1))` with `lambda^(e_S) = alpha^-1 c_S`.
pub fn case_b_transform(
    field: &Arc<LocalField>,
    f: &LocalPolynomial,
    sdata: &SData,
    rp: &ResiduePolyData,
    q: &FqPoly,
    r_q: usize,
) -> Result<(Arc<LocalField>, LocalPolynomial, CaseBMeta)> {
    if !rp.factors.iter().any(|(h, m)| h == q && *m == r_q) {
        return Err(Error::NotAFactor);
    }
    let (k1, emb1, alpha) = unramified_step(field, q)?;
    let u = k1.div(&emb1.apply(&sdata.c_s)?, &alpha)?;
    let (k2, emb2, lambda) = kummer_step(&k1, sdata.e_s, &u)?;
    let alpha = emb2.apply(&alpha)?;
    let emb = emb1.then(emb2);
    let f2 = emb.apply_poly(f)?;
    let lambda_inv = k2.inv(&lambda)?;
    let g = f2.substitute_affine(&lambda_inv, &lambda_inv)?;

    let i0 = sdata.s[0];
    let norm = k2.div(&k2.pow(&lambda, i0 as i64)?, &f2.coeff(i0))?;
    let normed = g.scale(&norm);
    for i in 0..r_q {
        if !positive(&normed.coeff(i))? {
            return Err(Error::inconsistent(format!("coefficient {i} keeps unit size after the shift")));
        }
    }
    if normed.coeff(r_q).ival()? != Some(0) {
        return Err(Error::inconsistent("root multiplicity not transferred"));
    }
    Ok((k2, g, CaseBMeta { alpha, lambda }))
}
