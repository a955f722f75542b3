//! Tower steps: unramified residue extensions and tame Kummer extensions,
//! each returning the embedding of the old field into the new one.

use std::sync::Arc;

use super::{ExtensionStep, LocalElement, LocalField, LocalPolynomial};
use crate::error::{Error, Result};
use crate::ffield::{fq_embed, fq_factor, fq_field_make, is_irreducible, Fq, FqEmbedding, FqPoly};

const REVERSION_ROUNDS: usize = 64;

#[derive(Clone, Debug)]
enum Reversion {
    /// `Pi_old = c * T`.
    Monomial(Fq),
    /// `Pi_old = phi(T)`; `powers[i] = phi^i` computed in `work`.
    Series { work: Arc<LocalField>, phi: LocalElement, powers: Vec<LocalElement> },
}

#[derive(Clone, Debug)]
enum Map {
    Identity,
    Residue(FqEmbedding),
    /// `Pi_old = phi(T)` with `T = Pi_new^e`.
    Ramified { e: u64, rev: Reversion },
    Chain(Box<Embedding>, Box<Embedding>),
}

/// Continuous field embedding between two members of a tower.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Arc<LocalField>,
    dst: Arc<LocalField>,
    map: Map,
}

impl Embedding {
    pub fn identity(field: &Arc<LocalField>) -> Self {
        Embedding { src: field.clone(), dst: field.clone(), map: Map::Identity }
    }

    pub fn src(&self) -> &Arc<LocalField> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<LocalField> {
        &self.dst
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Embedding) -> Embedding {
        match (&self.map, &next.map) {
            (Map::Identity, _) => Embedding { src: self.src, ..next },
            (_, Map::Identity) => Embedding { dst: next.dst, ..self },
            _ => Embedding { src: self.src.clone(), dst: next.dst.clone(), map: Map::Chain(Box::new(self), Box::new(next)) },
        }
    }

    pub fn apply(&self, x: &LocalElement) -> Result<LocalElement> {
        match &self.map {
            Map::Identity => Ok(self.dst.make(x.lead, x.digits.clone(), x.known_to)),
            Map::Residue(emb) => {
                let digits = x.digits.iter().map(|d| emb.apply(d)).collect();
                Ok(self.dst.make(x.lead, digits, x.known_to))
            }
            Map::Ramified { e, rev } => {
                let t = self.reverse(x, rev)?;
                Ok(spread(&self.dst, &t, *e as i64))
            }
            Map::Chain(a, b) => b.apply(&a.apply(x)?),
        }
    }

    pub fn apply_poly(&self, f: &LocalPolynomial) -> Result<LocalPolynomial> {
        f.map(&self.dst, |c| self.apply(c))
    }

    /// `x(phi(T))` as a series in `T`.
    fn reverse(&self, x: &LocalElement, rev: &Reversion) -> Result<LocalElement> {
        if x.digits.is_empty() {
            return Ok(x.clone());
        }
        match rev {
            Reversion::Monomial(c) => {
                let r = self.src.residue_field();
                let mut scale = r.pow(c, x.lead.unsigned_abs() as u128);
                if x.lead < 0 {
                    scale = r.inv(&scale)?;
                }
                let mut digits = Vec::with_capacity(x.digits.len());
                for d in &x.digits {
                    digits.push(r.mul(d, &scale));
                    scale = r.mul(&scale, c);
                }
                Ok(LocalElement { lead: x.lead, digits, known_to: x.known_to })
            }
            Reversion::Series { work, phi, powers } => {
                let w = work;
                let terms = x.digits.len().min(powers.len());
                let mut acc = LocalElement::exact_zero();
                for (d, pw) in x.digits[..terms].iter().zip(powers) {
                    acc = w.add(&acc, &w.scale(pw, d));
                }
                if let Some(m) = x.rel_prec() {
                    acc = w.add(&acc, &LocalElement::inexact_zero(m));
                } else if terms < x.digits.len() {
                    acc = w.add(&acc, &LocalElement::inexact_zero(terms as i64));
                }
                Ok(w.mul(&acc, &w.pow(phi, x.lead)?))
            }
        }
    }
}

/// Substitutes `T = Pi^e`.
fn spread(dst: &LocalField, t: &LocalElement, e: i64) -> LocalElement {
    if t.digits.is_empty() {
        return match t.known_to {
            None => LocalElement::exact_zero(),
            Some(k) => LocalElement::inexact_zero(k * e),
        };
    }
    let r = dst.residue_field();
    let mut digits = vec![r.zero(); (t.digits.len() - 1) * e as usize + 1];
    for (i, d) in t.digits.iter().enumerate() {
        digits[i * e as usize] = d.clone();
    }
    dst.make(t.lead * e, digits, t.known_to.map(|k| k * e))
}

/// Adjoins a root of `q`, irreducible over the residue field. Returns the new
/// field, the embedding and the constant lift of the least root of `q`
/// (by encoding) in the new residue field.
pub fn unramified_step(k: &Arc<LocalField>, q: &FqPoly) -> Result<(Arc<LocalField>, Embedding, LocalElement)> {
    if **q.field() != **k.residue_field() {
        return Err(Error::FieldMismatch);
    }
    if q.degree().unwrap_or(0) == 0 || !is_irreducible(q)? {
        return Err(Error::NotIrreducible);
    }
    let r = k.residue_field();
    if q.deg() == 1 {
        let root = r.neg(&r.div(&q.coeff(0), &q.coeff(1))?);
        return Ok((k.clone(), Embedding::identity(k), k.lift(&root)));
    }
    let new_res = fq_field_make(k.characteristic(), r.degree() * q.deg())?;
    let emb = fq_embed(r, &new_res)?;
    let lifted = emb.apply_poly(q);
    let root = fq_factor(&lifted)?
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| new_res.neg(&f.coeff(0)))
        .min()
        .ok_or_else(|| Error::inconsistent("irreducible factor has no root after extension"))?;
    let mut steps = k.steps.clone();
    steps.push(ExtensionStep::Unramified { q: q.clone() });
    let field = Arc::new(LocalField { residue: new_res, steps, ..(**k).clone() });
    let alpha = field.lift(&root);
    Ok((field.clone(), Embedding { src: k.clone(), dst: field, map: Map::Residue(emb) }, alpha))
}

/// Tame extension of degree `e` in which `u` becomes an `e`-th power up to a
/// unit of residue one. Returns the new field, the embedding and `lambda`
/// with `e * v(lambda) = v(u)` in old units.
pub fn kummer_step(k: &Arc<LocalField>, e: u64, u: &LocalElement) -> Result<(Arc<LocalField>, Embedding, LocalElement)> {
    let m = u.ival()?.ok_or(Error::DivisionByZero)?;
    if e == 1 {
        return Ok((k.clone(), Embedding::identity(k), u.clone()));
    }
    if e == 0 || e % k.characteristic() == 0 {
        return Err(Error::WildRamification { e, p: k.characteristic() });
    }
    let ei = e as i64;
    if num_integer::gcd(m, ei) != 1 {
        return Err(Error::OrderMismatch { m, e });
    }
    let x = (0..ei).find(|x| (x * m).rem_euclid(ei) == 1).expect("coprime");
    let y = (1 - x * m) / ei;
    let relation = k.mul(&k.pow(u, x)?, &k.pow(&k.uniformizer(), y * ei)?);
    debug_assert_eq!(relation.ival()?, Some(1));

    let rev = reversion(k, &relation, e)?;
    let mut steps = k.steps.clone();
    steps.push(ExtensionStep::Kummer { e, relation, bezout: (x, y) });
    let field = Arc::new(LocalField { e_abs: k.e_abs * e, steps, ..(**k).clone() });
    let emb = Embedding { src: k.clone(), dst: field.clone(), map: Map::Ramified { e, rev } };

    let pi_old = emb.apply(&k.uniformizer())?;
    let lambda = field.mul(
        &field.mul(&field.pow(&field.uniformizer(), m)?, &field.pow(&pi_old, -y * m)?),
        &field.pow(&emb.apply(u)?, y)?,
    );
    Ok((field, emb, lambda))
}

/// Solves `g0(phi(T)) = T` for `phi`, by Newton iteration on series.
fn reversion(k: &Arc<LocalField>, g0: &LocalElement, e: u64) -> Result<Reversion> {
    let r = k.residue_field();
    let c0_inv = r.inv(&g0.digits[0])?;
    if g0.is_exact() && g0.digits.len() == 1 {
        return Ok(Reversion::Monomial(c0_inv));
    }
    let cap_t = k.cap.div_ceil(e as usize) + 1;
    let w = Arc::new(k.with_cap(cap_t));
    let t = w.uniformizer();
    let dg = w.derivative(g0);
    let mut phi = w.monomial(&c0_inv, 1);
    let mut converged = false;
    for _ in 0..REVERSION_ROUNDS {
        let err = w.sub(&w.compose(g0, &phi)?, &t);
        if err.is_zero_to_precision() {
            converged = true;
            break;
        }
        phi = w.sub(&phi, &w.div(&err, &w.compose(&dg, &phi)?)?);
    }
    if !converged {
        return Err(Error::exhausted("series reversion did not settle"));
    }
    let mut powers = vec![w.one()];
    for i in 1..cap_t {
        powers.push(w.mul(&powers[i - 1], &phi));
    }
    Ok(Reversion::Series { work: w, phi, powers })
}
