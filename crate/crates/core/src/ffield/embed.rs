use std::sync::Arc;

use super::{fq_factor, Fq, FqField, FqPoly};
use crate::error::{Error, Result};

/// Field homomorphism `F_{p^k} -> F_{p^m}` (`k | m`) fixed by the image of
/// the source generator.
#[derive(Clone, Debug)]
pub struct FqEmbedding {
    src: Arc<FqField>,
    dst: Arc<FqField>,
    /// Image of the source generator; unused when the source is prime.
    gen_image: Fq,
}

/// Embedding sending the source generator to the least root (by encoding)
/// of the source modulus in `dst`.
pub fn fq_embed(src: &Arc<FqField>, dst: &Arc<FqField>) -> Result<FqEmbedding> {
    let (k, m) = (src.degree(), dst.degree());
    if src.characteristic() != dst.characteristic() || m % k != 0 {
        return Err(Error::NoEmbedding { src: k, dst: m });
    }
    if k == 1 || **src == **dst {
        let gen_image = if k == 1 { dst.zero() } else { dst.generator() };
        return Ok(FqEmbedding { src: src.clone(), dst: dst.clone(), gen_image });
    }
    let modulus = FqPoly::new(dst, src.modulus().iter().map(|&c| dst.from_u64(c)).collect());
    let gen_image = fq_factor(&modulus)?
        .into_iter()
        .filter(|(q, _)| q.deg() == 1)
        .map(|(q, _)| dst.neg(&q.coeff(0)))
        .min()
        .ok_or_else(|| Error::inconsistent("modulus has no root in the target field"))?;
    Ok(FqEmbedding { src: src.clone(), dst: dst.clone(), gen_image })
}

impl FqEmbedding {
    pub fn src(&self) -> &Arc<FqField> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FqField> {
        &self.dst
    }

    pub fn apply(&self, x: &Fq) -> Fq {
        let d = &self.dst;
        if self.src.degree() == 1 {
            return d.from_u64(x.0[0]);
        }
        x.0.iter()
            .rev()
            .fold(d.zero(), |acc, &c| d.add(&d.mul(&acc, &self.gen_image), &d.from_u64(c)))
    }

    pub fn apply_poly(&self, f: &FqPoly) -> FqPoly {
        f.map_coeffs(&self.dst, |c| self.apply(c))
    }
}
