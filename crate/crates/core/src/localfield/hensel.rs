use super::{LocalElement, LocalPolynomial};
use crate::error::{Error, Result};
use crate::ffield::{Fq, FqPoly};

const MAX_ROUNDS: usize = 40;

/// Lifts a simple root `beta` of the reduction of `c` to a root of `c`.
///
/// Newton iteration starting from the constant lift; stops as soon as the
/// correction has no known nonzero digit, so roots that are exact constants
/// stay exact. A truncated root whose known digits already form an exact
/// root (checked by exact evaluation) is returned as exact.
pub fn hensel_root(c: &LocalPolynomial, beta: &Fq) -> Result<LocalElement> {
    let k = c.field();
    let r = k.residue_field();
    let reduced = FqPoly::new(r, c.coeffs().iter().map(|a| k.residue(a)).collect::<Result<Vec<_>>>()?);
    if reduced.is_zero() || !r.is_zero(&reduced.eval(beta)) || r.is_zero(&reduced.derivative().eval(beta)) {
        return Err(Error::NotSimpleRoot);
    }
    let dc = c.derivative();
    let mut alpha = k.lift(beta);
    for _ in 0..MAX_ROUNDS {
        let num = c.eval(&alpha);
        if num.is_zero_to_precision() {
            return Ok(settle(c, alpha));
        }
        let delta = k.div(&num, &dc.eval(&alpha))?;
        if delta.is_zero_to_precision() {
            return Ok(settle(c, alpha));
        }
        alpha = k.sub(&alpha, &delta);
    }
    Err(Error::exhausted("Newton lifting did not settle"))
}

fn settle(c: &LocalPolynomial, alpha: LocalElement) -> LocalElement {
    if alpha.is_exact() || alpha.is_zero_to_precision() {
        return alpha;
    }
    let k = c.field();
    let exact = k.make(alpha.lead(), alpha.digits().to_vec(), None);
    if c.eval(&exact).is_exact_zero() {
        exact
    } else {
        alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_field_make;
    use crate::localfield::base_field;

    #[test]
    fn square_root_of_one_plus_s() {
        let k = base_field(7, 32).unwrap();
        let fp = fq_field_make(7, 1).unwrap();
        let one_plus_s = k.add(&k.one(), &k.uniformizer());
        let c = LocalPolynomial::new(&k, vec![k.neg(&one_plus_s), k.zero(), k.one()]);
        let a = hensel_root(&c, &fp.one()).unwrap();
        let enc: Vec<u64> = a.digits().iter().map(|d| fp.encode(d) as u64).collect();
        // sqrt(1+s) = 1 + s/2 - s^2/8 + ...; 1/2 = 4 and -1/8 = 6 mod 7
        assert_eq!(&enc[..3], &[1, 4, 6]);
        let back = k.sub(&k.mul(&a, &a), &one_plus_s);
        assert!(back.is_zero_to_precision());
        assert!(back.known_to().unwrap() >= 30);
    }

    #[test]
    fn exact_root_stays_exact() {
        let k = base_field(7, 32).unwrap();
        let fp = k.residue_field().clone();
        let inv = k.inv(&k.add(&k.one(), &k.uniformizer())).unwrap();
        let c = LocalPolynomial::new(&k, vec![k.mul(&k.from_i64(-2), &inv), k.mul(&k.from_i64(2), &inv)]);
        let a = hensel_root(&c, &fp.one()).unwrap();
        assert_eq!(a, k.one());
        assert!(a.is_exact());
    }

    #[test]
    fn polynomial_root_is_recognised_as_exact() {
        // (t - (1 + s)) (t - 3): the root 1 + s comes out exact
        let k = base_field(7, 32).unwrap();
        let r = k.add(&k.one(), &k.uniformizer());
        let c = LocalPolynomial::new(
            &k,
            vec![k.mul(&r, &k.from_i64(3)), k.neg(&k.add(&r, &k.from_i64(3))), k.one()],
        );
        let a = hensel_root(&c, &k.residue_field().one()).unwrap();
        assert!(a.is_exact());
        assert_eq!(a, r);
    }

    #[test]
    fn double_root_is_rejected() {
        let k = base_field(7, 32).unwrap();
        let c = LocalPolynomial::new(&k, vec![k.one(), k.from_i64(-2), k.one()]);
        assert_eq!(hensel_root(&c, &k.residue_field().one()).unwrap_err(), Error::NotSimpleRoot);
    }
}
