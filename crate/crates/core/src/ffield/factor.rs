//! Factorization over `F_q`: square-free decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting driven by a
//! fixed-seed stream so results are reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Fq, FqPoly};
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5eed_f00d;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FqPoly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let t = FqPoly::x(f.field());
    // frob[i] = t^(q^i) mod f
    let mut frob = vec![t.rem(&f)?];
    for i in 1..=n {
        let next = frob[i - 1].frobenius_pow_mod(1, &f)?;
        frob.push(next);
    }
    if frob[n] != t.rem(&f)? {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let g = f.gcd(&frob[n / r].sub(&t))?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Square-free decomposition of a nonzero polynomial into pairwise coprime
/// monic parts with multiplicities. Handles `f' = 0` by extracting `p`-th roots.
pub fn squarefree_decomposition(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let p = f.field().characteristic() as usize;
    let mut out = vec![];
    if f.deg() == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    if df.is_zero() {
        for (h, m) in squarefree_decomposition(&f.pth_root())? {
            out.push((h, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y)?;
        w = y;
    }
    if !c.is_one() {
        for (h, m) in squarefree_decomposition(&c.pth_root())? {
            out.push((h, m * p));
        }
    }
    Ok(out)
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
fn distinct_degree(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    let t = FqPoly::x(f.field());
    let mut out = vec![];
    let mut g = f.clone();
    let mut h = t.rem(&g)?;
    let mut d = 0;
    while g.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_pow_mod(1, &g)?;
        let u = g.gcd(&h.sub(&t))?;
        if !u.is_one() {
            g = g.div_exact(&u)?;
            h = h.rem(&g)?;
            out.push((u, d));
        }
    }
    if g.deg() > 0 {
        let d = g.deg();
        out.push((g, d));
    }
    Ok(out)
}

fn random_poly(f: &FqPoly, rng: &mut ChaCha8Rng) -> FqPoly {
    let field = f.field();
    let coeffs: Vec<Fq> = (0..f.deg()).map(|_| field.random(rng)).collect();
    FqPoly::new(field, coeffs)
}

/// Candidate splitter: for odd `q`, `a^((q^d-1)/2) - 1`; for `q = 2^k`, the
/// trace `a + a^2 + ... + a^(2^(kd-1))`.
fn splitter(a: &FqPoly, f: &FqPoly, d: usize) -> Result<FqPoly> {
    let field = f.field();
    if field.characteristic() == 2 {
        let mut term = a.rem(f)?;
        let mut acc = term.clone();
        for _ in 1..field.degree() * d {
            term = term.mul(&term).rem(f)?;
            acc = acc.add(&term);
        }
        return Ok(acc);
    }
    // a^(1 + q + ... + q^(d-1)) then ^((q-1)/2)
    let mut term = a.rem(f)?;
    let mut norm = term.clone();
    for _ in 1..d {
        term = term.frobenius_pow_mod(1, f)?;
        norm = norm.mul(&term).rem(f)?;
    }
    let q = field.order().expect("field order fits in u128");
    Ok(norm.pow_mod((q - 1) / 2, f)?.sub(&FqPoly::one(field)))
}

fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FqPoly>) -> Result<()> {
    if f.deg() == d {
        out.push(f.clone());
        return Ok(());
    }
    loop {
        let a = random_poly(f, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = f.gcd(&splitter(&a, f, d)?)?;
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.div_exact(&g)?;
            equal_degree(&g, d, rng, out)?;
            equal_degree(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted canonically (degree, then coefficients). The leading coefficient
/// of `f` is not part of the list.
pub fn fq_factor(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = vec![];
    for (part, m) in squarefree_decomposition(f)? {
        for (block, d) in distinct_degree(&part)? {
            let mut pieces = vec![];
            equal_degree(&block, d, &mut rng, &mut pieces)?;
            out.extend(pieces.into_iter().map(|q| (q, m)));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// `(beta, r)` when `f = lc * (t - beta)^r`, otherwise `None`.
pub fn fq_purely_inseparable_profile(f: &FqPoly) -> Result<Option<(Fq, usize)>> {
    let factors = fq_factor(f)?;
    match factors.as_slice() {
        [(q, r)] if q.deg() == 1 => {
            let field = f.field();
            Ok(Some((field.neg(&q.coeff(0)), *r)))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_field_make;

    #[test]
    fn factor_elliptic_discriminant_case() {
        // brute force: roots of t^3 + t + 2 mod 7
        let roots: Vec<i64> = (0..7).filter(|x| (x * x * x + x + 2) % 7 == 0).collect();
        assert_eq!(roots, vec![4, 6]);
        let f = fq_field_make(7, 1).unwrap();
        let poly = FqPoly::from_ints(&f, &[2, 1, 0, 1]);
        let got = fq_factor(&poly).unwrap();
        assert_eq!(
            got,
            vec![(FqPoly::from_ints(&f, &[1, 1]), 1), (FqPoly::from_ints(&f, &[3, 1]), 2)]
        );
    }

    #[test]
    fn factor_given_forms() {
        let f = fq_field_make(7, 1).unwrap();
        let sq = FqPoly::from_ints(&f, &[1, -2, 1]);
        assert_eq!(fq_factor(&sq).unwrap(), vec![(FqPoly::from_ints(&f, &[-1, 1]), 2)]);
        let diff = FqPoly::from_ints(&f, &[-1, 0, 1]);
        let got = fq_factor(&diff).unwrap();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(FqPoly::from_ints(&f, &[-1, 1]), 1)));
        assert!(got.contains(&(FqPoly::from_ints(&f, &[1, 1]), 1)));
        assert_eq!(fq_factor(&FqPoly::zero(&f)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factor_with_vanishing_derivative() {
        // (t^7 - t - 1)... use t^14 + 2 t^7 + 1 = (t^7 + 1)^2 = (t + 1)^14 over F_7
        let f = fq_field_make(7, 1).unwrap();
        let mut c = vec![0i64; 15];
        c[0] = 1;
        c[7] = 2;
        c[14] = 1;
        let poly = FqPoly::from_ints(&f, &c);
        assert_eq!(fq_factor(&poly).unwrap(), vec![(FqPoly::from_ints(&f, &[1, 1]), 14)]);
    }

    #[test]
    fn factor_in_characteristic_two() {
        let f = fq_field_make(2, 3).unwrap();
        let t = FqPoly::x(&f);
        // product of all linear factors: t^8 - t
        let poly = t.pow(8).sub(&t);
        let got = fq_factor(&poly).unwrap();
        assert_eq!(got.len(), 8);
        assert!(got.iter().all(|(q, m)| q.deg() == 1 && *m == 1));
    }

    #[test]
    fn purely_inseparable_profile() {
        let f = fq_field_make(7, 1).unwrap();
        let (b, r) = fq_purely_inseparable_profile(&FqPoly::from_ints(&f, &[1, -2, 1])).unwrap().unwrap();
        assert_eq!((b, r), (f.from_u64(1), 2));
        assert!(fq_purely_inseparable_profile(&FqPoly::from_ints(&f, &[2, 1, 0, 1])).unwrap().is_none());
        let (b, r) = fq_purely_inseparable_profile(&FqPoly::from_ints(&f, &[-3, 1])).unwrap().unwrap();
        assert_eq!((b, r), (f.from_u64(3), 1));
    }

    #[test]
    fn irreducibility_matches_root_scan_for_quadratics() {
        let f = fq_field_make(5, 1).unwrap();
        for b in 0..5 {
            for c in 0..5 {
                let poly = FqPoly::from_ints(&f, &[c, b, 1]);
                let rootless = (0..5).all(|x| (x * x + b * x + c) % 5 != 0);
                assert_eq!(is_irreducible(&poly).unwrap(), rootless);
            }
        }
    }
}
