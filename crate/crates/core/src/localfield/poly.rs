use std::sync::Arc;

use super::{LocalElement, LocalField};
use crate::error::Result;

/// Polynomial over a [`LocalField`]; trailing exact zeros are stripped.
#[derive(Clone, Debug)]
pub struct LocalPolynomial {
    field: Arc<LocalField>,
    coeffs: Vec<LocalElement>,
}

/// Row `n` of Pascal's triangle reduced mod `p`.
fn binomials_mod(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = (prev[j - 1] + prev[j]) % p;
        }
        rows.push(row);
    }
    rows
}

impl LocalPolynomial {
    pub fn new(field: &Arc<LocalField>, mut coeffs: Vec<LocalElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        LocalPolynomial { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Arc<LocalField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[LocalElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> LocalElement {
        self.coeffs.get(i).cloned().unwrap_or_else(LocalElement::exact_zero)
    }

    /// Formal degree: index of the last coefficient that is not exact zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn eval(&self, x: &LocalElement) -> LocalElement {
        let k = &self.field;
        self.coeffs.iter().rev().fold(LocalElement::exact_zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn scale(&self, c: &LocalElement) -> LocalPolynomial {
        let k = &self.field;
        LocalPolynomial::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// `j`-th Hasse derivative: coefficient `i` is `binom(j + i, j) a_(j + i)`.
    pub fn hasse_derivative(&self, j: usize) -> LocalPolynomial {
        let k = &self.field;
        let n = self.coeffs.len();
        let rows = binomials_mod(n, k.characteristic());
        let coeffs = (j..n)
            .map(|i| {
                let b = rows[i][j];
                k.mul(&self.coeffs[i], &k.from_i64(b as i64))
            })
            .collect();
        LocalPolynomial::new(k, coeffs)
    }

    pub fn derivative(&self) -> LocalPolynomial {
        self.hasse_derivative(1)
    }

    /// `f(u t + v)` via Taylor shift: coefficient `j` is
    /// `u^j sum_(i >= j) binom(i, j) a_i v^(i - j)`.
    pub fn substitute_affine(&self, u: &LocalElement, v: &LocalElement) -> Result<LocalPolynomial> {
        let k = &self.field;
        let n = self.coeffs.len();
        let rows = binomials_mod(n, k.characteristic());
        let mut vpow = vec![k.one()];
        for i in 1..n {
            vpow.push(k.mul(&vpow[i - 1], v));
        }
        let mut upow = k.one();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = LocalElement::exact_zero();
            for i in j..n {
                let b = rows[i][j];
                if b == 0 || self.coeffs[i].is_exact_zero() {
                    continue;
                }
                let term = k.mul(&self.coeffs[i], &vpow[i - j]);
                acc = k.add(&acc, &k.mul(&term, &k.from_i64(b as i64)));
            }
            out.push(k.mul(&acc, &upow));
            upow = k.mul(&upow, u);
        }
        Ok(LocalPolynomial::new(k, out))
    }

    /// Coefficients mapped into another field.
    pub fn map(&self, target: &Arc<LocalField>, g: impl Fn(&LocalElement) -> Result<LocalElement>) -> Result<LocalPolynomial> {
        let coeffs = self.coeffs.iter().map(g).collect::<Result<Vec<_>>>()?;
        Ok(LocalPolynomial::new(target, coeffs))
    }

    pub fn display(&self) -> String {
        let k = &self.field;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", k.display(c)),
                1 => format!("({})*X", k.display(c)),
                _ => format!("({})*X^{i}", k.display(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::base_field;

    #[test]
    fn affine_substitution_matches_direct_evaluation() {
        let k = base_field(7, 16).unwrap();
        // f = X^3 + X + (2 + s)
        let s = k.uniformizer();
        let f = LocalPolynomial::new(
            &k,
            vec![k.add(&k.from_i64(2), &s), k.one(), k.zero(), k.one()],
        );
        let u = k.from_i64(3);
        let v = k.add(&k.from_i64(4), &s);
        let g = f.substitute_affine(&u, &v).unwrap();
        for x in [k.from_i64(1), k.from_i64(5), k.add(&k.from_i64(2), &k.mul(&s, &s))] {
            let lhs = g.eval(&x);
            let rhs = f.eval(&k.add(&k.mul(&u, &x), &v));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hasse_derivative_in_small_characteristic() {
        let k = base_field(3, 8).unwrap();
        // t^3: ordinary derivative vanishes, Hasse D_3 gives 1
        let f = LocalPolynomial::new(&k, vec![k.zero(), k.zero(), k.zero(), k.one()]);
        assert_eq!(f.derivative().degree(), None);
        let d3 = f.hasse_derivative(3);
        assert_eq!(d3.coeffs(), &[k.one()]);
        // D_1 of t^2 + t is 2t + 1
        let g = LocalPolynomial::new(&k, vec![k.zero(), k.one(), k.one()]);
        assert_eq!(g.derivative().coeffs(), &[k.one(), k.from_i64(2)]);
    }
}
