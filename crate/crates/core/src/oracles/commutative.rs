use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ncpoly::{ClassicalPolynomial, Coefficient};

type Exact = Complex<BigRational>;

/// Polynomial in commuting `q, p` with its own product and Poisson bracket.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CommutativePolynomial {
    terms: BTreeMap<(u32, u32), Exact>,
}

impl CommutativePolynomial {
    pub fn monomial(n: u32, m: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((n, m), Complex::new(BigRational::from_integer(1.into()), BigRational::zero()));
        CommutativePolynomial { terms }
    }

    pub fn from_classical(f: &ClassicalPolynomial) -> Self {
        let mut out = CommutativePolynomial::default();
        for (&key, c) in f.terms() {
            out.add_term(key, Complex::new(c.re().clone(), c.im().clone()));
        }
        out
    }

    pub fn to_classical(&self) -> ClassicalPolynomial {
        ClassicalPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(&key, c)| (key, Coefficient::new(c.re.clone(), c.im.clone()))),
        )
    }

    fn add_term(&mut self, key: (u32, u32), c: Exact) {
        let entry = self.terms.entry(key).or_insert_with(Complex::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = CommutativePolynomial::default();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                out.add_term((a + c, b + d), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.add_term(key, -c.clone());
        }
        out
    }

    fn derivative(&self, along_q: bool) -> Self {
        let mut out = CommutativePolynomial::default();
        for (&(n, m), c) in &self.terms {
            let e = if along_q { n } else { m };
            if e == 0 {
                continue;
            }
            let key = if along_q { (n - 1, m) } else { (n, m - 1) };
            out.add_term(key, c.clone() * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `∂f/∂q ∂g/∂p − ∂f/∂p ∂g/∂q`.
    pub fn poisson(&self, other: &Self) -> Self {
        self.derivative(true)
            .mul(&other.derivative(false))
            .sub(&self.derivative(false).mul(&other.derivative(true)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_bracket() {
        let q = CommutativePolynomial::monomial(1, 0);
        let p = CommutativePolynomial::monomial(0, 1);
        assert_eq!(q.poisson(&p), CommutativePolynomial::monomial(0, 0));
        assert_eq!(p.poisson(&q).poisson(&q), CommutativePolynomial::default());
    }

    #[test]
    fn round_trip_through_classical() {
        let f = CommutativePolynomial::monomial(2, 3).mul(&CommutativePolynomial::monomial(1, 0));
        assert_eq!(CommutativePolynomial::from_classical(&f.to_classical()), f);
    }
}
