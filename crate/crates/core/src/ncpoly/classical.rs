use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::accumulate;
use super::coefficient::Coefficient;
use super::poly::NCPolynomial;
use crate::Result;

/// A polynomial in commuting phase-space variables `q`, `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassicalPolynomial {
    terms: BTreeMap<(u32, u32), Coefficient>,
}

impl ClassicalPolynomial {
    pub fn zero() -> Self {
        ClassicalPolynomial::default()
    }

    pub fn term(n: u32, m: u32, c: Coefficient) -> Self {
        let mut out = ClassicalPolynomial::zero();
        accumulate(&mut out.terms, (n, m), &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Coefficient)>>(terms: I) -> Self {
        let mut out = ClassicalPolynomial::zero();
        for (key, c) in terms {
            accumulate(&mut out.terms, key, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Coefficient)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, n: u32, m: u32) -> Coefficient {
        self.terms.get(&(n, m)).cloned().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Coefficient::is_real)
    }

    pub fn multiply(&self, other: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut out = BTreeMap::new();
        for ((a, b), ca) in &self.terms {
            for ((c, d), cb) in &other.terms {
                accumulate(&mut out, (a + c, b + d), &(ca * cb));
            }
        }
        ClassicalPolynomial { terms: out }
    }

    pub fn d_dq(&self) -> ClassicalPolynomial {
        ClassicalPolynomial::from_terms(self.terms.iter().filter(|((n, _), _)| *n > 0).map(
            |((n, m), c)| ((n - 1, *m), c.scale(&BigRational::from_integer(BigInt::from(*n)))),
        ))
    }

    pub fn d_dp(&self) -> ClassicalPolynomial {
        ClassicalPolynomial::from_terms(self.terms.iter().filter(|((_, m), _)| *m > 0).map(
            |((n, m), c)| ((*n, m - 1), c.scale(&BigRational::from_integer(BigInt::from(*m)))),
        ))
    }

    /// `∂f/∂q·∂g/∂p − ∂f/∂p·∂g/∂q`.
    pub fn poisson_bracket(&self, other: &ClassicalPolynomial) -> ClassicalPolynomial {
        &self.d_dq().multiply(&other.d_dp()) - &self.d_dp().multiply(&other.d_dq())
    }

    /// `Σ c_{nm}·q0ⁿ·p0ᵐ`; rejects non-real coefficients.
    pub fn eval(&self, q0: f64, p0: f64) -> Result<f64> {
        let mut acc = 0.0;
        for ((n, m), c) in &self.terms {
            acc += c.to_real_f64()? * q0.powi(*n as i32) * p0.powi(*m as i32);
        }
        Ok(acc)
    }
}

/// Keeps the `ħ⁰` part of `f`, read as a polynomial in commuting variables.
pub fn classical_limit(f: &NCPolynomial) -> ClassicalPolynomial {
    ClassicalPolynomial::from_terms(
        f.terms()
            .filter(|(m, _)| m.hbar == 0)
            .map(|(m, c)| ((m.q, m.p), c.clone())),
    )
}

pub fn eval_classical(f: &ClassicalPolynomial, q0: f64, p0: f64) -> Result<f64> {
    f.eval(q0, p0)
}

impl Add for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;
    fn add(self, rhs: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut terms, *k, c);
        }
        ClassicalPolynomial { terms }
    }
}

impl Sub for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;
    fn sub(self, rhs: &ClassicalPolynomial) -> ClassicalPolynomial {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut terms, *k, &-c);
        }
        ClassicalPolynomial { terms }
    }
}

impl fmt::Display for ClassicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.terms.iter().map(|((n, m), c)| {
            let mut factors = Vec::new();
            super::push_power(&mut factors, "q", *n);
            super::push_power(&mut factors, "p", *m);
            (c, factors)
        }))
    }
}
