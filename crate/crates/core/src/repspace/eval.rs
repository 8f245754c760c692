use crate::linalg::{CMatrix, C64};
use crate::ncpoly::NCPolynomial;
use crate::{Error, Result};

use super::operator::{DiagonalOperator, HybridOperator};

/// The operations polynomial evaluation needs from a matrix type.
pub trait OperatorAlgebra: Clone {
    fn identity_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn op_mul(&self, rhs: &Self) -> Result<Self>;
    fn op_add(&self, rhs: &Self) -> Result<Self>;
    fn op_scale(&self, c: C64) -> Self;
}

impl OperatorAlgebra for CMatrix {
    fn identity_like(&self) -> Self {
        CMatrix::identity(self.nrows(), self.ncols())
    }

    fn zero_like(&self) -> Self {
        CMatrix::zeros(self.nrows(), self.ncols())
    }

    fn op_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} times {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(self * rhs)
    }

    fn op_add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} plus {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(self + rhs)
    }

    fn op_scale(&self, c: C64) -> Self {
        self * c
    }
}

impl OperatorAlgebra for HybridOperator {
    fn identity_like(&self) -> Self {
        HybridOperator::identity(self.dims())
    }

    fn zero_like(&self) -> Self {
        HybridOperator::zeros(self.dims())
    }

    fn op_mul(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)
    }

    fn op_add(&self, rhs: &Self) -> Result<Self> {
        self.add(rhs)
    }

    fn op_scale(&self, c: C64) -> Self {
        self.scale(c)
    }
}

impl OperatorAlgebra for DiagonalOperator {
    fn identity_like(&self) -> Self {
        DiagonalOperator::new(self.diagonal().map(|_| C64::new(1.0, 0.0)))
    }

    fn zero_like(&self) -> Self {
        DiagonalOperator::new(self.diagonal().map(|_| C64::new(0.0, 0.0)))
    }

    fn op_mul(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)
    }

    fn op_add(&self, rhs: &Self) -> Result<Self> {
        self.add(rhs)
    }

    fn op_scale(&self, c: C64) -> Self {
        DiagonalOperator::new(self.diagonal() * c)
    }
}

/// Substitutes `(q̂, p̂) ↦ pair` into the normal-ordered terms of `f`, with
/// `ħᵏ ↦ hbarᵏ`. Terms are summed in the polynomial's lexicographic order.
pub fn evaluate_operator_poly<A: OperatorAlgebra>(f: &NCPolynomial, pair: (&A, &A), hbar: f64) -> Result<A> {
    let (q, p) = pair;
    // dimension check up front so an empty polynomial still validates
    q.op_mul(p)?;
    let max_q = f.terms().map(|(m, _)| m.q).max().unwrap_or(0) as usize;
    let max_p = f.terms().map(|(m, _)| m.p).max().unwrap_or(0) as usize;
    let mut q_pows = vec![q.identity_like()];
    for n in 1..=max_q {
        let next = if n == 1 { q.clone() } else { q_pows[n - 1].op_mul(q)? };
        q_pows.push(next);
    }
    let mut p_pows = vec![p.identity_like()];
    for m in 1..=max_p {
        let next = if m == 1 { p.clone() } else { p_pows[m - 1].op_mul(p)? };
        p_pows.push(next);
    }
    let mut sum = q.zero_like();
    for (mono, c) in f.terms() {
        let (re, im) = c.to_f64_pair();
        let weight = C64::new(re, im) * hbar.powi(mono.hbar as i32);
        let (n, m) = (mono.q as usize, mono.p as usize);
        let product = match (n, m) {
            (_, 0) => q_pows[n].clone(),
            (0, _) => p_pows[m].clone(),
            _ => q_pows[n].op_mul(&p_pows[m])?,
        };
        sum = sum.op_add(&product.op_scale(weight))?;
    }
    Ok(sum)
}
