//! Dense complex matrix helpers shared by the numerical modules.

use nalgebra::{DMatrix, DVector};
pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn real_diagonal(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| C64::new(v, 0.0)),
    ))
}

/// Kronecker product `a ⊗ b`, row index `ia * rows(b) + ib`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Largest entry of `m - m†`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn is_diagonal(m: &CMatrix) -> bool {
    m.nrows() == m.ncols()
        && m.iter().enumerate().all(|(idx, z)| {
            let (r, c) = (idx % m.nrows(), idx / m.nrows());
            r == c || *z == ZERO
        })
}

/// Ascending eigenvalues of a Hermitian matrix. The strictly upper triangle
/// is ignored by the solver, so callers should check Hermiticity first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Operator 2-norm of a Hermitian matrix (largest |eigenvalue|).
pub fn hermitian_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Operator 2-norm of an arbitrary matrix (largest singular value).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().fold(0.0, |acc, &s| acc.max(s))
}

pub fn vector_norm(v: &CVector) -> f64 {
    v.norm()
}
