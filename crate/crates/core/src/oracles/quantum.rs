use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::ncpoly::NCPolynomial;
use crate::repspace::FactorRep;
use crate::{Error, Result};

/// Lowest eigenpairs of a single-space Hamiltonian.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: DMatrix<Complex64>,
    /// `‖Hv − λv‖` per pair.
    pub residuals: Vec<f64>,
    /// Spectral norm bound `max |λ|` of the full matrix.
    pub norm: f64,
}

impl EigenResult {
    pub fn vector(&self, i: usize) -> DVector<Complex64> {
        self.vectors.column(i).into_owned()
    }

    /// `max |⟨v_a, v_b⟩ − δ_ab|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.vectors.adjoint() * &self.vectors;
        let mut worst: f64 = 0.0;
        for a in 0..g.nrows() {
            for b in 0..g.ncols() {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g[(a, b)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

fn matrix_powers(x: &DMatrix<Complex64>, max: u32) -> Vec<DMatrix<Complex64>> {
    let n = x.nrows();
    let mut out = vec![DMatrix::identity(n, n)];
    for e in 1..=max as usize {
        let next = &out[e - 1] * x;
        out.push(next);
    }
    out
}

/// Dense `H(Q, P)` with `ħᵏ ↦ rep.hbar^k`, built term by term from explicit
/// matrix powers.
fn dense_hamiltonian(h: &NCPolynomial, rep: &FactorRep) -> DMatrix<Complex64> {
    let n = rep.dim();
    let max_q = h.terms().map(|(mono, _)| mono.q).max().unwrap_or(0);
    let max_p = h.terms().map(|(mono, _)| mono.p).max().unwrap_or(0);
    let qs = matrix_powers(&rep.q, max_q);
    let ps = matrix_powers(&rep.p, max_p);
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for (mono, c) in h.terms() {
        let (re, im) = c.to_f64_pair();
        let weight = Complex64::new(re, im) * rep.hbar.powi(mono.hbar as i32);
        acc += (&qs[mono.q as usize] * &ps[mono.p as usize]) * weight;
    }
    acc
}

/// Lowest `k` eigenpairs of `H(rep.Q, rep.P)` by dense Hermitian
/// diagonalization.
pub fn solve_quantum_1d(h: &NCPolynomial, rep: &FactorRep, k: usize) -> Result<EigenResult> {
    if !h.is_self_adjoint() {
        return Err(Error::NotHermitian(format!("Hamiltonian `{h}` is not self-adjoint")));
    }
    if k > rep.dim() {
        return Err(Error::InvalidParameter(format!("{k} levels requested from a {}-point grid", rep.dim())));
    }
    let m = dense_hamiltonian(h, rep);
    let hermitian = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = hermitian.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let norm = eig.eigenvalues.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let chosen = &order[..k];
    let values: Vec<f64> = chosen.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<DVector<Complex64>> = chosen.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    let vectors = if columns.is_empty() {
        DMatrix::zeros(rep.dim(), 0)
    } else {
        DMatrix::from_columns(&columns)
    };
    let residuals = values
        .iter()
        .zip(&columns)
        .map(|(&lambda, v)| (&m * v - v * Complex64::new(lambda, 0.0)).norm())
        .collect();
    Ok(EigenResult {
        values,
        vectors,
        residuals,
        norm,
    })
}
