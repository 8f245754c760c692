use nalgebra::Matrix2;

use crate::linalg::{self, CMatrix, C64};
use crate::{Error, Result};

use super::operator::HybridOperator;
use super::vector::{HybridDims, HybridVector};

#[derive(Clone, Debug)]
enum Repr {
    /// `|v⟩⟨v|`.
    Pure(HybridVector),
    /// `Σ_ij w_ij |q_i⟩⟨q_i| ⊗ |p_j⟩⟨p_j| ⊗ R`, weights indexed `i·N_p + j`.
    PhaseDiagonal { weights: Vec<f64>, r: Matrix2<C64> },
    Dense(CMatrix),
}

/// A (possibly unnormalized) statistical operator on the composite space.
#[derive(Clone, Debug)]
pub struct HybridDensity {
    dims: HybridDims,
    repr: Repr,
}

/// Imaginary parts of mean values above this fraction of the magnitude are
/// reported rather than dropped.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

impl HybridDensity {
    pub fn pure(v: HybridVector) -> Self {
        HybridDensity {
            dims: v.dims(),
            repr: Repr::Pure(v),
        }
    }

    pub fn phase_diagonal(dims: HybridDims, weights: Vec<f64>, r: Matrix2<C64>) -> Result<Self> {
        if weights.len() != dims.n_q * dims.n_p {
            return Err(Error::DimensionMismatch(format!(
                "{} phase-space weights for dims {:?}",
                weights.len(),
                dims
            )));
        }
        Ok(HybridDensity {
            dims,
            repr: Repr::PhaseDiagonal { weights, r },
        })
    }

    pub fn from_dense(dims: HybridDims, m: CMatrix) -> Result<Self> {
        if m.shape() != (dims.total(), dims.total()) {
            return Err(Error::DimensionMismatch(format!("{:?} for dims {:?}", m.shape(), dims)));
        }
        Ok(HybridDensity {
            dims,
            repr: Repr::Dense(m),
        })
    }

    pub fn dims(&self) -> HybridDims {
        self.dims
    }

    pub fn to_dense(&self) -> CMatrix {
        match &self.repr {
            Repr::Pure(v) => v.amplitudes() * v.amplitudes().adjoint(),
            Repr::Dense(m) => m.clone(),
            Repr::PhaseDiagonal { weights, r } => {
                let d = self.dims;
                let mut m = CMatrix::zeros(d.total(), d.total());
                for i in 0..d.n_q {
                    for j in 0..d.n_p {
                        let w = weights[i * d.n_p + j];
                        for a in 0..2 {
                            for b in 0..2 {
                                m[(d.index(i, j, a), d.index(i, j, b))] = r[(a, b)] * w;
                            }
                        }
                    }
                }
                m
            }
        }
    }

    pub fn trace(&self) -> C64 {
        match &self.repr {
            Repr::Pure(v) => C64::new(v.norm().powi(2), 0.0),
            Repr::Dense(m) => m.trace(),
            Repr::PhaseDiagonal { weights, r } => r.trace() * weights.iter().sum::<f64>(),
        }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        match &self.repr {
            Repr::Pure(_) => 0.0,
            Repr::Dense(m) => linalg::hermiticity_defect(m),
            Repr::PhaseDiagonal { r, .. } => (r - r.adjoint()).iter().fold(0.0, |acc, z| acc.max(z.norm())),
        }
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        match &self.repr {
            Repr::Pure(_) => 0.0,
            Repr::Dense(m) => linalg::hermitian_eigenvalues(m).first().copied().unwrap_or(0.0),
            Repr::PhaseDiagonal { weights, r } => {
                let r_eigs = r.symmetric_eigenvalues();
                let (wmin, wmax) = weights
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &w| (a.min(w), b.max(w)));
                r_eigs
                    .iter()
                    .flat_map(|&e| [e * wmin, e * wmax])
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Hermitian within `tol`, eigenvalues `≥ −tol`, positive trace.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > tol {
            return Err(Error::InvalidState(format!("density not Hermitian (defect {defect:e})")));
        }
        let min = self.min_eigenvalue();
        if min < -tol {
            return Err(Error::InvalidState(format!("density has eigenvalue {min:e}")));
        }
        if !(self.trace().re > 0.0) {
            return Err(Error::InvalidState("density has non-positive trace".into()));
        }
        Ok(())
    }

    /// `Tr(ρA)`.
    pub fn trace_with(&self, a: &HybridOperator) -> Result<C64> {
        if a.dims() != self.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, a.dims())));
        }
        Ok(match &self.repr {
            Repr::Pure(v) => v.inner(&a.apply(v)?),
            Repr::PhaseDiagonal { weights, r } => {
                let d = self.dims;
                if a.is_sectored() {
                    // A is block diagonal in r, so only R's diagonal survives
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..d.n_q {
                        for j in 0..d.n_p {
                            let w = weights[i * d.n_p + j];
                            acc += (r[(0, 0)] * a.diagonal_entry(i, j, 0) + r[(1, 1)] * a.diagonal_entry(i, j, 1)) * w;
                        }
                    }
                    acc
                } else {
                    let m = a.to_dense();
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..d.n_q {
                        for j in 0..d.n_p {
                            let w = weights[i * d.n_p + j];
                            for x in 0..2 {
                                for y in 0..2 {
                                    acc += r[(x, y)] * m[(d.index(i, j, y), d.index(i, j, x))] * w;
                                }
                            }
                        }
                    }
                    acc
                }
            }
            Repr::Dense(rho) => {
                let m = a.to_dense();
                (rho * m).trace()
            }
        })
    }
}

/// `⟨A⟩ = Tr(ρA) / Tr ρ`.
pub fn mean_value(rho: &HybridDensity, a: &HybridOperator) -> Result<C64> {
    let tr = rho.trace();
    if !(tr.re > 0.0) || tr.im.abs() > IMAGINARY_TOLERANCE * tr.re {
        return Err(Error::InvalidState(format!("trace of the state is {tr}, must be positive")));
    }
    Ok(rho.trace_with(a)? / tr)
}

/// [`mean_value`] for Hermitian inputs: checks the imaginary part is below
/// `1e-10` relative and drops it.
pub fn mean_value_real(rho: &HybridDensity, a: &HybridOperator) -> Result<f64> {
    let z = mean_value(rho, a)?;
    if z.im.abs() > IMAGINARY_TOLERANCE * z.re.abs().max(1.0) {
        return Err(Error::NotHermitian(format!("mean value {z} has a significant imaginary part")));
    }
    Ok(z.re)
}
