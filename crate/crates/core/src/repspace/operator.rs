use crate::linalg::{self, CMatrix, CVector, C64, ZERO};
use crate::{Error, Result};

use super::vector::{HybridDims, HybridVector};

/// Storage for an operator on `H_q ⊗ H_p ⊗ H_r`.
///
/// Every operator generated by `q̃(h)`, `p̃(h)` and the quantum/classical
/// pairs is block diagonal in the r-factor; its `r_q` sector is block
/// diagonal in the momentum index and its `r_p` sector in the coordinate
/// index. `Sectored` stores exactly those blocks. Anything else falls back
/// to a dense matrix.
#[derive(Clone, Debug)]
enum Repr {
    Sectored {
        /// `n_p` blocks of size `n_q`: the `r_q` sector is `Σ_j A_j ⊗ |j⟩⟨j|`.
        q_blocks: Vec<CMatrix>,
        /// `n_q` blocks of size `n_p`: the `r_p` sector is `Σ_i |i⟩⟨i| ⊗ B_i`.
        p_blocks: Vec<CMatrix>,
    },
    Dense(CMatrix),
}

/// A linear operator on the composite space, index order (q, p, r).
#[derive(Clone, Debug)]
pub struct HybridOperator {
    dims: HybridDims,
    repr: Repr,
    hermitian: bool,
}

impl PartialEq for HybridOperator {
    /// Entry-wise IEEE equality of the represented matrices.
    fn eq(&self, other: &Self) -> bool {
        if self.dims != other.dims {
            return false;
        }
        match (&self.repr, &other.repr) {
            (
                Repr::Sectored { q_blocks: a, p_blocks: b },
                Repr::Sectored { q_blocks: c, p_blocks: d },
            ) => a == c && b == d,
            _ => self.to_dense() == other.to_dense(),
        }
    }
}

impl HybridOperator {
    pub fn zeros(dims: HybridDims) -> Self {
        HybridOperator {
            dims,
            repr: Repr::Sectored {
                q_blocks: vec![CMatrix::zeros(dims.n_q, dims.n_q); dims.n_p],
                p_blocks: vec![CMatrix::zeros(dims.n_p, dims.n_p); dims.n_q],
            },
            hermitian: true,
        }
    }

    /// `Ĩ = Î ⊗ Î ⊗ Î`.
    pub fn identity(dims: HybridDims) -> Self {
        HybridOperator {
            dims,
            repr: Repr::Sectored {
                q_blocks: vec![CMatrix::identity(dims.n_q, dims.n_q); dims.n_p],
                p_blocks: vec![CMatrix::identity(dims.n_p, dims.n_p); dims.n_q],
            },
            hermitian: true,
        }
    }

    pub fn from_dense(dims: HybridDims, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != dims.total() || matrix.ncols() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for dims {:?}",
                matrix.nrows(),
                matrix.ncols(),
                dims
            )));
        }
        Ok(HybridOperator {
            dims,
            repr: Repr::Dense(matrix),
            hermitian: false,
        })
    }

    /// `a ⊗ b ⊗ r`. Stored in sector form when `r` is diagonal and each
    /// sector with a nonzero `r` entry has the required diagonal factor;
    /// otherwise dense.
    pub fn kron(a: &CMatrix, b: &CMatrix, r: &CMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || r.shape() != (2, 2) {
            return Err(Error::DimensionMismatch("kron factors must be square, r 2x2".into()));
        }
        let dims = HybridDims::new(a.nrows(), b.nrows());
        let r_diagonal = r[(0, 1)] == ZERO && r[(1, 0)] == ZERO;
        let q_ok = r[(0, 0)] == ZERO || linalg::is_diagonal(b);
        let p_ok = r[(1, 1)] == ZERO || linalg::is_diagonal(a);
        if !(r_diagonal && q_ok && p_ok) {
            return HybridOperator::from_dense(dims, linalg::kron(&linalg::kron(a, b), r));
        }
        let q_blocks = (0..dims.n_p)
            .map(|j| {
                if r[(0, 0)] == ZERO {
                    CMatrix::zeros(dims.n_q, dims.n_q)
                } else {
                    a * (r[(0, 0)] * b[(j, j)])
                }
            })
            .collect();
        let p_blocks = (0..dims.n_q)
            .map(|i| {
                if r[(1, 1)] == ZERO {
                    CMatrix::zeros(dims.n_p, dims.n_p)
                } else {
                    b * (r[(1, 1)] * a[(i, i)])
                }
            })
            .collect();
        Ok(HybridOperator {
            dims,
            repr: Repr::Sectored { q_blocks, p_blocks },
            hermitian: false,
        })
    }

    pub fn dims(&self) -> HybridDims {
        self.dims
    }

    pub fn is_sectored(&self) -> bool {
        matches!(self.repr, Repr::Sectored { .. })
    }

    /// Block `A_j` of the `r_q` sector, when stored in sector form.
    pub fn q_sector_block(&self, j: usize) -> Option<&CMatrix> {
        match &self.repr {
            Repr::Sectored { q_blocks, .. } => q_blocks.get(j),
            Repr::Dense(_) => None,
        }
    }

    /// Block `B_i` of the `r_p` sector, when stored in sector form.
    pub fn p_sector_block(&self, i: usize) -> Option<&CMatrix> {
        match &self.repr {
            Repr::Sectored { p_blocks, .. } => p_blocks.get(i),
            Repr::Dense(_) => None,
        }
    }

    /// The full `2·N_q·N_p` square matrix.
    pub fn to_dense(&self) -> CMatrix {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Sectored { q_blocks, p_blocks } => {
                let d = self.dims;
                let mut m = CMatrix::zeros(d.total(), d.total());
                for (j, blk) in q_blocks.iter().enumerate() {
                    for i in 0..d.n_q {
                        for k in 0..d.n_q {
                            m[(d.index(i, j, 0), d.index(k, j, 0))] = blk[(i, k)];
                        }
                    }
                }
                for (i, blk) in p_blocks.iter().enumerate() {
                    for j in 0..d.n_p {
                        for k in 0..d.n_p {
                            m[(d.index(i, j, 1), d.index(i, k, 1))] = blk[(j, k)];
                        }
                    }
                }
                m
            }
        }
    }

    fn check_dims(&self, other: &HybridOperator) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    fn zip_blocks(
        &self,
        other: &HybridOperator,
        f: impl Fn(&CMatrix, &CMatrix) -> CMatrix,
    ) -> Result<HybridOperator> {
        self.check_dims(other)?;
        let repr = match (&self.repr, &other.repr) {
            (
                Repr::Sectored { q_blocks: a, p_blocks: b },
                Repr::Sectored { q_blocks: c, p_blocks: d },
            ) => Repr::Sectored {
                q_blocks: a.iter().zip(c).map(|(x, y)| f(x, y)).collect(),
                p_blocks: b.iter().zip(d).map(|(x, y)| f(x, y)).collect(),
            },
            _ => Repr::Dense(f(&self.to_dense(), &other.to_dense())),
        };
        Ok(HybridOperator {
            dims: self.dims,
            repr,
            hermitian: false,
        })
    }

    pub fn add(&self, other: &HybridOperator) -> Result<HybridOperator> {
        self.zip_blocks(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &HybridOperator) -> Result<HybridOperator> {
        self.zip_blocks(other, |x, y| x - y)
    }

    pub fn mul(&self, other: &HybridOperator) -> Result<HybridOperator> {
        self.zip_blocks(other, |x, y| x * y)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &HybridOperator) -> Result<HybridOperator> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn scale(&self, c: C64) -> HybridOperator {
        let repr = match &self.repr {
            Repr::Sectored { q_blocks, p_blocks } => Repr::Sectored {
                q_blocks: q_blocks.iter().map(|b| b * c).collect(),
                p_blocks: p_blocks.iter().map(|b| b * c).collect(),
            },
            Repr::Dense(m) => Repr::Dense(m * c),
        };
        HybridOperator {
            dims: self.dims,
            repr,
            hermitian: self.hermitian && c.im == 0.0,
        }
    }

    pub fn adjoint(&self) -> HybridOperator {
        let repr = match &self.repr {
            Repr::Sectored { q_blocks, p_blocks } => Repr::Sectored {
                q_blocks: q_blocks.iter().map(CMatrix::adjoint).collect(),
                p_blocks: p_blocks.iter().map(CMatrix::adjoint).collect(),
            },
            Repr::Dense(m) => Repr::Dense(m.adjoint()),
        };
        HybridOperator {
            dims: self.dims,
            repr,
            hermitian: self.hermitian,
        }
    }

    pub fn apply(&self, v: &HybridVector) -> Result<HybridVector> {
        if v.dims() != self.dims {
            return Err(Error::DimensionMismatch(format!(
                "operator {:?} applied to vector {:?}",
                self.dims,
                v.dims()
            )));
        }
        let d = self.dims;
        let x = v.amplitudes();
        let out = match &self.repr {
            Repr::Dense(m) => m * x,
            Repr::Sectored { q_blocks, p_blocks } => {
                let mut out = CVector::from_element(d.total(), ZERO);
                for (j, blk) in q_blocks.iter().enumerate() {
                    let col = CVector::from_iterator(d.n_q, (0..d.n_q).map(|i| x[d.index(i, j, 0)]));
                    let y = blk * col;
                    for i in 0..d.n_q {
                        out[d.index(i, j, 0)] = y[i];
                    }
                }
                for (i, blk) in p_blocks.iter().enumerate() {
                    let col = CVector::from_iterator(d.n_p, (0..d.n_p).map(|j| x[d.index(i, j, 1)]));
                    let y = blk * col;
                    for j in 0..d.n_p {
                        out[d.index(i, j, 1)] = y[j];
                    }
                }
                out
            }
        };
        HybridVector::new(d, out)
    }

    pub fn trace(&self) -> C64 {
        match &self.repr {
            Repr::Dense(m) => m.trace(),
            Repr::Sectored { q_blocks, p_blocks } => {
                q_blocks.iter().chain(p_blocks).map(CMatrix::trace).sum()
            }
        }
    }

    /// Diagonal entry at composite index (i, j, r).
    pub fn diagonal_entry(&self, i: usize, j: usize, r: usize) -> C64 {
        match &self.repr {
            Repr::Dense(m) => {
                let k = self.dims.index(i, j, r);
                m[(k, k)]
            }
            Repr::Sectored { q_blocks, p_blocks } => {
                if r == 0 {
                    q_blocks[j][(i, i)]
                } else {
                    p_blocks[i][(j, j)]
                }
            }
        }
    }

    /// Largest entry of `A − A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => linalg::hermiticity_defect(m),
            Repr::Sectored { q_blocks, p_blocks } => q_blocks
                .iter()
                .chain(p_blocks)
                .map(linalg::hermiticity_defect)
                .fold(0.0, f64::max),
        }
    }

    /// Checks Hermiticity within `tol` (relative to the largest entry) and
    /// caches the result.
    pub fn assert_hermitian(mut self, tol: f64) -> Result<Self> {
        let defect = self.hermiticity_defect();
        let scale = self.max_abs().max(1.0);
        if defect > tol * scale {
            return Err(Error::NotHermitian(format!("defect {defect:e} exceeds {:e}", tol * scale)));
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn is_hermitian_asserted(&self) -> bool {
        self.hermitian
    }

    pub fn max_abs(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => linalg::max_abs(m),
            Repr::Sectored { q_blocks, p_blocks } => {
                q_blocks.iter().chain(p_blocks).map(linalg::max_abs).fold(0.0, f64::max)
            }
        }
    }

    /// Largest entry-wise difference from `other`.
    pub fn max_abs_diff(&self, other: &HybridOperator) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Operator 2-norm.
    pub fn norm(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => linalg::spectral_norm(m),
            Repr::Sectored { q_blocks, p_blocks } => q_blocks
                .iter()
                .chain(p_blocks)
                .map(linalg::spectral_norm)
                .fold(0.0, f64::max),
        }
    }

    /// All eigenvalues, ascending, with multiplicity. Requires Hermiticity
    /// within `1e-10` relative.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let checked = if self.hermitian {
            self.clone()
        } else {
            self.clone().assert_hermitian(1e-10)?
        };
        let mut values = match &checked.repr {
            Repr::Dense(m) => linalg::hermitian_eigenvalues(m),
            Repr::Sectored { q_blocks, p_blocks } => q_blocks
                .iter()
                .chain(p_blocks)
                .flat_map(linalg::hermitian_eigenvalues)
                .collect(),
        };
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let mut s = self.spectrum()?;
        s.truncate(k);
        Ok(s)
    }
}

/// A diagonal operator, used for the two-factor classical pair on
/// `H_q ⊗ H_p` where only the diagonal is ever nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator {
    diagonal: CVector,
}

impl DiagonalOperator {
    pub fn new(diagonal: CVector) -> Self {
        DiagonalOperator { diagonal }
    }

    pub fn diagonal(&self) -> &CVector {
        &self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn to_dense(&self) -> CMatrix {
        CMatrix::from_diagonal(&self.diagonal)
    }

    pub fn mul(&self, other: &DiagonalOperator) -> Result<DiagonalOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(DiagonalOperator::new(self.diagonal.component_mul(&other.diagonal)))
    }

    pub fn add(&self, other: &DiagonalOperator) -> Result<DiagonalOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(DiagonalOperator::new(&self.diagonal + &other.diagonal))
    }

    pub fn commutator(&self, other: &DiagonalOperator) -> Result<DiagonalOperator> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(DiagonalOperator::new(ab.diagonal - ba.diagonal))
    }

    /// Ascending real parts of the diagonal.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.diagonal.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}
