use crate::linalg::{CVector, C64, ZERO};
use crate::{Error, Result};

/// Tensor dimensions of `H_q ⊗ H_p ⊗ H_r`; the r-factor is always 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HybridDims {
    pub n_q: usize,
    pub n_p: usize,
}

impl HybridDims {
    pub fn new(n_q: usize, n_p: usize) -> Self {
        HybridDims { n_q, n_p }
    }

    pub fn total(&self) -> usize {
        2 * self.n_q * self.n_p
    }

    /// Flat index with factor order (q, p, r).
    #[inline]
    pub fn index(&self, i: usize, j: usize, r: usize) -> usize {
        (i * self.n_p + j) * 2 + r
    }
}

/// A vector on the composite space, amplitudes in (q, p, r) index order.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridVector {
    dims: HybridDims,
    amplitudes: CVector,
}

impl HybridVector {
    pub fn new(dims: HybridDims, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        Ok(HybridVector { dims, amplitudes })
    }

    pub fn zeros(dims: HybridDims) -> Self {
        HybridVector {
            dims,
            amplitudes: CVector::from_element(dims.total(), ZERO),
        }
    }

    /// `|x⟩ ⊗ |y⟩ ⊗ |r⟩`.
    pub fn product(x: &CVector, y: &CVector, r: &CVector) -> Result<Self> {
        if r.len() != 2 {
            return Err(Error::DimensionMismatch("r-factor vector must have length 2".into()));
        }
        let dims = HybridDims::new(x.len(), y.len());
        HybridVector::new(dims, x.kronecker(y).kronecker(r))
    }

    /// `|q_i⟩ ⊗ |p_j⟩ ⊗ (c_q|r_q⟩ + c_p|r_p⟩)`.
    pub fn point_state(dims: HybridDims, i: usize, j: usize, c_q: C64, c_p: C64) -> Self {
        let mut v = HybridVector::zeros(dims);
        v.amplitudes[dims.index(i, j, 0)] = c_q;
        v.amplitudes[dims.index(i, j, 1)] = c_p;
        v
    }

    pub fn dims(&self) -> HybridDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn get(&self, i: usize, j: usize, r: usize) -> C64 {
        self.amplitudes[self.dims.index(i, j, r)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &HybridVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn scale(&self, c: C64) -> HybridVector {
        HybridVector {
            dims: self.dims,
            amplitudes: &self.amplitudes * c,
        }
    }

    pub fn add(&self, other: &HybridVector) -> HybridVector {
        assert_eq!(self.dims, other.dims);
        HybridVector {
            dims: self.dims,
            amplitudes: &self.amplitudes + &other.amplitudes,
        }
    }

    pub fn sub(&self, other: &HybridVector) -> HybridVector {
        assert_eq!(self.dims, other.dims);
        HybridVector {
            dims: self.dims,
            amplitudes: &self.amplitudes - &other.amplitudes,
        }
    }

    /// Largest entry of the difference, for exact-equality checks.
    pub fn max_abs_diff(&self, other: &HybridVector) -> f64 {
        (&self.amplitudes - &other.amplitudes).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}
