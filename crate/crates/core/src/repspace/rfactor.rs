use nalgebra::Matrix2;

use crate::linalg::{CMatrix, CVector, C64, ONE, ZERO};
use crate::{Error, Result};

/// The two-dimensional bookkeeping factor: projectors `R_q = |r_q⟩⟨r_q|`,
/// `R_p = |r_p⟩⟨r_p|` and the mixing amplitudes `c_q`, `c_p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RFactor {
    c_q: C64,
    c_p: C64,
}

/// Tolerance on `|c_q|² + |c_p|² = 1`.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

impl RFactor {
    pub fn new(c_q: C64, c_p: C64) -> Result<Self> {
        let w = c_q.norm_sqr() + c_p.norm_sqr();
        if (w - 1.0).abs() > WEIGHT_TOLERANCE || !w.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weight condition |c_q|^2 + |c_p|^2 = 1 violated: got {w}"
            )));
        }
        Ok(RFactor { c_q, c_p })
    }

    /// `c_q = c_p = 1/√2`.
    pub fn balanced() -> Self {
        let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        RFactor { c_q: c, c_p: c }
    }

    pub fn c_q(&self) -> C64 {
        self.c_q
    }

    pub fn c_p(&self) -> C64 {
        self.c_p
    }

    pub fn r_q_vector() -> CVector {
        CVector::from_vec(vec![ONE, ZERO])
    }

    pub fn r_p_vector() -> CVector {
        CVector::from_vec(vec![ZERO, ONE])
    }

    pub fn r_q() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO])
    }

    pub fn r_p() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE])
    }

    pub fn identity() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    /// `c_q|r_q⟩ + c_p|r_p⟩`.
    pub fn mixing_vector(&self) -> CVector {
        CVector::from_vec(vec![self.c_q, self.c_p])
    }

    /// `(c_q|r_q⟩ + c_p|r_p⟩)(c_q*⟨r_q| + c_p*⟨r_p|)`.
    pub fn dyad(&self) -> Matrix2<C64> {
        let v = nalgebra::Vector2::new(self.c_q, self.c_p);
        v * v.adjoint()
    }

    /// Errors of the six projector identities
    /// `R_qR_p = 0`, `R_q² = R_q`, `R_p² = R_p`, `R_q† = R_q`, `R_p† = R_p`,
    /// `R_q + R_p = I`, as the largest absolute entry of each difference.
    pub fn projector_identity_errors() -> [(&'static str, f64); 6] {
        let (rq, rp, id) = (Self::r_q(), Self::r_p(), Self::identity());
        let zero = CMatrix::zeros(2, 2);
        let diff = |a: &CMatrix, b: &CMatrix| crate::linalg::max_abs_diff(a, b);
        [
            ("R_q R_p = 0", diff(&(&rq * &rp), &zero)),
            ("R_q R_q = R_q", diff(&(&rq * &rq), &rq)),
            ("R_p R_p = R_p", diff(&(&rp * &rp), &rp)),
            ("R_q^dagger = R_q", diff(&rq.adjoint(), &rq)),
            ("R_p^dagger = R_p", diff(&rp.adjoint(), &rp)),
            ("R_q + R_p = I", diff(&(&rq + &rp), &id)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projector_identities_are_exact() {
        for (name, err) in RFactor::projector_identity_errors() {
            assert_eq!(err, 0.0, "{name}");
        }
        assert_eq!(RFactor::r_q(), &RFactor::r_q_vector() * RFactor::r_q_vector().adjoint());
        assert_eq!(RFactor::r_p(), &RFactor::r_p_vector() * RFactor::r_p_vector().adjoint());
    }

    #[test]
    fn weight_condition() {
        assert!(RFactor::new(ONE, ONE).is_err());
        assert!(RFactor::new(ONE, ZERO).is_ok());
        assert!(RFactor::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).is_ok());
        let d = RFactor::balanced().dyad();
        assert!((d.trace() - ONE).norm() < 1e-15);
    }
}
