use crate::linalg::{CMatrix, CVector, C64};
use crate::ncpoly::NCPolynomial;
use crate::{Error, Result};

use super::eval::evaluate_operator_poly;
use super::factor::{FactorKind, FactorRep};
use super::operator::{DiagonalOperator, HybridOperator};
use super::params::SemiclassicalParams;
use super::rfactor::RFactor;
use super::vector::HybridVector;

fn check_pair(params: Option<&SemiclassicalParams>, fq: &FactorRep, fp: &FactorRep) -> Result<()> {
    if fq.kind != FactorKind::Coordinate {
        return Err(Error::WrongKind("first factor must be a coordinate representation".into()));
    }
    if fp.kind != FactorKind::Momentum {
        return Err(Error::WrongKind("second factor must be a momentum representation".into()));
    }
    if let Some(params) = params {
        let expected = params.hbar_of_h();
        for f in [fq, fp] {
            if f.hbar != expected {
                return Err(Error::HbarMismatch {
                    factor: f.hbar,
                    expected,
                });
            }
        }
    }
    Ok(())
}

fn r_combination(weight_q: f64, weight_p: f64) -> CMatrix {
    RFactor::r_q() * C64::new(weight_q, 0.0) + RFactor::r_p() * C64::new(weight_p, 0.0)
}

/// `q̃ = Q_q ⊗ I ⊗ (R_q + (1 − h/h₀)R_p) + I ⊗ Q_p ⊗ R_p`.
pub fn assemble_qtilde(
    params: &SemiclassicalParams,
    fq: &FactorRep,
    fp: &FactorRep,
    _r: &RFactor,
) -> Result<HybridOperator> {
    check_pair(Some(params), fq, fp)?;
    let (iq, ip) = (fq.q.identity_like_square(), fp.p.identity_like_square());
    let first = HybridOperator::kron(&fq.q, &ip, &r_combination(1.0, params.cross_weight()))?;
    let second = HybridOperator::kron(&iq, &fp.q, &RFactor::r_p())?;
    first.add(&second)?.assert_hermitian(1e-12)
}

/// `p̃ = P_q ⊗ I ⊗ R_q + I ⊗ P_p ⊗ ((1 − h/h₀)R_q + R_p)`.
pub fn assemble_ptilde(
    params: &SemiclassicalParams,
    fq: &FactorRep,
    fp: &FactorRep,
    _r: &RFactor,
) -> Result<HybridOperator> {
    check_pair(Some(params), fq, fp)?;
    let (iq, ip) = (fq.q.identity_like_square(), fp.p.identity_like_square());
    let first = HybridOperator::kron(&fq.p, &ip, &RFactor::r_q())?;
    let second = HybridOperator::kron(&iq, &fp.p, &r_combination(params.cross_weight(), 1.0))?;
    first.add(&second)?.assert_hermitian(1e-12)
}

/// `(q̂_qm, p̂_qm)`: `Q_q⊗I⊗R_q + I⊗Q_p⊗R_p` and `P_q⊗I⊗R_q + I⊗P_p⊗R_p`.
pub fn assemble_pair_qm(fq: &FactorRep, fp: &FactorRep, _r: &RFactor) -> Result<(HybridOperator, HybridOperator)> {
    check_pair(None, fq, fp)?;
    let (iq, ip) = (fq.q.identity_like_square(), fp.p.identity_like_square());
    let q = HybridOperator::kron(&fq.q, &ip, &RFactor::r_q())?
        .add(&HybridOperator::kron(&iq, &fp.q, &RFactor::r_p())?)?
        .assert_hermitian(1e-12)?;
    let p = HybridOperator::kron(&fq.p, &ip, &RFactor::r_q())?
        .add(&HybridOperator::kron(&iq, &fp.p, &RFactor::r_p())?)?
        .assert_hermitian(1e-12)?;
    Ok((q, p))
}

/// `(q̂_cm, p̂_cm) = (diag(q) ⊗ I ⊗ I, I ⊗ diag(p) ⊗ I)`.
pub fn assemble_pair_cm(fq: &FactorRep, fp: &FactorRep, _r: &RFactor) -> Result<(HybridOperator, HybridOperator)> {
    check_pair(None, fq, fp)?;
    let (iq, ip) = (fq.q.identity_like_square(), fp.p.identity_like_square());
    let q = HybridOperator::kron(&fq.q, &ip, &RFactor::identity())?.assert_hermitian(0.0)?;
    let p = HybridOperator::kron(&iq, &fp.p, &RFactor::identity())?.assert_hermitian(0.0)?;
    Ok((q, p))
}

/// The two-factor classical pair `(q̂ ⊗ Î, Î ⊗ p̂)` on `H_q ⊗ H_p`, index
/// `i·N_p + j`.
pub fn assemble_pair_cm_minimal(fq: &FactorRep, fp: &FactorRep) -> Result<(DiagonalOperator, DiagonalOperator)> {
    check_pair(None, fq, fp)?;
    let (qs, ps) = (fq.grid.points(), fp.grid.points());
    let n = qs.len() * ps.len();
    let q = CVector::from_iterator(n, qs.iter().flat_map(|&x| ps.iter().map(move |_| C64::new(x, 0.0))));
    let p = CVector::from_iterator(n, qs.iter().flat_map(|_| ps.iter().map(|&y| C64::new(y, 0.0))));
    Ok((DiagonalOperator::new(q), DiagonalOperator::new(p)))
}

/// `max_v ‖([A, B] − iħĨ)v‖ / ‖v‖` over the test states.
pub fn commutator_residual(
    a: &HybridOperator,
    b: &HybridOperator,
    hbar: f64,
    test_states: &[HybridVector],
) -> Result<f64> {
    if test_states.is_empty() {
        return Err(Error::InvalidParameter("commutator residual needs at least one test state".into()));
    }
    // forming [A, B] first keeps commuting diagonal pairs exactly zero
    let c = a.commutator(b)?;
    let mut worst: f64 = 0.0;
    for v in test_states {
        let residual = c.apply(v)?.sub(&v.scale(C64::new(0.0, hbar)));
        let norm = v.norm();
        if !(norm > 0.0) {
            return Err(Error::InvalidState("zero test state".into()));
        }
        worst = worst.max(residual.norm() / norm);
    }
    Ok(worst)
}

/// Evaluates a Hamiltonian on an assembled pair and caches Hermiticity when
/// the polynomial is self-adjoint.
pub fn evaluate_observable(
    f: &NCPolynomial,
    pair: (&HybridOperator, &HybridOperator),
    hbar: f64,
) -> Result<HybridOperator> {
    let op = evaluate_operator_poly(f, pair, hbar)?;
    if f.is_self_adjoint() {
        op.assert_hermitian(1e-10)
    } else {
        Ok(op)
    }
}

trait IdentityLike {
    fn identity_like_square(&self) -> CMatrix;
}

impl IdentityLike for CMatrix {
    fn identity_like_square(&self) -> CMatrix {
        CMatrix::identity(self.nrows(), self.nrows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, max_abs_diff};
    use crate::repspace::{coordinate_rep, momentum_rep, momentum_grid_for, uniform_grid, HybridDims};

    fn setup(n: usize, h: f64) -> (SemiclassicalParams, FactorRep, FactorRep) {
        let params = SemiclassicalParams::new(h, 2.0 * std::f64::consts::PI).unwrap();
        let gq = uniform_grid(n, 8.0).unwrap();
        let gp = momentum_grid_for(&gq, params.hbar0()).unwrap();
        let fq = coordinate_rep(&gq, params.hbar_of_h()).unwrap();
        let fp = momentum_rep(&gp, params.hbar_of_h()).unwrap();
        (params, fq, fp)
    }

    /// Dense Kronecker assembly straight from the defining formulas.
    fn naive_tilde(params: &SemiclassicalParams, fq: &FactorRep, fp: &FactorRep) -> (CMatrix, CMatrix) {
        let s = C64::new(params.cross_weight(), 0.0);
        let (iq, ip) = (CMatrix::identity(fq.dim(), fq.dim()), CMatrix::identity(fp.dim(), fp.dim()));
        let (rq, rp) = (RFactor::r_q(), RFactor::r_p());
        let q = kron(&kron(&fq.q, &ip), &(&rq + &rp * s)) + kron(&kron(&iq, &fp.q), &rp);
        let p = kron(&kron(&fq.p, &ip), &rq) + kron(&kron(&iq, &fp.p), &(&rq * s + &rp));
        (q, p)
    }

    #[test]
    fn tilde_pair_matches_naive_kronecker_assembly() {
        for h in [0.0, 1.3, 2.0 * std::f64::consts::PI] {
            let (params, fq, fp) = setup(6, h);
            let r = RFactor::balanced();
            let q = assemble_qtilde(&params, &fq, &fp, &r).unwrap();
            let p = assemble_ptilde(&params, &fq, &fp, &r).unwrap();
            let (nq, np) = naive_tilde(&params, &fq, &fp);
            assert!(max_abs_diff(&q.to_dense(), &nq) < 1e-15);
            assert!(max_abs_diff(&p.to_dense(), &np) < 1e-15);
        }
    }

    #[test]
    fn endpoints_are_exact() {
        let r = RFactor::balanced();
        let (params, fq, fp) = setup(8, 2.0 * std::f64::consts::PI);
        let qm = assemble_pair_qm(&fq, &fp, &r).unwrap();
        assert!(assemble_qtilde(&params, &fq, &fp, &r).unwrap() == qm.0);
        assert!(assemble_ptilde(&params, &fq, &fp, &r).unwrap() == qm.1);
        let (params, fq, fp) = setup(8, 0.0);
        let cm = assemble_pair_cm(&fq, &fp, &r).unwrap();
        assert!(assemble_qtilde(&params, &fq, &fp, &r).unwrap() == cm.0);
        assert!(assemble_ptilde(&params, &fq, &fp, &r).unwrap() == cm.1);
    }

    #[test]
    fn hbar_mismatch_rejected() {
        let (params, fq, _) = setup(4, 1.0);
        let gp = momentum_grid_for(&fq.grid, params.hbar0()).unwrap();
        let fp = momentum_rep(&gp, 0.5).unwrap();
        let err = assemble_qtilde(&params, &fq, &fp, &RFactor::balanced()).unwrap_err();
        assert!(matches!(err, Error::HbarMismatch { .. }));
        assert!(matches!(
            assemble_qtilde(&params, &fp, &fq, &RFactor::balanced()).unwrap_err(),
            Error::WrongKind(_)
        ));
    }

    #[test]
    fn minimal_pair_is_the_stripped_classical_pair() {
        let (_, fq, fp) = setup(4, 0.0);
        let (q, p) = assemble_pair_cm_minimal(&fq, &fp).unwrap();
        let (cq, cp) = assemble_pair_cm(&fq, &fp, &RFactor::balanced()).unwrap();
        let dims = HybridDims::new(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                for r in 0..2 {
                    assert_eq!(q.diagonal()[i * 4 + j], cq.diagonal_entry(i, j, r));
                    assert_eq!(p.diagonal()[i * 4 + j], cp.diagonal_entry(i, j, r));
                }
            }
        }
        assert_eq!(dims.total(), 32);
        assert!(q.commutator(&p).unwrap().diagonal().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn empty_test_set_rejected() {
        let id = HybridOperator::identity(HybridDims::new(2, 2));
        assert!(commutator_residual(&id, &id, 1.0, &[]).is_err());
    }
}
