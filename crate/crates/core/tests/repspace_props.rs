use std::f64::consts::PI;

use proptest::prelude::*;
use semiclassical::linalg::{CVector, C64};
use semiclassical::repspace::{
    assemble_pair_cm, assemble_pair_qm, assemble_ptilde, assemble_qtilde, coordinate_rep, fourier_state,
    inverse_fourier_state, momentum_grid_for, momentum_rep, uniform_grid, Container, HybridDims, HybridOperator,
    HybridVector, RFactor, SemiclassicalParams,
};

fn amplitudes(len: usize) -> impl Strategy<Value = CVector> {
    prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), len)
        .prop_map(|v| CVector::from_iterator(v.len(), v.into_iter().map(|(re, im)| C64::new(re, im))))
}

fn rfactor() -> impl Strategy<Value = RFactor> {
    (0.0f64..=1.0, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(a, phase_q, phase_p)| {
        let (cq, cp) = (a.sqrt(), (1.0 - a).sqrt());
        RFactor::new(C64::from_polar(cq, phase_q), C64::from_polar(cp, phase_p)).unwrap_or_else(|_| RFactor::balanced())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn container_text_round_trip(v in amplitudes(4 * 6 * 2)) {
        let v = HybridVector::new(HybridDims::new(4, 6), v).unwrap();
        let mut text = Vec::new();
        Container::from_vector(&v).write_text(&mut text).unwrap();
        prop_assert_eq!(Container::read_text(text.as_slice()).unwrap().to_vector().unwrap(), v);
    }

    #[test]
    fn container_binary_round_trip(v in amplitudes(4 * 4 * 2)) {
        let v = HybridVector::new(HybridDims::new(4, 4), v).unwrap();
        let op = HybridOperator::from_dense(HybridDims::new(4, 4), &v.amplitudes().clone() * v.amplitudes().adjoint()).unwrap();
        let mut bytes = Vec::new();
        Container::from_operator(&op).write_binary(&mut bytes).unwrap();
        let back = Container::read_binary(bytes.as_slice()).unwrap().to_operator().unwrap();
        prop_assert_eq!(back.to_dense(), op.to_dense());
    }

    #[test]
    fn endpoints_are_bitwise(n in (1usize..=6).prop_map(|k| 2 * k), l in 1.0f64..30.0, h0 in 0.5f64..20.0, r in rfactor()) {
        let hbar0 = h0 / (2.0 * PI);
        let gq = uniform_grid(n, l).unwrap();
        let gp = momentum_grid_for(&gq, hbar0).unwrap();
        let (fq1, fp1) = (coordinate_rep(&gq, hbar0).unwrap(), momentum_rep(&gp, hbar0).unwrap());
        let (fq0, fp0) = (coordinate_rep(&gq, 0.0).unwrap(), momentum_rep(&gp, 0.0).unwrap());
        let top = SemiclassicalParams::quantum(h0).unwrap();
        let bottom = SemiclassicalParams::classical(h0).unwrap();
        let (q_qm, p_qm) = assemble_pair_qm(&fq1, &fp1, &r).unwrap();
        let (q_cm, p_cm) = assemble_pair_cm(&fq0, &fp0, &r).unwrap();
        prop_assert!(top.hbar_of_h() == hbar0);
        prop_assert!(assemble_qtilde(&top, &fq1, &fp1, &r).unwrap() == q_qm);
        prop_assert!(assemble_ptilde(&top, &fq1, &fp1, &r).unwrap() == p_qm);
        prop_assert!(assemble_qtilde(&bottom, &fq0, &fp0, &r).unwrap() == q_cm);
        prop_assert!(assemble_ptilde(&bottom, &fq0, &fp0, &r).unwrap() == p_cm);
        prop_assert_eq!(q_cm.commutator(&p_cm).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn fourier_transport_is_unitary(v in amplitudes(16)) {
        let gq = uniform_grid(16, 8.0).unwrap();
        let gp = momentum_grid_for(&gq, 1.0).unwrap();
        let norm = v.norm();
        prop_assume!(norm > 1e-6);
        let v = v / C64::new(norm, 0.0);
        let phi = fourier_state(&v, &gq, &gp, 1.0).unwrap();
        prop_assert!((phi.norm() - 1.0).abs() < 1e-12);
        let back = inverse_fourier_state(&phi, &gq, &gp, 1.0).unwrap();
        prop_assert!((&back - &v).camax() < 1e-12);
    }
}
