//! Acceptance suite: one PASS/FAIL line per criterion, with tolerances and
//! wall-clock bounds. Runs without the libtest harness so the report is
//! always printed; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use semiclassical::linalg::{CMatrix, C64};
use semiclassical::ncpoly::{
    classical_limit, commutator, from_weyl_basis, multiply, normal_order, to_weyl_basis, weyl_monomial,
    weyl_monomial_enumerated, Coefficient, NCPolynomial, WeylPolynomial, ENUMERATION_CAP,
};
use semiclassical::oracles::{classical_phase_average, solve_quantum_1d};
use semiclassical::repspace::{
    assemble_pair_cm, assemble_pair_qm, assemble_ptilde, assemble_qtilde, classical_state, commutator_residual,
    coordinate_rep, embed_quantum_state, evaluate_observable, evaluate_operator_poly, gaussian_amplitudes,
    gaussian_samples, gaussian_test_states, mean_value_real, momentum_grid_for, momentum_rep, uniform_grid,
    HybridDensity, HybridDims, HybridOperator, HybridVector, RFactor, SemiclassicalParams,
};
use semiclassical::sweep::random::{random_nc_polynomial, random_real_weyl_terms, random_weyl_polynomial, random_word, seeded};
use semiclassical::sweep::{classical_limit_failures, ground_state, run_sweep_with_threads, to_csv, SweepConfig};
use semiclassical::Result;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, detail: detail.into() })
}

fn relative(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1.0)
}

fn oscillator() -> Result<NCPolynomial> {
    Ok(from_weyl_basis(&WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5)])?))
}

fn projector_algebra() -> Result<Outcome> {
    let errors = RFactor::projector_identity_errors();
    let worst = errors.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    outcome(worst == 0.0, format!("{} identities, max error {worst:e}", errors.len()))
}

fn symbolic_ccr() -> Result<Outcome> {
    let (q, p) = (NCPolynomial::q(), NCPolynomial::p());
    let ccr = commutator(&q, &p) == NCPolynomial::hbar().scale(&Coefficient::i());
    let mut rng = seeded(0xacc0_0002);
    let failures = (0..1000)
        .filter(|_| {
            let (a, b) = (random_word(&mut rng, 10), random_word(&mut rng, 10));
            multiply(&normal_order(&a), &normal_order(&b)) != normal_order(&a.concat(&b))
        })
        .count();
    outcome(ccr && failures == 0, format!("[q,p] = i hbar: {ccr}; homomorphism failures 0/1000: {failures}"))
}

fn weyl_product_law() -> Result<Outcome> {
    let mut mismatches = 0;
    for total in 0..=8 {
        for n in 0..=total {
            let enumerated = weyl_monomial_enumerated(n, total - n, ENUMERATION_CAP)?;
            if enumerated != weyl_monomial(n, total - n) {
                mismatches += 1;
            }
        }
    }
    let mut rng = seeded(0xacc0_0003);
    let failures = (0..200)
        .filter(|_| {
            let a = random_weyl_polynomial(&mut rng, 6, 5, 2);
            let b = random_weyl_polynomial(&mut rng, 6, 5, 2);
            let c = random_weyl_polynomial(&mut rng, 6, 5, 2);
            a.symmetrized_product(&b) != b.symmetrized_product(&a)
                || a.symmetrized_product(&b).symmetrized_product(&c) != a.symmetrized_product(&b.symmetrized_product(&c))
        })
        .count();
    outcome(
        mismatches == 0 && failures == 0,
        format!("enumeration mismatches (n+m <= 8): {mismatches}; commutative/associative failures of 200: {failures}"),
    )
}

fn symmetrized_bracket() -> Result<Outcome> {
    let mut rng = seeded(0xacc0_0004);
    let br = |x: &WeylPolynomial, y: &WeylPolynomial| x.symmetrized_poisson(y);
    let failures = (0..100)
        .filter(|_| {
            let f = random_weyl_polynomial(&mut rng, 4, 4, 1);
            let g = random_weyl_polynomial(&mut rng, 4, 4, 1);
            let h = random_weyl_polynomial(&mut rng, 4, 4, 1);
            let antisym = br(&f, &g) == -&br(&g, &f);
            let jacobi = (&(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g))).is_zero();
            let leibniz = br(&f, &g.symmetrized_product(&h))
                == &br(&f, &g).symmetrized_product(&h) + &g.symmetrized_product(&br(&f, &h));
            !(antisym && jacobi && leibniz)
        })
        .count();
    let unit = br(&WeylPolynomial::monomial(1, 0), &WeylPolynomial::monomial(0, 1)) == WeylPolynomial::unit();
    let disagreements = (0..100)
        .filter(|_| {
            let f = random_nc_polynomial(&mut rng, 2, 5, 1);
            let g = random_nc_polynomial(&mut rng, 2, 5, 1);
            let bracket = from_weyl_basis(&br(&to_weyl_basis(&f), &to_weyl_basis(&g)));
            commutator(&f, &g).div_ihbar() != Some(bracket)
        })
        .count();
    outcome(
        failures == 0 && unit && disagreements == 0,
        format!("Lie/Leibniz failures of 100: {failures}; {{q,p}}_S = 1: {unit}; degree <= 2 disagreements of 100: {disagreements}"),
    )
}

fn endpoint_equivalences() -> Result<Outcome> {
    let h0 = 2.0 * PI;
    let gq = uniform_grid(32, 20.0)?;
    let gp = momentum_grid_for(&gq, 1.0)?;
    let r = RFactor::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let (fq1, fp1) = (coordinate_rep(&gq, 1.0)?, momentum_rep(&gp, 1.0)?);
    let (fq0, fp0) = (coordinate_rep(&gq, 0.0)?, momentum_rep(&gp, 0.0)?);
    let (q_qm, p_qm) = assemble_pair_qm(&fq1, &fp1, &r)?;
    let (q_cm, p_cm) = assemble_pair_cm(&fq0, &fp0, &r)?;
    let top = SemiclassicalParams::quantum(h0)?;
    let bottom = SemiclassicalParams::classical(h0)?;
    let at_top = assemble_qtilde(&top, &fq1, &fp1, &r)? == q_qm && assemble_ptilde(&top, &fq1, &fp1, &r)? == p_qm;
    let at_bottom =
        assemble_qtilde(&bottom, &fq0, &fp0, &r)? == q_cm && assemble_ptilde(&bottom, &fq0, &fp0, &r)? == p_cm;
    let commutes = q_cm.commutator(&p_cm)?.max_abs();
    outcome(
        at_top && at_bottom && commutes == 0.0,
        format!("h = h0 bitwise: {at_top}; h = 0 bitwise: {at_bottom}; |[q_cm, p_cm]| = {commutes:e}"),
    )
}

fn quantum_branch() -> Result<Outcome> {
    let gq = uniform_grid(64, 20.0)?;
    let gp = momentum_grid_for(&gq, 1.0)?;
    let (fq, fp) = (coordinate_rep(&gq, 1.0)?, momentum_rep(&gp, 1.0)?);
    let r = RFactor::balanced();
    let (q, p) = assemble_pair_qm(&fq, &fp, &r)?;
    let residual = commutator_residual(&q, &p, 1.0, &gaussian_test_states(&gq, &gp)?)?;

    let (iq, ip) = (CMatrix::identity(64, 64), CMatrix::identity(64, 64));
    let mut rng = seeded(0xacc0_0006);
    let mut doubling_failures = 0;
    for _ in 0..5 {
        let f = from_weyl_basis(&WeylPolynomial::from_real_terms(&random_real_weyl_terms(&mut rng, 6, 6))?);
        let lhs = evaluate_operator_poly(&f, (&q, &p), 1.0)?;
        let hq: CMatrix = evaluate_operator_poly(&f, (&fq.q, &fq.p), 1.0)?;
        let hp: CMatrix = evaluate_operator_poly(&f, (&fp.q, &fp.p), 1.0)?;
        let rhs = HybridOperator::kron(&hq, &ip, &RFactor::r_q())?.add(&HybridOperator::kron(&iq, &hp, &RFactor::r_p())?)?;
        if lhs != rhs {
            doubling_failures += 1;
        }
    }

    let witness = HybridOperator::kron(&fq.q, &ip, &RFactor::r_p())?;
    let witness_defect = witness.commutator(&q)?.max_abs().max(witness.commutator(&p)?.max_abs());

    let h = oscillator()?;
    let (_, psi) = ground_state(&h, &fq)?;
    let a = gaussian_amplitudes(&gp, 0.0, 1.0, 0.0);
    let b = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
    let state = embed_quantum_state(&psi, &a, &b, &r, &gq, &gp, 1.0)?;
    let energy = mean_value_real(&HybridDensity::pure(state), &evaluate_observable(&h, (&q, &p), 1.0)?)?;
    let oracle = solve_quantum_1d(&h, &fq, 1)?.values[0];
    let energy_err = (energy - 0.5).abs().max((energy - oracle).abs());

    outcome(
        residual <= 1e-6 && doubling_failures == 0 && witness_defect == 0.0 && energy_err <= 1e-7,
        format!(
            "CCR residual {residual:.2e} (<= 1e-6); doubling failures of 5: {doubling_failures}; \
             witness {witness_defect:e}; |E - 0.5| and |E - oracle| <= {energy_err:.2e} (<= 1e-7)"
        ),
    )
}

fn classical_branch() -> Result<Outcome> {
    let gq = uniform_grid(32, 12.0)?;
    let gp = uniform_grid(32, 14.0)?;
    let r = RFactor::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let (q, p) = assemble_pair_cm(&coordinate_rep(&gq, 0.0)?, &momentum_rep(&gp, 0.0)?, &r)?;
    let h = from_weyl_basis(&WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5), (4, 0, 0.25), (2, 2, -0.125)])?);
    let classical = classical_limit(&h);
    let h_cm = evaluate_observable(&h, (&q, &p), 0.0)?;
    let dims = HybridDims::new(32, 32);

    let mut point_failures = 0;
    for (i, &qi) in gq.points().iter().enumerate() {
        for (j, &pj) in gp.points().iter().enumerate() {
            let v = HybridVector::point_state(dims, i, j, r.c_q(), r.c_p());
            let lambda = h_cm.diagonal_entry(i, j, 0);
            let exact = h_cm.apply(&v)?.max_abs_diff(&v.scale(lambda)) == 0.0;
            if !exact || relative(lambda.re, classical.eval(qi, pj)?) > 1e-12 || lambda.im != 0.0 {
                point_failures += 1;
            }
        }
    }

    let mut mean_err: f64 = 0.0;
    let mut trace_err: f64 = 0.0;
    let mut quotient_err: f64 = 0.0;
    let cell = gq.spacing() * gp.spacing();
    for &(mq, mp, sq, sp) in &[(0.0, 0.0, 1.0, 1.0), (0.7, -0.4, 0.8, 1.3), (-1.0, 1.5, 0.5, 0.6)] {
        let samples = gaussian_samples(&gq, &gp, mq, mp, sq, sp)?;
        let rho = classical_state(&samples, &gq, &gp, &r)?;
        let mean = mean_value_real(&rho, &h_cm)?;
        mean_err = mean_err.max(relative(mean, classical_phase_average(&samples, &classical, &gq, &gp)?));
        trace_err = trace_err.max(relative(rho.trace().re, 1.0 / cell) + rho.trace().im.abs());
        // the quotient is invariant under rescaling the state
        let scaled = HybridDensity::phase_diagonal(dims, samples.transpose().iter().map(|w| 7.0 * w).collect(), r.dyad())?;
        quotient_err = quotient_err
            .max(relative(mean_value_real(&scaled, &h_cm)?, mean))
            .max((mean_value_real(&rho, &HybridOperator::identity(dims))? - 1.0).abs());
    }
    outcome(
        point_failures == 0 && mean_err <= 1e-12 && trace_err <= 1e-12 && quotient_err <= 1e-12,
        format!(
            "point-state failures of 1024: {point_failures}; mean vs quadrature {mean_err:.2e}; \
             trace vs 1/(dq dp) {trace_err:.2e}; quotient {quotient_err:.2e} (all <= 1e-12)"
        ),
    )
}

fn classical_limit_homomorphism() -> Result<Outcome> {
    let failures = classical_limit_failures();
    outcome(failures == 0, format!("monomial pairs (n+m <= 4) disagreeing with the commutative oracle: {failures}"))
}

fn sweep_reproducibility() -> Result<Outcome> {
    let cfg = SweepConfig::default();
    let first = to_csv(&run_sweep_with_threads(&cfg, 1)?);
    let again = to_csv(&run_sweep_with_threads(&cfg, 1)?);
    let parallel = to_csv(&run_sweep_with_threads(&cfg, 4)?);
    let rows = first.lines().count() - 1;
    outcome(
        rows == 11 && first == again && first == parallel,
        format!("{rows} rows at N = {}; rerun identical: {}; 4 threads identical: {}", cfg.n_q, first == again, first == parallel),
    )
}

type Criterion = (u32, &'static str, fn() -> Result<Outcome>, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "projector algebra", projector_algebra, Duration::from_millis(100)),
        (2, "symbolic CCR and normal ordering", symbolic_ccr, Duration::from_secs(5)),
        (3, "Weyl product law", weyl_product_law, Duration::from_secs(10)),
        (4, "symmetrized Poisson bracket", symmetrized_bracket, Duration::from_secs(10)),
        (5, "endpoint equivalences", endpoint_equivalences, Duration::from_secs(5)),
        (6, "quantum branch", quantum_branch, Duration::from_secs(30)),
        (7, "classical branch", classical_branch, Duration::from_secs(10)),
        (8, "classical-limit homomorphism", classical_limit_homomorphism, Duration::from_secs(5)),
        (9, "sweep reproducibility", sweep_reproducibility, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(o) => (o.ok && elapsed < budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {id}: {name} [{:.3} s / {:.1} s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs_f64()
        );
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
