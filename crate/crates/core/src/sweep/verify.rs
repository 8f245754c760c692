//! The invariant suite behind the `verify` subcommand.

use std::f64::consts::PI;
use std::fmt;

use crate::linalg::{self, CMatrix, CVector, C64};
use crate::ncpoly::{
    classical_limit, commutator, from_weyl_basis, multiply, normal_order, to_weyl_basis, weyl_monomial,
    weyl_monomial_enumerated, ClassicalPolynomial, Coefficient, NCPolynomial, WeylPolynomial, ENUMERATION_CAP,
};
use crate::oracles::{brute_force_weyl, classical_phase_average, solve_quantum_1d, CommutativePolynomial};
use crate::repspace::{
    assemble_pair_cm, assemble_pair_qm, assemble_ptilde, assemble_qtilde, classical_state, commutator_residual,
    coordinate_rep, coordinate_rep_with, delta_state, embed_quantum_state, evaluate_observable, evaluate_operator_poly,
    fourier_state, gaussian_amplitudes, gaussian_samples, gaussian_test_states, inverse_fourier_state, mean_value,
    mean_value_real, momentum_grid_for, momentum_rep, momentum_rep_with, spectral_derivative_with, uniform_grid,
    Grid, HybridDensity, HybridDims, HybridOperator, HybridVector, NyquistConvention, RFactor,
    SemiclassicalParams,
};
use crate::Result;

use super::config::{StateSpec, SweepConfig};
use super::emit::to_csv;
use super::random::{random_nc_polynomial, random_real_weyl_terms, random_weyl_polynomial, random_word, seeded};
use super::run::{ground_state, run_sweep_with_threads, Experiment};

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Build the CCR checks with the unfolded frequency set, which is not
    /// anti-Hermitian; those checks are expected to fail.
    pub break_nyquist: bool,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub measured: f64,
    pub bound: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.bound
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    fn push(&mut self, module: &'static str, name: impl Into<String>, measured: f64, bound: f64) {
        self.checks.push(Check {
            module,
            name: name.into(),
            measured,
            bound,
        });
    }

    /// Records an exact property: `0` on success, `1` otherwise.
    fn push_exact(&mut self, module: &'static str, name: impl Into<String>, holds: bool) {
        self.push(module, name, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    /// Records a count of counterexamples.
    fn push_count(&mut self, module: &'static str, name: impl Into<String>, failures: usize) {
        self.push(module, name, failures as f64, 0.0);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}  {:<9} {:<52} measured={:.3e} bound={:.1e}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.module,
                c.name,
                c.measured,
                c.bound
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// `0` when bitwise equal, otherwise the largest entry difference (at least
/// the smallest positive normal so the check fails).
fn bitwise_gap(a: &HybridOperator, b: &HybridOperator) -> f64 {
    if a == b {
        0.0
    } else {
        a.max_abs_diff(b).unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
    }
}

fn relative(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(1.0)
}

fn oscillator() -> NCPolynomial {
    from_weyl_basis(&WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5)]).expect("finite coefficients"))
}

fn reference_grids(n: usize, l: f64, hbar0: f64) -> Result<(Grid, Grid)> {
    let gq = uniform_grid(n, l)?;
    let gp = momentum_grid_for(&gq, hbar0)?;
    Ok((gq, gp))
}

fn check_ncpoly(report: &mut VerifyReport) {
    const M: &str = "ncpoly";
    let (q, p, hbar) = (NCPolynomial::q(), NCPolynomial::p(), NCPolynomial::hbar());
    let i_hbar = hbar.scale(&Coefficient::i());
    report.push_exact(
        M,
        "CCR [q,p] = i hbar, [q,q] = [p,p] = 0",
        commutator(&q, &p) == i_hbar && commutator(&q, &q).is_zero() && commutator(&p, &p).is_zero(),
    );

    let mut rng = seeded(0x5eed_0001);
    let failures = (0..200)
        .filter(|_| {
            let (a, b) = (random_word(&mut rng, 5), random_word(&mut rng, 5));
            multiply(&normal_order(&a), &normal_order(&b)) != normal_order(&a.concat(&b))
        })
        .count();
    report.push_count(M, "normal-order homomorphism (200 word pairs)", failures);

    let mut failures = 0;
    for total in 0..=8 {
        for n in 0..=total {
            let recursive = weyl_monomial(n, total - n);
            let enumerated = weyl_monomial_enumerated(n, total - n, ENUMERATION_CAP);
            let brute = brute_force_weyl(n, total - n);
            if enumerated.ok().as_ref() != Some(&recursive) || brute.ok().as_ref() != Some(&recursive) {
                failures += 1;
            }
        }
    }
    report.push_count(M, "Weyl monomial enumeration = recursion (n+m <= 8)", failures);

    let failures = (0..=6u32)
        .flat_map(|t| (0..=t).map(move |n| (n, t - n)))
        .filter(|&(n, m)| {
            let w = weyl_monomial(n, m);
            w.adjoint() != w
        })
        .count();
    report.push_count(M, "Weyl monomials self-adjoint (n+m <= 6)", failures);

    let mut rng = seeded(0x5eed_0002);
    let failures = (0..50)
        .filter(|_| {
            let f = random_nc_polynomial(&mut rng, 8, 6, 2);
            from_weyl_basis(&to_weyl_basis(&f)) != f
        })
        .count();
    report.push_count(M, "Weyl basis round trip (50 polys, degree <= 8)", failures);

    let mut rng = seeded(0x5eed_0003);
    let unit = WeylPolynomial::unit();
    let failures = (0..50)
        .filter(|_| {
            let a = random_weyl_polynomial(&mut rng, 6, 4, 1);
            let b = random_weyl_polynomial(&mut rng, 6, 4, 1);
            let c = random_weyl_polynomial(&mut rng, 6, 4, 1);
            a.symmetrized_product(&b) != b.symmetrized_product(&a)
                || a.symmetrized_product(&b).symmetrized_product(&c) != a.symmetrized_product(&b.symmetrized_product(&c))
                || a.symmetrized_product(&unit) != a
                || unit.symmetrized_product(&a) != a
        })
        .count();
    report.push_count(M, "product: commutative, associative, unit (50 triples)", failures);

    let mut rng = seeded(0x5eed_0004);
    let failures = (0..50)
        .filter(|_| {
            let f = random_weyl_polynomial(&mut rng, 4, 3, 1);
            let g = random_weyl_polynomial(&mut rng, 4, 3, 1);
            let h = random_weyl_polynomial(&mut rng, 4, 3, 1);
            let br = |x: &WeylPolynomial, y: &WeylPolynomial| x.symmetrized_poisson(y);
            let antisym = br(&f, &g) == -&br(&g, &f);
            let jacobi = (&(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g))).is_zero();
            let leibniz = br(&f, &g.symmetrized_product(&h))
                == &br(&f, &g).symmetrized_product(&h) + &g.symmetrized_product(&br(&f, &h));
            !(antisym && jacobi && leibniz)
        })
        .count();
    report.push_count(M, "bracket: antisymmetry, Jacobi, Leibniz (50 triples)", failures);
    report.push_exact(
        M,
        "{q,p}_S = 1",
        WeylPolynomial::monomial(1, 0).symmetrized_poisson(&WeylPolynomial::monomial(0, 1)) == unit,
    );

    let mut rng = seeded(0x5eed_0005);
    let failures = (0..50)
        .filter(|_| {
            let f = random_nc_polynomial(&mut rng, 2, 4, 1);
            let g = random_nc_polynomial(&mut rng, 2, 4, 1);
            let bracket = from_weyl_basis(&to_weyl_basis(&f).symmetrized_poisson(&to_weyl_basis(&g)));
            commutator(&f, &g).div_ihbar() != Some(bracket)
        })
        .count();
    report.push_count(M, "degree <= 2: bracket = commutator / i hbar (50 pairs)", failures);

    report.push_count(M, "classical limit is a homomorphism (n+m <= 4 pairs)", classical_limit_failures());
}

/// Monomial pairs `W(a,b)`, `W(c,d)` with `a+b, c+d ≤ 4` whose classical
/// images disagree with the commutative oracle.
pub fn classical_limit_failures() -> usize {
    let monomials: Vec<(u32, u32)> = (0..=4u32).flat_map(|t| (0..=t).map(move |n| (n, t - n))).collect();
    let classical = |w: &WeylPolynomial| CommutativePolynomial::from_classical(&classical_limit(&from_weyl_basis(w)));
    let mut failures = 0;
    for &(a, b) in &monomials {
        for &(c, d) in &monomials {
            let (x, y) = (WeylPolynomial::monomial(a, b), WeylPolynomial::monomial(c, d));
            let (cx, cy) = (CommutativePolynomial::monomial(a, b), CommutativePolynomial::monomial(c, d));
            let product_ok = classical(&x.symmetrized_product(&y)) == cx.mul(&cy);
            let bracket_ok = classical(&x.symmetrized_poisson(&y)) == cx.poisson(&cy);
            let operator_ok = CommutativePolynomial::from_classical(&classical_limit(
                &(&from_weyl_basis(&x) * &from_weyl_basis(&y)),
            )) == cx.mul(&cy);
            if !(product_ok && bracket_ok && operator_ok) {
                failures += 1;
            }
        }
    }
    failures
}

fn qm_pair_with(
    gq: &Grid,
    gp: &Grid,
    hbar: f64,
    convention: NyquistConvention,
) -> Result<(HybridOperator, HybridOperator)> {
    let fq = coordinate_rep_with(gq, hbar, convention)?;
    let fp = momentum_rep_with(gp, hbar, convention)?;
    assemble_pair_qm(&fq, &fp, &RFactor::balanced())
}

fn check_repspace(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    const M: &str = "repspace";
    let convention = if opts.break_nyquist {
        NyquistConvention::Unfolded
    } else {
        NyquistConvention::Zeroed
    };
    let r = RFactor::balanced();

    let worst = RFactor::projector_identity_errors()
        .iter()
        .map(|(_, e)| *e)
        .fold(0.0, f64::max);
    report.push(M, "projector identities (six, exact)", worst, 0.0);

    // spectral derivative and factor representations, N = 64, L = 20
    let (gq, gp) = reference_grids(64, 20.0, 1.0)?;
    let d = spectral_derivative_with(64, 20.0, convention)?;
    let k = 2.0 * PI * 5.0 / 20.0;
    let wave = CVector::from_iterator(64, gq.points().iter().map(|&x| C64::from_polar(1.0, k * x)));
    let plane_err = (&d * &wave - &wave * C64::new(0.0, k)).camax();
    report.push(M, "spectral derivative on a plane wave", plane_err, 1e-12);
    let gauss = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
    let qd = linalg::real_diagonal(gq.points());
    let ccr_1d = ((&qd * &d - &d * &qd) * &gauss + &gauss).camax();
    report.push(M, "[diag q, D] gaussian = -gaussian", ccr_1d, 1e-8);

    let fq = coordinate_rep(&gq, 1.0)?;
    let fp = momentum_rep(&gp, 1.0)?;
    let herm = [&fq.q, &fq.p, &fp.q, &fp.p]
        .iter()
        .map(|m| linalg::hermiticity_defect(m) / linalg::max_abs(m).max(1.0))
        .fold(0.0, f64::max);
    report.push(M, "factor representations Hermitian", herm, 1e-12);
    let zero_rep = coordinate_rep(&gq, 0.0)?;
    report.push(M, "coordinate rep at hbar = 0 has P = 0", linalg::max_abs(&zero_rep.p), 0.0);

    // quantum branch at N = 64
    let (q_ccr, p_ccr) = qm_pair_with(&gq, &gp, 1.0, convention)?;
    let tests = gaussian_test_states(&gq, &gp)?;
    report.push(M, "qm CCR residual on Gaussian states (N = 64)", commutator_residual(&q_ccr, &p_ccr, 1.0, &tests)?, 1e-6);
    let h0 = 2.0 * PI;
    let half = SemiclassicalParams::new(h0 / 2.0, h0)?;
    let hbar_half = half.hbar_of_h();
    let fqh = coordinate_rep_with(&gq, hbar_half, convention)?;
    let fph = momentum_rep_with(&gp, hbar_half, convention)?;
    let qh = assemble_qtilde(&half, &fqh, &fph, &r)?;
    let ph = assemble_ptilde(&half, &fqh, &fph, &r)?;
    report.push(
        M,
        "CCR residual of the h0/2 pair at hbar(h)",
        commutator_residual(&qh, &ph, hbar_half, &tests)?,
        1e-6,
    );
    let (q_qm, p_qm) = assemble_pair_qm(&fq, &fp, &r)?;
    let witness = HybridOperator::kron(&fq.q, &CMatrix::identity(gp.n_points(), gp.n_points()), &RFactor::r_p())?;
    let commutant = witness.commutator(&q_qm)?.max_abs().max(witness.commutator(&p_qm)?.max_abs());
    report.push(M, "commutant witness Q x I x R_p commutes", commutant, 0.0);

    // embedded oscillator ground state
    let h = oscillator();
    let (_, psi) = ground_state(&h, &fq)?;
    let a = gaussian_amplitudes(&gp, 0.0, 1.0, 0.0);
    let b = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
    let embedded = embed_quantum_state(&psi, &a, &b, &r, &gq, &gp, 1.0)?;
    report.push(M, "embedded state has unit norm", (embedded.norm() - 1.0).abs(), 1e-9);
    let h_qm = evaluate_observable(&h, (&q_qm, &p_qm), 1.0)?;
    let oracle = solve_quantum_1d(&h, &fq, 1)?.values[0];
    let mean = mean_value_real(&HybridDensity::pure(embedded), &h_qm)?;
    report.push(M, "embedded ground state energy vs oracle", (mean - oracle).abs(), 1e-7);
    report.push(M, "embedded ground state energy vs 0.5", (mean - 0.5).abs(), 1e-7);

    // Fourier transport
    let kicked = gaussian_amplitudes(&gq, 0.3, 1.0, 0.5);
    let phi = fourier_state(&kicked, &gq, &gp, 1.0)?;
    report.push(M, "Fourier transport preserves the norm", (phi.norm() - 1.0).abs(), 1e-10);
    let back = inverse_fourier_state(&phi, &gq, &gp, 1.0)?;
    report.push(M, "Fourier round trip", (&back - &kicked).camax(), 1e-9);

    // endpoints and classical branch at N = 32
    let (gq, gp) = reference_grids(32, 20.0, 1.0)?;
    let fq1 = coordinate_rep(&gq, 1.0)?;
    let fp1 = momentum_rep(&gp, 1.0)?;
    let fq0 = coordinate_rep(&gq, 0.0)?;
    let fp0 = momentum_rep(&gp, 0.0)?;
    let (q_qm, p_qm) = assemble_pair_qm(&fq1, &fp1, &r)?;
    let (q_cm, p_cm) = assemble_pair_cm(&fq0, &fp0, &r)?;
    let top = SemiclassicalParams::quantum(h0)?;
    let bottom = SemiclassicalParams::classical(h0)?;
    let at_top = bitwise_gap(&assemble_qtilde(&top, &fq1, &fp1, &r)?, &q_qm)
        .max(bitwise_gap(&assemble_ptilde(&top, &fq1, &fp1, &r)?, &p_qm));
    report.push(M, "q~, p~ at h = h0 equal the qm pair bitwise", at_top, 0.0);
    let at_bottom = bitwise_gap(&assemble_qtilde(&bottom, &fq0, &fp0, &r)?, &q_cm)
        .max(bitwise_gap(&assemble_ptilde(&bottom, &fq0, &fp0, &r)?, &p_cm));
    report.push(M, "q~, p~ at h = 0 equal the cm pair bitwise", at_bottom, 0.0);
    report.push(M, "cm pair commutes exactly", q_cm.commutator(&p_cm)?.max_abs(), 0.0);

    let mut rng = seeded(0x5eed_0006);
    let mut doubling: f64 = 0.0;
    for _ in 0..3 {
        let hr = from_weyl_basis(&WeylPolynomial::from_real_terms(&random_real_weyl_terms(&mut rng, 6, 5))?);
        let lhs = evaluate_operator_poly(&hr, (&q_qm, &p_qm), 1.0)?;
        let hq: CMatrix = evaluate_operator_poly(&hr, (&fq1.q, &fq1.p), 1.0)?;
        let hp: CMatrix = evaluate_operator_poly(&hr, (&fp1.q, &fp1.p), 1.0)?;
        let iq = CMatrix::identity(gq.n_points(), gq.n_points());
        let ip = CMatrix::identity(gp.n_points(), gp.n_points());
        let rhs = HybridOperator::kron(&hq, &ip, &RFactor::r_q())?.add(&HybridOperator::kron(&iq, &hp, &RFactor::r_p())?)?;
        doubling = doubling.max(bitwise_gap(&lhs, &rhs));
    }
    report.push(M, "doubled-observable identity (degree <= 6)", doubling, 0.0);

    let hr = from_weyl_basis(&WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5), (2, 2, 0.25), (3, 1, -0.125)])?);
    let classical = classical_limit(&hr);
    let h_cm = evaluate_operator_poly(&hr, (&q_cm, &p_cm), 0.0)?;
    let dims = HybridDims::new(gq.n_points(), gp.n_points());
    let mut diag_err: f64 = 0.0;
    let mut off_diagonal = false;
    let mut expected_spectrum = Vec::new();
    for (i, &qi) in gq.points().iter().enumerate() {
        for (j, &pj) in gp.points().iter().enumerate() {
            let value = classical.eval(qi, pj)?;
            expected_spectrum.extend([value, value]);
            for rr in 0..2 {
                diag_err = diag_err.max(relative(h_cm.diagonal_entry(i, j, rr).re, value));
            }
        }
    }
    for j in 0..gp.n_points() {
        off_diagonal |= !h_cm.q_sector_block(j).is_some_and(linalg::is_diagonal);
    }
    for i in 0..gq.n_points() {
        off_diagonal |= !h_cm.p_sector_block(i).is_some_and(linalg::is_diagonal);
    }
    report.push(M, "cm evaluation is diagonal with entries H(q_i, p_j)", if off_diagonal { 1.0 } else { diag_err }, 1e-12);
    expected_spectrum.sort_by(f64::total_cmp);
    let spectrum = h_cm.spectrum()?;
    let spec_err = spectrum
        .iter()
        .zip(&expected_spectrum)
        .map(|(a, b)| relative(*a, *b))
        .fold(0.0, f64::max);
    report.push(M, "cm spectrum = {H(q_i, p_j)}", spec_err, 1e-12);

    let mut point_err: f64 = 0.0;
    for (c_q, c_p) in [(1.0, 0.0), (0.6, 0.8), (std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2)] {
        let (c_q, c_p) = (C64::new(c_q, 0.0), C64::new(0.0, c_p));
        for &(i, j) in &[(0, 0), (5, 17), (31, 3), (16, 16)] {
            let v = HybridVector::point_state(dims, i, j, c_q, c_p);
            let lambda = h_cm.diagonal_entry(i, j, 0);
            point_err = point_err.max(h_cm.apply(&v)?.max_abs_diff(&v.scale(lambda)));
        }
    }
    report.push(M, "point states are exact eigenvectors", point_err, 0.0);

    let r_mixed = RFactor::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let samples = gaussian_samples(&gq, &gp, 0.7, -0.4, 1.1, 1.6)?;
    let rho = classical_state(&samples, &gq, &gp, &r_mixed)?;
    let valid = rho.validate(1e-12).is_ok();
    report.push_exact(M, "classical state Hermitian, PSD, positive trace", valid);
    let cell = gq.spacing() * gp.spacing();
    report.push(M, "classical trace = 1/(dq dp)", relative(rho.trace().re, 1.0 / cell) + rho.trace().im.abs(), 1e-12);
    let mean = mean_value_real(&rho, &h_cm)?;
    let quad = classical_phase_average(&samples, &classical, &gq, &gp)?;
    report.push(M, "classical mean value = quadrature oracle", relative(mean, quad), 1e-12);
    let scaled = HybridDensity::phase_diagonal(dims, samples.iter().map(|_| 0.0).collect(), r_mixed.dyad())?;
    report.push_exact(M, "zero-trace state rejected", mean_value(&scaled, &h_cm).is_err());
    let unit = mean_value_real(&rho, &HybridOperator::identity(dims))?;
    report.push(M, "trace quotient of the identity is 1", (unit - 1.0).abs(), 1e-15);

    let delta = delta_state(&gq, &gp, 1.3, -0.4, &r_mixed)?;
    let (i, j) = (gq.nearest_index(1.3), gp.nearest_index(-0.4));
    let node = classical.eval(gq.points()[i], gp.points()[j])?;
    report.push(M, "delta state mean = H(nearest node)", relative(mean_value_real(&delta, &h_cm)?, node), 1e-14);
    Ok(())
}

fn check_oracles(report: &mut VerifyReport) -> Result<()> {
    const M: &str = "oracles";
    let h = oscillator();
    let rep64 = coordinate_rep(&uniform_grid(64, 20.0)?, 1.0)?;
    let rep128 = coordinate_rep(&uniform_grid(128, 20.0)?, 1.0)?;
    let coarse = solve_quantum_1d(&h, &rep64, 4)?;
    let levels = coarse
        .values
        .iter()
        .enumerate()
        .map(|(n, e)| (e - (n as f64 + 0.5)).abs())
        .fold(0.0, f64::max);
    report.push(M, "oscillator levels 0.5, 1.5, 2.5, 3.5", levels, 1e-7);
    let residual = coarse.residuals.iter().fold(0.0f64, |a, &b| a.max(b)) / coarse.norm;
    report.push(M, "eigen residuals relative to |H|", residual, 1e-8);
    report.push(M, "eigenvectors orthonormal", coarse.orthonormality_defect(), 1e-10);
    let fine = solve_quantum_1d(&h, &rep128, 4)?;
    let refinement = coarse.values.iter().zip(&fine.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    report.push(M, "grid refinement N = 64 -> 128 (oscillator)", refinement, 1e-7);

    let free = from_weyl_basis(&WeylPolynomial::from_real_terms(&[(0, 2, 0.5)])?);
    report.push(M, "free particle zero mode", solve_quantum_1d(&free, &rep64, 1)?.values[0].abs(), 1e-10);

    let quartic = from_weyl_basis(&WeylPolynomial::from_real_terms(&[(2, 0, 0.5), (0, 2, 0.5), (4, 0, 1.0)])?);
    let qc = solve_quantum_1d(&quartic, &rep64, 4)?;
    let qf = solve_quantum_1d(&quartic, &rep128, 4)?;
    let quartic_gap = qc.values.iter().zip(&qf.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    report.push(M, "quartic levels N = 64 vs 128", quartic_gap, 1e-5);

    let g = uniform_grid(64, 2.0)?;
    let uniform = nalgebra::DMatrix::from_element(64, 64, 0.25);
    let q2 = ClassicalPolynomial::term(2, 0, Coefficient::one());
    let one = ClassicalPolynomial::term(0, 0, Coefficient::one());
    report.push(M, "uniform [-1,1]^2 average of q^2 = 1/3", (classical_phase_average(&uniform, &q2, &g, &g)? - 1.0 / 3.0).abs(), 1e-3);
    report.push(M, "phase average of 1 = 1", (classical_phase_average(&uniform, &one, &g, &g)? - 1.0).abs(), 0.0);
    Ok(())
}

fn check_sweep(report: &mut VerifyReport, cfg: &SweepConfig) -> Result<()> {
    const M: &str = "sweep";
    let records = run_sweep_with_threads(cfg, 1)?;
    let first = &records[0];
    report.push(M, "h = 0 record: distances and CCR residual", first.dist_q.max(first.dist_p).max(first.ccr_residual), 0.0);
    let (endpoint, bound) = match cfg.state {
        StateSpec::EmbeddedGroundState => (records.last().expect("steps >= 2"), 1e-7),
        _ => (first, 1e-12 * first.oracle.abs().max(1.0)),
    };
    report.push(M, "endpoint mean value vs oracle", endpoint.abs_err, bound);
    let monotone = records
        .windows(2)
        .all(|w| w[0].h < w[1].h && w[0].dist_q <= w[1].dist_q && w[0].dist_p <= w[1].dist_p);
    report.push_exact(M, "h ascending, endpoint distances non-decreasing", monotone);
    report.push_exact(M, "records finite", records.iter().all(|r| r.is_finite()));
    let again = run_sweep_with_threads(cfg, 2)?;
    report.push_exact(M, "byte-identical rerun (2 threads)", to_csv(&records) == to_csv(&again));
    let exp = Experiment::new(cfg)?;
    report.push_exact(M, "experiment h grid ends at h0", exp.h_value(cfg.steps - 1) == cfg.h0);
    Ok(())
}

/// Runs every invariant suite. The report lists measured values and bounds;
/// it is an error only if a computation cannot be carried out at all.
pub fn run_verify(cfg: &SweepConfig, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    check_ncpoly(&mut report);
    check_repspace(&mut report, opts)?;
    check_oracles(&mut report)?;
    check_sweep(&mut report, cfg)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_passes() {
        let report = run_verify(&SweepConfig::default(), &VerifyOptions::default()).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn broken_nyquist_fails_the_ccr_checks() {
        let opts = VerifyOptions { break_nyquist: true };
        let report = run_verify(&SweepConfig::default(), &opts).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|n| n.contains("CCR")), "{report}");
    }
}
