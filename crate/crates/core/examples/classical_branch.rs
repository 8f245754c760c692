//! The classical endpoint: point states, phase-space densities and the
//! trace-quotient mean value.

use semiclassical::linalg::C64;
use semiclassical::ncpoly::{classical_limit, parse_expression};
use semiclassical::oracles::classical_phase_average;
use semiclassical::repspace::{
    assemble_pair_cm, classical_state, coordinate_rep, delta_state, evaluate_observable, gaussian_samples,
    mean_value_real, momentum_rep, uniform_grid, HybridDims, HybridVector, RFactor,
};

fn main() -> semiclassical::Result<()> {
    let gq = uniform_grid(32, 12.0)?;
    let gp = uniform_grid(32, 12.0)?;
    let r = RFactor::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let (q, p) = assemble_pair_cm(&coordinate_rep(&gq, 0.0)?, &momentum_rep(&gp, 0.0)?, &r)?;
    let h = parse_expression("1/2*q^2 + 1/2*p^2 + 1/4*q^4")?;
    let h_cm = evaluate_observable(&h, (&q, &p), 0.0)?;

    let dims = HybridDims::new(32, 32);
    let point = HybridVector::point_state(dims, 20, 9, r.c_q(), r.c_p());
    let lambda = h_cm.diagonal_entry(20, 9, 0);
    let exact = h_cm.apply(&point)?.max_abs_diff(&point.scale(lambda)) == 0.0;
    println!("point state at (q, p) = ({}, {}): eigenvalue {lambda}, exact: {exact}", gq.points()[20], gp.points()[9]);

    let samples = gaussian_samples(&gq, &gp, 1.0, -0.5, 0.8, 1.2)?;
    let rho = classical_state(&samples, &gq, &gp, &r)?;
    let mean = mean_value_real(&rho, &h_cm)?;
    let quadrature = classical_phase_average(&samples, &classical_limit(&h), &gq, &gp)?;
    println!("trace = {:.6} (1/(dq dp) = {:.6})", rho.trace().re, 1.0 / (gq.spacing() * gp.spacing()));
    println!("mean value {mean:.15}, quadrature {quadrature:.15}");

    let delta = delta_state(&gq, &gp, 1.0, 1.0, &r)?;
    println!("delta state at (1, 1): {}", mean_value_real(&delta, &h_cm)?);
    Ok(())
}
