//! The quantum endpoint: CCR on smooth states, the doubled observable and
//! the embedded oscillator ground state.

use semiclassical::ncpoly::parse_expression;
use semiclassical::oracles::solve_quantum_1d;
use semiclassical::repspace::{
    assemble_pair_qm, commutator_residual, coordinate_rep, embed_quantum_state, evaluate_observable,
    gaussian_amplitudes, gaussian_test_states, mean_value_real, momentum_grid_for, momentum_rep, uniform_grid,
    HybridDensity, RFactor,
};
use semiclassical::sweep::ground_state;

fn main() -> semiclassical::Result<()> {
    let gq = uniform_grid(64, 20.0)?;
    let gp = momentum_grid_for(&gq, 1.0)?;
    let (fq, fp) = (coordinate_rep(&gq, 1.0)?, momentum_rep(&gp, 1.0)?);
    let r = RFactor::balanced();
    let (q, p) = assemble_pair_qm(&fq, &fp, &r)?;

    let residual = commutator_residual(&q, &p, 1.0, &gaussian_test_states(&gq, &gp)?)?;
    println!("CCR residual on Gaussian states: {residual:.3e}");

    let h = parse_expression("1/2*q^2 + 1/2*p^2")?;
    let oracle = solve_quantum_1d(&h, &fq, 4)?;
    println!("single-space levels: {:?}", oracle.values);

    let (_, psi) = ground_state(&h, &fq)?;
    let a = gaussian_amplitudes(&gp, 0.0, 1.0, 0.0);
    let b = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
    let state = embed_quantum_state(&psi, &a, &b, &r, &gq, &gp, 1.0)?;
    let h_qm = evaluate_observable(&h, (&q, &p), 1.0)?;
    let energy = mean_value_real(&HybridDensity::pure(state), &h_qm)?;
    println!("embedded ground-state energy: {energy:.12}");
    println!("lowest hybrid levels: {:?}", h_qm.lowest_eigenvalues(4)?);
    Ok(())
}
