//! Finite periodic-grid realization of `H_q ⊗ H_p ⊗ H_r`.

mod assemble;
mod container;
mod density;
mod eval;
mod factor;
mod grid;
mod operator;
mod params;
mod rfactor;
mod spectral;
mod states;
mod vector;

pub use assemble::{
    assemble_pair_cm, assemble_pair_cm_minimal, assemble_pair_qm, assemble_ptilde, assemble_qtilde,
    commutator_residual, evaluate_observable,
};
pub use container::Container;
pub use density::{mean_value, mean_value_real, HybridDensity, IMAGINARY_TOLERANCE};
pub use eval::{evaluate_operator_poly, OperatorAlgebra};
pub use factor::{coordinate_rep, coordinate_rep_with, momentum_rep, momentum_rep_with, FactorKind, FactorRep};
pub use grid::{uniform_grid, Grid};
pub use operator::{DiagonalOperator, HybridOperator};
pub use params::SemiclassicalParams;
pub use rfactor::{RFactor, WEIGHT_TOLERANCE};
pub use spectral::{spectral_derivative, spectral_derivative_with, NyquistConvention};
pub use states::{
    classical_state, delta_samples, delta_state, embed_quantum_state, fourier_state, gaussian_amplitudes,
    gaussian_samples, gaussian_test_states, inverse_fourier_state, momentum_grid_for, CLASSICAL_NORM_TOLERANCE,
    INPUT_NORM_TOLERANCE,
};
pub use vector::{HybridDims, HybridVector};
