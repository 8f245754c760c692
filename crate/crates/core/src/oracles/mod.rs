//! Independent reference computations.
//!
//! Nothing here reuses the rewrite loop, the polynomial evaluator or the
//! Poisson machinery of the modules being checked.

mod commutative;
mod phase;
mod quantum;
mod words;

pub use commutative::CommutativePolynomial;
pub use phase::{classical_phase_average, classical_phase_average_poly};
pub use quantum::{solve_quantum_1d, EigenResult};
pub use words::{brute_force_weyl, normal_order_literal, BRUTE_FORCE_CAP};
