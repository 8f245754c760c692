//! An `h`-parameterized operator algebra on the tripled space `H_q ⊗ H_p ⊗ H_r`.
//!
//! The crate has four layers:
//!
//! * [`ncpoly`]: exact symbolic polynomials in `q̂`, `p̂` with `ħ` as a formal
//!   grading symbol. Normal ordering, the Weyl (symmetrized) basis, the
//!   symmetrized product `∘`, the symmetrized Poisson bracket and the
//!   `ħ → 0` classical limit.
//! * [`repspace`]: finite periodic-grid realizations of the coordinate and
//!   momentum factors, assembly of `q̃(h)`, `p̃(h)` together with the quantum
//!   (`h = h₀`) and classical (`h = 0`) pairs, states and the trace-quotient
//!   mean value.
//! * [`oracles`]: independent reference computations used to check the two
//!   layers above.
//! * [`sweep`]: configuration, the semiclassical `h`-sweep, the invariant
//!   verification suite and CSV/JSON emission.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod linalg;
pub mod ncpoly;
pub mod oracles;
pub mod repspace;
pub mod sweep;

pub use error::{Error, Result};
