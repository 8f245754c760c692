//! Configuration, the semiclassical `h`-sweep, the invariant suite and
//! result emission.
//!
//! Each sweep record carries a single oracle value: the single-space ground
//! energy for an embedded quantum state, the phase-space quadrature for a
//! classical state. The comparison is meaningful at the matching endpoint
//! only; intermediate rows are diagnostic.

mod config;
mod emit;
pub mod random;
mod run;
mod verify;

pub use config::{
    load_config, parse_complex, parse_config, parse_hamiltonian, OutputFormat, StateSpec, SweepConfig, VectorSource,
};
pub use emit::{emit, from_json, render, to_csv, to_json, CSV_HEADER};
pub use run::{
    ground_state, run_sweep, run_sweep_with_threads, threads_from_env, Experiment, SweepRecord, SPECTRUM_LEVELS,
    THREADS_ENV,
};
pub use verify::{classical_limit_failures, run_verify, Check, VerifyOptions, VerifyReport};
