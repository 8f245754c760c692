use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{CMatrix, CVector, C64};
use crate::ncpoly::{classical_limit, from_weyl_basis, ClassicalPolynomial, NCPolynomial, WeylPolynomial};
use crate::oracles::{classical_phase_average, solve_quantum_1d};
use crate::repspace::{
    assemble_pair_cm, assemble_ptilde, assemble_qtilde, classical_state, commutator_residual, coordinate_rep,
    delta_samples, embed_quantum_state, evaluate_observable, evaluate_operator_poly, gaussian_amplitudes,
    gaussian_samples, gaussian_test_states, mean_value_real, momentum_rep, uniform_grid, Container, FactorRep, Grid,
    HybridDensity, HybridOperator, HybridVector, RFactor, SemiclassicalParams,
};
use crate::{Error, Result};

use super::config::{StateSpec, SweepConfig, VectorSource};

/// Environment variable selecting how many threads evaluate h-points.
/// Unset, empty or `1` means sequential.
pub const THREADS_ENV: &str = "SEMICLASSICAL_THREADS";

/// Number of eigenvalues reported per record.
pub const SPECTRUM_LEVELS: usize = 4;

/// One h-point of the sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub h: f64,
    pub hbar: f64,
    pub ccr_residual: f64,
    pub dist_q: f64,
    pub dist_p: f64,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub mean: f64,
    pub oracle: f64,
    pub abs_err: f64,
}

impl SweepRecord {
    pub fn lowest_spectrum(&self) -> [f64; SPECTRUM_LEVELS] {
        [self.e0, self.e1, self.e2, self.e3]
    }

    pub fn is_finite(&self) -> bool {
        [
            self.h,
            self.hbar,
            self.ccr_residual,
            self.dist_q,
            self.dist_p,
            self.e0,
            self.e1,
            self.e2,
            self.e3,
            self.mean,
            self.oracle,
            self.abs_err,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// Lowest eigenpair of `H(rep.Q, rep.P)`.
pub fn ground_state(h: &NCPolynomial, rep: &FactorRep) -> Result<(f64, CVector)> {
    let m: CMatrix = evaluate_operator_poly(h, (&rep.q, &rep.p), rep.hbar)?;
    let hermitian = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = hermitian.symmetric_eigen();
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidParameter("empty grid".into()))?;
    Ok((value, eig.eigenvectors.column(idx).into_owned()))
}

fn load_vector(source: &VectorSource, grid: &Grid, hbar0: f64) -> Result<CVector> {
    match source {
        VectorSource::Gaussian => Ok(gaussian_amplitudes(grid, 0.0, hbar0.sqrt(), 0.0)),
        VectorSource::File(path) => {
            let file = std::fs::File::open(path)
                .map_err(|e| Error::Container(format!("cannot open {}: {e}", path.display())))?;
            let v = Container::read_text(std::io::BufReader::new(file))?.to_factor_vector()?;
            if v.len() != grid.n_points() {
                return Err(Error::DimensionMismatch(format!(
                    "{} has {} entries, grid has {}",
                    path.display(),
                    v.len(),
                    grid.n_points()
                )));
            }
            Ok(v)
        }
    }
}

/// Everything about a sweep that does not depend on `h`.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: SweepConfig,
    pub gq: Grid,
    pub gp: Grid,
    pub r: RFactor,
    /// Normal-ordered form of the Weyl-basis Hamiltonian.
    pub hamiltonian: NCPolynomial,
    pub classical_hamiltonian: ClassicalPolynomial,
    pub state: HybridDensity,
    /// Quantum ground energy for the embedded state, classical quadrature
    /// for phase-space states.
    pub oracle: f64,
    cm_pair: (HybridOperator, HybridOperator),
    test_states: Vec<HybridVector>,
}

impl Experiment {
    pub fn new(config: &SweepConfig) -> Result<Self> {
        let hbar0 = config.hbar0();
        let gq = uniform_grid(config.n_q, config.l_q)?;
        let gp = uniform_grid(config.n_p, config.momentum_length())?;
        let r = config.rfactor()?;
        let hamiltonian = from_weyl_basis(&WeylPolynomial::from_real_terms(&config.hamiltonian)?);
        let classical_hamiltonian = classical_limit(&hamiltonian);
        let (state, oracle) = match &config.state {
            StateSpec::EmbeddedGroundState => {
                let fq = coordinate_rep(&gq, hbar0)?;
                let (_, psi) = ground_state(&hamiltonian, &fq)?;
                let a = load_vector(&config.a_vector, &gp, hbar0)?;
                let b = load_vector(&config.b_vector, &gq, hbar0)?;
                let v = embed_quantum_state(&psi, &a, &b, &r, &gq, &gp, hbar0)?;
                let oracle = solve_quantum_1d(&hamiltonian, &fq, 1)?.values[0];
                (HybridDensity::pure(v), oracle)
            }
            StateSpec::ClassicalGaussian {
                mu_q,
                mu_p,
                sigma_q,
                sigma_p,
            } => {
                let samples = gaussian_samples(&gq, &gp, *mu_q, *mu_p, *sigma_q, *sigma_p)?;
                classical_branch(&samples, &gq, &gp, &r, &classical_hamiltonian)?
            }
            StateSpec::Delta { q0, p0 } => {
                let samples = delta_samples(&gq, &gp, *q0, *p0);
                classical_branch(&samples, &gq, &gp, &r, &classical_hamiltonian)?
            }
        };
        let cm_pair = assemble_pair_cm(&coordinate_rep(&gq, 0.0)?, &momentum_rep(&gp, 0.0)?, &r)?;
        let test_states = gaussian_test_states(&gq, &gp)?;
        Ok(Experiment {
            config: config.clone(),
            gq,
            gp,
            r,
            hamiltonian,
            classical_hamiltonian,
            state,
            oracle,
            cm_pair,
            test_states,
        })
    }

    /// The `k`-th of `steps` equally spaced values in `[0, h₀]`; the last one
    /// is `h₀` exactly.
    pub fn h_value(&self, k: usize) -> f64 {
        let last = self.config.steps - 1;
        if k == last {
            self.config.h0
        } else {
            self.config.h0 * k as f64 / last as f64
        }
    }

    /// `(q̃(h), p̃(h))` and `ħ(h)`.
    pub fn pair_at(&self, h: f64) -> Result<(HybridOperator, HybridOperator, f64)> {
        let params = SemiclassicalParams::new(h, self.config.h0)?;
        let hbar = params.hbar_of_h();
        let fq = coordinate_rep(&self.gq, hbar)?;
        let fp = momentum_rep(&self.gp, hbar)?;
        let q = assemble_qtilde(&params, &fq, &fp, &self.r)?;
        let p = assemble_ptilde(&params, &fq, &fp, &self.r)?;
        Ok((q, p, hbar))
    }

    /// `H(q̃(h), p̃(h))`.
    pub fn hamiltonian_at(&self, h: f64) -> Result<HybridOperator> {
        let (q, p, hbar) = self.pair_at(h).map_err(|e| e.at_h(h))?;
        evaluate_observable(&self.hamiltonian, (&q, &p), hbar).map_err(|e| e.at_h(h))
    }

    pub fn record_at(&self, h: f64) -> Result<SweepRecord> {
        self.record_inner(h).map_err(|e| e.at_h(h))
    }

    fn record_inner(&self, h: f64) -> Result<SweepRecord> {
        let (q, p, hbar) = self.pair_at(h)?;
        let ccr_residual = commutator_residual(&q, &p, hbar, &self.test_states)?;
        let dist_q = q.sub(&self.cm_pair.0)?.norm();
        let dist_p = p.sub(&self.cm_pair.1)?.norm();
        let op = evaluate_observable(&self.hamiltonian, (&q, &p), hbar)?;
        let e = op.lowest_eigenvalues(SPECTRUM_LEVELS)?;
        let mean = mean_value_real(&self.state, &op)?;
        Ok(SweepRecord {
            h,
            hbar,
            ccr_residual,
            dist_q,
            dist_p,
            e0: e[0],
            e1: e[1],
            e2: e[2],
            e3: e[3],
            mean,
            oracle: self.oracle,
            abs_err: (mean - self.oracle).abs(),
        })
    }
}

fn classical_branch(
    samples: &DMatrix<f64>,
    gq: &Grid,
    gp: &Grid,
    r: &RFactor,
    h: &ClassicalPolynomial,
) -> Result<(HybridDensity, f64)> {
    let rho = classical_state(samples, gq, gp, r)?;
    Ok((rho, classical_phase_average(samples, h, gq, gp)?))
}

/// Thread count from [`THREADS_ENV`].
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(1),
        Ok(s) if s.trim().is_empty() => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got `{s}`"))),
        },
    }
}

/// Runs the sweep with the parallelism selected by the environment.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    run_sweep_with_threads(cfg, threads_from_env()?)
}

/// Runs the sweep on `threads` workers. Records come back in ascending `h`
/// and are bitwise independent of the thread count.
pub fn run_sweep_with_threads(cfg: &SweepConfig, threads: usize) -> Result<Vec<SweepRecord>> {
    let exp = Experiment::new(cfg)?;
    let hs: Vec<f64> = (0..cfg.steps).map(|k| exp.h_value(k)).collect();
    if threads <= 1 {
        return hs.iter().map(|&h| exp.record_at(h)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start thread pool: {e}")))?;
    pool.install(|| hs.par_iter().map(|&h| exp.record_at(h)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::parse_config;

    #[test]
    fn default_endpoints() {
        let cfg = SweepConfig::default();
        let records = run_sweep_with_threads(&cfg, 1).unwrap();
        assert_eq!(records.len(), 11);
        let first = &records[0];
        assert_eq!((first.h, first.hbar, first.ccr_residual, first.dist_q, first.dist_p), (0.0, 0.0, 0.0, 0.0, 0.0));
        let last = records.last().unwrap();
        assert_eq!(last.h, cfg.h0);
        assert_eq!(last.hbar, 1.0);
        assert!(last.abs_err <= 1e-7, "{last:?}");
        assert!((last.mean - 0.5).abs() <= 1e-7);
        assert!(records.windows(2).all(|w| w[0].h < w[1].h));
        assert!(records.windows(2).all(|w| w[0].dist_q <= w[1].dist_q && w[0].dist_p <= w[1].dist_p));
        assert!(records.iter().all(SweepRecord::is_finite));
    }

    #[test]
    fn parallel_matches_sequential() {
        let cfg = parse_config("N_q = 16\nN_p = 16\nsteps = 5").unwrap();
        assert_eq!(run_sweep_with_threads(&cfg, 1).unwrap(), run_sweep_with_threads(&cfg, 3).unwrap());
    }

    #[test]
    fn classical_gaussian_at_zero() {
        let cfg = parse_config("state = classical-gaussian(0.5, -0.5, 1, 1.5)\nsteps = 3").unwrap();
        let records = run_sweep_with_threads(&cfg, 1).unwrap();
        assert!(records[0].abs_err <= 1e-12 * records[0].oracle.abs().max(1.0), "{:?}", records[0]);
    }

    #[test]
    fn delta_state_reads_the_node_value() {
        let cfg = parse_config("state = delta(1.3, -0.4)\nsteps = 2").unwrap();
        let exp = Experiment::new(&cfg).unwrap();
        let rec = exp.record_at(0.0).unwrap();
        let (i, j) = (exp.gq.nearest_index(1.3), exp.gp.nearest_index(-0.4));
        let expected = exp.classical_hamiltonian.eval(exp.gq.points()[i], exp.gp.points()[j]).unwrap();
        assert!((rec.mean - expected).abs() <= 1e-14 * expected.abs().max(1.0));
    }
}
