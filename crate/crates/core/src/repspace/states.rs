use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::linalg::{CVector, C64};
use crate::{Error, Result};

use super::density::HybridDensity;
use super::grid::{uniform_grid, Grid};
use super::rfactor::RFactor;
use super::vector::{HybridDims, HybridVector};

/// Tolerance on unit norms of the inputs to [`embed_quantum_state`].
pub const INPUT_NORM_TOLERANCE: f64 = 1e-10;
/// Tolerance on `Σ ρ_ij Δq Δp = 1` in [`classical_state`].
pub const CLASSICAL_NORM_TOLERANCE: f64 = 1e-10;

/// The momentum grid whose nodes are the `ħ`-scaled DFT frequencies of `gq`:
/// `L_p = 2πħN / L_q`, same `N`.
pub fn momentum_grid_for(gq: &Grid, hbar: f64) -> Result<Grid> {
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "momentum grid derivation needs hbar > 0, got {hbar}"
        )));
    }
    uniform_grid(gq.n_points(), required_momentum_extent(gq, hbar))
}

fn required_momentum_extent(gq: &Grid, hbar: f64) -> f64 {
    2.0 * PI * hbar * gq.n_points() as f64 / gq.length()
}

fn check_fourier_grids(gq: &Grid, gp: &Grid, hbar: f64) -> Result<()> {
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Fourier transport needs hbar > 0, got {hbar}; classical states never pass through it"
        )));
    }
    if gq.n_points() != gp.n_points() {
        return Err(Error::DimensionMismatch(format!(
            "Fourier transport needs equal grid sizes, got {} and {}",
            gq.n_points(),
            gp.n_points()
        )));
    }
    let required = required_momentum_extent(gq, hbar);
    if (gp.length() - required).abs() > 1e-12 * required {
        return Err(Error::IncompatibleGrids {
            required_lp: required,
            actual_lp: gp.length(),
        });
    }
    Ok(())
}

fn transport(psi: &CVector, n: usize, sign: f64) -> CVector {
    // p_k q_j / ħ = 2π (k − N/2)(j − N/2) / N on compatible grids
    let half = (n / 2) as i64;
    let norm = 1.0 / (n as f64).sqrt();
    CVector::from_iterator(
        n,
        (0..n as i64).map(|k| {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n as i64 {
                let m = ((k - half) * (j - half)).rem_euclid(n as i64);
                let phase = sign * 2.0 * PI * m as f64 / n as f64;
                acc += C64::from_polar(1.0, phase) * psi[j as usize];
            }
            acc * norm
        }),
    )
}

/// Momentum-space amplitudes of a coordinate-space state.
///
/// Vectors hold ℓ² amplitudes `ψ(q_j)·√Δq`; on those the map
/// `ψ̃(p_k) = (Δq/√(2πħ)) Σ_j e^{−i p_k q_j/ħ} ψ(q_j)` becomes the unitary
/// kernel `e^{−i p_k q_j/ħ}/√N`.
pub fn fourier_state(psi: &CVector, gq: &Grid, gp: &Grid, hbar: f64) -> Result<CVector> {
    check_fourier_grids(gq, gp, hbar)?;
    if psi.len() != gq.n_points() {
        return Err(Error::DimensionMismatch(format!(
            "state of length {} on a grid of {}",
            psi.len(),
            gq.n_points()
        )));
    }
    Ok(transport(psi, gq.n_points(), -1.0))
}

/// Inverse of [`fourier_state`] (sign-flipped kernel).
pub fn inverse_fourier_state(phi: &CVector, gq: &Grid, gp: &Grid, hbar: f64) -> Result<CVector> {
    check_fourier_grids(gq, gp, hbar)?;
    if phi.len() != gp.n_points() {
        return Err(Error::DimensionMismatch(format!(
            "state of length {} on a grid of {}",
            phi.len(),
            gp.n_points()
        )));
    }
    Ok(transport(phi, gp.n_points(), 1.0))
}

/// Unit-norm amplitudes of `exp(−(x − center)²/(2 width²) + i·kick·x)`.
pub fn gaussian_amplitudes(grid: &Grid, center: f64, width: f64, kick: f64) -> CVector {
    let v = CVector::from_iterator(
        grid.n_points(),
        grid.points().iter().map(|&x| {
            let d = (x - center) / width;
            C64::from_polar((-0.5 * d * d).exp(), kick * x)
        }),
    );
    let n = v.norm();
    v / C64::new(n, 0.0)
}

/// `|Ψ̃⟩ = c_q|Ψ⟩⊗|a⟩⊗|r_q⟩ + c_p|b⟩⊗|Ψ_p⟩⊗|r_p⟩`, with `|Ψ_p⟩` the
/// momentum-space copy of `psi_q`.
pub fn embed_quantum_state(
    psi_q: &CVector,
    a: &CVector,
    b: &CVector,
    r: &RFactor,
    gq: &Grid,
    gp: &Grid,
    hbar: f64,
) -> Result<HybridVector> {
    for (name, v, len) in [("psi", psi_q, gq.n_points()), ("a", a, gp.n_points()), ("b", b, gq.n_points())] {
        if v.len() != len {
            return Err(Error::DimensionMismatch(format!("`{name}` has length {}, expected {len}", v.len())));
        }
        if (v.norm() - 1.0).abs() > INPUT_NORM_TOLERANCE {
            return Err(Error::Normalization(format!("`{name}` has norm {}", v.norm())));
        }
    }
    let psi_p = fourier_state(psi_q, gq, gp, hbar)?;
    let first = HybridVector::product(psi_q, a, &RFactor::r_q_vector())?.scale(r.c_q());
    let second = HybridVector::product(b, &psi_p, &RFactor::r_p_vector())?.scale(r.c_p());
    Ok(first.add(&second))
}

/// The classical mixed state `ρ(q̂⊗Î, Î⊗p̂) ⊗ (c_q|r_q⟩ + c_p|r_p⟩)(h.c.)`.
///
/// `samples[(i, j)] = ρ(q_i, p_j)`, non-negative with `Σ ρ Δq Δp = 1`. The
/// resulting trace is `1/(Δq Δp)`.
pub fn classical_state(samples: &DMatrix<f64>, gq: &Grid, gp: &Grid, r: &RFactor) -> Result<HybridDensity> {
    if samples.shape() != (gq.n_points(), gp.n_points()) {
        return Err(Error::DimensionMismatch(format!(
            "samples {:?} for grids {}x{}",
            samples.shape(),
            gq.n_points(),
            gp.n_points()
        )));
    }
    if let Some(bad) = samples.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidState(format!("density sample {bad} is negative or non-finite")));
    }
    let cell = gq.spacing() * gp.spacing();
    let total: f64 = samples.iter().sum::<f64>() * cell;
    if (total - 1.0).abs() > CLASSICAL_NORM_TOLERANCE {
        return Err(Error::Normalization(format!("Riemann sum of the density is {total}, expected 1")));
    }
    let dims = HybridDims::new(gq.n_points(), gp.n_points());
    let weights = (0..dims.n_q)
        .flat_map(|i| (0..dims.n_p).map(move |j| (i, j)))
        .map(|(i, j)| samples[(i, j)])
        .collect();
    HybridDensity::phase_diagonal(dims, weights, r.dyad())
}

/// Point mass at the grid node nearest to `(q0, p0)`, height `1/(Δq Δp)`.
pub fn delta_samples(gq: &Grid, gp: &Grid, q0: f64, p0: f64) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(gq.n_points(), gp.n_points());
    s[(gq.nearest_index(q0), gp.nearest_index(p0))] = 1.0 / (gq.spacing() * gp.spacing());
    s
}

pub fn delta_state(gq: &Grid, gp: &Grid, q0: f64, p0: f64, r: &RFactor) -> Result<HybridDensity> {
    classical_state(&delta_samples(gq, gp, q0, p0), gq, gp, r)
}

/// Gaussian phase-space density sampled on the grids and rescaled so its
/// Riemann sum is one.
pub fn gaussian_samples(gq: &Grid, gp: &Grid, mu_q: f64, mu_p: f64, sigma_q: f64, sigma_p: f64) -> Result<DMatrix<f64>> {
    if !(sigma_q > 0.0 && sigma_p > 0.0) {
        return Err(Error::InvalidParameter("Gaussian widths must be positive".into()));
    }
    let mut s = DMatrix::from_fn(gq.n_points(), gp.n_points(), |i, j| {
        let a = (gq.points()[i] - mu_q) / sigma_q;
        let b = (gp.points()[j] - mu_p) / sigma_p;
        (-0.5 * (a * a + b * b)).exp()
    });
    let total: f64 = s.iter().sum::<f64>() * gq.spacing() * gp.spacing();
    if !(total > 0.0) {
        return Err(Error::InvalidState("Gaussian density underflows on the grid".into()));
    }
    s /= total;
    Ok(s)
}

/// Smooth product states used to probe the CCR: Gaussians of unit-order
/// width on both grids with different r-factor mixtures.
pub fn gaussian_test_states(gq: &Grid, gp: &Grid) -> Result<Vec<HybridVector>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mixes = [
        CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
        CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
        CVector::from_vec(vec![C64::new(s, 0.0), C64::new(0.0, s)]),
    ];
    let shapes = [(0.0, 1.0, 0.0), (0.5, 0.8, 0.7), (-0.7, 1.2, -0.4)];
    let mut out = Vec::new();
    for (mix, &(c, w, k)) in mixes.iter().zip(shapes.iter()) {
        let x = gaussian_amplitudes(gq, c, w, k);
        let y = gaussian_amplitudes(gp, -c, w, -k);
        out.push(HybridVector::product(&x, &y, mix)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grids(n: usize, l: f64, hbar: f64) -> (Grid, Grid) {
        let gq = uniform_grid(n, l).unwrap();
        let gp = momentum_grid_for(&gq, hbar).unwrap();
        (gq, gp)
    }

    #[test]
    fn fourier_of_gaussian_is_gaussian_with_reciprocal_width() {
        let hbar = 1.0;
        let (gq, gp) = grids(64, 20.0, hbar);
        let width = 1.3;
        let psi = gaussian_amplitudes(&gq, 0.0, width, 0.0);
        let phi = fourier_state(&psi, &gq, &gp, hbar).unwrap();
        assert!((phi.norm() - 1.0).abs() <= 1e-10);
        // |ψ̃(p)| ∝ exp(−p² width²/(2ħ²))
        let expected = gaussian_amplitudes(&gp, 0.0, hbar / width, 0.0);
        let err = phi.iter().zip(expected.iter()).map(|(a, b)| (a.norm() - b.norm()).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn momentum_kick_shifts_the_transform() {
        let hbar = 1.0;
        let (gq, gp) = grids(64, 20.0, hbar);
        let psi = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
        let shift = 5; // p0 = 5·Δp, a grid node
        let p0 = shift as f64 * gp.spacing();
        let kicked = CVector::from_iterator(
            64,
            gq.points().iter().zip(psi.iter()).map(|(&q, z)| z * C64::from_polar(1.0, p0 * q / hbar)),
        );
        let a = fourier_state(&psi, &gq, &gp, hbar).unwrap();
        let b = fourier_state(&kicked, &gq, &gp, hbar).unwrap();
        let err = (0..64 - shift).map(|k| (b[k + shift].norm() - a[k].norm()).abs()).fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn round_trip_and_unitarity() {
        let hbar = 0.7;
        let (gq, gp) = grids(32, 12.0, hbar);
        let psi = gaussian_amplitudes(&gq, 0.4, 0.9, 1.1);
        let phi = fourier_state(&psi, &gq, &gp, hbar).unwrap();
        assert!((phi.norm() - psi.norm()).abs() < 1e-12);
        let back = inverse_fourier_state(&phi, &gq, &gp, hbar).unwrap();
        assert!((back - psi).camax() < 1e-12);
    }

    #[test]
    fn guards() {
        let (gq, gp) = grids(16, 10.0, 1.0);
        let psi = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
        assert!(fourier_state(&psi, &gq, &gp, 0.0).is_err());
        let bad = uniform_grid(16, 3.0).unwrap();
        match fourier_state(&psi, &gq, &bad, 1.0).unwrap_err() {
            Error::IncompatibleGrids { required_lp, .. } => assert!((required_lp - gp.length()).abs() < 1e-12),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn embedding_branches_and_norm() {
        let hbar = 1.0;
        let (gq, gp) = grids(16, 10.0, hbar);
        let psi = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
        let a = gaussian_amplitudes(&gp, 0.0, 1.0, 0.0);
        let b = gaussian_amplitudes(&gq, 0.0, 1.0, 0.0);
        let single = RFactor::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        let v = embed_quantum_state(&psi, &a, &b, &single, &gq, &gp, hbar).unwrap();
        let expected = HybridVector::product(&psi, &a, &RFactor::r_q_vector()).unwrap();
        assert_eq!(v, expected);
        let v = embed_quantum_state(&psi, &a, &b, &RFactor::balanced(), &gq, &gp, hbar).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-9);
        let unnormalized = &psi * C64::new(2.0, 0.0);
        assert!(embed_quantum_state(&unnormalized, &a, &b, &single, &gq, &gp, hbar).is_err());
    }

    #[test]
    fn classical_state_checks() {
        let gq = uniform_grid(8, 4.0).unwrap();
        let gp = uniform_grid(8, 2.0).unwrap();
        let uniform = DMatrix::from_element(8, 8, 1.0 / (4.0 * 2.0));
        let rho = classical_state(&uniform, &gq, &gp, &RFactor::balanced()).unwrap();
        let expected = 1.0 / (gq.spacing() * gp.spacing());
        assert!((rho.trace().re - expected).abs() <= 1e-12 * expected);
        let mut negative = uniform.clone();
        negative[(0, 0)] = -1e-3;
        assert!(classical_state(&negative, &gq, &gp, &RFactor::balanced()).is_err());
        let scaled = &uniform * 2.0;
        assert!(classical_state(&scaled, &gq, &gp, &RFactor::balanced()).is_err());
    }
}
