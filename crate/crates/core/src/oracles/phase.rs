use nalgebra::DMatrix;

use crate::ncpoly::ClassicalPolynomial;
use crate::repspace::Grid;
use crate::{Error, Result};

fn classical_value(h: &ClassicalPolynomial, q: f64, p: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&(n, m), c) in h.terms() {
        let (re, im) = c.to_f64_pair();
        if im != 0.0 {
            return Err(Error::NonRealCoefficient(format!("{c}")));
        }
        acc += re * q.powi(n as i32) * p.powi(m as i32);
    }
    Ok(acc)
}

/// Riemann sum `Σ ρ(q_i, p_j) H(q_i, p_j) Δq Δp`.
pub fn classical_phase_average(rho: &DMatrix<f64>, h: &ClassicalPolynomial, gq: &Grid, gp: &Grid) -> Result<f64> {
    if rho.shape() != (gq.n_points(), gp.n_points()) {
        return Err(Error::DimensionMismatch(format!(
            "samples {:?} for grids {}x{}",
            rho.shape(),
            gq.n_points(),
            gp.n_points()
        )));
    }
    if let Some(bad) = rho.iter().find(|x| !(**x >= 0.0)) {
        return Err(Error::InvalidState(format!("negative density sample {bad}")));
    }
    let mut acc = 0.0;
    for (i, &q) in gq.points().iter().enumerate() {
        for (j, &p) in gp.points().iter().enumerate() {
            let w = rho[(i, j)];
            if w != 0.0 {
                acc += w * classical_value(h, q, p)?;
            }
        }
    }
    Ok(acc * gq.spacing() * gp.spacing())
}

/// [`classical_phase_average`] with `ρ` given as a polynomial sampled on the
/// grids.
pub fn classical_phase_average_poly(
    rho: &ClassicalPolynomial,
    h: &ClassicalPolynomial,
    gq: &Grid,
    gp: &Grid,
) -> Result<f64> {
    let mut samples = DMatrix::zeros(gq.n_points(), gp.n_points());
    for (i, &q) in gq.points().iter().enumerate() {
        for (j, &p) in gp.points().iter().enumerate() {
            samples[(i, j)] = classical_value(rho, q, p)?;
        }
    }
    classical_phase_average(&samples, h, gq, gp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Coefficient;
    use crate::repspace::uniform_grid;

    #[test]
    fn uniform_square_second_moment() {
        let g = uniform_grid(64, 2.0).unwrap();
        let rho = DMatrix::from_element(64, 64, 0.25);
        let h = ClassicalPolynomial::term(2, 0, Coefficient::one());
        let avg = classical_phase_average(&rho, &h, &g, &g).unwrap();
        assert!((avg - 1.0 / 3.0).abs() <= 1e-3, "{avg}");
        let one = ClassicalPolynomial::term(0, 0, Coefficient::one());
        assert_eq!(classical_phase_average(&rho, &one, &g, &g).unwrap(), 1.0);
        let rho_poly = ClassicalPolynomial::term(0, 0, Coefficient::from_ratio(1, 4));
        assert_eq!(classical_phase_average_poly(&rho_poly, &one, &g, &g).unwrap(), 1.0);
    }

    #[test]
    fn negative_density_rejected() {
        let g = uniform_grid(4, 2.0).unwrap();
        let mut rho = DMatrix::from_element(4, 4, 0.25);
        rho[(1, 2)] = -0.1;
        let one = ClassicalPolynomial::term(0, 0, Coefficient::one());
        assert!(classical_phase_average(&rho, &one, &g, &g).is_err());
    }
}
