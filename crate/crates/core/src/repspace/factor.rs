use crate::linalg::{real_diagonal, CMatrix, C64};
use crate::Result;

use super::grid::Grid;
use super::spectral::{spectral_derivative_with, NyquistConvention};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// `Q` diagonal on the grid, `P = −iħD`.
    Coordinate,
    /// `P` diagonal on the grid, `Q = +iħD`.
    Momentum,
}

/// Matched position/momentum matrices on one grid factor.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorRep {
    pub grid: Grid,
    pub hbar: f64,
    pub q: CMatrix,
    pub p: CMatrix,
    pub kind: FactorKind,
}

impl FactorRep {
    pub fn dim(&self) -> usize {
        self.grid.n_points()
    }
}

pub fn coordinate_rep(grid: &Grid, hbar: f64) -> Result<FactorRep> {
    coordinate_rep_with(grid, hbar, NyquistConvention::Zeroed)
}

pub fn momentum_rep(grid: &Grid, hbar: f64) -> Result<FactorRep> {
    momentum_rep_with(grid, hbar, NyquistConvention::Zeroed)
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar >= 0.0) || !hbar.is_finite() {
        return Err(crate::Error::InvalidParameter(format!("hbar must be >= 0, got {hbar}")));
    }
    Ok(())
}

pub fn coordinate_rep_with(grid: &Grid, hbar: f64, convention: NyquistConvention) -> Result<FactorRep> {
    check_hbar(hbar)?;
    let d = spectral_derivative_with(grid.n_points(), grid.length(), convention)?;
    Ok(FactorRep {
        grid: grid.clone(),
        hbar,
        q: real_diagonal(grid.points()),
        p: d * C64::new(0.0, -hbar),
        kind: FactorKind::Coordinate,
    })
}

pub fn momentum_rep_with(grid: &Grid, hbar: f64, convention: NyquistConvention) -> Result<FactorRep> {
    check_hbar(hbar)?;
    let d = spectral_derivative_with(grid.n_points(), grid.length(), convention)?;
    Ok(FactorRep {
        grid: grid.clone(),
        hbar,
        q: d * C64::new(0.0, hbar),
        p: real_diagonal(grid.points()),
        kind: FactorKind::Momentum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermiticity_defect, CVector, ZERO};
    use crate::repspace::{spectral_derivative, uniform_grid};

    #[test]
    fn zero_hbar_kills_the_conjugate_member() {
        let g = uniform_grid(8, 4.0).unwrap();
        let c = coordinate_rep(&g, 0.0).unwrap();
        assert!(c.p.iter().all(|z| *z == ZERO));
        let m = momentum_rep(&g, 0.0).unwrap();
        assert!(m.q.iter().all(|z| *z == ZERO));
    }

    #[test]
    fn diagonal_member_is_the_grid() {
        let g = uniform_grid(8, 4.0).unwrap();
        let c = coordinate_rep(&g, 1.0).unwrap();
        assert_eq!(c.q, real_diagonal(g.points()));
        let m = momentum_rep(&g, 1.0).unwrap();
        assert_eq!(m.p, real_diagonal(g.points()));
    }

    #[test]
    fn hermitian_members() {
        let g = uniform_grid(16, 5.0).unwrap();
        for rep in [coordinate_rep(&g, 0.7).unwrap(), momentum_rep(&g, 0.7).unwrap()] {
            assert_eq!(hermiticity_defect(&rep.q), 0.0);
            assert_eq!(hermiticity_defect(&rep.p), 0.0);
        }
    }

    #[test]
    fn momentum_rep_position_is_plus_i_hbar_derivative() {
        let g = uniform_grid(64, 20.0).unwrap();
        let hbar = 1.0;
        let m = momentum_rep(&g, hbar).unwrap();
        let psi = CVector::from_iterator(64, g.points().iter().map(|&p| C64::new((-p * p / 2.0).exp(), 0.0)));
        let d = spectral_derivative(64, 20.0).unwrap();
        let expected = (&d * &psi) * C64::new(0.0, hbar);
        assert!((&m.q * &psi - expected).camax() < 1e-14);
        // sign check against the analytic derivative: iħ·(−p)·e^{−p²/2}
        let analytic = CVector::from_iterator(
            64,
            g.points().iter().map(|&p| C64::new(0.0, -hbar * p * (-p * p / 2.0).exp())),
        );
        assert!((&m.q * &psi - analytic).camax() < 1e-8);
    }

    #[test]
    fn negative_hbar_rejected() {
        let g = uniform_grid(4, 1.0).unwrap();
        assert!(coordinate_rep(&g, -1.0).is_err());
    }
}
