use crate::{Error, Result};

/// Centered periodic grid `q_j = −L/2 + j·Δ`, `Δ = L/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    n_points: usize,
    length: f64,
    points: Vec<f64>,
}

impl Grid {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Index of the node closest to `x`, ties going to the lower index.
    pub fn nearest_index(&self, x: f64) -> usize {
        let raw = ((x + self.length / 2.0) / self.spacing()).round();
        raw.clamp(0.0, (self.n_points - 1) as f64) as usize
    }
}

pub fn uniform_grid(n: usize, length: f64) -> Result<Grid> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!("n_points must be even and >= 2, got {n}")));
    }
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidGrid(format!("length must be positive, got {length}")));
    }
    let spacing = length / n as f64;
    let points = (0..n).map(|j| -length / 2.0 + j as f64 * spacing).collect();
    Ok(Grid {
        n_points: n,
        length,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(uniform_grid(4, 4.0).unwrap().points(), &[-2.0, -1.0, 0.0, 1.0]);
        assert_eq!(uniform_grid(2, 2.0).unwrap().points(), &[-1.0, 0.0]);
        let g = uniform_grid(8, 16.0).unwrap();
        assert_eq!(g.spacing(), 2.0);
        assert_eq!(g.points()[0], -8.0);
        assert_eq!(g.spacing() * g.n_points() as f64, g.length());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(uniform_grid(5, 1.0).is_err());
        assert!(uniform_grid(0, 1.0).is_err());
        assert!(uniform_grid(4, 0.0).is_err());
        assert!(uniform_grid(4, -1.0).is_err());
        assert!(uniform_grid(4, f64::NAN).is_err());
    }

    #[test]
    fn nearest_node() {
        let g = uniform_grid(4, 4.0).unwrap();
        assert_eq!(g.nearest_index(0.2), 2);
        assert_eq!(g.nearest_index(-7.0), 0);
        assert_eq!(g.nearest_index(0.9), 3);
    }
}
