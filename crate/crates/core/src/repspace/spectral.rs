use std::f64::consts::PI;

use crate::linalg::{CMatrix, C64, ZERO};
use crate::{Error, Result};

/// How the frequency set of the discrete Fourier derivative is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NyquistConvention {
    /// Frequencies `2πj/L` for `j ∈ {−n/2+1, …, n/2}` with the unpaired
    /// `j = n/2` row zeroed, so `D` is real and exactly antisymmetric.
    #[default]
    Zeroed,
    /// Fault injection: frequencies `j ∈ {0, …, n−1}` without folding at
    /// Nyquist. Aliases negative frequencies and breaks the CCR.
    Unfolded,
}

/// `D = F†·diag(i·k)·F` on `n` periodic points of extent `length`.
pub fn spectral_derivative(n: usize, length: f64) -> Result<CMatrix> {
    spectral_derivative_with(n, length, NyquistConvention::Zeroed)
}

pub fn spectral_derivative_with(n: usize, length: f64, convention: NyquistConvention) -> Result<CMatrix> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!("spectral derivative needs even n >= 2, got {n}")));
    }
    if !(length > 0.0) {
        return Err(Error::InvalidGrid(format!("length must be positive, got {length}")));
    }
    let dk = 2.0 * PI / length;
    let nf = n as f64;
    let mut d = CMatrix::from_element(n, n, ZERO);
    match convention {
        NyquistConvention::Zeroed => {
            // pairing ±k: i·k·(e^{ikx} − e^{−ikx}) = −2k·sin(kx)
            for a in 1..n {
                for b in 0..a {
                    let offset = (a - b) as i64;
                    let mut acc = 0.0;
                    for j in 1..(n as i64 / 2) {
                        let phase = 2.0 * PI * ((j * offset).rem_euclid(n as i64)) as f64 / nf;
                        acc -= 2.0 * (j as f64 * dk) * phase.sin();
                    }
                    let v = acc / nf;
                    d[(a, b)] = C64::new(v, 0.0);
                    d[(b, a)] = C64::new(-v, 0.0);
                }
            }
        }
        NyquistConvention::Unfolded => {
            for a in 0..n {
                for b in 0..n {
                    let offset = a as i64 - b as i64;
                    let mut acc = ZERO;
                    for j in 0..n as i64 {
                        let phase = 2.0 * PI * ((j * offset).rem_euclid(n as i64)) as f64 / nf;
                        acc += C64::new(0.0, j as f64 * dk) * C64::from_polar(1.0, phase);
                    }
                    d[(a, b)] = acc / nf;
                }
            }
        }
    }
    Ok(d)
}
