//! Seeded generators for randomized invariant checks.

use rand::rngs::Xoshiro256PlusPlus;
use rand::{RngExt, SeedableRng};

use crate::ncpoly::{Coefficient, Letter, Monomial, NCPolynomial, WeylPolynomial, Word};

pub type CheckRng = Xoshiro256PlusPlus;

/// A portable generator: identical streams on every platform.
pub fn seeded(seed: u64) -> CheckRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn random_word(rng: &mut CheckRng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| if rng.random_bool(0.5) { Letter::Q } else { Letter::P })
            .collect(),
    )
}

/// Small Gaussian rational, real half of the time.
pub fn random_coefficient(rng: &mut CheckRng) -> Coefficient {
    let re = Coefficient::from_ratio(rng.random_range(-6..=6), rng.random_range(1..=4));
    if rng.random_bool(0.5) {
        re
    } else {
        re + Coefficient::from_ratio(rng.random_range(-6..=6), rng.random_range(1..=4)).mul_i()
    }
}

fn random_terms(rng: &mut CheckRng, max_degree: u32, max_terms: usize, max_hbar: u32) -> Vec<(Monomial, Coefficient)> {
    let count = rng.random_range(1..=max_terms);
    (0..count)
        .map(|_| {
            let total = rng.random_range(0..=max_degree);
            let n = rng.random_range(0..=total);
            let k = rng.random_range(0..=max_hbar);
            (Monomial::new(n, total - n, k), random_coefficient(rng))
        })
        .collect()
}

/// Normal-ordered polynomial of total operator degree `≤ max_degree`.
pub fn random_nc_polynomial(rng: &mut CheckRng, max_degree: u32, max_terms: usize, max_hbar: u32) -> NCPolynomial {
    NCPolynomial::from_terms(random_terms(rng, max_degree, max_terms, max_hbar))
}

/// Weyl-basis polynomial of total degree `≤ max_degree`.
pub fn random_weyl_polynomial(rng: &mut CheckRng, max_degree: u32, max_terms: usize, max_hbar: u32) -> WeylPolynomial {
    WeylPolynomial::from_terms(random_terms(rng, max_degree, max_terms, max_hbar))
}

/// Weyl-basis polynomial with real coefficients and no `ħ`; its normal-ordered
/// form is self-adjoint.
pub fn random_real_weyl_terms(rng: &mut CheckRng, max_degree: u32, max_terms: usize) -> Vec<(u32, u32, f64)> {
    let count = rng.random_range(1..=max_terms);
    (0..count)
        .map(|_| {
            let total = rng.random_range(0..=max_degree);
            let n = rng.random_range(0..=total);
            (n, total - n, rng.random_range(-8..=8) as f64 / 8.0)
        })
        .collect()
}
