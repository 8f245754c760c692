use std::f64::consts::PI;

use crate::{Error, Result};

/// The deformation parameter `h ∈ [0, h₀]` and the running `ħ(h) = ħ₀·h/h₀`
/// with `ħ₀ = h₀/2π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SemiclassicalParams {
    h: f64,
    h0: f64,
}

impl SemiclassicalParams {
    pub fn new(h: f64, h0: f64) -> Result<Self> {
        if !(h0 > 0.0) || !h0.is_finite() {
            return Err(Error::InvalidParameter(format!("h0 must be positive, got {h0}")));
        }
        if !(0.0..=h0).contains(&h) {
            return Err(Error::InvalidParameter(format!("h = {h} outside [0, {h0}]")));
        }
        Ok(SemiclassicalParams { h, h0 })
    }

    /// `h = h₀`.
    pub fn quantum(h0: f64) -> Result<Self> {
        SemiclassicalParams::new(h0, h0)
    }

    /// `h = 0`.
    pub fn classical(h0: f64) -> Result<Self> {
        SemiclassicalParams::new(0.0, h0)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn hbar0(&self) -> f64 {
        self.h0 / (2.0 * PI)
    }

    pub fn ratio(&self) -> f64 {
        self.h / self.h0
    }

    pub fn hbar_of_h(&self) -> f64 {
        self.hbar0() * self.ratio()
    }

    /// `1 − h/h₀`, the weight of the cross terms in `q̃`, `p̃`.
    pub fn cross_weight(&self) -> f64 {
        1.0 - self.ratio()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let q = SemiclassicalParams::quantum(2.0 * PI).unwrap();
        assert_eq!(q.hbar_of_h(), 1.0);
        assert_eq!(q.cross_weight(), 0.0);
        let c = SemiclassicalParams::classical(2.0 * PI).unwrap();
        assert_eq!(c.hbar_of_h(), 0.0);
        assert_eq!(c.cross_weight(), 1.0);
    }

    #[test]
    fn range_enforced() {
        assert!(SemiclassicalParams::new(-0.1, 1.0).is_err());
        assert!(SemiclassicalParams::new(1.1, 1.0).is_err());
        assert!(SemiclassicalParams::new(0.5, 0.0).is_err());
    }
}
