use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Absolute/relative comparison window used for every "equal within
/// tolerance" decision in the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    abs_eps: f64,
    rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        if !(abs_eps > 0.0 && abs_eps.is_finite()) || !(rel_eps > 0.0 && rel_eps.is_finite()) {
            return Err(GeomError::domain(format!(
                "tolerance must be strictly positive and finite, got abs={abs_eps}, rel={rel_eps}"
            )));
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    /// Same absolute and relative epsilon.
    pub fn uniform(eps: f64) -> Result<Self> {
        Tolerance::new(eps, eps)
    }

    pub fn abs_eps(&self) -> f64 {
        self.abs_eps
    }

    pub fn rel_eps(&self) -> f64 {
        self.rel_eps
    }

    /// Rescales the absolute part to a figure whose unit length is `unit`.
    pub fn scaled(&self, unit: f64) -> Self {
        if unit > 0.0 && unit.is_finite() {
            Tolerance {
                abs_eps: self.abs_eps * unit,
                rel_eps: self.rel_eps,
            }
        } else {
            *self
        }
    }

    /// Width of the comparison window around a magnitude.
    pub fn window(&self, magnitude: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * magnitude.abs())
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.window(a.abs().max(b.abs()))
    }

    pub fn is_zero(&self, a: f64) -> bool {
        a.abs() <= self.abs_eps
    }

    /// `a < b` by more than the window.
    pub fn lt(&self, a: f64, b: f64) -> bool {
        a < b && !self.eq(a, b)
    }
}
