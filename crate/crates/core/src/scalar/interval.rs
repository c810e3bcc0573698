//! Certified interval backend.
//!
//! Every arithmetic result is computed in round-to-nearest and then pushed
//! one ULP outward on each side. IEEE 754 `+ - * / sqrt` are correctly
//! rounded, so the true result of the exact operation on any pair of
//! enclosed reals is still enclosed after the nudge.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(GeomError::domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval holding exactly `x`.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            self.lo + 0.5 * (self.hi - self.lo)
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn outward(lo: f64, hi: f64) -> Interval {
        if lo.is_nan() || hi.is_nan() {
            return Interval::ENTIRE;
        }
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    fn from_candidates(c: [f64; 4]) -> Interval {
        if c.iter().any(|v| v.is_nan()) {
            return Interval::ENTIRE;
        }
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }

    /// Square root; a lower bound in `[-clamp, 0)` is treated as zero.
    pub fn sqrt_clamped(self, clamp: f64) -> Result<Self> {
        if self.hi < 0.0 || self.lo < -clamp {
            return Err(GeomError::domain(format!(
                "square root of negative interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            self.lo.sqrt().next_down().max(0.0)
        };
        Ok(Interval {
            lo,
            hi: self.hi.sqrt().next_up(),
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        Interval::from_candidates([
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ])
    }
}

impl Div for Interval {
    type Output = Interval;

    /// Division by an interval containing zero yields [`Interval::ENTIRE`].
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains_zero() {
            return Interval::ENTIRE;
        }
        Interval::from_candidates([
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ])
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_is_enclosed() {
        let third = Interval::point(1.0) / Interval::point(3.0);
        assert!(third.lo() < third.hi());
        assert!(third.contains(1.0 / 3.0));
        assert!(third.width() < 1e-15);
    }

    #[test]
    fn sqrt_two_brackets() {
        let r = Interval::point(2.0).sqrt_clamped(1e-9).unwrap();
        assert!(r.lo() > 1.41 && r.hi() < 1.42);
        assert!(r.contains(std::f64::consts::SQRT_2));
    }

    #[test]
    fn sqrt_clamps_tiny_negative_lower_bound() {
        let x = Interval::new(-1e-12, 4.0).unwrap();
        let r = x.sqrt_clamped(1e-9).unwrap();
        assert_eq!(r.lo(), 0.0);
        assert!(r.contains(2.0));
        assert!(Interval::new(-1.0, 4.0).unwrap().sqrt_clamped(1e-9).is_err());
        assert!(Interval::point(-2.0).sqrt_clamped(1e-9).is_err());
    }

    #[test]
    fn division_through_zero_is_entire() {
        let d = Interval::point(1.0) / Interval::new(-1.0, 1.0).unwrap();
        assert_eq!(d, Interval::ENTIRE);
    }

    #[test]
    fn sign_mixed_product() {
        let a = Interval::new(-2.0, 3.0).unwrap();
        let b = Interval::new(-5.0, 4.0).unwrap();
        let p = a * b;
        assert!(p.lo() <= -15.0 && p.hi() >= 12.0);
        assert!(p.lo() > -15.0001 && p.hi() < 12.0001);
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Interval::new(2.0, 1.0).is_err());
    }
}
