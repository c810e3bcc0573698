//! Real-number backends, the tolerance policy, and angle units.
//!
//! Two backends implement [`Scalar`]: plain `f64` (best estimate) and
//! [`Interval`] (certified enclosure with outward rounding). Formula code
//! that is generic over `Scalar` can be run under either.

mod angle;
mod interval;
mod tolerance;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use angle::{dms_to_radians, radians_to_dms, AngleMeasure, Dms};
pub use interval::Interval;
pub use tolerance::Tolerance;

use crate::error::{GeomError, Result};

pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;

    /// Square root; inputs that are negative by no more than `clamp` are
    /// treated as zero.
    fn sqrt_within(self, clamp: f64) -> Result<Self>;

    fn lower(self) -> f64;

    fn upper(self) -> f64;

    /// Best single estimate of the value.
    fn estimate(self) -> f64 {
        0.5 * (self.lower() + self.upper())
    }

    fn encloses(self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn sqrt_within(self, clamp: f64) -> Result<Self> {
        if self >= 0.0 {
            Ok(self.sqrt())
        } else if self >= -clamp {
            Ok(0.0)
        } else {
            Err(GeomError::domain(format!("square root of negative value {self}")))
        }
    }

    fn lower(self) -> f64 {
        self
    }

    fn upper(self) -> f64 {
        self
    }

    fn estimate(self) -> f64 {
        self
    }
}

impl Scalar for Interval {
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }

    fn sqrt_within(self, clamp: f64) -> Result<Self> {
        self.sqrt_clamped(clamp)
    }

    fn lower(self) -> f64 {
        self.lo()
    }

    fn upper(self) -> f64 {
        self.hi()
    }

    fn estimate(self) -> f64 {
        self.mid()
    }
}

/// Square root under the default tolerance's clamp window.
pub fn scalar_sqrt<S: Scalar>(x: S) -> Result<S> {
    x.sqrt_within(Tolerance::default().abs_eps())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn sqrt_examples() {
        let r2 = scalar_sqrt(2.0).unwrap();
        assert!(1.41 < r2 && r2 < 1.42);
        assert!((r2 - 1.414_213_56).abs() < 1e-8);
        assert_eq!(scalar_sqrt(0.0).unwrap(), 0.0);
        assert_eq!(scalar_sqrt(25.0).unwrap(), 5.0);
        assert!(scalar_sqrt(Interval::point(25.0)).unwrap().encloses(5.0));
    }

    #[test]
    fn sqrt_negative_beyond_tolerance() {
        assert!(scalar_sqrt(-1e-3).is_err());
        assert_eq!(scalar_sqrt(-1e-12).unwrap(), 0.0);
    }
}
