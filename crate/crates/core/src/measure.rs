//! Commensurability of lengths: Euclid's algorithm by repeated laying-off,
//! continued fractions and their convergents.

use serde::Serialize;

use crate::construct::{run_program, ConstructionProgram};
use crate::error::{GeomError, Result};
use crate::scalar::Tolerance;

/// Default relative remainder below which two lengths count as commensurable.
pub const DEFAULT_STOP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CFExpansion {
    /// Partial quotients; every one after the first is at least 1.
    pub quotients: Vec<u64>,
    /// True when a remainder fell below the stopping threshold.
    pub terminated: bool,
    /// The last remainder, relative to the larger input.
    pub remainder_bound: f64,
}

impl CFExpansion {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// The value of the finite continued fraction `[q0; q1, ..., qn]`.
    pub fn value(&self) -> f64 {
        let mut iter = self.quotients.iter().rev();
        let Some(&last) = iter.next() else {
            return f64::NAN;
        };
        iter.fold(last as f64, |acc, &q| q as f64 + 1.0 / acc)
    }
}

impl std::fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, q) in self.quotients.iter().enumerate() {
            match i {
                0 => write!(f, "{q}")?,
                1 => write!(f, "; {q}")?,
                _ => write!(f, ", {q}")?,
            }
        }
        if !self.terminated {
            write!(f, ", …")?;
        }
        write!(f, "]")
    }
}

/// Lays `b` off along `a` as often as it fits, then the remainder along
/// `b`, and so on. Stops when the remainder drops below
/// `stop_eps · max(a, b)` or after `max_steps` quotients.
pub fn euclid_on_lengths(a: f64, b: f64, max_steps: usize, stop_eps: f64) -> Result<CFExpansion> {
    for (v, name) in [(a, "a"), (b, "b")] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(GeomError::domain(format!("length {name} must be positive, got {v}")));
        }
    }
    if !(stop_eps >= 0.0 && stop_eps.is_finite()) {
        return Err(GeomError::domain(format!("stop_eps must be non-negative, got {stop_eps}")));
    }
    let scale = a.max(b);
    let threshold = stop_eps * scale;
    let (mut x, mut y) = (a, b);
    let mut quotients = Vec::new();
    let mut terminated = false;
    let mut remainder = y;
    while quotients.len() < max_steps {
        let ratio = x / y;
        if ratio > u64::MAX as f64 / 2.0 {
            return Err(GeomError::domain("quotient exceeds the integer range"));
        }
        let mut q = ratio.floor();
        let mut r = x - q * y;
        // A remainder a hair short of a whole `y` is representation error.
        if y - r <= threshold.max(stop_eps * y) {
            q += 1.0;
            r = 0.0;
        }
        quotients.push(q as u64);
        remainder = r.max(0.0);
        if remainder <= threshold {
            terminated = true;
            break;
        }
        x = y;
        y = remainder;
    }
    Ok(CFExpansion {
        quotients,
        terminated,
        remainder_bound: remainder / scale,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub p: u64,
    pub q: u64,
}

impl Convergent {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl std::fmt::Display for Convergent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// The first `k` convergents, from `pₖ = aₖpₖ₋₁ + pₖ₋₂`, `qₖ = aₖqₖ₋₁ + qₖ₋₂`.
pub fn convergents(cf: &CFExpansion, k: usize) -> Result<Vec<Convergent>> {
    if k > cf.len() {
        return Err(GeomError::domain(format!(
            "asked for {k} convergents of an expansion with {} quotients",
            cf.len()
        )));
    }
    let overflow = || GeomError::domain("convergent does not fit in 64 bits");
    let (mut p_prev, mut p) = (0u64, 1u64);
    let (mut q_prev, mut q) = (1u64, 0u64);
    let mut out = Vec::with_capacity(k);
    for &a in &cf.quotients[..k] {
        let p_next = a.checked_mul(p).and_then(|v| v.checked_add(p_prev)).ok_or_else(overflow)?;
        let q_next = a.checked_mul(q).and_then(|v| v.checked_add(q_prev)).ok_or_else(overflow)?;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        if q == 0 {
            // a leading zero quotient: 0/1 is the first convergent
            out.push(Convergent { p: 0, q: 1 });
            continue;
        }
        out.push(Convergent { p, q });
    }
    Ok(out)
}

/// Most quotients the golden-ratio demonstration will extract before the
/// double-precision representation of the ratio stops being trustworthy.
pub const GOLDEN_DEMO_MAX_STEPS: usize = 30;

/// Builds the isosceles triangle with a 36° apex (legs 1, base the golden
/// section of a unit segment) with the construction machine and runs
/// Euclid's algorithm on leg and base.
pub fn golden_ratio_cf_demo(steps: usize) -> Result<CFExpansion> {
    if steps > GOLDEN_DEMO_MAX_STEPS {
        return Err(GeomError::domain(format!(
            "at most {GOLDEN_DEMO_MAX_STEPS} steps are meaningful in double precision, got {steps}"
        )));
    }
    let script = "\
point P = (0, 0)
point Q = (1, 0)
macro G = golden_section(P, Q)
macro A, B, C = triangle_from_sides(1, 1, dist(P, G))
";
    let program = ConstructionProgram::parse(script).map_err(|e| GeomError::domain(e.to_string()))?;
    let ws = run_program(&program, Tolerance::default()).map_err(|e| GeomError::domain(e.to_string()))?;
    let point = |n: &str| ws.point(n).map_err(|e| GeomError::domain(e.to_string()));
    let (a, b, c) = (point("A")?, point("B")?, point("C")?);
    euclid_on_lengths(a.distance(&c), a.distance(&b), steps, DEFAULT_STOP_EPS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_31_and_9() {
        let cf = euclid_on_lengths(31.0, 9.0, 20, DEFAULT_STOP_EPS).unwrap();
        assert_eq!(cf.quotients, vec![3, 2, 4]);
        assert!(cf.terminated);
        assert_eq!(cf.value(), 31.0 / 9.0);
        assert_eq!(cf.to_string(), "[3; 2, 4]");
    }

    #[test]
    fn equal_lengths() {
        let cf = euclid_on_lengths(2.5, 2.5, 5, DEFAULT_STOP_EPS).unwrap();
        assert_eq!(cf.quotients, vec![1]);
        assert!(cf.terminated);
    }

    #[test]
    fn smaller_first_gives_zero_quotient() {
        let cf = euclid_on_lengths(9.0, 31.0, 20, DEFAULT_STOP_EPS).unwrap();
        assert_eq!(cf.quotients, vec![0, 3, 2, 4]);
        let c = convergents(&cf, 4).unwrap();
        assert_eq!(c.last().unwrap(), &Convergent { p: 9, q: 31 });
    }

    #[test]
    fn diagonal_of_square() {
        let cf = euclid_on_lengths(2f64.sqrt(), 1.0, 12, DEFAULT_STOP_EPS).unwrap();
        assert!(!cf.terminated);
        assert_eq!(cf.quotients[0], 1);
        assert!(cf.quotients[1..].iter().all(|&q| q == 2));
        let c: Vec<String> = convergents(&cf, 4).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(c, ["1", "3/2", "7/5", "17/12"]);
    }

    #[test]
    fn convergents_alternate_around_target() {
        let x = 2f64.sqrt();
        let cf = euclid_on_lengths(x, 1.0, 10, DEFAULT_STOP_EPS).unwrap();
        for (i, c) in convergents(&cf, 10).unwrap().iter().enumerate() {
            assert_eq!(c.value() < x, i % 2 == 0, "{c}");
        }
    }

    #[test]
    fn pi_convergents() {
        let cf = euclid_on_lengths(std::f64::consts::PI, 1.0, 6, DEFAULT_STOP_EPS).unwrap();
        let c = convergents(&cf, 4).unwrap();
        assert_eq!(c[0], Convergent { p: 3, q: 1 });
        assert_eq!(c[1], Convergent { p: 22, q: 7 });
        assert_eq!(c[3], Convergent { p: 355, q: 113 });
    }

    #[test]
    fn single_quotient_convergent() {
        let cf = CFExpansion {
            quotients: vec![1],
            terminated: true,
            remainder_bound: 0.0,
        };
        assert_eq!(convergents(&cf, 1).unwrap(), vec![Convergent { p: 1, q: 1 }]);
        assert!(convergents(&cf, 2).is_err());
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(euclid_on_lengths(0.0, 1.0, 3, 1e-12).is_err());
        assert!(euclid_on_lengths(1.0, f64::NAN, 3, 1e-12).is_err());
        assert!(euclid_on_lengths(1.0, 1.0, 3, -1.0).is_err());
    }

    #[test]
    fn golden_demo() {
        assert_eq!(golden_ratio_cf_demo(5).unwrap().quotients, vec![1; 5]);
        assert!(!golden_ratio_cf_demo(5).unwrap().terminated);
        assert_eq!(golden_ratio_cf_demo(1).unwrap().quotients, vec![1]);
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        let analytic = euclid_on_lengths(phi, 1.0, 20, DEFAULT_STOP_EPS).unwrap();
        assert_eq!(golden_ratio_cf_demo(20).unwrap().quotients, analytic.quotients);
        let full = golden_ratio_cf_demo(GOLDEN_DEMO_MAX_STEPS).unwrap();
        assert!(full.quotients.iter().all(|&q| q == 1));
        assert!(golden_ratio_cf_demo(GOLDEN_DEMO_MAX_STEPS + 1).is_err());
    }
}
