//! Plane mensuration: triangle solving, polygon and circle measures, the
//! polygon-doubling π engine and the Apollonius circle.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::plane::{line_through, Circle, Line, Point};
use crate::scalar::{scalar_sqrt, AngleMeasure, Scalar, Tolerance};

fn require_positive(value: f64, what: &str) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(GeomError::domain(format!("{what} must be positive and finite, got {value}")))
    }
}

/// Three side lengths satisfying the strict triangle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleSides<S = f64> {
    a: S,
    b: S,
    c: S,
}

impl<S: Scalar> TriangleSides<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        let (ea, eb, ec) = (a.estimate(), b.estimate(), c.estimate());
        for (v, name) in [(ea, "a"), (eb, "b"), (ec, "c")] {
            require_positive(v, &format!("side {name}"))?;
        }
        if ea >= eb + ec || eb >= ea + ec || ec >= ea + eb {
            return Err(GeomError::domain(format!(
                "sides ({ea}, {eb}, {ec}) violate the triangle inequality"
            )));
        }
        Ok(TriangleSides { a, b, c })
    }

    pub fn a(&self) -> S {
        self.a
    }

    pub fn b(&self) -> S {
        self.b
    }

    pub fn c(&self) -> S {
        self.c
    }
}

/// Heron's formula, evaluated in the cancellation-safe arrangement
/// `¼√((a+(b+c))(c−(a−b))(c+(a−b))(a+(b−c)))` with `a ≥ b ≥ c`.
pub fn triangle_area<S: Scalar>(t: &TriangleSides<S>) -> Result<S> {
    let mut s = [t.a, t.b, t.c];
    s.sort_by(|x, y| y.estimate().total_cmp(&x.estimate()));
    let [a, b, c] = s;
    let product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    Ok(scalar_sqrt(product)? * S::from_f64(0.25))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleClass {
    Acute,
    Right,
    Obtuse,
}

/// Everything the triangle solver derives from three sides. Per-vertex
/// arrays are ordered A, B, C (opposite sides a, b, c).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleMetrics {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub perimeter: f64,
    pub semi_perimeter: f64,
    pub area: f64,
    /// Projection of side c onto side a (adjacent to B).
    pub c_projection: f64,
    /// Projection of side b onto side a (adjacent to C).
    pub b_projection: f64,
    pub heights: [f64; 3],
    pub medians: [f64; 3],
    /// Interior angles in radians.
    pub angles: [f64; 3],
    pub angle_classes: [AngleClass; 3],
    pub circumradius: f64,
    pub inradius: f64,
    /// Pieces of the opposite side cut by each internal bisector, listed
    /// from the earlier vertex: (BD, DC) for A, (AD, DC) for B, (AD, DB) for C.
    pub bisector_splits: [(f64, f64); 3],
}

impl TriangleMetrics {
    pub fn angle_classification(&self) -> AngleClass {
        if self.angle_classes.contains(&AngleClass::Obtuse) {
            AngleClass::Obtuse
        } else if self.angle_classes.contains(&AngleClass::Right) {
            AngleClass::Right
        } else {
            AngleClass::Acute
        }
    }
}

/// Height onto side `a` from the sides, via the projection of `c` on `a`.
fn height_onto(a: f64, b: f64, c: f64) -> f64 {
    let k = a * a + c * c - b * b;
    (4.0 * a * a * c * c - k * k).max(0.0).sqrt() / (2.0 * a)
}

fn classify(opposite: f64, x: f64, y: f64, tol: &Tolerance) -> AngleClass {
    let lhs = opposite * opposite;
    let rhs = x * x + y * y;
    if tol.eq(lhs, rhs) {
        AngleClass::Right
    } else if lhs > rhs {
        AngleClass::Obtuse
    } else {
        AngleClass::Acute
    }
}

pub fn triangle_metrics(t: &TriangleSides) -> Result<TriangleMetrics> {
    let (a, b, c) = (t.a, t.b, t.c);
    let tol = Tolerance::default();
    let area = triangle_area(t)?;
    let perimeter = a + b + c;
    let p = perimeter / 2.0;
    let c_projection = (a * a + c * c - b * b) / (2.0 * a);
    let heights = [height_onto(a, b, c), height_onto(b, c, a), height_onto(c, a, b)];
    let median = |x: f64, y: f64, z: f64| 0.5 * (2.0 * y * y + 2.0 * z * z - x * x).max(0.0).sqrt();
    let cos_angle = |x: f64, y: f64, z: f64| ((y * y + z * z - x * x) / (2.0 * y * z)).clamp(-1.0, 1.0);
    Ok(TriangleMetrics {
        a,
        b,
        c,
        perimeter,
        semi_perimeter: p,
        area,
        c_projection,
        b_projection: a - c_projection,
        heights,
        medians: [median(a, b, c), median(b, c, a), median(c, a, b)],
        angles: [
            cos_angle(a, b, c).acos(),
            cos_angle(b, c, a).acos(),
            cos_angle(c, a, b).acos(),
        ],
        angle_classes: [
            classify(a, b, c, &tol),
            classify(b, c, a, &tol),
            classify(c, a, b, &tol),
        ],
        circumradius: b * c / (2.0 * heights[0]),
        inradius: area / p,
        bisector_splits: [
            (a * c / (b + c), a * b / (b + c)),
            (b * c / (a + c), b * a / (a + c)),
            (c * b / (a + b), c * a / (a + b)),
        ],
    })
}

/// Right triangle recovered from the projections of its legs on the hypotenuse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RightTriangle {
    /// Hypotenuse.
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Altitude onto the hypotenuse.
    pub h: f64,
    pub area: f64,
}

pub fn right_triangle_from_projections(b_projection: f64, c_projection: f64) -> Result<RightTriangle> {
    let bp = require_positive(b_projection, "projection b'")?;
    let cp = require_positive(c_projection, "projection c'")?;
    let a = bp + cp;
    let h = (bp * cp).sqrt();
    Ok(RightTriangle {
        a,
        b: (a * bp).sqrt(),
        c: (a * cp).sqrt(),
        h,
        area: 0.5 * a * h,
    })
}

/// Whether `d1² + d2² = 2(a² + b²)` holds within the default tolerance.
pub fn parallelogram_diagonals_check(a: f64, b: f64, d1: f64, d2: f64) -> Result<bool> {
    for (v, n) in [(a, "a"), (b, "b"), (d1, "d1"), (d2, "d2")] {
        require_positive(v, n)?;
    }
    Ok(Tolerance::default().eq(d1 * d1 + d2 * d2, 2.0 * (a * a + b * b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PolygonShape {
    Rectangle { width: f64, height: f64 },
    Parallelogram { base: f64, height: f64 },
    Triangle { base: f64, height: f64 },
    Rhombus { d1: f64, d2: f64 },
    Trapezoid { a: f64, b: f64, height: f64 },
    RegularPolygon { n: u64, circumradius: f64 },
    Circumscribed { perimeter: f64, inradius: f64 },
}

pub fn polygon_area(shape: &PolygonShape) -> Result<f64> {
    use PolygonShape::*;
    Ok(match *shape {
        Rectangle { width, height } => {
            require_positive(width, "width")? * require_positive(height, "height")?
        }
        Parallelogram { base, height } => {
            require_positive(base, "base")? * require_positive(height, "height")?
        }
        Triangle { base, height } => {
            0.5 * require_positive(base, "base")? * require_positive(height, "height")?
        }
        Rhombus { d1, d2 } => 0.5 * require_positive(d1, "d1")? * require_positive(d2, "d2")?,
        Trapezoid { a, b, height } => {
            0.5 * (require_positive(a, "a")? + require_positive(b, "b")?)
                * require_positive(height, "height")?
        }
        RegularPolygon { n, circumradius } => {
            if n < 3 {
                return Err(GeomError::domain(format!("a polygon needs at least 3 sides, got {n}")));
            }
            let r = require_positive(circumradius, "circumradius")?;
            0.5 * n as f64 * r * r * (TAU / n as f64).sin()
        }
        Circumscribed { perimeter, inradius } => {
            0.5 * require_positive(perimeter, "perimeter")? * require_positive(inradius, "inradius")?
        }
    })
}

/// Side of the regular `n`-gon inscribed in a circle of radius `r`. The
/// classical cases use their radical closed forms.
pub fn inscribed_side(n: u64, r: f64) -> Result<f64> {
    if n < 3 {
        return Err(GeomError::domain(format!("a polygon needs at least 3 sides, got {n}")));
    }
    let r = require_positive(r, "radius")?;
    let s5 = 5f64.sqrt();
    Ok(r * match n {
        3 => 3f64.sqrt(),
        4 => 2f64.sqrt(),
        5 => 0.5 * (10.0 - 2.0 * s5).sqrt(),
        6 => 1.0,
        8 => (2.0 - 2f64.sqrt()).sqrt(),
        10 => (s5 - 1.0) / 2.0,
        12 => (2.0 - 3f64.sqrt()).sqrt(),
        _ => 2.0 * (PI / n as f64).sin(),
    })
}

/// Side of the doubled inscribed polygon, `s₂ₙ = s·√(R / (2R + √(4R² − s²)))`.
pub fn double_inscribed_side(side: f64, r: f64) -> Result<f64> {
    let r = require_positive(r, "radius")?;
    let s = require_positive(side, "side")?;
    if s > 2.0 * r {
        return Err(GeomError::domain("a chord cannot exceed the diameter"));
    }
    Ok(s * (r / (2.0 * r + (4.0 * r * r - s * s).sqrt())).sqrt())
}

/// Side of the circumscribed polygon with the same number of sides as the
/// inscribed one of side `side`.
pub fn circumscribed_side(side: f64, r: f64) -> Result<f64> {
    let r = require_positive(r, "radius")?;
    let s = require_positive(side, "side")?;
    if s >= 2.0 * r {
        return Err(GeomError::domain("the inscribed side must be shorter than the diameter"));
    }
    Ok(2.0 * r * s / (4.0 * r * r - s * s).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recurrence {
    /// `a₂ₙ² = 2 − 2√(1 − aₙ²/4)`, as printed; loses digits to cancellation.
    Naive,
    /// `a₂ₙ² = aₙ² / (2 + 2√(1 − aₙ²/4))`, the same value without cancellation.
    Stabilized,
}

/// Doublings beyond this count are refused: by then the naive recurrence
/// has lost every significant digit.
pub const PI_MAX_ROUNDS: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiRow<S = f64> {
    pub n: u64,
    pub side: S,
    pub perimeter: S,
}

impl PiRow<f64> {
    /// `p_n / 2`, the estimate of π on the unit circle.
    pub fn pi_estimate(&self) -> f64 {
        self.perimeter / 2.0
    }

    pub fn error(&self) -> f64 {
        self.pi_estimate() - PI
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiTable<S = f64> {
    pub recurrence: Recurrence,
    pub rows: Vec<PiRow<S>>,
}

/// Inscribed-polygon perimeters on the unit circle from the hexagon up,
/// in any scalar backend.
pub fn pi_doubling_table_in<S: Scalar>(rounds: u32, recurrence: Recurrence) -> Result<PiTable<S>> {
    if rounds > PI_MAX_ROUNDS {
        return Err(GeomError::domain(format!(
            "at most {PI_MAX_ROUNDS} doublings are supported, got {rounds}"
        )));
    }
    let one = S::from_f64(1.0);
    let two = S::from_f64(2.0);
    let quarter = S::from_f64(0.25);
    let mut n = 6u64;
    let mut side = one;
    let mut rows = vec![PiRow {
        n,
        side,
        perimeter: S::from_f64(6.0),
    }];
    for _ in 0..rounds {
        let root = scalar_sqrt(one - side * side * quarter)?;
        let squared = match recurrence {
            Recurrence::Naive => two - two * root,
            Recurrence::Stabilized => side * side / (two + two * root),
        };
        side = scalar_sqrt(squared)?;
        n *= 2;
        rows.push(PiRow {
            n,
            side,
            perimeter: S::from_f64(n as f64) * side,
        });
    }
    Ok(PiTable { recurrence, rows })
}

pub fn pi_doubling_table(rounds: u32, recurrence: Recurrence) -> Result<PiTable> {
    pi_doubling_table_in::<f64>(rounds, recurrence)
}

fn check_radius_angle(r: f64, alpha: f64) -> Result<()> {
    require_positive(r, "radius")?;
    if !(alpha > 0.0 && alpha <= TAU) {
        return Err(GeomError::domain(format!(
            "angle must lie in (0, 2π], got {alpha} rad"
        )));
    }
    Ok(())
}

/// `s = αR`.
pub fn arc_length(r: f64, angle: AngleMeasure) -> Result<f64> {
    check_radius_angle(r, angle.radians())?;
    Ok(angle.radians() * r)
}

pub fn arc_length_degrees(r: f64, degrees: f64) -> Result<f64> {
    arc_length(r, AngleMeasure::from_degrees(degrees))
}

/// `αR²/2`.
pub fn sector_area(r: f64, angle: AngleMeasure) -> Result<f64> {
    check_radius_angle(r, angle.radians())?;
    Ok(angle.radians() * r * r / 2.0)
}

pub fn sector_area_degrees(r: f64, degrees: f64) -> Result<f64> {
    sector_area(r, AngleMeasure::from_degrees(degrees))
}

/// Radius of the circle on which an arc of length `s` spans `angle`.
pub fn radius_from_arc(s: f64, angle: AngleMeasure) -> Result<f64> {
    let s = require_positive(s, "arc length")?;
    check_radius_angle(1.0, angle.radians())?;
    Ok(s / angle.radians())
}

/// Central angle of an arc of length `s` on a circle of radius `r`.
pub fn angle_from_arc(s: f64, r: f64) -> Result<AngleMeasure> {
    let s = require_positive(s, "arc length")?;
    let r = require_positive(r, "radius")?;
    Ok(AngleMeasure::from_radians(s / r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentMethod {
    Exact,
    /// `⅔·b·h` from chord `b` and sagitta `h`.
    Approx1,
    /// `⅔·b·h + h³/(2b)`.
    Approx2,
}

pub fn chord_and_sagitta(r: f64, alpha: f64) -> (f64, f64) {
    let half = alpha / 2.0;
    (2.0 * r * half.sin(), r * (1.0 - half.cos()))
}

/// Area of the circular segment cut off by a central angle `angle`.
pub fn segment_area(r: f64, angle: AngleMeasure, method: SegmentMethod) -> Result<f64> {
    let alpha = angle.radians();
    check_radius_angle(r, alpha)?;
    if alpha >= TAU {
        return Err(GeomError::domain("a segment needs an angle below 2π"));
    }
    Ok(match method {
        SegmentMethod::Exact if alpha < PI => 0.5 * r * r * (alpha - alpha.sin()),
        SegmentMethod::Exact => {
            let minor = TAU - alpha;
            PI * r * r - 0.5 * r * r * (minor - minor.sin())
        }
        SegmentMethod::Approx1 => {
            let (b, h) = chord_and_sagitta(r, alpha);
            2.0 / 3.0 * b * h
        }
        SegmentMethod::Approx2 => {
            let (b, h) = chord_and_sagitta(r, alpha);
            2.0 / 3.0 * b * h + h * h * h / (2.0 * b)
        }
    })
}

/// Locus of points M with `MA : MB = m : n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ApolloniusLocus {
    Circle {
        circle: Circle,
        /// Divides AB internally in the ratio m:n.
        internal: Point,
        /// Divides AB externally in the ratio m:n.
        external: Point,
    },
    PerpendicularBisector(Line),
}

pub fn apollonius_circle(a: &Point, b: &Point, m: f64, n: f64) -> Result<ApolloniusLocus> {
    let m = require_positive(m, "m")?;
    let n = require_positive(n, "n")?;
    let tol = Tolerance::default();
    if a.distance(b) <= tol.window(a.norm().max(b.norm())) {
        return Err(GeomError::domain("the two fixed points coincide"));
    }
    let ab = *b - *a;
    if tol.eq(m, n) {
        let mid = a.midpoint(b);
        return Ok(ApolloniusLocus::PerpendicularBisector(line_through(
            &mid,
            &(mid + ab.perp()),
            &tol,
        )?));
    }
    let internal = *a + ab * (m / (m + n));
    let external = *a + ab * (m / (m - n));
    let circle = Circle::new(internal.midpoint(&external), internal.distance(&external) / 2.0)?;
    Ok(ApolloniusLocus::Circle {
        circle,
        internal,
        external,
    })
}

/// `(2ab, a² − b², a² + b²)` for integers `a > b ≥ 1`.
pub fn pythagorean_triple(a: u64, b: u64) -> Result<(u64, u64, u64)> {
    if b < 1 || a <= b {
        return Err(GeomError::domain(format!("need a > b ≥ 1, got a={a}, b={b}")));
    }
    let overflow = || GeomError::domain("triple does not fit in 64 bits");
    let aa = a.checked_mul(a).ok_or_else(overflow)?;
    let bb = b * b;
    let x = a.checked_mul(b).and_then(|p| p.checked_mul(2)).ok_or_else(overflow)?;
    let z = aa.checked_add(bb).ok_or_else(overflow)?;
    Ok((x, aa - bb, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dms_to_radians, Interval};
    use approx::assert_relative_eq;

    fn sides(a: f64, b: f64, c: f64) -> TriangleSides {
        TriangleSides::new(a, b, c).unwrap()
    }

    #[test]
    fn heron_examples() {
        assert_relative_eq!(triangle_area(&sides(1.0, 1.0, 1.0)).unwrap(), 3f64.sqrt() / 4.0, max_relative = 1e-15);
        assert_relative_eq!(triangle_area(&sides(3.0, 4.0, 5.0)).unwrap(), 6.0, max_relative = 1e-15);
        assert_relative_eq!(triangle_area(&sides(2.0, 2.0, 2.0)).unwrap(), 3f64.sqrt(), max_relative = 1e-15);
        assert!(TriangleSides::new(1.0, 1.0, 3.0).is_err());
        assert!(TriangleSides::new(1.0, 2.0, 3.0).is_err());
        assert!(TriangleSides::new(0.0, 2.0, 2.0).is_err());
    }

    #[test]
    fn heron_interval_encloses() {
        let t = TriangleSides::new(Interval::point(3.0), Interval::point(4.0), Interval::point(5.0)).unwrap();
        assert!(triangle_area(&t).unwrap().encloses(6.0));
        let t = TriangleSides::new(Interval::point(1.0), Interval::point(1.0), Interval::point(1.0)).unwrap();
        let s = triangle_area(&t).unwrap();
        assert!(s.encloses(3f64.sqrt() / 4.0));
        assert!(s.width() < 1e-14);
    }

    #[test]
    fn right_triangle_metrics() {
        let m = triangle_metrics(&sides(3.0, 4.0, 5.0)).unwrap();
        assert_eq!(m.angle_classes, [AngleClass::Acute, AngleClass::Acute, AngleClass::Right]);
        assert_eq!(m.angle_classification(), AngleClass::Right);
        assert_relative_eq!(m.circumradius, 2.5, max_relative = 1e-12);
        assert_relative_eq!(m.inradius, 1.0, max_relative = 1e-12);
        assert_relative_eq!(m.angles.iter().sum::<f64>(), PI, max_relative = 1e-12);
        // the height onto the hypotenuse c is ab/c
        assert_relative_eq!(m.heights[2], 12.0 / 5.0, max_relative = 1e-12);
        // median to the hypotenuse is half of it
        assert_relative_eq!(m.medians[2], 2.5, max_relative = 1e-12);
    }

    #[test]
    fn bisector_split_example() {
        // AB = 10, BC = 7, AC = 6: a = BC, b = AC, c = AB.
        let m = triangle_metrics(&sides(7.0, 6.0, 10.0)).unwrap();
        let (ad, dc) = m.bisector_splits[1];
        assert!((ad - 60.0 / 17.0).abs() < 1e-12);
        assert!((ad + dc - 6.0).abs() < 1e-12);
    }

    #[test]
    fn obtuse_classification() {
        let m = triangle_metrics(&sides(7.0, 6.0, 10.0)).unwrap();
        assert_eq!(m.angle_classification(), AngleClass::Obtuse);
        assert_eq!(m.angle_classes[2], AngleClass::Obtuse);
    }

    #[test]
    fn projections_example() {
        let t = right_triangle_from_projections(5.0, 7.0).unwrap();
        assert_eq!(t.a, 12.0);
        assert!((t.c - 9.165).abs() < 5e-4);
        assert!((t.h - 5.916).abs() < 5e-4);
        // printed as 7.745, which is sqrt(60) = 7.74597 cut to three places
        assert!((t.b - 60f64.sqrt()).abs() < 1e-15);
        assert_eq!((t.b * 1000.0).floor() / 1000.0, 7.745);
        // cross-check with the general solver: the projection of c onto a is c'
        let m = triangle_metrics(&sides(t.a, t.b, t.c)).unwrap();
        assert!((m.c_projection - 7.0).abs() < 1e-12);
        assert!((m.heights[0] - t.h).abs() < 1e-12);
    }

    #[test]
    fn parallelogram_law() {
        let r2 = 2f64.sqrt();
        assert!(parallelogram_diagonals_check(1.0, 1.0, r2, r2).unwrap());
        assert!(parallelogram_diagonals_check(3.0, 4.0, 5.0, 5.0).unwrap());
        assert!(!parallelogram_diagonals_check(1.0, 1.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn polygon_areas() {
        let a = polygon_area(&PolygonShape::Rectangle { width: 3.5, height: 4.6 }).unwrap();
        assert!((a - 16.1).abs() < 1e-12);
        assert_eq!(polygon_area(&PolygonShape::Trapezoid { a: 2.0, b: 4.0, height: 3.0 }).unwrap(), 9.0);
        assert_eq!(polygon_area(&PolygonShape::Rectangle { width: 1.0, height: 1.0 }).unwrap(), 1.0);
        assert_eq!(polygon_area(&PolygonShape::Rhombus { d1: 2.0, d2: 3.0 }).unwrap(), 3.0);
        let hex = polygon_area(&PolygonShape::RegularPolygon { n: 6, circumradius: 1.0 }).unwrap();
        assert_relative_eq!(hex, 6.0 * 3f64.sqrt() / 4.0, max_relative = 1e-12);
        // square circumscribed about a unit circle: perimeter 8
        let sq = polygon_area(&PolygonShape::Circumscribed { perimeter: 8.0, inradius: 1.0 }).unwrap();
        assert_eq!(sq, 4.0);
        assert!(polygon_area(&PolygonShape::Triangle { base: -1.0, height: 1.0 }).is_err());
    }

    #[test]
    fn inscribed_sides_match_sine_form() {
        for n in [3, 4, 5, 6, 8, 10, 12, 15, 24] {
            let s = inscribed_side(n, 2.0).unwrap();
            assert_relative_eq!(s, 4.0 * (PI / n as f64).sin(), max_relative = 1e-14);
        }
        assert!((inscribed_side(10, 1.0).unwrap() - 0.618_033_988_7).abs() < 1e-9);
        assert!((inscribed_side(12, 1.0).unwrap() - 0.517_638_090_2).abs() < 1e-9);
        let s12 = double_inscribed_side(inscribed_side(6, 1.0).unwrap(), 1.0).unwrap();
        assert_relative_eq!(s12, inscribed_side(12, 1.0).unwrap(), max_relative = 1e-14);
        assert_relative_eq!(
            circumscribed_side(1.0, 1.0).unwrap(),
            2.0 * (PI / 6.0).tan(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn pi_table_examples() {
        let t = pi_doubling_table(5, Recurrence::Naive).unwrap();
        let r96 = &t.rows[4];
        assert_eq!(r96.n, 96);
        assert!((r96.perimeter - 6.282_063_8).abs() < 1e-6);
        assert_eq!(t.rows[5].n, 192);
        assert!((t.rows[5].pi_estimate() - 3.141_452_47).abs() < 1e-7);
        let zero = pi_doubling_table(0, Recurrence::Stabilized).unwrap();
        assert_eq!(zero.rows, vec![PiRow { n: 6, side: 1.0, perimeter: 6.0 }]);
        assert!(pi_doubling_table(25, Recurrence::Naive).is_err());
    }

    #[test]
    fn pi_table_interval_encloses_float() {
        let t = pi_doubling_table_in::<Interval>(12, Recurrence::Stabilized).unwrap();
        let f = pi_doubling_table(12, Recurrence::Stabilized).unwrap();
        for (i, r) in t.rows.iter().zip(&f.rows) {
            assert!(i.perimeter.encloses(r.perimeter));
            assert!(i.perimeter.hi() < PI * 2.0 + 1e-9);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn arc_and_sector() {
        assert_relative_eq!(arc_length(2.0, AngleMeasure::from_radians(TAU)).unwrap(), 4.0 * PI);
        assert_relative_eq!(sector_area(2.0, AngleMeasure::from_radians(TAU)).unwrap(), 4.0 * PI);
        assert_relative_eq!(arc_length_degrees(3.0, 90.0).unwrap(), 1.5 * PI, max_relative = 1e-15);
        assert_relative_eq!(sector_area_degrees(3.0, 90.0).unwrap(), 9.0 * PI / 4.0, max_relative = 1e-15);
        let angle = dms_to_radians(81, 21, 36.0).unwrap();
        let r = radius_from_arc(0.452, angle).unwrap();
        assert!((r - 1.0 / PI).abs() < 1e-3);
        assert!((r - 0.318).abs() < 5e-4);
        let one = angle_from_arc(2.0, 2.0).unwrap().to_dms();
        assert_eq!((one.degrees, one.minutes), (57, 17));
        assert!((one.seconds - 44.8).abs() < 1.0);
        assert!(arc_length(1.0, AngleMeasure::from_radians(7.0)).is_err());
        assert!(arc_length(0.0, AngleMeasure::from_radians(1.0)).is_err());
    }

    #[test]
    fn segment_approximations_at_sixty_degrees() {
        let a = AngleMeasure::from_degrees(60.0);
        let exact = segment_area(1.0, a, SegmentMethod::Exact).unwrap();
        let one = segment_area(1.0, a, SegmentMethod::Approx1).unwrap();
        let two = segment_area(1.0, a, SegmentMethod::Approx2).unwrap();
        assert!((exact - 0.0906).abs() < 5e-5);
        assert!((one - 0.0893).abs() < 5e-5);
        assert!((two - 0.0905).abs() < 5e-5);
        assert!(((exact - one) / exact - 0.014).abs() < 0.002);
        assert!(((exact - two) / exact - 0.001).abs() < 0.002);
    }

    #[test]
    fn major_segment_uses_complement() {
        let r = 1.5;
        for deg in [30.0, 90.0, 150.0] {
            let minor = segment_area(r, AngleMeasure::from_degrees(deg), SegmentMethod::Exact).unwrap();
            let major = segment_area(r, AngleMeasure::from_degrees(360.0 - deg), SegmentMethod::Exact).unwrap();
            assert_relative_eq!(minor + major, PI * r * r, max_relative = 1e-14);
        }
        let half = segment_area(1.0, AngleMeasure::from_radians(PI), SegmentMethod::Exact).unwrap();
        assert_relative_eq!(half, PI / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn apollonius_examples() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(3.0, 0.0);
        match apollonius_circle(&a, &b, 2.0, 1.0).unwrap() {
            ApolloniusLocus::Circle { circle, internal, external } => {
                assert!(internal.distance(&Point::new(2.0, 0.0)) < 1e-12);
                assert!(external.distance(&Point::new(6.0, 0.0)) < 1e-12);
                assert!(circle.center().distance(&Point::new(4.0, 0.0)) < 1e-12);
                assert!((circle.radius() - 2.0).abs() < 1e-12);
                for k in 0..10 {
                    let m = circle.point_at(k as f64 * 0.6 + 0.1);
                    assert!((m.distance(&a) / m.distance(&b) - 2.0).abs() < 1e-7);
                }
            }
            other => panic!("{other:?}"),
        }
        match apollonius_circle(&a, &b, 1.0, 1.0).unwrap() {
            ApolloniusLocus::PerpendicularBisector(l) => {
                assert!(l.contains(&Point::new(1.5, 7.0), &Tolerance::default()))
            }
            other => panic!("{other:?}"),
        }
        assert!(apollonius_circle(&a, &a, 2.0, 1.0).is_err());
    }

    #[test]
    fn triples() {
        assert_eq!(pythagorean_triple(2, 1).unwrap(), (4, 3, 5));
        assert_eq!(pythagorean_triple(3, 2).unwrap(), (12, 5, 13));
        assert!(pythagorean_triple(2, 2).is_err());
        assert!(pythagorean_triple(1 << 40, 1).is_err());
    }
}
