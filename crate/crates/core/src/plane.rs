//! Plane primitives and their intersections.
//!
//! Lines are kept in normalized implicit form `a·x + b·y + c = 0` with
//! `a² + b² = 1`, so incidence is a single residual and the residual is the
//! signed distance.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::scalar::{AngleMeasure, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, theta: f64) -> Self {
        Point::new(radius * theta.cos(), radius * theta.sin())
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(&self, other: &Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn perp(&self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Direction angle of the vector from `self` to `to`, in `(-π, π]`.
    pub fn bearing(&self, to: &Point) -> f64 {
        (to.y - self.y).atan2(to.x - self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Lexicographic `(x, y)` ordering where `x` values inside the tolerance
/// window count as equal.
pub fn order_points(points: &mut [Point], tol: &Tolerance) {
    points.sort_by(|p, q| {
        if tol.eq(p.x, q.x) {
            p.y.partial_cmp(&q.y).unwrap_or(Ordering::Equal)
        } else {
            p.x.partial_cmp(&q.x).unwrap_or(Ordering::Equal)
        }
    });
}

/// Angle `AOB` in `[0, π]`.
pub fn angle_at(a: &Point, o: &Point, b: &Point) -> f64 {
    let u = *a - *o;
    let v = *b - *o;
    u.cross(&v).abs().atan2(u.dot(&v))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    /// Builds a line from raw coefficients, normalizing them.
    pub fn from_coefficients(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 0.0 && n.is_finite() && c.is_finite()) {
            return Err(GeomError::degenerate(format!(
                "line coefficients ({a}, {b}, {c}) do not describe a line"
            )));
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// Unit direction vector.
    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn contains(&self, p: &Point, tol: &Tolerance) -> bool {
        self.signed_distance(p).abs() <= tol.window(p.norm())
    }

    pub fn through_point_with_direction(p: &Point, dir: &Point) -> Result<Self> {
        let n = dir.perp();
        Line::from_coefficients(n.x, n.y, -(n.x * p.x + n.y * p.y))
    }
}

/// The unique line through two distinct points.
pub fn line_through(p: &Point, q: &Point, tol: &Tolerance) -> Result<Line> {
    if p.distance(q) <= tol.window(p.norm().max(q.norm())) {
        return Err(GeomError::degenerate(format!(
            "points ({}, {}) and ({}, {}) coincide; no unique line",
            p.x, p.y, q.x, q.y
        )));
    }
    Line::through_point_with_direction(p, &(*q - *p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LineIntersection {
    Point(Point),
    Parallel,
    Coincident,
}

pub fn intersect_line_line(l1: &Line, l2: &Line, tol: &Tolerance) -> LineIntersection {
    let det = l1.a * l2.b - l2.a * l1.b;
    if det.abs() <= tol.abs_eps() {
        let offset = if l1.a * l2.a + l1.b * l2.b > 0.0 {
            l1.c - l2.c
        } else {
            l1.c + l2.c
        };
        return if offset.abs() <= tol.window(l1.c.abs().max(l2.c.abs())) {
            LineIntersection::Coincident
        } else {
            LineIntersection::Parallel
        };
    }
    let x = (l1.b * l2.c - l2.b * l1.c) / det;
    let y = (l2.a * l1.c - l1.a * l2.c) / det;
    LineIntersection::Point(Point::new(x, y))
}

pub fn foot_of_perpendicular(p: &Point, l: &Line) -> Point {
    *p - l.normal() * l.signed_distance(p)
}

pub fn distance_point_line(p: &Point, l: &Line) -> f64 {
    l.signed_distance(p).abs()
}

pub fn reflect_point(p: &Point, l: &Line) -> Point {
    *p - l.normal() * (2.0 * l.signed_distance(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    center: Point,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(GeomError::degenerate(format!(
                "circle needs a finite center and positive radius, got radius {radius}"
            )));
        }
        Ok(Circle { center, radius })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::polar(self.radius, theta)
    }

    pub fn contains(&self, p: &Point, tol: &Tolerance) -> bool {
        (self.center.distance(p) - self.radius).abs() <= tol.window(self.radius)
    }
}

/// `d² − R²`: negative inside, zero on, positive outside the circle.
pub fn point_power(c: &Circle, p: &Point) -> f64 {
    let d = c.center.distance(p);
    (d - c.radius) * (d + c.radius)
}

pub fn intersect_line_circle(l: &Line, c: &Circle, tol: &Tolerance) -> Vec<Point> {
    let d = l.signed_distance(&c.center);
    let foot = c.center - l.normal() * d;
    let gap = d.abs() - c.radius;
    if gap.abs() <= tol.window(c.radius) {
        return vec![foot];
    }
    if gap > 0.0 {
        return Vec::new();
    }
    let half_chord = ((c.radius - d) * (c.radius + d)).sqrt();
    let dir = l.direction();
    let mut pts = vec![foot - dir * half_chord, foot + dir * half_chord];
    order_points(&mut pts, tol);
    pts
}

/// Relative position of two circles, by comparing the center distance with
/// the sum and difference of the radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleRelation {
    ExternalDisjoint,
    ExternalTangent,
    Intersecting,
    InternalTangent,
    InternalDisjoint,
    Concentric,
}

impl CircleRelation {
    pub fn as_str(&self) -> &'static str {
        match self {
            CircleRelation::ExternalDisjoint => "external-disjoint",
            CircleRelation::ExternalTangent => "external-tangent",
            CircleRelation::Intersecting => "intersecting",
            CircleRelation::InternalTangent => "internal-tangent",
            CircleRelation::InternalDisjoint => "internal-disjoint",
            CircleRelation::Concentric => "concentric",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleIntersection {
    pub relation: CircleRelation,
    pub points: Vec<Point>,
}

pub fn classify_circles(c1: &Circle, c2: &Circle, tol: &Tolerance) -> Result<CircleRelation> {
    let d = c1.center.distance(&c2.center);
    let w = tol.window(c1.radius.max(c2.radius));
    let sum = c1.radius + c2.radius;
    let diff = (c1.radius - c2.radius).abs();
    if d <= w {
        if diff <= w {
            return Err(GeomError::degenerate("the two circles coincide"));
        }
        return Ok(CircleRelation::Concentric);
    }
    Ok(if (d - sum).abs() <= w {
        CircleRelation::ExternalTangent
    } else if d > sum {
        CircleRelation::ExternalDisjoint
    } else if (d - diff).abs() <= w {
        CircleRelation::InternalTangent
    } else if d < diff {
        CircleRelation::InternalDisjoint
    } else {
        CircleRelation::Intersecting
    })
}

pub fn intersect_circle_circle(
    c1: &Circle,
    c2: &Circle,
    tol: &Tolerance,
) -> Result<CircleIntersection> {
    let relation = classify_circles(c1, c2, tol)?;
    let offset = c2.center - c1.center;
    let d = offset.norm();
    let points = match relation {
        CircleRelation::ExternalDisjoint
        | CircleRelation::InternalDisjoint
        | CircleRelation::Concentric => Vec::new(),
        CircleRelation::ExternalTangent => {
            vec![c1.center + offset * (c1.radius / d)]
        }
        CircleRelation::InternalTangent => {
            let sign = if c1.radius >= c2.radius { 1.0 } else { -1.0 };
            vec![c1.center + offset * (sign * c1.radius / d)]
        }
        CircleRelation::Intersecting => {
            let along = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
            let half_chord = ((c1.radius - along) * (c1.radius + along)).max(0.0).sqrt();
            let u = offset * (1.0 / d);
            let base = c1.center + u * along;
            let mut pts = vec![base + u.perp() * half_chord, base - u.perp() * half_chord];
            order_points(&mut pts, tol);
            pts
        }
    };
    Ok(CircleIntersection { relation, points })
}

/// Arc running counterclockwise from `start` through `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    circle: Circle,
    start: AngleMeasure,
    sweep: AngleMeasure,
}

impl Arc {
    pub fn new(circle: Circle, start: AngleMeasure, sweep: AngleMeasure) -> Result<Self> {
        let s = sweep.radians();
        if !(s > 0.0 && s <= TAU * (1.0 + 1e-15)) {
            return Err(GeomError::domain(format!(
                "arc sweep must lie in (0, 2π], got {s}"
            )));
        }
        Ok(Arc {
            circle,
            start,
            sweep,
        })
    }

    pub fn circle(&self) -> &Circle {
        &self.circle
    }

    pub fn start(&self) -> AngleMeasure {
        self.start
    }

    pub fn sweep(&self) -> AngleMeasure {
        self.sweep
    }

    /// Point at fraction `t ∈ [0, 1]` along the arc.
    pub fn point_at(&self, t: f64) -> Point {
        self.circle
            .point_at(self.start.radians() + t * self.sweep.radians())
    }

    pub fn length(&self) -> f64 {
        self.circle.radius * self.sweep.radians()
    }

    /// Whether the bearing of `p` from the center falls inside the sweep.
    pub fn spans(&self, p: &Point, tol: &Tolerance) -> bool {
        let theta = self.circle.center.bearing(p);
        let rel = (theta - self.start.radians()).rem_euclid(TAU);
        let slack = tol.abs_eps() / self.circle.radius;
        rel <= self.sweep.radians() + slack || rel >= TAU - slack
    }

    pub fn contains(&self, p: &Point, tol: &Tolerance) -> bool {
        self.circle.contains(p, tol) && self.spans(p, tol)
    }
}

/// Normalizes an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Interior angle of a regular `n`-gon, in radians.
pub fn regular_interior_angle(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(GeomError::domain(format!("a polygon needs at least 3 sides, got {n}")));
    }
    Ok(PI * (n as f64 - 2.0) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn close(p: Point, x: f64, y: f64) -> bool {
        (p.x - x).abs() < 1e-12 && (p.y - y).abs() < 1e-12
    }

    #[test]
    fn axis_lines() {
        let l = line_through(&Point::new(0.0, 0.0), &Point::new(1.0, 0.0), &tol()).unwrap();
        assert_eq!(l.coefficients(), (0.0, 1.0, 0.0));
        let l = line_through(&Point::new(0.0, 0.0), &Point::new(0.0, 1.0), &tol()).unwrap();
        assert_eq!(l.coefficients(), (1.0, 0.0, 0.0));
    }

    #[test]
    fn diagonal_line_residuals() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(1.0, 1.0);
        let l = line_through(&p, &q, &tol()).unwrap();
        let (a, b, c) = l.coefficients();
        assert!((a * a + b * b - 1.0).abs() < 1e-15);
        assert!(a > 0.0);
        assert!(l.signed_distance(&p).abs() < 1e-12);
        assert!(l.signed_distance(&q).abs() < 1e-12);
        assert!((a.abs() - 1.0 / 2f64.sqrt()).abs() < 1e-15 && c == 0.0);
    }

    #[test]
    fn coincident_points_have_no_line() {
        let p = Point::new(1.0, 1.0);
        assert!(matches!(
            line_through(&p, &p, &tol()),
            Err(GeomError::Degenerate(_))
        ));
    }

    #[test]
    fn line_line_cases() {
        let t = tol();
        let x0 = Line::from_coefficients(1.0, 0.0, 0.0).unwrap();
        let y0 = Line::from_coefficients(0.0, 1.0, 0.0).unwrap();
        let y1 = Line::from_coefficients(0.0, 1.0, -1.0).unwrap();
        assert_eq!(
            intersect_line_line(&x0, &y0, &t),
            LineIntersection::Point(Point::new(0.0, 0.0))
        );
        assert_eq!(intersect_line_line(&y0, &y1, &t), LineIntersection::Parallel);
        let y0_flipped = Line::from_coefficients(0.0, -2.0, 0.0).unwrap();
        assert_eq!(intersect_line_line(&y0, &y0_flipped, &t), LineIntersection::Coincident);
        // y = x and y = -x + 2
        let a = Line::from_coefficients(1.0, -1.0, 0.0).unwrap();
        let b = Line::from_coefficients(1.0, 1.0, -2.0).unwrap();
        match intersect_line_line(&a, &b, &t) {
            LineIntersection::Point(p) => assert!(close(p, 1.0, 1.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn line_circle_trichotomy() {
        let t = tol();
        let unit = Circle::new(Point::ORIGIN, 1.0).unwrap();
        let diam = Line::from_coefficients(0.0, 1.0, 0.0).unwrap();
        let pts = intersect_line_circle(&diam, &unit, &t);
        assert_eq!(pts.len(), 2);
        assert!(close(pts[0], -1.0, 0.0) && close(pts[1], 1.0, 0.0));
        let tangent = Line::from_coefficients(0.0, 1.0, -1.0).unwrap();
        let pts = intersect_line_circle(&tangent, &unit, &t);
        assert_eq!(pts.len(), 1);
        assert!(close(pts[0], 0.0, 1.0));
        let outside = Line::from_coefficients(0.0, 1.0, -2.0).unwrap();
        assert!(intersect_line_circle(&outside, &unit, &t).is_empty());
    }

    #[test]
    fn circle_circle_cases() {
        let t = tol();
        let c = |x: f64, r: f64| Circle::new(Point::new(x, 0.0), r).unwrap();
        let res = intersect_circle_circle(&c(0.0, 1.0), &c(1.0, 1.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::Intersecting);
        let h = 3f64.sqrt() / 2.0;
        assert!(close(res.points[0], 0.5, -h));
        assert!(close(res.points[1], 0.5, h));

        let res = intersect_circle_circle(&c(0.0, 1.0), &c(2.0, 1.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::ExternalTangent);
        assert_eq!(res.points.len(), 1);
        assert!(close(res.points[0], 1.0, 0.0));

        let res = intersect_circle_circle(&c(0.0, 2.0), &c(0.5, 1.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::InternalDisjoint);
        assert!(res.points.is_empty());

        let res = intersect_circle_circle(&c(0.0, 2.0), &c(1.0, 1.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::InternalTangent);
        assert!(close(res.points[0], 2.0, 0.0));
        let res = intersect_circle_circle(&c(0.0, 1.0), &c(1.0, 2.0), &t).unwrap();
        assert!(close(res.points[0], -1.0, 0.0));

        let res = intersect_circle_circle(&c(0.0, 1.0), &c(5.0, 1.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::ExternalDisjoint);
        let res = intersect_circle_circle(&c(0.0, 1.0), &c(0.0, 3.0), &t).unwrap();
        assert_eq!(res.relation, CircleRelation::Concentric);
        assert!(matches!(
            intersect_circle_circle(&c(0.0, 1.0), &c(0.0, 1.0), &t),
            Err(GeomError::Degenerate(_))
        ));
    }

    #[test]
    fn perpendicular_foot_and_distance() {
        let y0 = Line::from_coefficients(0.0, 1.0, 0.0).unwrap();
        let p = Point::new(0.0, 2.0);
        assert!(close(foot_of_perpendicular(&p, &y0), 0.0, 0.0));
        assert_eq!(distance_point_line(&p, &y0), 2.0);
        assert_eq!(distance_point_line(&Point::new(5.0, 0.0), &y0), 0.0);
        let x0 = Line::from_coefficients(1.0, 0.0, 0.0).unwrap();
        let q = Point::new(3.0, 4.0);
        assert!(close(foot_of_perpendicular(&q, &x0), 0.0, 4.0));
        assert_eq!(distance_point_line(&q, &x0), 3.0);
    }

    #[test]
    fn reflections() {
        let y0 = Line::from_coefficients(0.0, 1.0, 0.0).unwrap();
        assert!(close(reflect_point(&Point::new(0.0, 1.0), &y0), 0.0, -1.0));
        assert!(close(reflect_point(&Point::new(4.0, 0.0), &y0), 4.0, 0.0));
        let diag = Line::from_coefficients(1.0, -1.0, 0.0).unwrap();
        assert!(close(reflect_point(&Point::new(2.0, 3.0), &diag), 3.0, 2.0));
    }

    #[test]
    fn power_of_point() {
        let unit = Circle::new(Point::ORIGIN, 1.0).unwrap();
        assert_eq!(point_power(&unit, &Point::ORIGIN), -1.0);
        assert!(point_power(&unit, &Point::polar(1.0, 0.7)).abs() < 1e-15);
        let p = Point::new(2.0, 0.0);
        assert!((point_power(&unit, &p) - 3.0).abs() < 1e-15);
        // tangent length sqrt(3) by Pythagoras on the right triangle O-T-P
        let tangent_len = (p.norm().powi(2) - 1.0).sqrt();
        assert!((tangent_len.powi(2) - point_power(&unit, &p)).abs() < 1e-15);
    }

    #[test]
    fn circle_rejects_bad_radius() {
        assert!(Circle::new(Point::ORIGIN, 0.0).is_err());
        assert!(Circle::new(Point::ORIGIN, -1.0).is_err());
    }

    #[test]
    fn arc_membership() {
        let t = tol();
        let c = Circle::new(Point::ORIGIN, 1.0).unwrap();
        let upper = Arc::new(c, AngleMeasure::from_radians(0.0), AngleMeasure::from_radians(PI)).unwrap();
        assert!(upper.contains(&Point::new(0.0, 1.0), &t));
        assert!(!upper.contains(&Point::new(0.0, -1.0), &t));
        assert!(upper.contains(&Point::new(1.0, 0.0), &t));
        assert!(Arc::new(c, AngleMeasure::from_radians(0.0), AngleMeasure::from_radians(0.0)).is_err());
    }

    #[test]
    fn octagon_interior_angle() {
        let a = regular_interior_angle(8).unwrap();
        assert!((a.to_degrees() - 135.0).abs() < 1e-12);
        assert!(regular_interior_angle(2).is_err());
    }
}
