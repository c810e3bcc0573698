//! Seeded randomized property suites: theorems of the plane and solid
//! geometry checked numerically on many random instances.
//!
//! Every suite draws from its own ChaCha stream derived from the seed, so a
//! report depends only on `(suite, seed, samples)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::construct::{library, Arg, Instruction, OutputBinding, Workspace};
use crate::error::{GeomError, Result};
use crate::measure::{euclid_on_lengths, DEFAULT_STOP_EPS};
use crate::mensura::{
    parallelogram_diagonals_check, pi_doubling_table, triangle_area, triangle_metrics, Recurrence,
    TriangleSides, PI_MAX_ROUNDS,
};
use crate::plane::{
    angle_at, distance_point_line, intersect_circle_circle, intersect_line_circle, line_through,
    point_power, reflect_point, Circle, Line, Point,
};
use crate::scalar::{radians_to_dms, AngleMeasure, Interval, Scalar, Tolerance};
use crate::solids::{archimedes_ratios, drilled_sphere_remaining, volume, SolidSpec, SurfaceKind};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn samples(&self) -> usize {
        self.properties.iter().map(|p| p.samples).sum()
    }
}

impl std::fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for p in &self.properties {
            writeln!(
                f,
                "  {} {}: samples={} max_residual={:.3e} tolerance={:.1e}",
                if p.passed { "PASS" } else { "FAIL" },
                p.name,
                p.samples,
                p.max_residual,
                p.tolerance
            )?;
        }
        Ok(())
    }
}

type SuiteFn = fn(&mut ChaCha8Rng, usize) -> Result<Vec<PropertyReport>>;

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    run: SuiteFn,
}

static SUITES: &[Suite] = &[
    Suite {
        name: "angle-sum",
        summary: "interior angles of constructed triangles sum to pi",
        run: angle_sum,
    },
    Suite {
        name: "exterior-angle",
        summary: "exterior angles of convex polygons sum to 2pi",
        run: exterior_angle,
    },
    Suite {
        name: "power-of-point",
        summary: "chord products and secant-tangent products equal the power of the point",
        run: power_of_point,
    },
    Suite {
        name: "heron",
        summary: "Heron's formula agrees with half base times height",
        run: heron,
    },
    Suite {
        name: "circumradius",
        summary: "b*c = 2R*h_a against a coordinate circumcenter",
        run: circumradius,
    },
    Suite {
        name: "parallelogram",
        summary: "sum of squared diagonals equals sum of squared sides",
        run: parallelogram,
    },
    Suite {
        name: "macros",
        summary: "postconditions of every library construction on random inputs",
        run: macros,
    },
    Suite {
        name: "interval",
        summary: "interval evaluation encloses double-double and float values",
        run: interval,
    },
    Suite {
        name: "plane",
        summary: "reflection is an involution; circle intersections lie on both circles",
        run: plane,
    },
    Suite {
        name: "archimedes",
        summary: "sphere to cylinder 2/3, sphere to equilateral cone 4/9",
        run: archimedes,
    },
    Suite {
        name: "solids",
        summary: "sector decomposition, frustum limits, zone additivity, drilled sphere",
        run: solids,
    },
    Suite {
        name: "dms",
        summary: "degree-minute-second round trip within half a second",
        run: dms,
    },
    Suite {
        name: "continued-fractions",
        summary: "terminated expansions of integer pairs fold back to the ratio",
        run: continued_fractions,
    },
    Suite {
        name: "pi-table",
        summary: "perimeters increase, stay below circumscribed ones, recurrences agree",
        run: pi_table,
    },
];

pub fn suites() -> &'static [Suite] {
    SUITES
}

/// Runs one suite. Each suite's random stream depends on the seed and the
/// suite name only.
pub fn run_suite(name: &str, seed: u64, samples: usize) -> Result<SuiteReport> {
    let suite = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| GeomError::domain(format!("unknown suite `{name}`")))?;
    if samples == 0 {
        return Err(GeomError::domain("at least one sample is required"));
    }
    let stream = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        properties: (suite.run)(&mut rng, samples)?,
    })
}

/// Max-residual accumulator for one property.
struct Tracker {
    name: String,
    tolerance: f64,
    samples: usize,
    max: f64,
    broken: bool,
}

impl Tracker {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Tracker {
            name: name.into(),
            tolerance,
            samples: 0,
            max: 0.0,
            broken: false,
        }
    }

    fn record(&mut self, residual: f64) {
        self.samples += 1;
        if residual.is_nan() {
            self.broken = true;
        } else {
            self.max = self.max.max(residual);
        }
    }

    /// A sample that should have worked but raised an error.
    fn fail(&mut self) {
        self.samples += 1;
        self.broken = true;
    }

    fn finish(self) -> PropertyReport {
        PropertyReport {
            passed: !self.broken && self.max <= self.tolerance,
            name: self.name,
            samples: self.samples,
            max_residual: if self.broken { f64::INFINITY } else { self.max },
            tolerance: self.tolerance,
        }
    }
}

fn point_in(rng: &mut ChaCha8Rng, span: f64) -> Point {
    Point::new(rng.gen_range(-span..span), rng.gen_range(-span..span))
}

/// A point at least `gap` away from every point in `others`.
fn point_apart(rng: &mut ChaCha8Rng, others: &[Point], gap: f64) -> Point {
    loop {
        let p = point_in(rng, 10.0);
        if others.iter().all(|o| o.distance(&p) >= gap) {
            return p;
        }
    }
}

/// Three vertices spanning a triangle that is not too thin: its area is at
/// least a thousandth of the squared longest side.
fn random_triangle(rng: &mut ChaCha8Rng) -> [Point; 3] {
    loop {
        let v = [point_in(rng, 5.0), point_in(rng, 5.0), point_in(rng, 5.0)];
        let longest = v[0].distance(&v[1]).max(v[1].distance(&v[2])).max(v[2].distance(&v[0]));
        let area = 0.5 * (v[1] - v[0]).cross(&(v[2] - v[0])).abs();
        if longest >= 0.1 && area >= 1e-3 * longest * longest {
            return v;
        }
    }
}

/// Sides (a, b, c) opposite the vertices.
fn sides_of(v: &[Point; 3]) -> (f64, f64, f64) {
    (v[1].distance(&v[2]), v[2].distance(&v[0]), v[0].distance(&v[1]))
}

fn angle_sum(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut sum = Tracker::new("angle sum of triangle_from_sides output", 1e-9);
    let mut sides = Tracker::new("constructed sides match the data (relative)", 1e-9);
    for _ in 0..samples {
        let (a, b, c) = sides_of(&random_triangle(rng));
        let mut ws = Workspace::new(Tolerance::default());
        let names = ["A", "B", "C"].map(String::from).to_vec();
        let args = [a, b, c].map(Arg::Number);
        if ws.apply_macro("triangle_from_sides", &args, &OutputBinding::Names(names)).is_err() {
            sum.fail();
            continue;
        }
        let point = |n: &str| ws.point(n).map_err(|e| GeomError::domain(e.to_string()));
        let (pa, pb, pc) = (point("A")?, point("B")?, point("C")?);
        let total = angle_at(&pb, &pa, &pc) + angle_at(&pa, &pb, &pc) + angle_at(&pa, &pc, &pb);
        sum.record((total - PI).abs());
        let got = sides_of(&[pa, pb, pc]);
        sides.record(
            [(got.0, a), (got.1, b), (got.2, c)]
                .iter()
                .map(|(g, w)| (g - w).abs() / w)
                .fold(0.0, f64::max),
        );
    }
    Ok(vec![sum.finish(), sides.finish()])
}

fn exterior_angle(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut t = Tracker::new("exterior angles of a convex polygon sum to 2pi", 1e-9);
    for _ in 0..samples {
        let k = rng.gen_range(3..=12);
        // vertices on an ellipse, in angular order, never bunched together
        let mut theta: Vec<f64> = loop {
            let mut th: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            th.sort_by(f64::total_cmp);
            let gaps_ok = th.windows(2).all(|w| w[1] - w[0] > 1e-2) && th[0] + 2.0 * PI - th[k - 1] > 1e-2;
            if gaps_ok {
                break th;
            }
        };
        if rng.gen_bool(0.5) {
            theta.reverse();
        }
        let (ax, ay, tilt) = (rng.gen_range(0.5..10.0), rng.gen_range(0.5..10.0), rng.gen_range(0.0..PI));
        let center = point_in(rng, 10.0);
        let (s, c) = tilt.sin_cos();
        let v: Vec<Point> = theta
            .iter()
            .map(|th| {
                let (x, y) = (ax * th.cos(), ay * th.sin());
                center + Point::new(c * x - s * y, s * x + c * y)
            })
            .collect();
        let total: f64 = (0..k)
            .map(|i| {
                let e1 = v[(i + 1) % k] - v[i];
                let e2 = v[(i + 2) % k] - v[(i + 1) % k];
                e1.cross(&e2).atan2(e1.dot(&e2))
            })
            .sum();
        t.record((total.abs() - 2.0 * PI).abs());
    }
    Ok(vec![t.finish()])
}

fn random_circle(rng: &mut ChaCha8Rng) -> Circle {
    Circle::new(point_in(rng, 10.0), rng.gen_range(0.1..10.0)).expect("positive radius")
}

fn power_of_point(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let tol = Tolerance::default();
    let mut chord = Tracker::new("chord product through an interior point (20 chords)", 1e-7);
    let mut secant = Tracker::new("secant product from an exterior point (20 secants)", 1e-7);
    let mut tangent = Tracker::new("power equals squared tangent length", 1e-7);
    for _ in 0..samples {
        let c = random_circle(rng);
        let (o, r) = (c.center(), c.radius());
        let inner = o + Point::polar(r * rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI));
        let power = point_power(&c, &inner).abs();
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let line = Line::through_point_with_direction(&inner, &Point::polar(1.0, rng.gen_range(0.0..PI)))?;
            match intersect_line_circle(&line, &c, &tol)[..] {
                [a, b] => worst = worst.max((inner.distance(&a) * inner.distance(&b) - power).abs()),
                _ => worst = f64::NAN,
            }
        }
        chord.record(worst);

        let d = r * rng.gen_range(1.05..5.0);
        let bearing = rng.gen_range(0.0..2.0 * PI);
        let outer = o + Point::polar(d, bearing);
        let power = point_power(&c, &outer);
        // the tangent touches where the radius is perpendicular to it
        let touch = o + Point::polar(r, bearing + (r / d).acos());
        tangent.record((outer.distance(&touch).powi(2) - power).abs());
        let cone = (r / d).asin() * 0.99;
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let dir = Point::polar(1.0, bearing + PI + rng.gen_range(-cone..cone));
            let line = Line::through_point_with_direction(&outer, &dir)?;
            match intersect_line_circle(&line, &c, &tol)[..] {
                [a, b] => worst = worst.max((outer.distance(&a) * outer.distance(&b) - power).abs()),
                // a grazing secant is a tangent: one point counted twice
                [a] => worst = worst.max((outer.distance(&a).powi(2) - power).abs()),
                _ => worst = f64::NAN,
            }
        }
        secant.record(worst);
    }
    Ok(vec![chord.finish(), secant.finish(), tangent.finish()])
}

fn heron(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut half = Tracker::new("Heron vs half base times height (relative)", 1e-9);
    let mut enclosed = Tracker::new("interval Heron encloses the float value", 0.0);
    for _ in 0..samples {
        let v = random_triangle(rng);
        let (a, b, c) = sides_of(&v);
        let heron = triangle_area(&TriangleSides::new(a, b, c)?)?;
        let line = line_through(&v[1], &v[2], &Tolerance::default())?;
        let height = distance_point_line(&v[0], &line);
        half.record((heron - 0.5 * a * height).abs() / heron);
        let boxed = TriangleSides::new(Interval::point(a), Interval::point(b), Interval::point(c))
            .and_then(|t| triangle_area(&t));
        match boxed {
            Ok(iv) => enclosed.record(if iv.encloses(heron) { 0.0 } else { 1.0 }),
            Err(_) => enclosed.fail(),
        }
    }
    Ok(vec![half.finish(), enclosed.finish()])
}

/// Circumcenter from coordinates, by the determinant formula.
fn circumcenter(v: &[Point; 3]) -> Point {
    let (b, c) = (v[1] - v[0], v[2] - v[0]);
    let d = 2.0 * b.cross(&c);
    let (b2, c2) = (b.dot(&b), c.dot(&c));
    v[0] + Point::new((c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d)
}

fn circumradius(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut identity = Tracker::new("b*c = 2R*h_a (relative)", 1e-9);
    let mut radius = Tracker::new("solver circumradius vs coordinate circumcenter (relative)", 1e-9);
    let mut median = Tracker::new("median length vs coordinate midpoint (relative)", 1e-9);
    for _ in 0..samples {
        let v = random_triangle(rng);
        let (a, b, c) = sides_of(&v);
        let m = triangle_metrics(&TriangleSides::new(a, b, c)?)?;
        let r = circumcenter(&v).distance(&v[0]);
        identity.record((b * c - 2.0 * r * m.heights[0]).abs() / (b * c));
        radius.record((m.circumradius - r).abs() / r);
        let m_a = v[0].distance(&v[1].midpoint(&v[2]));
        median.record((m.medians[0] - m_a).abs() / m_a);
    }
    Ok(vec![identity.finish(), radius.finish(), median.finish()])
}

fn parallelogram(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut t = Tracker::new("d1^2 + d2^2 = 2(a^2 + b^2) (relative)", 1e-12);
    let mut check = Tracker::new("parallelogram_diagonals_check accepts", 0.0);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let theta = rng.gen_range(0.05..PI - 0.05);
        let (u, w) = (Point::new(a, 0.0), Point::polar(b, theta));
        let (d1, d2) = ((u + w).norm(), (u - w).norm());
        let sides = 2.0 * (a * a + b * b);
        t.record((d1 * d1 + d2 * d2 - sides).abs() / sides);
        match parallelogram_diagonals_check(a, b, d1, d2) {
            Ok(true) => check.record(0.0),
            Ok(false) => check.record(1.0),
            Err(_) => check.fail(),
        }
    }
    Ok(vec![t.finish(), check.finish()])
}

fn free(ws: &mut Workspace, name: &str, p: Point) -> Result<()> {
    ws.exec(Instruction::FreePoint {
        name: name.into(),
        x: p.x,
        y: p.y,
    })
    .map(|_| ())
    .map_err(|e| GeomError::domain(e.to_string()))
}

fn add_line(ws: &mut Workspace, name: &str, p: Point, q: Point) -> Result<()> {
    free(ws, &format!("{name}p"), p)?;
    free(ws, &format!("{name}q"), q)?;
    ws.exec(Instruction::LineThrough {
        name: name.into(),
        p: format!("{name}p"),
        q: format!("{name}q"),
    })
    .map(|_| ())
    .map_err(|e| GeomError::domain(e.to_string()))
}

fn add_circle(ws: &mut Workspace, name: &str, center: Point, radius: f64) -> Result<()> {
    free(ws, &format!("{name}o"), center)?;
    free(ws, &format!("{name}t"), center + Point::new(radius, 0.0))?;
    ws.exec(Instruction::CircleCenterThrough {
        name: name.into(),
        center: format!("{name}o"),
        through: format!("{name}t"),
    })
    .map(|_| ())
    .map_err(|e| GeomError::domain(e.to_string()))
}

fn names(list: &[&str]) -> Vec<Arg> {
    list.iter().map(|n| Arg::Name(n.to_string())).collect()
}

/// Angle AOB with legs of reasonable length, neither flat nor closed.
fn random_angle(rng: &mut ChaCha8Rng, ws: &mut Workspace) -> Result<()> {
    let o = point_in(rng, 10.0);
    let a = o + Point::polar(rng.gen_range(0.5..10.0), rng.gen_range(0.0..2.0 * PI));
    let turn = rng.gen_range(0.05..PI - 0.05) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let b = o + Point::polar(rng.gen_range(0.5..10.0), (a - o).bearing(&Point::ORIGIN) + PI + turn);
    free(ws, "A", a)?;
    free(ws, "O", o)?;
    free(ws, "B", b)
}

/// Sets up a random valid instance of macro `name` and returns its arguments.
fn macro_instance(name: &str, rng: &mut ChaCha8Rng, ws: &mut Workspace) -> Result<Vec<Arg>> {
    let unit = |rng: &mut ChaCha8Rng| rng.gen_range(0.1..10.0);
    Ok(match name {
        "triangle_from_sides" => {
            let (a, b, c) = sides_of(&random_triangle(rng));
            vec![Arg::Number(a), Arg::Number(b), Arg::Number(c)]
        }
        "copy_angle" => {
            random_angle(rng, ws)?;
            let o2 = point_in(rng, 10.0);
            free(ws, "O2", o2)?;
            free(ws, "P2", point_apart(rng, &[o2], 0.5))?;
            names(&["A", "O", "B", "O2", "P2"])
        }
        "bisect_angle" => {
            random_angle(rng, ws)?;
            names(&["A", "O", "B"])
        }
        "erect_perpendicular" => {
            let p = point_in(rng, 10.0);
            let q = point_apart(rng, &[p], 1.0);
            add_line(ws, "l", p, q)?;
            free(ws, "C", p + (q - p) * rng.gen_range(-1.0..2.0))?;
            names(&["C", "l"])
        }
        "drop_perpendicular" | "parallel_through" => {
            let p = point_in(rng, 10.0);
            let q = point_apart(rng, &[p], 1.0);
            add_line(ws, "l", p, q)?;
            let line = line_through(&p, &q, &Tolerance::default())?;
            let m = loop {
                let m = point_in(rng, 10.0);
                if distance_point_line(&m, &line) >= 0.1 {
                    break m;
                }
            };
            free(ws, "M", m)?;
            names(&["M", "l"])
        }
        "perpendicular_bisector" | "golden_section" => {
            let a = point_in(rng, 10.0);
            free(ws, "A", a)?;
            free(ws, "B", point_apart(rng, &[a], 0.1))?;
            names(&["A", "B"])
        }
        "divide_segment" => {
            let a = point_in(rng, 10.0);
            free(ws, "A", a)?;
            free(ws, "B", point_apart(rng, &[a], 0.1))?;
            let mut args = names(&["A", "B"]);
            args.push(Arg::Number(rng.gen_range(2..=8) as f64));
            args
        }
        "divide_segment_ratio" => {
            let a = point_in(rng, 10.0);
            free(ws, "A", a)?;
            free(ws, "B", point_apart(rng, &[a], 0.1))?;
            let mut args = names(&["A", "B"]);
            for _ in 0..rng.gen_range(2..=4) {
                args.push(Arg::Number(unit(rng)));
            }
            args
        }
        "fourth_proportional" => vec![Arg::Number(unit(rng)), Arg::Number(unit(rng)), Arg::Number(unit(rng))],
        "geometric_mean" | "geometric_mean_chord" => vec![Arg::Number(unit(rng)), Arg::Number(unit(rng))],
        "tangents_from_point" => {
            let (o, r) = (point_in(rng, 10.0), unit(rng));
            add_circle(ws, "c", o, r)?;
            free(ws, "P", o + Point::polar(r * rng.gen_range(1.05..5.0), rng.gen_range(0.0..2.0 * PI)))?;
            names(&["P", "c"])
        }
        "common_tangents" => {
            let o1 = point_in(rng, 10.0);
            add_circle(ws, "c1", o1, unit(rng))?;
            add_circle(ws, "c2", point_apart(rng, &[o1], 0.1), unit(rng))?;
            names(&["c1", "c2"])
        }
        "arc_containing_angle" => {
            let a = point_in(rng, 10.0);
            free(ws, "A", a)?;
            free(ws, "B", point_apart(rng, &[a], 0.1))?;
            let mut args = names(&["A", "B"]);
            args.push(Arg::Number(rng.gen_range(1.0..179.0)));
            args
        }
        "inscribe_regular" => {
            const N: [u32; 12] = [3, 4, 5, 6, 8, 10, 12, 15, 16, 20, 24, 30];
            add_circle(ws, "c", point_in(rng, 10.0), unit(rng))?;
            vec![Arg::Number(N[rng.gen_range(0..N.len())] as f64), Arg::Name("c".into())]
        }
        "double_regular" => {
            const N: [u32; 6] = [3, 4, 5, 6, 8, 10];
            add_circle(ws, "c", point_in(rng, 10.0), unit(rng))?;
            let n = N[rng.gen_range(0..N.len())];
            let vertices = ws
                .apply_macro(
                    "inscribe_regular",
                    &[Arg::Number(n as f64), Arg::Name("c".into())],
                    &OutputBinding::Glob("P".into()),
                )
                .map_err(|e| GeomError::domain(e.to_string()))?;
            let mut args = names(&["c"]);
            args.extend(vertices.into_iter().map(Arg::Name));
            args
        }
        other => return Err(GeomError::domain(format!("no random instances for macro `{other}`"))),
    })
}

fn macros(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let defs = library();
    let per = samples.div_ceil(defs.len()).max(1);
    let mut out = Vec::with_capacity(defs.len());
    for def in defs {
        let mut t = Tracker::new(format!("{} postconditions (residual / tolerance)", def.name), 1.0);
        for _ in 0..per {
            let mut ws = Workspace::new(Tolerance::default());
            let args = macro_instance(def.name, rng, &mut ws)?;
            match ws.apply_macro(def.name, &args, &OutputBinding::Glob("X".into())) {
                Ok(_) => {
                    let report = ws.reports().last().expect("macro report");
                    let worst = report
                        .checks
                        .iter()
                        .map(|c| if c.tolerance > 0.0 { c.residual() / c.tolerance } else { c.residual() })
                        .fold(0.0, f64::max);
                    t.record(worst);
                }
                Err(_) => t.fail(),
            }
        }
        out.push(t.finish());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Leaf(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    fn random(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
        if depth == 0 || rng.gen_bool(0.25) {
            return Expr::Leaf(rng.gen_range(0.1..10.0));
        }
        let op = rng.gen_range(0..5);
        let a = Box::new(Expr::random(rng, depth - 1));
        if op == 4 {
            return Expr::Sqrt(a);
        }
        let b = Box::new(Expr::random(rng, depth - 1));
        match op {
            0 => Expr::Add(a, b),
            1 => Expr::Sub(a, b),
            2 => Expr::Mul(a, b),
            _ => Expr::Div(a, b),
        }
    }

    /// Generic evaluation; `None` when a square root of a negative is hit.
    fn eval<S: Scalar>(&self) -> Option<S> {
        Some(match self {
            Expr::Leaf(x) => S::from_f64(*x),
            Expr::Add(a, b) => a.eval::<S>()? + b.eval::<S>()?,
            Expr::Sub(a, b) => a.eval::<S>()? - b.eval::<S>()?,
            Expr::Mul(a, b) => a.eval::<S>()? * b.eval::<S>()?,
            Expr::Div(a, b) => a.eval::<S>()? / b.eval::<S>()?,
            Expr::Sqrt(a) => a.eval::<S>()?.sqrt_within(0.0).ok()?,
        })
    }

    fn eval_dd(&self) -> Option<TwoFloat> {
        Some(match self {
            Expr::Leaf(x) => TwoFloat::from(*x),
            Expr::Add(a, b) => a.eval_dd()? + b.eval_dd()?,
            Expr::Sub(a, b) => a.eval_dd()? - b.eval_dd()?,
            Expr::Mul(a, b) => a.eval_dd()? * b.eval_dd()?,
            Expr::Div(a, b) => {
                let d = b.eval_dd()?;
                if d.hi() == 0.0 {
                    return None;
                }
                a.eval_dd()? / d
            }
            Expr::Sqrt(a) => {
                let v = a.eval_dd()?;
                if v.hi() < 0.0 {
                    return None;
                }
                v.sqrt()
            }
        })
    }
}

/// Whether the double-double value lies in `[lo, hi]`.
fn dd_within(v: TwoFloat, lo: f64, hi: f64) -> bool {
    let above = v.hi() > lo || (v.hi() == lo && v.lo() >= 0.0);
    let below = v.hi() < hi || (v.hi() == hi && v.lo() <= 0.0);
    above && below
}

fn interval(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut exact = Tracker::new("encloses the double-double value", 0.0);
    let mut float = Tracker::new("encloses the float value", 0.0);
    let mut done = 0;
    while done < samples {
        let e = Expr::random(rng, 5);
        let (Some(dd), Some(f), Some(iv)) = (e.eval_dd(), e.eval::<f64>(), e.eval::<Interval>()) else {
            continue;
        };
        if !dd.hi().is_finite() || !f.is_finite() {
            continue;
        }
        done += 1;
        exact.record(if dd_within(dd, iv.lo(), iv.hi()) { 0.0 } else { 1.0 });
        float.record(if iv.encloses(f) { 0.0 } else { 1.0 });
    }
    Ok(vec![exact.finish(), float.finish()])
}

fn plane(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let tol = Tolerance::default();
    let mut involution = Tracker::new("reflecting twice returns the point", 1e-12);
    let mut equidistant = Tracker::new("circle intersections lie on both circles", 1e-9);
    for _ in 0..samples {
        let p = point_in(rng, 10.0);
        let q = point_apart(rng, &[p], 0.1);
        let line = line_through(&p, &q, &tol)?;
        let x = point_in(rng, 10.0);
        involution.record(reflect_point(&reflect_point(&x, &line), &line).distance(&x));

        let c1 = random_circle(rng);
        let c2 = loop {
            let c = random_circle(rng);
            let d = c.center().distance(&c1.center());
            if d > (c.radius() - c1.radius()).abs() + 1e-3 && d < c.radius() + c1.radius() - 1e-3 {
                break c;
            }
        };
        let worst = intersect_circle_circle(&c1, &c2, &tol)?
            .points
            .iter()
            .map(|x| {
                (x.distance(&c1.center()) - c1.radius())
                    .abs()
                    .max((x.distance(&c2.center()) - c2.radius()).abs())
            })
            .fold(0.0, f64::max);
        equidistant.record(worst);
    }
    Ok(vec![involution.finish(), equidistant.finish()])
}

fn archimedes(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut cyl = Tracker::new("sphere : circumscribed cylinder = 2/3 (area and volume)", 1e-12);
    let mut cone = Tracker::new("sphere : circumscribed equilateral cone = 4/9 (area and volume)", 1e-12);
    for _ in 0..samples {
        let r = archimedes_ratios(rng.gen_range(0.1..10.0))?;
        cyl.record((r.cylinder_area - 2.0 / 3.0).abs().max((r.cylinder_volume - 2.0 / 3.0).abs()));
        cone.record((r.cone_area - 4.0 / 9.0).abs().max((r.cone_volume - 4.0 / 9.0).abs()));
    }
    Ok(vec![cyl.finish(), cone.finish()])
}

fn solids(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    use crate::solids::surface_area;
    let mut sector = Tracker::new("sector = segment + cone over the cap base (relative)", 1e-9);
    let mut frustum = Tracker::new("frustum meets prism and pyramid at the limits (relative)", 1e-9);
    let mut zones = Tracker::new("zones over a partition of the diameter sum to the sphere (relative)", 1e-9);
    let mut drilled = Tracker::new("drilled sphere depends on the hole length only (relative)", 1e-9);
    for _ in 0..samples {
        let r: f64 = rng.gen_range(0.1..10.0);
        let h = rng.gen_range(0.0..2.0 * r);
        // past the equator the cone is taken away instead of added
        let cone_v = volume(&SolidSpec::Cone {
            radius: (h * (2.0 * r - h)).sqrt(),
            height: (r - h).abs(),
        })?;
        let seg = volume(&SolidSpec::SphericalSegmentSolid { radius: r, height: h })?;
        let sec = volume(&SolidSpec::SphericalSector { radius: r, height: h })?;
        let rebuilt = if h <= r { seg + cone_v } else { seg - cone_v };
        sector.record((sec - rebuilt).abs() / sec);

        let (base, height) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let full = volume(&SolidSpec::PyramidFrustum { base, top: base, height })?;
        let prism = volume(&SolidSpec::Prism { base, height })?;
        let cut = volume(&SolidSpec::PyramidFrustum { base, top: 0.0, height })?;
        let pyramid = volume(&SolidSpec::Pyramid { base, height })?;
        frustum.record(((full - prism).abs() / prism).max((cut - pyramid).abs() / pyramid));

        let parts = rng.gen_range(1..=8);
        let mut cuts: Vec<f64> = (0..parts - 1).map(|_| rng.gen_range(0.0..2.0 * r)).collect();
        cuts.push(0.0);
        cuts.push(2.0 * r);
        cuts.sort_by(f64::total_cmp);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += surface_area(&SolidSpec::SphericalZoneSurface { radius: r, height: w[1] - w[0] }, SurfaceKind::Total)?;
        }
        let sphere = surface_area(&SolidSpec::Sphere { radius: r }, SurfaceKind::Total)?;
        zones.record((total - sphere).abs() / sphere);

        let l: f64 = rng.gen_range(0.1..10.0);
        let big = l / 2.0 * rng.gen_range(1.0..20.0);
        let want = PI * l.powi(3) / 6.0;
        drilled.record((drilled_sphere_remaining(big, l)? - want).abs() / want);
    }
    Ok(vec![sector.finish(), frustum.finish(), zones.finish(), drilled.finish()])
}

fn dms(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut t = Tracker::new("radians -> DMS -> radians (arc seconds)", 0.5);
    for _ in 0..samples {
        let angle = AngleMeasure::from_radians(rng.gen_range(0.0..2.0 * PI));
        let back = radians_to_dms(angle).to_angle()?;
        t.record((back.radians() - angle.radians()).abs().to_degrees() * 3600.0);
    }
    Ok(vec![t.finish()])
}

fn continued_fractions(rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<PropertyReport>> {
    let mut t = Tracker::new("folded expansion reproduces a/b (relative)", 1e-12);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(1..1_000_000u64), rng.gen_range(1..1_000_000u64));
        let cf = euclid_on_lengths(a as f64, b as f64, 64, DEFAULT_STOP_EPS)?;
        if cf.terminated {
            let want = a as f64 / b as f64;
            t.record((cf.value() - want).abs() / want);
        } else {
            t.fail();
        }
    }
    Ok(vec![t.finish()])
}

fn pi_table(_rng: &mut ChaCha8Rng, _samples: usize) -> Result<Vec<PropertyReport>> {
    let naive = pi_doubling_table(PI_MAX_ROUNDS, Recurrence::Naive)?;
    let stable = pi_doubling_table(PI_MAX_ROUNDS, Recurrence::Stabilized)?;
    let mut monotone = Tracker::new("inscribed perimeters increase (stabilized)", 0.0);
    let mut bounded = Tracker::new("inscribed below circumscribed perimeter (stabilized)", 0.0);
    for w in stable.rows.windows(2) {
        monotone.record((w[0].perimeter - w[1].perimeter).max(0.0));
    }
    for row in &stable.rows {
        let outer = row.n as f64 * crate::mensura::circumscribed_side(row.side, 1.0)?;
        bounded.record((row.perimeter - outer).max(0.0));
    }
    let mut early = Tracker::new("naive and stabilized agree through n = 384", 1e-12);
    let mut late = Tracker::new("naive and stabilized agree through n = 6144", 1e-9);
    for (a, b) in naive.rows.iter().zip(&stable.rows) {
        let gap = (a.perimeter - b.perimeter).abs();
        if a.n <= 384 {
            early.record(gap);
        }
        if a.n <= 6144 {
            late.record(gap);
        }
    }
    Ok(vec![monotone.finish(), bounded.finish(), early.finish(), late.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        for s in suites() {
            let r = run_suite(s.name, 7, 200).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite("heron", 3, 50).unwrap(), run_suite("heron", 3, 50).unwrap());
        assert_ne!(
            run_suite("heron", 3, 50).unwrap().properties[0].max_residual,
            run_suite("heron", 4, 50).unwrap().properties[0].max_residual
        );
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 1, 10).is_err());
        assert!(run_suite("heron", 1, 0).is_err());
    }

    #[test]
    fn tracker_flags_nan() {
        let mut t = Tracker::new("x", 1.0);
        t.record(0.5);
        t.record(f64::NAN);
        assert!(!t.finish().passed);
    }

    #[test]
    fn dd_bounds() {
        let v = TwoFloat::from(1.0) + TwoFloat::from(1e-20);
        assert!(dd_within(v, 1.0, 1.0f64.next_up()));
        assert!(!dd_within(v, 0.5, 1.0));
    }
}
