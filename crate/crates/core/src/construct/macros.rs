//! The macro library of classical constructions.
//!
//! Every macro expands into primitive instructions (free points, lines,
//! compass circles, intersections) recorded in the workspace trace, so the
//! trace itself is the ruler-and-compass construction. Where the drawer
//! would pick one of two intersection points by looking at the figure, the
//! expander inspects the candidates and records an explicit `first` /
//! `second` selector. Results are then checked analytically against the
//! macro's postconditions.

use std::f64::consts::PI;

use serde::Serialize;

use super::constructible::is_constructible_ngon;
use super::error::ConstructError;
use super::program::{Arg, Instruction, Selector};
use super::workspace::Workspace;
use crate::error::GeomError;
use crate::plane::{self, angle_at, classify_circles, CircleRelation, Line, Point};
use crate::scalar::Tolerance;

type MacroResult<T> = Result<T, ConstructError>;

/// A single machine-checked postcondition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(label: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            label: label.into(),
            measured,
            expected,
            tolerance,
        }
    }

    pub fn residual(&self) -> f64 {
        (self.measured - self.expected).abs()
    }

    pub fn passed(&self) -> bool {
        self.residual() <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacroReport {
    pub name: String,
    pub args: Vec<Arg>,
    pub outputs: Vec<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Expansion {
    pub outputs: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Point,
    Line,
    Circle,
    Number,
    /// One or more points; only valid as the last parameter.
    Points,
    /// One or more numbers; only valid as the last parameter.
    Numbers,
}

type ExpandFn = fn(&mut Expander<'_>, &[Arg]) -> MacroResult<Expansion>;
type CheckFn = fn(&Workspace, &[Arg], &[String]) -> MacroResult<Vec<Check>>;

pub struct MacroDef {
    pub name: &'static str,
    pub params: &'static [Param],
    pub summary: &'static str,
    expand: ExpandFn,
    check: CheckFn,
}

impl std::fmt::Debug for MacroDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MacroDef")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish()
    }
}

impl MacroDef {
    pub(crate) fn validate_args(&self, ws: &Workspace, args: &[Arg]) -> MacroResult<()> {
        let variadic = matches!(self.params.last(), Some(Param::Points | Param::Numbers));
        let fixed = if variadic {
            self.params.len() - 1
        } else {
            self.params.len()
        };
        let count_ok = if variadic {
            args.len() > fixed
        } else {
            args.len() == fixed
        };
        if !count_ok {
            return Err(ConstructError::Arity {
                what: format!("arguments of `{}`", self.name),
                expected: if variadic {
                    format!("at least {}", fixed + 1)
                } else {
                    fixed.to_string()
                },
                found: args.len(),
            });
        }
        for (i, arg) in args.iter().enumerate() {
            let param = self.params[i.min(self.params.len() - 1)];
            match (param, arg) {
                (Param::Number | Param::Numbers, Arg::Number(_)) => {}
                (Param::Point | Param::Points, Arg::Name(n)) => {
                    ws.point(n)?;
                }
                (Param::Line, Arg::Name(n)) => {
                    ws.line(n)?;
                }
                (Param::Circle, Arg::Name(n)) => {
                    ws.circle(n)?;
                }
                (Param::Number | Param::Numbers, Arg::Name(n)) => {
                    return Err(ConstructError::WrongKind {
                        name: n.clone(),
                        expected: "number",
                        found: ws.get(n)?.object.kind_name(),
                    })
                }
                (_, Arg::Number(v)) => {
                    return Err(ConstructError::WrongKind {
                        name: v.to_string(),
                        expected: "object name",
                        found: "number",
                    })
                }
            }
        }
        Ok(())
    }

    pub(crate) fn check(&self, ws: &Workspace, args: &[Arg], outputs: &[String]) -> MacroResult<Vec<Check>> {
        (self.check)(ws, args, outputs)
    }
}

static LIBRARY: &[MacroDef] = &[
    MacroDef {
        name: "triangle_from_sides",
        params: &[Param::Number, Param::Number, Param::Number],
        summary: "A, B, C with BC = a, CA = b, AB = c",
        expand: triangle_from_sides,
        check: check_triangle_from_sides,
    },
    MacroDef {
        name: "copy_angle",
        params: &[Param::Point, Param::Point, Param::Point, Param::Point, Param::Point],
        summary: "copy angle AOB onto ray O'P'; outputs the new ray point and line",
        expand: copy_angle,
        check: check_copy_angle,
    },
    MacroDef {
        name: "bisect_angle",
        params: &[Param::Point, Param::Point, Param::Point],
        summary: "bisector of angle AOB; outputs a point on the bisector and the line",
        expand: bisect_angle,
        check: check_bisect_angle,
    },
    MacroDef {
        name: "erect_perpendicular",
        params: &[Param::Point, Param::Line],
        summary: "perpendicular to a line at a point on it",
        expand: erect_perpendicular,
        check: check_perpendicular_through,
    },
    MacroDef {
        name: "drop_perpendicular",
        params: &[Param::Point, Param::Line],
        summary: "perpendicular from a point off a line",
        expand: drop_perpendicular,
        check: check_perpendicular_through,
    },
    MacroDef {
        name: "perpendicular_bisector",
        params: &[Param::Point, Param::Point],
        summary: "perpendicular bisector of a segment",
        expand: perpendicular_bisector,
        check: check_perpendicular_bisector,
    },
    MacroDef {
        name: "parallel_through",
        params: &[Param::Point, Param::Line],
        summary: "line through a point parallel to a line",
        expand: parallel_through,
        check: check_parallel_through,
    },
    MacroDef {
        name: "divide_segment",
        params: &[Param::Point, Param::Point, Param::Number],
        summary: "n-1 points dividing AB into n equal parts",
        expand: divide_segment,
        check: check_divide_segment,
    },
    MacroDef {
        name: "divide_segment_ratio",
        params: &[Param::Point, Param::Point, Param::Numbers],
        summary: "points dividing AB in the ratio of the given weights",
        expand: divide_segment_ratio,
        check: check_divide_segment_ratio,
    },
    MacroDef {
        name: "fourth_proportional",
        params: &[Param::Number, Param::Number, Param::Number],
        summary: "segment FG with a:b = c:|FG|",
        expand: fourth_proportional,
        check: check_fourth_proportional,
    },
    MacroDef {
        name: "geometric_mean",
        params: &[Param::Number, Param::Number],
        summary: "segment of length sqrt(ab), as the altitude in a semicircle",
        expand: geometric_mean_altitude,
        check: check_geometric_mean,
    },
    MacroDef {
        name: "geometric_mean_chord",
        params: &[Param::Number, Param::Number],
        summary: "segment of length sqrt(ab), as a chord over its projection",
        expand: geometric_mean_chord,
        check: check_geometric_mean,
    },
    MacroDef {
        name: "golden_section",
        params: &[Param::Point, Param::Point],
        summary: "point G on AB with AG^2 = AB*GB",
        expand: golden_section,
        check: check_golden_section,
    },
    MacroDef {
        name: "tangents_from_point",
        params: &[Param::Point, Param::Circle],
        summary: "tangent lines from a point on or outside a circle",
        expand: tangents_from_point,
        check: check_tangents_from_point,
    },
    MacroDef {
        name: "common_tangents",
        params: &[Param::Circle, Param::Circle],
        summary: "common tangents of two circles, external ones first",
        expand: common_tangents,
        check: check_common_tangents,
    },
    MacroDef {
        name: "arc_containing_angle",
        params: &[Param::Point, Param::Point, Param::Number],
        summary: "arc over AB on which AB subtends the given angle (degrees)",
        expand: arc_containing_angle,
        check: check_arc_containing_angle,
    },
    MacroDef {
        name: "inscribe_regular",
        params: &[Param::Number, Param::Circle],
        summary: "vertices of a regular n-gon inscribed in a circle",
        expand: inscribe_regular,
        check: check_inscribe_regular,
    },
    MacroDef {
        name: "double_regular",
        params: &[Param::Circle, Param::Points],
        summary: "doubles the vertices of an inscribed regular polygon",
        expand: double_regular,
        check: check_double_regular,
    },
];

pub fn library() -> &'static [MacroDef] {
    LIBRARY
}

pub fn lookup(name: &str) -> MacroResult<&'static MacroDef> {
    LIBRARY
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| ConstructError::UnknownMacro(name.to_string()))
}

pub(crate) fn expand(
    def: &MacroDef,
    ws: &mut Workspace,
    prefix: &str,
    args: &[Arg],
) -> MacroResult<Expansion> {
    let mut e = Expander {
        ws,
        prefix: prefix.to_string(),
        serial: 0,
        notes: Vec::new(),
    };
    let mut expansion = (def.expand)(&mut e, args)?;
    let mut notes = e.notes;
    notes.append(&mut expansion.notes);
    expansion.notes = notes;
    Ok(expansion)
}

/// Emits primitive instructions under hidden names for one macro call.
pub struct Expander<'w> {
    ws: &'w mut Workspace,
    prefix: String,
    serial: usize,
    notes: Vec<String>,
}

impl Expander<'_> {
    fn fresh(&mut self, tag: &str) -> String {
        self.serial += 1;
        format!("{}.{}{}", self.prefix, tag, self.serial)
    }

    fn tol(&self) -> Tolerance {
        self.ws.tolerance()
    }

    fn pt(&self, name: &str) -> MacroResult<Point> {
        self.ws.point(name)
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    fn free(&mut self, tag: &str, p: Point) -> MacroResult<String> {
        let name = self.fresh(tag);
        self.ws.exec(Instruction::FreePoint {
            name: name.clone(),
            x: p.x,
            y: p.y,
        })?;
        Ok(name)
    }

    fn line(&mut self, p: &str, q: &str) -> MacroResult<String> {
        let name = self.fresh("l");
        self.ws.exec(Instruction::LineThrough {
            name: name.clone(),
            p: p.to_string(),
            q: q.to_string(),
        })?;
        Ok(name)
    }

    fn circle(&mut self, center: &str, through: &str) -> MacroResult<String> {
        let name = self.fresh("c");
        self.ws.exec(Instruction::CircleCenterThrough {
            name: name.clone(),
            center: center.to_string(),
            through: through.to_string(),
        })?;
        Ok(name)
    }

    /// Compass transfer of `|pq|` to `center`.
    fn circle_r(&mut self, center: &str, p: &str, q: &str) -> MacroResult<String> {
        let name = self.fresh("c");
        self.ws.exec(Instruction::CircleCenterRadiusOf {
            name: name.clone(),
            center: center.to_string(),
            p: p.to_string(),
            q: q.to_string(),
        })?;
        Ok(name)
    }

    fn arc(&mut self, center: &str, from: &str, to: &str) -> MacroResult<String> {
        let name = self.fresh("arc");
        self.ws.exec(Instruction::ArcCenterFromTo {
            name: name.clone(),
            center: center.to_string(),
            from: from.to_string(),
            to: to.to_string(),
        })?;
        Ok(name)
    }

    /// Binds every intersection point of `a` and `b`.
    fn meet_all(&mut self, a: &str, b: &str) -> MacroResult<Vec<String>> {
        let count = self.ws.intersection_candidates(a, b)?.len();
        if count == 0 {
            return Err(GeomError::infeasible(format!("`{a}` and `{b}` do not intersect")).into());
        }
        let names: Vec<String> = (0..count).map(|_| self.fresh("X")).collect();
        self.ws.exec(Instruction::Intersect {
            names: names.clone(),
            a: a.to_string(),
            b: b.to_string(),
            selector: Selector::Both,
        })?;
        Ok(names)
    }

    /// Binds the unique intersection point of `a` and `b`.
    fn meet(&mut self, a: &str, b: &str) -> MacroResult<String> {
        let name = self.fresh("X");
        self.ws.exec(Instruction::Intersect {
            names: vec![name.clone()],
            a: a.to_string(),
            b: b.to_string(),
            selector: Selector::Both,
        })?;
        Ok(name)
    }

    /// Binds the intersection point with the lowest `score`.
    fn meet_by(&mut self, a: &str, b: &str, score: impl Fn(&Point) -> f64) -> MacroResult<String> {
        let pts = self.ws.intersection_candidates(a, b)?;
        let selector = match pts.len() {
            0 => {
                return Err(
                    GeomError::infeasible(format!("`{a}` and `{b}` do not intersect")).into(),
                )
            }
            1 => Selector::Both,
            _ if score(&pts[1]) < score(&pts[0]) => Selector::Second,
            _ => Selector::First,
        };
        let name = self.fresh("X");
        self.ws.exec(Instruction::Intersect {
            names: vec![name.clone()],
            a: a.to_string(),
            b: b.to_string(),
            selector,
        })?;
        Ok(name)
    }

    fn call(&mut self, name: &str, args: &[&str]) -> MacroResult<Vec<String>> {
        let args: Vec<Arg> = args.iter().map(|a| Arg::Name(a.to_string())).collect();
        self.ws.apply_nested_macro(name, &args)
    }

    fn call_one(&mut self, name: &str, args: &[&str]) -> MacroResult<String> {
        let mut outs = self.call(name, args)?;
        Ok(outs.remove(0))
    }
}

fn name_arg(args: &[Arg], i: usize) -> &str {
    match &args[i] {
        Arg::Name(n) => n,
        Arg::Number(_) => unreachable!("validated as a name"),
    }
}

fn num_arg(args: &[Arg], i: usize) -> f64 {
    match &args[i] {
        Arg::Number(v) => *v,
        Arg::Name(_) => unreachable!("validated as a number"),
    }
}

fn positive(value: f64, what: &str) -> MacroResult<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(GeomError::domain(format!("{what} must be positive, got {value}")).into())
    }
}

fn count_arg(value: f64, min: u64, what: &str) -> MacroResult<u64> {
    if value.fract() != 0.0 || value < min as f64 || value > 1e6 {
        return Err(GeomError::domain(format!(
            "{what} must be an integer in [{min}, 1000000], got {value}"
        ))
        .into());
    }
    Ok(value as u64)
}

fn rotate(v: Point, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(v.x * c - v.y * s, v.x * s + v.y * c)
}

fn length_check(label: impl Into<String>, measured: f64, expected: f64, tol: &Tolerance) -> Check {
    Check::new(label, measured, expected, tol.window(expected.abs().max(measured.abs())))
}

fn rel_check(label: impl Into<String>, measured: f64, expected: f64, rel: f64, scale: f64) -> Check {
    Check::new(label, measured, expected, rel * scale.abs().max(f64::MIN_POSITIVE))
}

fn farther<'a>(from: &Point, a: (&'a str, Point), b: (&'a str, Point)) -> &'a str {
    if from.distance(&a.1) >= from.distance(&b.1) {
        a.0
    } else {
        b.0
    }
}

// --- triangle from three sides -------------------------------------------

fn triangle_from_sides(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let a = positive(num_arg(args, 0), "side a")?;
    let b = positive(num_arg(args, 1), "side b")?;
    let c = positive(num_arg(args, 2), "side c")?;
    let tol = e.tol();
    let w = tol.window(a.max(b).max(c));
    if a >= b + c - w || b >= a + c - w || c >= a + b - w {
        return Err(GeomError::infeasible(format!(
            "sides ({a}, {b}, {c}): the largest side must be shorter than the sum of the other two"
        ))
        .into());
    }
    let pa = e.free("A", Point::ORIGIN)?;
    let pb = e.free("B", Point::new(c, 0.0))?;
    let len_b = e.free("len_b", Point::new(b, 0.0))?;
    let len_a = e.free("len_a", Point::new(a, 0.0))?;
    let around_a = e.circle(&pa, &len_b)?;
    let around_b = e.circle_r(&pb, &pa, &len_a)?;
    let pc = e.meet_by(&around_a, &around_b, |p| -p.y)?;
    Ok(Expansion {
        outputs: vec![pa, pb, pc],
        notes: Vec::new(),
    })
}

fn check_triangle_from_sides(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let (a, b, c) = (num_arg(args, 0), num_arg(args, 1), num_arg(args, 2));
    let (pa, pb, pc) = (ws.point(&out[0])?, ws.point(&out[1])?, ws.point(&out[2])?);
    Ok(vec![
        length_check("|BC| = a", pb.distance(&pc), a, &tol),
        length_check("|CA| = b", pc.distance(&pa), b, &tol),
        length_check("|AB| = c", pa.distance(&pb), c, &tol),
    ])
}

// --- copying and bisecting angles -------------------------------------------

fn copy_angle(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, o, b, o2, p2) = (
        name_arg(args, 0),
        name_arg(args, 1),
        name_arg(args, 2),
        name_arg(args, 3),
        name_arg(args, 4),
    );
    let (pa, po, pb, po2, pp2) = (e.pt(a)?, e.pt(o)?, e.pt(b)?, e.pt(o2)?, e.pt(p2)?);
    let tol = e.tol();
    for (len, what) in [
        (pa.distance(&po), "OA"),
        (pb.distance(&po), "OB"),
        (pp2.distance(&po2), "O'P'"),
    ] {
        if len <= tol.window(po.norm()) {
            return Err(GeomError::degenerate(format!("ray {what} has zero length")).into());
        }
    }
    let around_o = e.circle(o, a)?;
    let ob = e.line(o, b)?;
    let on_ob = e.meet_by(&around_o, &ob, |p| p.distance(&pb))?;
    let around_o2 = e.circle_r(o2, o, a)?;
    let target = e.line(o2, p2)?;
    let on_target = e.meet_by(&around_o2, &target, |p| p.distance(&pp2))?;
    let chord = pa.distance(&e.pt(&on_ob)?);
    if chord <= tol.window(pa.distance(&po)) {
        e.note("zero angle: the copy coincides with the target ray");
        let ray = e.line(o2, &on_target)?;
        return Ok(Expansion {
            outputs: vec![on_target, ray],
            notes: Vec::new(),
        });
    }
    let chord_circle = e.circle_r(&on_target, a, &on_ob)?;
    let sense = (pa - po).cross(&(pb - po)).signum();
    let dir = pp2 - po2;
    let image = e.meet_by(&around_o2, &chord_circle, |p| -sense * dir.cross(&(*p - po2)))?;
    let ray = e.line(o2, &image)?;
    Ok(Expansion {
        outputs: vec![image, ray],
        notes: Vec::new(),
    })
}

fn check_copy_angle(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let source = angle_at(
        &ws.point(name_arg(args, 0))?,
        &ws.point(name_arg(args, 1))?,
        &ws.point(name_arg(args, 2))?,
    );
    let copied = angle_at(
        &ws.point(name_arg(args, 4))?,
        &ws.point(name_arg(args, 3))?,
        &ws.point(&out[0])?,
    );
    Ok(vec![Check::new("copied angle (rad)", copied, source, 1e-9)])
}

fn bisect_angle(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, o, b) = (name_arg(args, 0), name_arg(args, 1), name_arg(args, 2));
    let (pa, po, pb) = (e.pt(a)?, e.pt(o)?, e.pt(b)?);
    let tol = e.tol();
    if pa.distance(&po) <= tol.window(po.norm()) || pb.distance(&po) <= tol.window(po.norm()) {
        return Err(GeomError::degenerate("angle sides must have positive length").into());
    }
    if angle_at(&pa, &po, &pb) <= tol.abs_eps() {
        return Err(GeomError::degenerate("zero angle: its sides coincide").into());
    }
    let around_o = e.circle(o, a)?;
    let ob = e.line(o, b)?;
    let on_ob = e.meet_by(&around_o, &ob, |p| p.distance(&pb))?;
    let from_a = e.circle(a, &on_ob)?;
    let from_b = e.circle(&on_ob, a)?;
    let apex = e.meet_by(&from_a, &from_b, |p| -p.distance(&po))?;
    let ray = e.line(o, &apex)?;
    Ok(Expansion {
        outputs: vec![apex, ray],
        notes: Vec::new(),
    })
}

fn check_bisect_angle(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let (pa, po, pb) = (
        ws.point(name_arg(args, 0))?,
        ws.point(name_arg(args, 1))?,
        ws.point(name_arg(args, 2))?,
    );
    let pf = ws.point(&out[0])?;
    let side_a = plane::line_through(&po, &pa, &tol)?;
    let side_b = plane::line_through(&po, &pb, &tol)?;
    let da = plane::distance_point_line(&pf, &side_a);
    let db = plane::distance_point_line(&pf, &side_b);
    Ok(vec![
        Check::new(
            "half angles (rad)",
            angle_at(&pa, &po, &pf),
            angle_at(&pf, &po, &pb),
            1e-9,
        ),
        length_check("distance to both sides", da, db, &tol),
    ])
}

// --- perpendiculars and parallels -------------------------------------------

/// Perpendicular bisector of two named points, drawn with two equal circles.
fn bisector_line(e: &mut Expander<'_>, a: &str, b: &str) -> MacroResult<String> {
    let around_a = e.circle(a, b)?;
    let around_b = e.circle(b, a)?;
    let xs = e.meet_all(&around_a, &around_b)?;
    if xs.len() != 2 {
        return Err(GeomError::degenerate("perpendicular bisector needs two distinct points").into());
    }
    e.line(&xs[0], &xs[1])
}

fn erect_perpendicular(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (c, l) = (name_arg(args, 0), name_arg(args, 1));
    let pc = e.pt(c)?;
    let line = e.ws.line(l)?;
    let tol = e.tol();
    if plane::distance_point_line(&pc, &line) > tol.window(pc.norm()) {
        return Err(GeomError::infeasible(format!(
            "`{c}` is not on `{l}`; use drop_perpendicular"
        ))
        .into());
    }
    let (p, q) = e.ws.line_definers(l)?;
    let anchor = farther(&pc, (&p, e.pt(&p)?), (&q, e.pt(&q)?)).to_string();
    let pk = e.pt(&anchor)?;
    let around_c = e.circle(c, &anchor)?;
    let mirror = e.meet_by(&around_c, l, |x| -x.distance(&pk))?;
    let perp = bisector_line(e, &anchor, &mirror)?;
    Ok(Expansion {
        outputs: vec![perp],
        notes: Vec::new(),
    })
}

fn drop_perpendicular(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, l) = (name_arg(args, 0), name_arg(args, 1));
    let pa = e.pt(a)?;
    let line = e.ws.line(l)?;
    let tol = e.tol();
    if plane::distance_point_line(&pa, &line) <= tol.window(pa.norm()) {
        return Err(GeomError::infeasible(format!(
            "`{a}` lies on `{l}`; use erect_perpendicular"
        ))
        .into());
    }
    let (p, q) = e.ws.line_definers(l)?;
    let anchor = farther(&pa, (&p, e.pt(&p)?), (&q, e.pt(&q)?)).to_string();
    let pk = e.pt(&anchor)?;
    let around_a = e.circle(a, &anchor)?;
    let mirror = e.meet_by(&around_a, l, |x| -x.distance(&pk))?;
    let perp = bisector_line(e, &anchor, &mirror)?;
    Ok(Expansion {
        outputs: vec![perp],
        notes: Vec::new(),
    })
}

fn check_perpendicular_through(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let p = ws.point(name_arg(args, 0))?;
    let base = ws.line(name_arg(args, 1))?;
    let perp = ws.line(&out[0])?;
    Ok(vec![
        Check::new("direction dot product", base.direction().dot(&perp.direction()), 0.0, 1e-9),
        Check::new(
            "passes through the point",
            plane::distance_point_line(&p, &perp),
            0.0,
            tol.window(p.norm()),
        ),
    ])
}

fn perpendicular_bisector(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, b) = (name_arg(args, 0), name_arg(args, 1));
    let (pa, pb) = (e.pt(a)?, e.pt(b)?);
    if pa.distance(&pb) <= e.tol().window(pa.norm().max(pb.norm())) {
        return Err(GeomError::degenerate("segment endpoints coincide").into());
    }
    let line = bisector_line(e, a, b)?;
    Ok(Expansion {
        outputs: vec![line],
        notes: Vec::new(),
    })
}

fn check_perpendicular_bisector(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let (pa, pb) = (ws.point(name_arg(args, 0))?, ws.point(name_arg(args, 1))?);
    let line = ws.line(&out[0])?;
    let base = plane::foot_of_perpendicular(&pa.midpoint(&pb), &line);
    let span = pa.distance(&pb);
    Ok((-2..=2)
        .map(|k| {
            let s = base + line.direction() * (k as f64 * span);
            length_check(
                format!("equidistant sample {k}"),
                s.distance(&pa),
                s.distance(&pb),
                &tol,
            )
        })
        .collect())
}

fn parallel_through(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (m, l) = (name_arg(args, 0), name_arg(args, 1));
    let pm = e.pt(m)?;
    let line = e.ws.line(l)?;
    let (p, q) = e.ws.line_definers(l)?;
    let c = farther(&pm, (&p, e.pt(&p)?), (&q, e.pt(&q)?)).to_string();
    let pc = e.pt(&c)?;
    // Arc about M through C on the line, then the same opening about C.
    let around_m = e.circle(m, &c)?;
    let around_c = e.circle(&c, m)?;
    let far = e.meet_by(&around_c, l, |x| -x.distance(&pm))?;
    let pe = e.pt(&far)?;
    let transfer = e.circle_r(&c, &far, m)?;
    let expected = pm + (pc - pe);
    let f = e.meet_by(&around_m, &transfer, |x| x.distance(&expected))?;
    let out = e.line(m, &f)?;
    let mut notes = Vec::new();
    if plane::distance_point_line(&pm, &line) <= e.tol().window(pm.norm()) {
        notes.push("coincident: the point lies on the given line".to_string());
    }
    Ok(Expansion {
        outputs: vec![out],
        notes,
    })
}

fn check_parallel_through(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let pm = ws.point(name_arg(args, 0))?;
    let base = ws.line(name_arg(args, 1))?;
    let line = ws.line(&out[0])?;
    Ok(vec![
        Check::new(
            "direction cross product",
            base.direction().cross(&line.direction()),
            0.0,
            1e-12,
        ),
        Check::new(
            "passes through the point",
            plane::distance_point_line(&pm, &line),
            0.0,
            tol.window(pm.norm()),
        ),
    ])
}

// --- dividing segments, proportionals ---------------------------------------

/// Lays `marks` (on a ray from `a`) back onto `ab` with parallels to the
/// line joining the last mark with `b`.
fn project_marks(e: &mut Expander<'_>, a: &str, b: &str, marks: &[String]) -> MacroResult<Vec<String>> {
    let ab = e.line(a, b)?;
    let last = marks.last().expect("at least one mark");
    let closing = e.line(last, b)?;
    let mut cuts = Vec::with_capacity(marks.len() - 1);
    for mark in &marks[..marks.len() - 1] {
        let par = e.call_one("parallel_through", &[mark, &closing])?;
        cuts.push(e.meet(&par, &ab)?);
    }
    Ok(cuts)
}

fn divide_segment(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, b) = (name_arg(args, 0), name_arg(args, 1));
    let n = count_arg(num_arg(args, 2), 2, "number of parts")? as usize;
    let (pa, pb) = (e.pt(a)?, e.pt(b)?);
    if pa.distance(&pb) <= e.tol().window(pa.norm().max(pb.norm())) {
        return Err(GeomError::degenerate("segment endpoints coincide").into());
    }
    let unit = e.free("R", pa + rotate(pb - pa, PI / 3.0) * (1.0 / n as f64))?;
    let ray = e.line(a, &unit)?;
    let mut marks = vec![unit.clone()];
    for _ in 1..n {
        let prev = marks.last().unwrap().clone();
        let step = e.circle_r(&prev, a, &unit)?;
        marks.push(e.meet_by(&step, &ray, |x| -x.distance(&pa))?);
    }
    let cuts = project_marks(e, a, b, &marks)?;
    Ok(Expansion {
        outputs: cuts,
        notes: Vec::new(),
    })
}

fn division_checks(ws: &Workspace, a: &str, b: &str, weights: &[f64], cuts: &[String]) -> MacroResult<Vec<Check>> {
    let (pa, pb) = (ws.point(a)?, ws.point(b)?);
    let total: f64 = weights.iter().sum();
    let length = pa.distance(&pb);
    let mut pts = vec![pa];
    for c in cuts {
        pts.push(ws.point(c)?);
    }
    pts.push(pb);
    Ok(pts
        .windows(2)
        .zip(weights)
        .enumerate()
        .map(|(i, (w, weight))| {
            rel_check(
                format!("part {}", i + 1),
                w[0].distance(&w[1]),
                length * weight / total,
                1e-9,
                length,
            )
        })
        .collect())
}

fn check_divide_segment(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let n = num_arg(args, 2) as usize;
    division_checks(ws, name_arg(args, 0), name_arg(args, 1), &vec![1.0; n], out)
}

fn divide_segment_ratio(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, b) = (name_arg(args, 0), name_arg(args, 1));
    let weights = args[2..]
        .iter()
        .map(|w| match w {
            Arg::Number(v) => positive(*v, "weight"),
            Arg::Name(_) => unreachable!(),
        })
        .collect::<MacroResult<Vec<f64>>>()?;
    if weights.len() < 2 {
        return Err(GeomError::domain("a ratio needs at least two weights").into());
    }
    let (pa, pb) = (e.pt(a)?, e.pt(b)?);
    let length = pa.distance(&pb);
    if length <= e.tol().window(pa.norm().max(pb.norm())) {
        return Err(GeomError::degenerate("segment endpoints coincide").into());
    }
    let total: f64 = weights.iter().sum();
    let dir = rotate((pb - pa) * (1.0 / length), PI / 3.0);
    // The given segments, laid off from A along an auxiliary ray.
    let mut given = Vec::with_capacity(weights.len());
    for w in &weights {
        given.push(e.free("len", pa + dir * (w * length / total))?);
    }
    let ray = e.line(a, &given[0])?;
    let mut marks = vec![given[0].clone()];
    for g in &given[1..] {
        let prev = marks.last().unwrap().clone();
        let step = e.circle_r(&prev, a, g)?;
        marks.push(e.meet_by(&step, &ray, |x| -x.distance(&pa))?);
    }
    let cuts = project_marks(e, a, b, &marks)?;
    Ok(Expansion {
        outputs: cuts,
        notes: Vec::new(),
    })
}

fn check_divide_segment_ratio(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let weights: Vec<f64> = (2..args.len()).map(|i| num_arg(args, i)).collect();
    division_checks(ws, name_arg(args, 0), name_arg(args, 1), &weights, out)
}

fn fourth_proportional(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let a = positive(num_arg(args, 0), "a")?;
    let b = positive(num_arg(args, 1), "b")?;
    let c = positive(num_arg(args, 2), "c")?;
    let second_side = Point::polar(1.0, PI / 3.0);
    let vertex = e.free("V", Point::ORIGIN)?;
    let d = e.free("D", Point::new(a, 0.0))?;
    let f = e.free("F", second_side * b)?;
    let len_c = e.free("len_c", Point::new(c, 0.0))?;
    let first_ray = e.line(&vertex, &d)?;
    let step = e.circle_r(&d, &vertex, &len_c)?;
    let pv = e.pt(&vertex)?;
    let end = e.meet_by(&step, &first_ray, |x| -x.distance(&pv))?;
    let df = e.line(&d, &f)?;
    let par = e.call_one("parallel_through", &[&end, &df])?;
    let second_ray = e.line(&vertex, &f)?;
    let g = e.meet(&par, &second_ray)?;
    Ok(Expansion {
        outputs: vec![f, g],
        notes: Vec::new(),
    })
}

fn check_fourth_proportional(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let (a, b, c) = (num_arg(args, 0), num_arg(args, 1), num_arg(args, 2));
    let x = ws.point(&out[0])?.distance(&ws.point(&out[1])?);
    let expected = b * c / a;
    Ok(vec![rel_check("a:b = c:x", x, expected, 1e-9, expected)])
}

fn geometric_mean_altitude(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let a = positive(num_arg(args, 0), "a")?;
    let b = positive(num_arg(args, 1), "b")?;
    let start = e.free("A", Point::ORIGIN)?;
    let joint = e.free("B", Point::new(a, 0.0))?;
    let len_b = e.free("len_b", Point::new(b, 0.0))?;
    let base = e.line(&start, &joint)?;
    let step = e.circle_r(&joint, &start, &len_b)?;
    let ps = e.pt(&start)?;
    let end = e.meet_by(&step, &base, |x| -x.distance(&ps))?;
    let bis = e.call_one("perpendicular_bisector", &[&start, &end])?;
    let center = e.meet(&bis, &base)?;
    let semicircle = e.circle(&center, &start)?;
    let perp = e.call_one("erect_perpendicular", &[&joint, &base])?;
    let top = e.meet_by(&perp, &semicircle, |x| -x.y)?;
    Ok(Expansion {
        outputs: vec![joint, top],
        notes: Vec::new(),
    })
}

fn geometric_mean_chord(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let a = positive(num_arg(args, 0), "a")?;
    let b = positive(num_arg(args, 1), "b")?;
    let (long, short) = if a >= b { (a, b) } else { (b, a) };
    let start = e.free("A", Point::ORIGIN)?;
    let far = e.free("P", Point::new(long, 0.0))?;
    let near = e.free("S", Point::new(short, 0.0))?;
    let base = e.line(&start, &far)?;
    let bis = e.call_one("perpendicular_bisector", &[&start, &far])?;
    let center = e.meet(&bis, &base)?;
    let semicircle = e.circle(&center, &start)?;
    let top = if e.tol().eq(long, short) {
        far
    } else {
        let perp = e.call_one("erect_perpendicular", &[&near, &base])?;
        e.meet_by(&perp, &semicircle, |x| -x.y)?
    };
    Ok(Expansion {
        outputs: vec![start, top],
        notes: Vec::new(),
    })
}

fn check_geometric_mean(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let (a, b) = (num_arg(args, 0), num_arg(args, 1));
    let x = ws.point(&out[0])?.distance(&ws.point(&out[1])?);
    Ok(vec![rel_check("x^2 = ab", x * x, a * b, 1e-9, a * b)])
}

fn golden_section(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, b) = (name_arg(args, 0), name_arg(args, 1));
    let (pa, pb) = (e.pt(a)?, e.pt(b)?);
    if pa.distance(&pb) <= e.tol().window(pa.norm().max(pb.norm())) {
        return Err(GeomError::degenerate("segment endpoints coincide").into());
    }
    let ab = e.line(a, b)?;
    let perp = e.call_one("erect_perpendicular", &[b, &ab])?;
    let bis = e.call_one("perpendicular_bisector", &[a, b])?;
    let mid = e.meet(&bis, &ab)?;
    let half = e.circle_r(b, &mid, b)?;
    let top = e.meet_by(&perp, &half, |x| -(x.y + x.x * 1e-3))?;
    let around_top = e.circle(&top, b)?;
    let hyp = e.line(a, &top)?;
    let near = e.meet_by(&hyp, &around_top, |x| x.distance(&pa))?;
    let around_a = e.circle(a, &near)?;
    let g = e.meet_by(&around_a, &ab, |x| x.distance(&pb))?;
    Ok(Expansion {
        outputs: vec![g],
        notes: Vec::new(),
    })
}

fn check_golden_section(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let (pa, pb) = (ws.point(name_arg(args, 0))?, ws.point(name_arg(args, 1))?);
    let g = ws.point(&out[0])?;
    let ab = pa.distance(&pb);
    let ag = pa.distance(&g);
    let gb = g.distance(&pb);
    Ok(vec![
        rel_check("AG^2 = AB*GB", ag * ag, ab * gb, 1e-9, ab * ab),
        rel_check("AG/AB", ag / ab, (5f64.sqrt() - 1.0) / 2.0, 1e-9, 1.0),
    ])
}

// --- tangents ---------------------------------------------------------------

fn tangents_from_point(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (p, c) = (name_arg(args, 0), name_arg(args, 1));
    let pp = e.pt(p)?;
    let circle = e.ws.circle(c)?;
    let o = e.ws.circle_center(c)?;
    let tol = e.tol();
    let d = pp.distance(&circle.center());
    let gap = d - circle.radius();
    if gap.abs() <= tol.window(circle.radius()) {
        let radius = e.line(&o, p)?;
        let t = e.call_one("erect_perpendicular", &[p, &radius])?;
        return Ok(Expansion {
            outputs: vec![t],
            notes: vec!["point on circle: single tangent".into()],
        });
    }
    if gap < 0.0 {
        return Err(GeomError::infeasible(format!(
            "`{p}` lies inside `{c}`; no tangent passes through it"
        ))
        .into());
    }
    let po = e.line(p, &o)?;
    let bis = e.call_one("perpendicular_bisector", &[p, &o])?;
    let mid = e.meet(&bis, &po)?;
    let thales = e.circle(&mid, &o)?;
    let touch = e.meet_all(&thales, c)?;
    let mut outputs = Vec::new();
    for t in &touch {
        outputs.push(e.line(p, t)?);
    }
    Ok(Expansion {
        outputs,
        notes: Vec::new(),
    })
}

fn tangent_length(p: &Point, line: &Line, center: &Point) -> f64 {
    p.distance(&plane::foot_of_perpendicular(center, line))
}

fn check_tangents_from_point(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let p = ws.point(name_arg(args, 0))?;
    let circle = ws.circle(name_arg(args, 1))?;
    let mut checks = Vec::new();
    let mut lengths = Vec::new();
    for name in out {
        let l = ws.line(name)?;
        checks.push(length_check(
            format!("{name}: center distance = R"),
            plane::distance_point_line(&circle.center(), &l),
            circle.radius(),
            &tol,
        ));
        lengths.push(tangent_length(&p, &l, &circle.center()));
    }
    if lengths.len() == 2 {
        checks.push(length_check("equal tangent lengths", lengths[0], lengths[1], &tol));
    }
    Ok(checks)
}

fn expected_common_tangents(relation: CircleRelation) -> usize {
    match relation {
        CircleRelation::ExternalDisjoint => 4,
        CircleRelation::ExternalTangent => 3,
        CircleRelation::Intersecting => 2,
        CircleRelation::InternalTangent => 1,
        CircleRelation::InternalDisjoint | CircleRelation::Concentric => 0,
    }
}

fn common_tangents(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (c1, c2) = (name_arg(args, 0), name_arg(args, 1));
    let (k1, k2) = (e.ws.circle(c1)?, e.ws.circle(c2)?);
    let tol = e.tol();
    let relation = classify_circles(&k1, &k2, &tol)?;
    let mut notes = vec![format!("relation: {}", relation.as_str())];
    let mut outputs = Vec::new();
    if matches!(
        relation,
        CircleRelation::InternalDisjoint | CircleRelation::Concentric
    ) {
        return Ok(Expansion { outputs, notes });
    }
    let (big, small) = if k1.radius() >= k2.radius() {
        (c1, c2)
    } else {
        (c2, c1)
    };
    let big_circle = e.ws.circle(big)?;
    let (o, o1) = (e.ws.circle_center(big)?, e.ws.circle_center(small)?);
    let (po, po1) = (e.pt(&o)?, e.pt(&o1)?);
    let (sp, sq) = e.ws.radius_pair(small)?;
    let centers = e.line(&o, &o1)?;
    let toward = e.meet_by(&centers, big, |x| x.distance(&po1))?;
    let mut thales: Option<String> = None;

    // External tangents.
    if relation == CircleRelation::InternalTangent {
        outputs.push(e.call_one("erect_perpendicular", &[&toward, &centers])?);
        notes.push("external".into());
    } else if tol.eq(k1.radius(), k2.radius()) {
        let across = e.call_one("erect_perpendicular", &[&o, &centers])?;
        for k in e.meet_all(&across, big)? {
            outputs.push(e.call_one("erect_perpendicular", &[&k, &across])?);
            notes.push("external".into());
        }
    } else {
        let step = e.circle_r(&toward, &sp, &sq)?;
        let inner = e.meet_by(&step, &centers, |x| x.distance(&po))?;
        let difference = e.circle(&o, &inner)?;
        let bis = e.call_one("perpendicular_bisector", &[&o1, &o])?;
        let mid = e.meet(&bis, &centers)?;
        let th = e.circle(&mid, &o)?;
        for t in e.meet_all(&th, &difference)? {
            let pt = e.pt(&t)?;
            let radial = e.line(&o, &t)?;
            let k = e.meet_by(&radial, big, |x| x.distance(&pt))?;
            let guide = e.line(&t, &o1)?;
            outputs.push(e.call_one("parallel_through", &[&k, &guide])?);
            notes.push("external".into());
        }
        thales = Some(th);
    }

    // Internal tangents.
    match relation {
        CircleRelation::ExternalTangent => {
            outputs.push(e.call_one("erect_perpendicular", &[&toward, &centers])?);
            notes.push("internal".into());
        }
        CircleRelation::ExternalDisjoint => {
            let step = e.circle_r(&toward, &sp, &sq)?;
            let outer = e.meet_by(&step, &centers, |x| -x.distance(&po))?;
            let sum = e.circle(&o, &outer)?;
            let th = match thales {
                Some(th) => th,
                None => {
                    let bis = e.call_one("perpendicular_bisector", &[&o1, &o])?;
                    let mid = e.meet(&bis, &centers)?;
                    e.circle(&mid, &o)?
                }
            };
            for u in e.meet_all(&th, &sum)? {
                let pu = e.pt(&u)?;
                let radial = e.line(&o, &u)?;
                let k = e.meet_by(&radial, big, |x| x.distance(&pu))?;
                let guide = e.line(&u, &o1)?;
                outputs.push(e.call_one("parallel_through", &[&k, &guide])?);
                notes.push("internal".into());
            }
        }
        _ => {}
    }
    let _ = big_circle;
    Ok(Expansion { outputs, notes })
}

fn check_common_tangents(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let (k1, k2) = (ws.circle(name_arg(args, 0))?, ws.circle(name_arg(args, 1))?);
    let relation = classify_circles(&k1, &k2, &tol)?;
    let mut checks = vec![Check::new(
        "tangent count",
        out.len() as f64,
        expected_common_tangents(relation) as f64,
        0.0,
    )];
    for name in out {
        let l = ws.line(name)?;
        for (k, which) in [(&k1, "first"), (&k2, "second")] {
            checks.push(length_check(
                format!("{name} touches the {which} circle"),
                plane::distance_point_line(&k.center(), &l),
                k.radius(),
                &tol,
            ));
        }
    }
    Ok(checks)
}

// --- arcs and regular polygons ----------------------------------------------

fn arc_containing_angle(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let (a, b) = (name_arg(args, 0), name_arg(args, 1));
    let alpha_deg = num_arg(args, 2);
    if !(alpha_deg > 0.0 && alpha_deg < 180.0) {
        return Err(GeomError::domain(format!(
            "the contained angle must lie strictly between 0° and 180°, got {alpha_deg}°"
        ))
        .into());
    }
    let (pa, pb) = (e.pt(a)?, e.pt(b)?);
    if pa.distance(&pb) <= e.tol().window(pa.norm().max(pb.norm())) {
        return Err(GeomError::degenerate("chord endpoints coincide").into());
    }
    let alpha = alpha_deg.to_radians();
    // The given angle, laid off at A on the right of AB.
    let given = e.free("E", pa + rotate(pb - pa, -alpha))?;
    let tangent = e.line(a, &given)?;
    let normal = e.call_one("erect_perpendicular", &[a, &tangent])?;
    let bis = e.call_one("perpendicular_bisector", &[a, b])?;
    let center = e.meet(&normal, &bis)?;
    let arc = e.arc(&center, b, a)?;
    Ok(Expansion {
        outputs: vec![arc],
        notes: Vec::new(),
    })
}

fn check_arc_containing_angle(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let (pa, pb) = (ws.point(name_arg(args, 0))?, ws.point(name_arg(args, 1))?);
    let alpha = num_arg(args, 2).to_radians();
    let arc = ws.arc(&out[0])?;
    Ok((0..10)
        .map(|i| {
            let c = arc.point_at((i as f64 + 0.5) / 10.0);
            Check::new(format!("inscribed angle at sample {i}"), angle_at(&pa, &c, &pb), alpha, 1e-7)
        })
        .collect())
}

/// A named point on the circle to start polygon vertices from.
fn anchor_on_circle(e: &mut Expander<'_>, c: &str) -> MacroResult<String> {
    if let Some(t) = e.ws.circle_through(c)? {
        return Ok(t);
    }
    let center = e.ws.circle_center(c)?;
    let (p, q) = e.ws.radius_pair(c)?;
    let pc = e.pt(&center)?;
    let tol = e.tol();
    let reference = [q, p]
        .into_iter()
        .find(|n| e.pt(n).map(|x| x.distance(&pc) > tol.abs_eps()).unwrap_or(false))
        .ok_or_else(|| GeomError::degenerate("no point available to fix a direction"))?;
    let pr = e.pt(&reference)?;
    let ray = e.line(&center, &reference)?;
    e.meet_by(&ray, c, |x| x.distance(&pr))
}

/// Steps counterclockwise around `c` with compass opening `|rp rq|`.
fn step_around(
    e: &mut Expander<'_>,
    c: &str,
    start: &str,
    opening: (&str, &str),
    count: usize,
) -> MacroResult<Vec<String>> {
    let center = e.ws.circle(c)?.center();
    let mut verts = vec![start.to_string()];
    for _ in 1..count {
        let cur = verts.last().unwrap().clone();
        let pc = e.pt(&cur)? - center;
        let step = e.circle_r(&cur, opening.0, opening.1)?;
        verts.push(e.meet_by(c, &step, |x| -pc.cross(&(*x - center)))?);
    }
    Ok(verts)
}

fn double_vertices(e: &mut Expander<'_>, c: &str, verts: &[String]) -> MacroResult<Vec<String>> {
    let mut out = Vec::with_capacity(verts.len() * 2);
    for (i, v) in verts.iter().enumerate() {
        let next = &verts[(i + 1) % verts.len()];
        let pv = e.pt(v)?;
        let bis = e.call_one("perpendicular_bisector", &[v, next])?;
        let mid = e.meet_by(&bis, c, |x| x.distance(&pv))?;
        out.push(v.clone());
        out.push(mid);
    }
    Ok(out)
}

fn inscribe_regular(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let n = count_arg(num_arg(args, 0), 3, "number of sides")?;
    let c = name_arg(args, 1);
    if !is_constructible_ngon(n)? {
        return Err(GeomError::NotConstructible { n }.into());
    }
    let doublings = n.trailing_zeros();
    let odd = n >> doublings;
    let center = e.ws.circle_center(c)?;
    let k = anchor_on_circle(e, c)?;
    let (rp, rq) = e.ws.radius_pair(c)?;
    let (mut verts, mut remaining) = match (odd, doublings) {
        (1, d) => {
            // square from two perpendicular diameters
            let pk = e.pt(&k)?;
            let diameter = e.line(&center, &k)?;
            let opposite = e.meet_by(&diameter, c, |x| -x.distance(&pk))?;
            let across = e.call_one("perpendicular_bisector", &[&k, &opposite])?;
            let pc = e.ws.circle(c)?.center();
            let ends = e.meet_all(&across, c)?;
            let (left, right) = {
                let p0 = e.pt(&ends[0])? - pc;
                if (pk - pc).cross(&p0) > 0.0 {
                    (ends[0].clone(), ends[1].clone())
                } else {
                    (ends[1].clone(), ends[0].clone())
                }
            };
            (vec![k.clone(), left, opposite, right], d - 2)
        }
        (3, 0) => {
            let hex = step_around(e, c, &k, (&rp, &rq), 6)?;
            (hex.into_iter().step_by(2).collect(), 0)
        }
        (3, d) => (step_around(e, c, &k, (&rp, &rq), 6)?, d - 1),
        (5, d) => {
            let golden = e.call_one("golden_section", &[&center, &k])?;
            let dec = step_around(e, c, &k, (&center, &golden), 10)?;
            if d == 0 {
                (dec.into_iter().step_by(2).collect(), 0)
            } else {
                (dec, d - 1)
            }
        }
        (15, d) => {
            let hex = step_around(e, c, &k, (&rp, &rq), 2)?;
            let golden = e.call_one("golden_section", &[&center, &k])?;
            let dec = step_around(e, c, &k, (&center, &golden), 2)?;
            (step_around(e, c, &k, (&dec[1], &hex[1]), 15)?, d)
        }
        _ => return Err(GeomError::UnsupportedPolygon { n }.into()),
    };
    while remaining > 0 {
        verts = double_vertices(e, c, &verts)?;
        remaining -= 1;
    }
    Ok(Expansion {
        outputs: verts,
        notes: Vec::new(),
    })
}

fn polygon_checks(ws: &Workspace, c: &str, verts: &[String]) -> MacroResult<Vec<Check>> {
    let tol = ws.tolerance();
    let circle = ws.circle(c)?;
    let n = verts.len();
    let expected = crate::mensura::inscribed_side(n as u64, circle.radius())?;
    let pts = verts.iter().map(|v| ws.point(v)).collect::<MacroResult<Vec<Point>>>()?;
    let mut worst_side = expected;
    let mut worst_radius = circle.radius();
    for (i, p) in pts.iter().enumerate() {
        let side = p.distance(&pts[(i + 1) % n]);
        if (side - expected).abs() > (worst_side - expected).abs() {
            worst_side = side;
        }
        let r = p.distance(&circle.center());
        if (r - circle.radius()).abs() > (worst_radius - circle.radius()).abs() {
            worst_radius = r;
        }
    }
    Ok(vec![
        rel_check("vertex count", n as f64, n as f64, 0.0, 1.0),
        rel_check("side length (worst)", worst_side, expected, 1e-9, expected),
        length_check("vertex on circle (worst)", worst_radius, circle.radius(), &tol),
    ])
}

fn check_inscribe_regular(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let mut checks = polygon_checks(ws, name_arg(args, 1), out)?;
    checks[0] = Check::new("vertex count", out.len() as f64, num_arg(args, 0), 0.0);
    Ok(checks)
}

fn double_regular(e: &mut Expander<'_>, args: &[Arg]) -> MacroResult<Expansion> {
    let c = name_arg(args, 0);
    let verts: Vec<String> = (1..args.len()).map(|i| name_arg(args, i).to_string()).collect();
    if verts.len() < 3 {
        return Err(GeomError::domain("a polygon needs at least three vertices").into());
    }
    let circle = e.ws.circle(c)?;
    let tol = e.tol();
    for v in &verts {
        if !circle.contains(&e.pt(v)?, &tol) {
            return Err(GeomError::domain(format!("vertex `{v}` is not on `{c}`")).into());
        }
    }
    let outputs = double_vertices(e, c, &verts)?;
    Ok(Expansion {
        outputs,
        notes: Vec::new(),
    })
}

fn check_double_regular(ws: &Workspace, args: &[Arg], out: &[String]) -> MacroResult<Vec<Check>> {
    let mut checks = polygon_checks(ws, name_arg(args, 0), out)?;
    checks[0] = Check::new(
        "vertex count",
        out.len() as f64,
        2.0 * (args.len() - 1) as f64,
        0.0,
    );
    Ok(checks)
}
