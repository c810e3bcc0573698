use indexmap::IndexMap;
use serde::Serialize;

use super::error::ConstructError;
use super::macros::{self, Check, MacroReport};
use super::program::{
    Arg, EmitFormat, Instruction, OutputBinding, Predicate, Selector, StatementKind,
};
use crate::error::GeomError;
use crate::plane::{
    self, intersect_circle_circle, intersect_line_circle, intersect_line_line, line_through,
    Arc, Circle, Line, LineIntersection, Point,
};
use crate::scalar::{AngleMeasure, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Object {
    Point(Point),
    Line(Line),
    Circle(Circle),
    Arc(Arc),
}

impl Object {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Point(_) => "point",
            Object::Line(_) => "line",
            Object::Circle(_) => "circle",
            Object::Arc(_) => "arc",
        }
    }
}

/// How an object came to be; macros read this to find defining points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Origin {
    Free,
    LineThrough { p: String, q: String },
    CircleThrough { center: String, through: String },
    CircleRadiusOf { center: String, p: String, q: String },
    Arc { center: String, from: String, to: String },
    Intersection { a: String, b: String },
    Alias(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub object: Object,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    /// Macro nesting depth; 0 for statements issued by the program itself.
    pub depth: usize,
    pub instruction: Instruction,
}

/// A requested artifact and how many objects existed when it was requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmitRecord {
    pub format: EmitFormat,
    pub path: String,
    pub object_count: usize,
}

/// Named-object store plus the trace of every executed instruction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Workspace {
    objects: IndexMap<String, Entry>,
    trace: Vec<TraceStep>,
    reports: Vec<MacroReport>,
    emits: Vec<EmitRecord>,
    base_tolerance: Tolerance,
    unit: Option<f64>,
    depth: usize,
    macro_serial: usize,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new(Tolerance::default())
    }
}

impl Workspace {
    pub fn new(tolerance: Tolerance) -> Self {
        Workspace {
            objects: IndexMap::new(),
            trace: Vec::new(),
            reports: Vec::new(),
            emits: Vec::new(),
            base_tolerance: tolerance,
            unit: None,
            depth: 0,
            macro_serial: 0,
        }
    }

    /// Tolerance in the figure's own unit: the absolute part is scaled by
    /// the distance between the first two points placed.
    pub fn tolerance(&self) -> Tolerance {
        match self.unit {
            Some(u) => self.base_tolerance.scaled(u),
            None => self.base_tolerance,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.objects.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn reports(&self) -> &[MacroReport] {
        &self.reports
    }

    pub fn emits(&self) -> &[EmitRecord] {
        &self.emits
    }

    pub fn contains(&self, name: &str) -> bool {
        self.objects.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Result<&Entry, ConstructError> {
        self.objects
            .get(name)
            .ok_or_else(|| ConstructError::UnknownName(name.to_string()))
    }

    fn wrong_kind(&self, name: &str, expected: &'static str) -> ConstructError {
        match self.objects.get(name) {
            Some(e) => ConstructError::WrongKind {
                name: name.to_string(),
                expected,
                found: e.object.kind_name(),
            },
            None => ConstructError::UnknownName(name.to_string()),
        }
    }

    pub fn point(&self, name: &str) -> Result<Point, ConstructError> {
        match &self.get(name)?.object {
            Object::Point(p) => Ok(*p),
            _ => Err(self.wrong_kind(name, "point")),
        }
    }

    pub fn line(&self, name: &str) -> Result<Line, ConstructError> {
        match &self.get(name)?.object {
            Object::Line(l) => Ok(*l),
            _ => Err(self.wrong_kind(name, "line")),
        }
    }

    /// The circle of a circle or arc object.
    pub fn circle(&self, name: &str) -> Result<Circle, ConstructError> {
        match &self.get(name)?.object {
            Object::Circle(c) => Ok(*c),
            Object::Arc(a) => Ok(*a.circle()),
            _ => Err(self.wrong_kind(name, "circle")),
        }
    }

    pub fn arc(&self, name: &str) -> Result<Arc, ConstructError> {
        match &self.get(name)?.object {
            Object::Arc(a) => Ok(*a),
            _ => Err(self.wrong_kind(name, "arc")),
        }
    }

    /// Follows alias bindings back to the object's constructing entry.
    pub fn resolve<'a>(&'a self, name: &'a str) -> Result<(&'a str, &'a Entry), ConstructError> {
        let mut current = name;
        loop {
            let entry = self.get(current)?;
            match &entry.origin {
                Origin::Alias(target) => current = target,
                _ => return Ok((current, entry)),
            }
        }
    }

    /// The two points a line was drawn through.
    pub fn line_definers(&self, name: &str) -> Result<(String, String), ConstructError> {
        self.line(name)?;
        match &self.resolve(name)?.1.origin {
            Origin::LineThrough { p, q } => Ok((p.clone(), q.clone())),
            _ => Err(self.wrong_kind(name, "line")),
        }
    }

    /// Name of the center point of a circle or arc.
    pub fn circle_center(&self, name: &str) -> Result<String, ConstructError> {
        self.circle(name)?;
        match &self.resolve(name)?.1.origin {
            Origin::CircleThrough { center, .. }
            | Origin::CircleRadiusOf { center, .. }
            | Origin::Arc { center, .. } => Ok(center.clone()),
            _ => Err(self.wrong_kind(name, "circle")),
        }
    }

    /// Two named points whose distance is the circle's radius.
    pub fn radius_pair(&self, name: &str) -> Result<(String, String), ConstructError> {
        self.circle(name)?;
        match &self.resolve(name)?.1.origin {
            Origin::CircleThrough { center, through } => Ok((center.clone(), through.clone())),
            Origin::CircleRadiusOf { p, q, .. } => Ok((p.clone(), q.clone())),
            Origin::Arc { center, from, .. } => Ok((center.clone(), from.clone())),
            _ => Err(self.wrong_kind(name, "circle")),
        }
    }

    /// A named point known to lie on the circle, if the circle was drawn through one.
    pub fn circle_through(&self, name: &str) -> Result<Option<String>, ConstructError> {
        self.circle(name)?;
        Ok(match &self.resolve(name)?.1.origin {
            Origin::CircleThrough { through, .. } => Some(through.clone()),
            Origin::Arc { from, .. } => Some(from.clone()),
            _ => None,
        })
    }

    fn insert(&mut self, name: &str, object: Object, origin: Origin) -> Result<(), ConstructError> {
        if self.objects.contains_key(name) {
            return Err(ConstructError::DuplicateName(name.to_string()));
        }
        if let Object::Point(p) = &object {
            if self.unit.is_none() {
                if let Some(first) = self.objects.values().find_map(|e| match e.object {
                    Object::Point(q) => Some(q),
                    _ => None,
                }) {
                    let d = first.distance(p);
                    if d > 0.0 {
                        self.unit = Some(d);
                    }
                }
            }
        }
        self.objects.insert(name.to_string(), Entry { object, origin });
        Ok(())
    }

    fn record(&mut self, instruction: Instruction) {
        self.trace.push(TraceStep {
            depth: self.depth,
            instruction,
        });
    }

    /// Candidate intersection points of two objects, ordered by `(x, y)`.
    pub fn intersection_candidates(&self, a: &str, b: &str) -> Result<Vec<Point>, ConstructError> {
        let tol = self.tolerance();
        let oa = &self.get(a)?.object;
        let ob = &self.get(b)?.object;
        let mut pts = match (oa, ob) {
            (Object::Line(l1), Object::Line(l2)) => match intersect_line_line(l1, l2, &tol) {
                LineIntersection::Point(p) => vec![p],
                LineIntersection::Parallel => Vec::new(),
                LineIntersection::Coincident => {
                    return Err(GeomError::degenerate(format!(
                        "lines `{a}` and `{b}` coincide"
                    ))
                    .into())
                }
            },
            (Object::Line(l), Object::Circle(_) | Object::Arc(_)) => {
                intersect_line_circle(l, &self.circle(b)?, &tol)
            }
            (Object::Circle(_) | Object::Arc(_), Object::Line(l)) => {
                intersect_line_circle(l, &self.circle(a)?, &tol)
            }
            (Object::Circle(_) | Object::Arc(_), Object::Circle(_) | Object::Arc(_)) => {
                intersect_circle_circle(&self.circle(a)?, &self.circle(b)?, &tol)?.points
            }
            (Object::Point(_), _) => return Err(self.wrong_kind(a, "line or circle")),
            (_, Object::Point(_)) => return Err(self.wrong_kind(b, "line or circle")),
        };
        for obj in [oa, ob] {
            if let Object::Arc(arc) = obj {
                pts.retain(|p| arc.spans(p, &tol));
            }
        }
        plane::order_points(&mut pts, &tol);
        Ok(pts)
    }

    /// Executes a single primitive instruction and records it. Returns the
    /// names it bound.
    pub fn exec(&mut self, instruction: Instruction) -> Result<Vec<String>, ConstructError> {
        let tol = self.tolerance();
        let bound = match &instruction {
            Instruction::FreePoint { name, x, y } => {
                let p = Point::new(*x, *y);
                if !p.is_finite() {
                    return Err(GeomError::domain(format!("point `{name}` has non-finite coordinates")).into());
                }
                self.insert(name, Object::Point(p), Origin::Free)?;
                vec![name.clone()]
            }
            Instruction::LineThrough { name, p, q } => {
                let l = line_through(&self.point(p)?, &self.point(q)?, &tol)?;
                self.insert(
                    name,
                    Object::Line(l),
                    Origin::LineThrough {
                        p: p.clone(),
                        q: q.clone(),
                    },
                )?;
                vec![name.clone()]
            }
            Instruction::CircleCenterThrough {
                name,
                center,
                through,
            } => {
                let c = self.point(center)?;
                let r = c.distance(&self.point(through)?);
                let circle = Circle::new(c, r)?;
                self.insert(
                    name,
                    Object::Circle(circle),
                    Origin::CircleThrough {
                        center: center.clone(),
                        through: through.clone(),
                    },
                )?;
                vec![name.clone()]
            }
            Instruction::CircleCenterRadiusOf { name, center, p, q } => {
                let r = self.point(p)?.distance(&self.point(q)?);
                let circle = Circle::new(self.point(center)?, r)?;
                self.insert(
                    name,
                    Object::Circle(circle),
                    Origin::CircleRadiusOf {
                        center: center.clone(),
                        p: p.clone(),
                        q: q.clone(),
                    },
                )?;
                vec![name.clone()]
            }
            Instruction::ArcCenterFromTo {
                name,
                center,
                from,
                to,
            } => {
                let c = self.point(center)?;
                let f = self.point(from)?;
                let t = self.point(to)?;
                let circle = Circle::new(c, c.distance(&f))?;
                let start = c.bearing(&f);
                let mut sweep = (c.bearing(&t) - start).rem_euclid(std::f64::consts::TAU);
                if sweep <= 0.0 {
                    sweep = std::f64::consts::TAU;
                }
                let arc = Arc::new(
                    circle,
                    AngleMeasure::from_radians(plane::normalize_angle(start)),
                    AngleMeasure::from_radians(sweep),
                )?;
                self.insert(
                    name,
                    Object::Arc(arc),
                    Origin::Arc {
                        center: center.clone(),
                        from: from.clone(),
                        to: to.clone(),
                    },
                )?;
                vec![name.clone()]
            }
            Instruction::Intersect {
                names,
                a,
                b,
                selector,
            } => {
                let pts = self.intersection_candidates(a, b)?;
                let chosen = self.select(&pts, names.len(), selector, a, b)?;
                for (name, p) in names.iter().zip(chosen) {
                    self.insert(
                        name,
                        Object::Point(p),
                        Origin::Intersection {
                            a: a.clone(),
                            b: b.clone(),
                        },
                    )?;
                }
                names.clone()
            }
            Instruction::Bind { name, target } => {
                let object = self.get(target)?.object.clone();
                self.insert(name, object, Origin::Alias(target.clone()))?;
                vec![name.clone()]
            }
            Instruction::Macro { .. } | Instruction::Assert { .. } | Instruction::Emit { .. } => {
                return Err(GeomError::domain(
                    "macro, assert and emit are not primitive instructions",
                )
                .into())
            }
        };
        self.record(instruction);
        Ok(bound)
    }

    fn select(
        &self,
        pts: &[Point],
        wanted: usize,
        selector: &Selector,
        a: &str,
        b: &str,
    ) -> Result<Vec<Point>, ConstructError> {
        if pts.is_empty() {
            return Err(GeomError::infeasible(format!("`{a}` and `{b}` do not intersect")).into());
        }
        match (wanted, selector) {
            (2, Selector::Both) => {
                if pts.len() != 2 {
                    return Err(GeomError::infeasible(format!(
                        "`{a}` and `{b}` meet in {} point(s), two names were given",
                        pts.len()
                    ))
                    .into());
                }
                Ok(pts.to_vec())
            }
            (1, Selector::Both) if pts.len() == 1 => Ok(pts.to_vec()),
            (1, Selector::Both) => Err(ConstructError::Ambiguous(format!(
                "`{a}` and `{b}` meet in two points; bind two names or add a selector"
            ))),
            (1, Selector::First) => Ok(vec![pts[0]]),
            (1, Selector::Second) => match pts.get(1) {
                Some(p) => Ok(vec![*p]),
                None => Err(GeomError::infeasible(format!(
                    "`{a}` and `{b}` meet in a single point; there is no second"
                ))
                .into()),
            },
            (1, Selector::NearestTo(reference)) => {
                let r = self.point(reference)?;
                let best = pts
                    .iter()
                    .copied()
                    .min_by(|p, q| p.distance(&r).total_cmp(&q.distance(&r)))
                    .expect("non-empty");
                Ok(vec![best])
            }
            (n, _) => Err(ConstructError::Arity {
                what: "intersect".into(),
                expected: "1 or 2 names (a selector needs exactly 1)".into(),
                found: n,
            }),
        }
    }

    /// Expands a macro under a fresh hidden prefix and enforces its
    /// postconditions. Returns the trace index of the macro header.
    fn run_macro(
        &mut self,
        name: &str,
        args: &[Arg],
    ) -> Result<(usize, macros::Expansion, Vec<Check>), ConstructError> {
        let def = macros::lookup(name)?;
        def.validate_args(self, args)?;
        let header = self.trace.len();
        self.record(Instruction::Macro {
            name: name.to_string(),
            args: args.to_vec(),
            outputs: Vec::new(),
        });
        self.macro_serial += 1;
        let prefix = format!("_{}{}", name, self.macro_serial);
        self.depth += 1;
        let expanded = macros::expand(def, self, &prefix, args);
        self.depth -= 1;
        let expansion = expanded?;
        let checks = def.check(self, args, &expansion.outputs)?;
        if let Some(failed) = checks.iter().find(|c| !c.passed()) {
            return Err(ConstructError::Postcondition {
                macro_name: name.to_string(),
                check: failed.label.clone(),
                measured: failed.measured,
                expected: failed.expected,
                tolerance: failed.tolerance,
            });
        }
        Ok((header, expansion, checks))
    }

    fn set_macro_outputs(&mut self, header: usize, names: &[String]) {
        if let Instruction::Macro { outputs, .. } = &mut self.trace[header].instruction {
            *outputs = names.to_vec();
        }
    }

    /// Invokes a library macro, binding its outputs under `binding`.
    pub fn apply_macro(
        &mut self,
        name: &str,
        args: &[Arg],
        binding: &OutputBinding,
    ) -> Result<Vec<String>, ConstructError> {
        let (header, expansion, checks) = self.run_macro(name, args)?;
        let names: Vec<String> = match binding {
            OutputBinding::Names(names) => {
                if names.len() != expansion.outputs.len() {
                    return Err(ConstructError::Arity {
                        what: format!("outputs of `{name}`"),
                        expected: format!("{} name(s)", expansion.outputs.len()),
                        found: names.len(),
                    });
                }
                names.clone()
            }
            OutputBinding::Glob(prefix) => (1..=expansion.outputs.len())
                .map(|i| format!("{prefix}{i}"))
                .collect(),
        };
        if let Some(dup) = names.iter().find(|n| self.contains(n)) {
            return Err(ConstructError::DuplicateName(dup.clone()));
        }
        for (user, hidden) in names.iter().zip(&expansion.outputs) {
            self.exec(Instruction::Bind {
                name: user.clone(),
                target: hidden.clone(),
            })?;
        }
        self.set_macro_outputs(header, &names);
        self.reports.push(MacroReport {
            name: name.to_string(),
            args: args.to_vec(),
            outputs: names.clone(),
            checks,
            notes: expansion.notes,
        });
        Ok(names)
    }

    /// Runs a macro nested inside another macro's expansion; outputs keep
    /// their hidden names and postconditions are still enforced.
    pub(crate) fn apply_nested_macro(
        &mut self,
        name: &str,
        args: &[Arg],
    ) -> Result<Vec<String>, ConstructError> {
        let (header, expansion, _) = self.run_macro(name, args)?;
        self.set_macro_outputs(header, &expansion.outputs);
        Ok(expansion.outputs)
    }

    /// Evaluates an assertion without recording it.
    pub fn evaluate(&self, predicate: &Predicate, tolerance: Option<f64>) -> Result<Check, ConstructError> {
        let tol = self.tolerance();
        let label = predicate.to_string();
        Ok(match predicate {
            Predicate::Equal(l, r) => {
                let (lv, rv) = (l.eval(self)?, r.eval(self)?);
                let window = tolerance.unwrap_or_else(|| tol.window(lv.abs().max(rv.abs())));
                Check::new(label, lv, rv, window)
            }
            Predicate::On(p, obj) => {
                let pt = self.point(p)?;
                let residual = match &self.get(obj)?.object {
                    Object::Point(q) => pt.distance(q),
                    Object::Line(l) => l.signed_distance(&pt).abs(),
                    Object::Circle(c) => (c.center().distance(&pt) - c.radius()).abs(),
                    Object::Arc(a) => {
                        let on_circle = (a.circle().center().distance(&pt) - a.circle().radius()).abs();
                        if a.spans(&pt, &tol) {
                            on_circle
                        } else {
                            f64::INFINITY
                        }
                    }
                };
                let window = tolerance.unwrap_or_else(|| tol.window(pt.norm()));
                Check::new(label, residual, 0.0, window)
            }
            Predicate::Parallel(a, b) => {
                let cross = self.line(a)?.direction().cross(&self.line(b)?.direction());
                Check::new(label, cross.abs(), 0.0, tolerance.unwrap_or(tol.abs_eps()))
            }
            Predicate::Perpendicular(a, b) => {
                let dot = self.line(a)?.direction().dot(&self.line(b)?.direction());
                Check::new(label, dot.abs(), 0.0, tolerance.unwrap_or(tol.abs_eps()))
            }
        })
    }

    /// Executes one script statement.
    pub fn run_statement(&mut self, stmt: &StatementKind) -> Result<Vec<String>, ConstructError> {
        match stmt {
            StatementKind::FreePoint { name, x, y } => {
                let (x, y) = (x.eval(self)?, y.eval(self)?);
                self.exec(Instruction::FreePoint {
                    name: name.clone(),
                    x,
                    y,
                })
            }
            StatementKind::Line { name, p, q } => self.exec(Instruction::LineThrough {
                name: name.clone(),
                p: p.clone(),
                q: q.clone(),
            }),
            StatementKind::Circle {
                name,
                center,
                through,
            } => self.exec(Instruction::CircleCenterThrough {
                name: name.clone(),
                center: center.clone(),
                through: through.clone(),
            }),
            StatementKind::CircleRadiusOf { name, center, p, q } => {
                self.exec(Instruction::CircleCenterRadiusOf {
                    name: name.clone(),
                    center: center.clone(),
                    p: p.clone(),
                    q: q.clone(),
                })
            }
            StatementKind::Intersect {
                names,
                a,
                b,
                selector,
            } => self.exec(Instruction::Intersect {
                names: names.clone(),
                a: a.clone(),
                b: b.clone(),
                selector: selector.clone(),
            }),
            StatementKind::Macro {
                outputs,
                name,
                args,
            } => {
                let mut resolved = Vec::with_capacity(args.len());
                for a in args {
                    resolved.push(match a {
                        super::program::Expr::Name(n) if n != "pi" => Arg::Name(n.clone()),
                        e => Arg::Number(e.eval(self)?),
                    });
                }
                self.apply_macro(name, &resolved, outputs)
            }
            StatementKind::Assert {
                predicate,
                tolerance,
            } => {
                let check = self.evaluate(predicate, *tolerance)?;
                self.record(Instruction::Assert {
                    predicate: predicate.clone(),
                    tolerance: *tolerance,
                });
                if !check.passed() {
                    return Err(ConstructError::AssertFailed {
                        description: check.label,
                        measured: check.measured,
                        expected: check.expected,
                        tolerance: check.tolerance,
                    });
                }
                Ok(Vec::new())
            }
            StatementKind::Emit { format, path } => {
                self.emits.push(EmitRecord {
                    format: *format,
                    path: path.clone(),
                    object_count: self.objects.len(),
                });
                self.record(Instruction::Emit {
                    format: *format,
                    path: path.clone(),
                });
                Ok(Vec::new())
            }
        }
    }
}
