use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::error::{ConstructError, ProgramError};
use super::workspace::Workspace;
use crate::scalar::Tolerance;

/// Which intersection point(s) an `Intersect` binds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Selector {
    Both,
    First,
    Second,
    NearestTo(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Numeric expression over workspace measurements. Angles are in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Number(f64),
    Name(String),
    Dist(String, String),
    Angle(String, String, String),
    Radius(String),
    X(String),
    Y(String),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, ws: &Workspace) -> Result<f64, ConstructError> {
        Ok(match self {
            Expr::Number(v) => *v,
            Expr::Name(n) if n == "pi" => PI,
            Expr::Name(n) => {
                return Err(ConstructError::WrongKind {
                    name: n.clone(),
                    expected: "number",
                    found: ws.get(n)?.object.kind_name(),
                })
            }
            Expr::Dist(a, b) => ws.point(a)?.distance(&ws.point(b)?),
            Expr::Angle(a, o, b) => {
                crate::plane::angle_at(&ws.point(a)?, &ws.point(o)?, &ws.point(b)?).to_degrees()
            }
            Expr::Radius(c) => ws.circle(c)?.radius(),
            Expr::X(p) => ws.point(p)?.x,
            Expr::Y(p) => ws.point(p)?.y,
            Expr::Sqrt(e) => {
                let v = e.eval(ws)?;
                crate::scalar::scalar_sqrt(v)?
            }
            Expr::Neg(e) => -e.eval(ws)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.eval(ws)?, r.eval(ws)?);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                }
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Dist(a, b) => write!(f, "dist({a}, {b})"),
            Expr::Angle(a, o, b) => write!(f, "angle({a}, {o}, {b})"),
            Expr::Radius(c) => write!(f, "radius({c})"),
            Expr::X(p) => write!(f, "x({p})"),
            Expr::Y(p) => write!(f, "y({p})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Binary(op, l, r) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "({l} {sym} {r})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Predicate {
    Equal(Expr, Expr),
    On(String, String),
    Parallel(String, String),
    Perpendicular(String, String),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Equal(l, r) => write!(f, "{l} == {r}"),
            Predicate::On(p, o) => write!(f, "on({p}, {o})"),
            Predicate::Parallel(a, b) => write!(f, "parallel({a}, {b})"),
            Predicate::Perpendicular(a, b) => write!(f, "perp({a}, {b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmitFormat {
    Svg,
}

/// Resolved macro argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Arg {
    Name(String),
    Number(f64),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => write!(f, "{n}"),
            Arg::Number(v) => write!(f, "{v}"),
        }
    }
}

/// How macro outputs are named: an explicit list, or `PREFIX*` which binds
/// `PREFIX1`, `PREFIX2`, … for however many outputs the macro produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OutputBinding {
    Names(Vec<String>),
    Glob(String),
}

/// One executed VM step, as recorded in the workspace trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Instruction {
    FreePoint {
        name: String,
        x: f64,
        y: f64,
    },
    LineThrough {
        name: String,
        p: String,
        q: String,
    },
    CircleCenterThrough {
        name: String,
        center: String,
        through: String,
    },
    /// Compass transfer: circle about `center` with radius `|pq|`.
    CircleCenterRadiusOf {
        name: String,
        center: String,
        p: String,
        q: String,
    },
    /// Counterclockwise arc about `center` from `from`'s bearing to `to`'s.
    ArcCenterFromTo {
        name: String,
        center: String,
        from: String,
        to: String,
    },
    Intersect {
        names: Vec<String>,
        a: String,
        b: String,
        selector: Selector,
    },
    Macro {
        name: String,
        args: Vec<Arg>,
        outputs: Vec<String>,
    },
    /// A user-visible name bound to a macro output.
    Bind {
        name: String,
        target: String,
    },
    Assert {
        predicate: Predicate,
        tolerance: Option<f64>,
    },
    Emit {
        format: EmitFormat,
        path: String,
    },
}

/// Script-level statement; expressions are evaluated when it runs.
#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    FreePoint {
        name: String,
        x: Expr,
        y: Expr,
    },
    Line {
        name: String,
        p: String,
        q: String,
    },
    Circle {
        name: String,
        center: String,
        through: String,
    },
    CircleRadiusOf {
        name: String,
        center: String,
        p: String,
        q: String,
    },
    Intersect {
        names: Vec<String>,
        a: String,
        b: String,
        selector: Selector,
    },
    Macro {
        outputs: OutputBinding,
        name: String,
        args: Vec<Expr>,
    },
    Assert {
        predicate: Predicate,
        tolerance: Option<f64>,
    },
    Emit {
        format: EmitFormat,
        path: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstructionProgram {
    pub statements: Vec<Statement>,
}

impl ConstructionProgram {
    pub fn parse(source: &str) -> Result<Self, ConstructError> {
        super::script::parse_program(source)
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}

/// Executes a program in a fresh workspace.
pub fn run_program(
    program: &ConstructionProgram,
    tolerance: Tolerance,
) -> Result<Workspace, ProgramError> {
    let mut ws = Workspace::new(tolerance);
    for stmt in &program.statements {
        ws.run_statement(&stmt.kind).map_err(|error| ProgramError {
            line: stmt.line,
            error,
        })?;
    }
    Ok(ws)
}
