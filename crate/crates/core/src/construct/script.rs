//! Line-oriented parser for construction scripts.
//!
//! ```text
//! # comment
//! point A = (0, 0)
//! point B = (4, 0)
//! circle c1 = circle(A, B)
//! circle c2 = circle(B, r_of(A, B))
//! points P, Q = intersect(c1, c2)
//! point T = intersect(c1, c2, nearest=A)
//! line l = line(A, B)
//! macro m = perpendicular_bisector(A, B)
//! macro V* = inscribe_regular(6, c1)
//! assert dist(A, P) == dist(B, P)
//! assert angle(A, P, B) == 60 tol 1e-9
//! assert on(P, c2)
//! emit svg "figure.svg"
//! ```

use super::error::ConstructError;
use super::program::{
    BinOp, ConstructionProgram, EmitFormat, Expr, OutputBinding, Predicate, Selector, Statement,
    StatementKind,
};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Str(String),
    Sym(&'static str),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(v) => format!("number {v}"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Sym(s) => format!("`{s}`"),
        }
    }
}

const SYMBOLS: [&str; 9] = ["==", "(", ")", ",", "=", "+", "-", "*", "/"];

fn lex(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>, ConstructError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| ConstructError::Parse {
        line: line_no,
        column: col,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s
                .parse()
                .map_err(|_| err(col, format!("malformed number `{s}`")))?;
            toks.push((Tok::Number(v), col));
            continue;
        }
        if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err(err(col, "unterminated string".into()));
            }
            toks.push((Tok::Str(chars[start..j].iter().collect()), col));
            i = j + 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                toks.push((Tok::Sym(s), col));
                i += s.len();
            }
            None => return Err(err(col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

type PResult<T> = Result<T, ConstructError>;

impl Parser {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ConstructError::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of line".into(), Tok::describe)
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, sym: &str) -> PResult<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            self.error(format!("expected `{sym}`, found {}", self.found()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.found())),
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{word}`, found {}", self.found())),
        }
    }

    /// A name the script may bind: not hidden, not a builtin.
    fn new_name(&mut self) -> PResult<String> {
        let col = self.col();
        let name = self.ident()?;
        if name.starts_with('_') || name == "pi" {
            return Err(ConstructError::Parse {
                line: self.line,
                column: col,
                message: format!("`{name}` is reserved"),
            });
        }
        Ok(name)
    }

    fn number(&mut self) -> PResult<f64> {
        let negative = self.eat_sym("-");
        match self.peek() {
            Some(Tok::Number(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            _ => self.error(format!("expected a number, found {}", self.found())),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            self.error(format!("unexpected {}", self.found()))
        } else {
            Ok(())
        }
    }

    fn names_in_parens(&mut self, count: usize) -> PResult<Vec<String>> {
        self.expect_sym("(")?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect_sym(",")?;
            }
            out.push(self.ident()?);
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat_sym("+") {
                BinOp::Add
            } else if self.eat_sym("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat_sym("*") {
                BinOp::Mul
            } else if self.eat_sym("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().cloned() {
            Some(Tok::Number(v)) => {
                self.pos += 1;
                Ok(Expr::Number(v))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !matches!(self.peek(), Some(Tok::Sym("("))) {
                    return Ok(Expr::Name(name));
                }
                match name.as_str() {
                    "dist" => {
                        let n = self.names_in_parens(2)?;
                        Ok(Expr::Dist(n[0].clone(), n[1].clone()))
                    }
                    "angle" => {
                        let n = self.names_in_parens(3)?;
                        Ok(Expr::Angle(n[0].clone(), n[1].clone(), n[2].clone()))
                    }
                    "radius" => Ok(Expr::Radius(self.names_in_parens(1)?.remove(0))),
                    "x" => Ok(Expr::X(self.names_in_parens(1)?.remove(0))),
                    "y" => Ok(Expr::Y(self.names_in_parens(1)?.remove(0))),
                    "sqrt" => {
                        self.expect_sym("(")?;
                        let e = self.expr()?;
                        self.expect_sym(")")?;
                        Ok(Expr::Sqrt(Box::new(e)))
                    }
                    other => {
                        self.pos -= 1;
                        self.error(format!("unknown function `{other}`"))
                    }
                }
            }
            _ => self.error(format!("expected an expression, found {}", self.found())),
        }
    }

    fn intersect_call(&mut self, names: Vec<String>) -> PResult<StatementKind> {
        self.keyword("intersect")?;
        self.expect_sym("(")?;
        let a = self.ident()?;
        self.expect_sym(",")?;
        let b = self.ident()?;
        let mut selector = Selector::Both;
        if self.eat_sym(",") {
            let col = self.col();
            let word = self.ident()?;
            selector = match word.as_str() {
                "first" => Selector::First,
                "second" => Selector::Second,
                "nearest" => {
                    self.expect_sym("=")?;
                    Selector::NearestTo(self.ident()?)
                }
                _ => {
                    return Err(ConstructError::Parse {
                        line: self.line,
                        column: col,
                        message: format!(
                            "expected `first`, `second` or `nearest=NAME`, found `{word}`"
                        ),
                    })
                }
            };
            if names.len() != 1 {
                return self.error("a selector binds a single point");
            }
        }
        self.expect_sym(")")?;
        Ok(StatementKind::Intersect {
            names,
            a,
            b,
            selector,
        })
    }

    fn statement(&mut self) -> PResult<StatementKind> {
        let keyword = self.ident()?;
        let kind = match keyword.as_str() {
            "point" => {
                let name = self.new_name()?;
                self.expect_sym("=")?;
                if self.eat_sym("(") {
                    let x = self.expr()?;
                    self.expect_sym(",")?;
                    let y = self.expr()?;
                    self.expect_sym(")")?;
                    StatementKind::FreePoint { name, x, y }
                } else {
                    self.intersect_call(vec![name])?
                }
            }
            "points" => {
                let mut names = vec![self.new_name()?];
                while self.eat_sym(",") {
                    names.push(self.new_name()?);
                }
                self.expect_sym("=")?;
                self.intersect_call(names)?
            }
            "line" => {
                let name = self.new_name()?;
                self.expect_sym("=")?;
                self.keyword("line")?;
                let n = self.names_in_parens(2)?;
                StatementKind::Line {
                    name,
                    p: n[0].clone(),
                    q: n[1].clone(),
                }
            }
            "circle" => {
                let name = self.new_name()?;
                self.expect_sym("=")?;
                self.keyword("circle")?;
                self.expect_sym("(")?;
                let center = self.ident()?;
                self.expect_sym(",")?;
                let second = self.ident()?;
                let kind = if second == "r_of" && matches!(self.peek(), Some(Tok::Sym("("))) {
                    let n = self.names_in_parens(2)?;
                    StatementKind::CircleRadiusOf {
                        name,
                        center,
                        p: n[0].clone(),
                        q: n[1].clone(),
                    }
                } else {
                    StatementKind::Circle {
                        name,
                        center,
                        through: second,
                    }
                };
                self.expect_sym(")")?;
                kind
            }
            "macro" => {
                let first = self.new_name()?;
                let outputs = if self.eat_sym("*") {
                    OutputBinding::Glob(first)
                } else {
                    let mut names = vec![first];
                    while self.eat_sym(",") {
                        names.push(self.new_name()?);
                    }
                    OutputBinding::Names(names)
                };
                self.expect_sym("=")?;
                let name = self.ident()?;
                self.expect_sym("(")?;
                let mut args = Vec::new();
                if !self.eat_sym(")") {
                    loop {
                        args.push(self.expr()?);
                        if self.eat_sym(")") {
                            break;
                        }
                        self.expect_sym(",")?;
                    }
                }
                StatementKind::Macro {
                    outputs,
                    name,
                    args,
                }
            }
            "assert" => {
                let predicate = self.predicate()?;
                let tolerance = match self.peek() {
                    Some(Tok::Ident(w)) if w == "tol" => {
                        self.pos += 1;
                        let col = self.col();
                        let t = self.number()?;
                        if !(t > 0.0 && t.is_finite()) {
                            return Err(ConstructError::Parse {
                                line: self.line,
                                column: col,
                                message: "tolerance must be positive".into(),
                            });
                        }
                        Some(t)
                    }
                    _ => None,
                };
                StatementKind::Assert {
                    predicate,
                    tolerance,
                }
            }
            "emit" => {
                self.keyword("svg")?;
                match self.peek().cloned() {
                    Some(Tok::Str(path)) if !path.is_empty() => {
                        self.pos += 1;
                        StatementKind::Emit {
                            format: EmitFormat::Svg,
                            path,
                        }
                    }
                    _ => return self.error(format!("expected a file path string, found {}", self.found())),
                }
            }
            other => {
                self.pos -= 1;
                return self.error(format!("unknown statement `{other}`"));
            }
        };
        self.finish()?;
        Ok(kind)
    }

    fn predicate(&mut self) -> PResult<Predicate> {
        let relation = match (self.peek(), self.toks.get(self.pos + 1).map(|t| &t.0)) {
            (Some(Tok::Ident(w)), Some(Tok::Sym("(")))
                if matches!(w.as_str(), "on" | "parallel" | "perp") =>
            {
                Some(w.clone())
            }
            _ => None,
        };
        if let Some(word) = relation {
            self.pos += 1;
            let n = self.names_in_parens(2)?;
            let (a, b) = (n[0].clone(), n[1].clone());
            return Ok(match word.as_str() {
                "on" => Predicate::On(a, b),
                "parallel" => Predicate::Parallel(a, b),
                _ => Predicate::Perpendicular(a, b),
            });
        }
        let lhs = self.expr()?;
        self.expect_sym("==")?;
        let rhs = self.expr()?;
        Ok(Predicate::Equal(lhs, rhs))
    }
}

pub(crate) fn parse_program(source: &str) -> Result<ConstructionProgram, ConstructError> {
    let mut statements = Vec::new();
    for (idx, text) in source.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(line, text)?;
        if toks.is_empty() {
            continue;
        }
        let mut parser = Parser {
            toks,
            pos: 0,
            line,
            end_col: text.chars().count() + 1,
        };
        let kind = parser.statement()?;
        statements.push(Statement { line, kind });
    }
    Ok(ConstructionProgram { statements })
}
