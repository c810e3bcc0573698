//! Deterministic SVG rendering of a workspace.
//!
//! Objects are drawn in insertion order. Auxiliary objects (hidden names
//! produced by macro expansion) are drawn thin and gray without labels.
//! Numbers are printed with three decimals, so equal workspaces render to
//! byte-identical files.

use std::fmt::Write;

use super::workspace::{Object, Workspace};
use crate::plane::{Line, Point};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;

struct Frame {
    min: Point,
    max: Point,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(ws: &Workspace, count: usize) -> Frame {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point, r: f64| {
            lo = Point::new(lo.x.min(p.x - r), lo.y.min(p.y - r));
            hi = Point::new(hi.x.max(p.x + r), hi.y.max(p.y + r));
        };
        for (_, entry) in ws.objects().take(count) {
            match &entry.object {
                Object::Point(p) => grow(*p, 0.0),
                Object::Circle(c) => grow(c.center(), c.radius()),
                Object::Arc(a) => grow(a.circle().center(), a.circle().radius()),
                Object::Line(_) => {}
            }
        }
        if !lo.x.is_finite() {
            lo = Point::new(-1.0, -1.0);
            hi = Point::new(1.0, 1.0);
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let pad = span * MARGIN;
        let min = Point::new(lo.x - pad, lo.y - pad);
        let max = Point::new(hi.x + pad, hi.y + pad);
        let scale = WIDTH / (max.x - min.x).max(1e-9);
        let height = ((max.y - min.y) * scale).max(1.0);
        Frame {
            min,
            max,
            scale,
            height,
        }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, self.height - (p.y - self.min.y) * self.scale)
    }

    /// The part of `line` inside the frame, if any.
    fn clip(&self, line: &Line) -> Option<(Point, Point)> {
        let base = crate::plane::foot_of_perpendicular(&self.min.midpoint(&self.max), line);
        let d = line.direction();
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, dir, lo, hi) in [
            (base.x, d.x, self.min.x, self.max.x),
            (base.y, d.y, self.min.y, self.max.y),
        ] {
            if dir.abs() < 1e-15 {
                if o < lo || o > hi {
                    return None;
                }
            } else {
                let (a, b) = ((lo - o) / dir, (hi - o) / dir);
                t0 = t0.max(a.min(b));
                t1 = t1.min(a.max(b));
            }
        }
        (t0 < t1).then(|| (base + d * t0, base + d * t1))
    }
}

fn style(hidden: bool) -> &'static str {
    if hidden {
        r##"stroke="#bbbbbb" stroke-width="0.5" fill="none""##
    } else {
        r##"stroke="#000000" stroke-width="1.2" fill="none""##
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the first `object_count` objects of the workspace.
pub fn render(ws: &Workspace, object_count: usize) -> String {
    let frame = Frame::fit(ws, object_count);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        WIDTH, frame.height, WIDTH, frame.height
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for (name, entry) in ws.objects().take(object_count) {
        let hidden = name.starts_with('_');
        match &entry.object {
            Object::Point(p) => {
                let (x, y) = frame.map(p);
                let fill = if hidden { "#bbbbbb" } else { "#000000" };
                let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.000" fill="{fill}"/>"#);
                if !hidden {
                    let _ = writeln!(
                        out,
                        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{}</text>"#,
                        x + 4.0,
                        y - 4.0,
                        escape(name)
                    );
                }
            }
            Object::Line(l) => {
                if let Some((a, b)) = frame.clip(l) {
                    let (x1, y1) = frame.map(&a);
                    let (x2, y2) = frame.map(&b);
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {}/>"#,
                        style(hidden)
                    );
                }
            }
            Object::Circle(c) => {
                let (x, y) = frame.map(&c.center());
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" {}/>"#,
                    c.radius() * frame.scale,
                    style(hidden)
                );
            }
            Object::Arc(a) => {
                let (x1, y1) = frame.map(&a.point_at(0.0));
                let (x2, y2) = frame.map(&a.point_at(1.0));
                let (xm, ym) = frame.map(&a.point_at(0.5));
                let r = a.circle().radius() * frame.scale;
                // Two half-arcs, so a full sweep still renders.
                let _ = writeln!(
                    out,
                    r#"<path d="M {x1:.3} {y1:.3} A {r:.3} {r:.3} 0 0 0 {xm:.3} {ym:.3} A {r:.3} {r:.3} 0 0 0 {x2:.3} {y2:.3}" {}/>"#,
                    style(hidden)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{run_program, ConstructionProgram};
    use crate::scalar::Tolerance;

    fn sample() -> Workspace {
        let src = "point A = (0, 0)\npoint B = (4, 0)\ncircle c = circle(A, B)\nline l = line(A, B)\nmacro m = perpendicular_bisector(A, B)\n";
        run_program(&ConstructionProgram::parse(src).unwrap(), Tolerance::default()).unwrap()
    }

    #[test]
    fn deterministic_output() {
        let ws = sample();
        assert_eq!(render(&ws, ws.len()), render(&sample(), ws.len()));
    }

    #[test]
    fn labels_only_named_points() {
        let ws = sample();
        let svg = render(&ws, ws.len());
        assert!(svg.contains(">A</text>"));
        assert!(svg.contains(">B</text>"));
        assert!(!svg.contains(">_"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn respects_object_count() {
        let ws = sample();
        let svg = render(&ws, 2);
        assert!(!svg.contains("<line"));
        assert_eq!(svg.matches("<text").count(), 2);
    }

    #[test]
    fn clipped_lines_stay_in_frame() {
        let ws = sample();
        let svg = render(&ws, ws.len());
        for line in svg.lines().filter(|l| l.starts_with("<line")) {
            for attr in ["x1", "y1", "x2", "y2"] {
                let start = line.find(&format!("{attr}=\"")).unwrap() + attr.len() + 2;
                let end = start + line[start..].find('"').unwrap();
                let v: f64 = line[start..end].parse().unwrap();
                assert!((-0.01..=800.01).contains(&v), "{attr}={v}");
            }
        }
    }
}
