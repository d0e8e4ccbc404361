//! SVG drawings of construction traces.
//!
//! Output depends only on the trace and the canvas size: fixed palette, fixed
//! font, coordinates written with nine decimals.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::trace::{PointRef, Step, StepKind, Trace};

/// Tolerance, relative to the drawing's extent, for a point lying on a line.
const ON_LINE_TOL: f64 = 1e-9;
/// Largest `|cos|` accepted for a right angle.
const RIGHT_ANGLE_TOL: f64 = 1e-9;
/// Perpendiculars shorter than this fraction of the extent are drawn unmarked.
const MARK_MIN: f64 = 1e-6;
const MARGIN: f64 = 0.05;

type Pt = (f64, f64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Sides of a constructed triangle.
    Side,
    Perpendicular,
    /// Rays of an angle and its bisector.
    Ray,
    Rotation,
    Measure,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Side => "side",
            Style::Perpendicular => "perpendicular",
            Style::Ray => "ray",
            Style::Rotation => "rotation",
            Style::Measure => "measure",
        }
    }

    fn attrs(self) -> &'static str {
        match self {
            Style::Side => r##"stroke="#1f2933" stroke-width="1.6""##,
            Style::Perpendicular => r##"stroke="#2563eb" stroke-width="1.2""##,
            Style::Ray => r##"stroke="#b45309" stroke-width="1.2""##,
            Style::Rotation => r##"stroke="#7c3aed" stroke-width="0.8" stroke-dasharray="4 3""##,
            Style::Measure => r##"stroke="#059669" stroke-width="2.4" stroke-opacity="0.45""##,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Pt,
    pub b: Pt,
    pub style: Style,
}

/// Right angle at `foot` between `foot -> from` and the line `line`.
#[derive(Clone, Debug, PartialEq)]
pub struct RightAngle {
    pub foot: Pt,
    pub from: Pt,
    pub line: (Pt, Pt),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    /// Every distinct placement of a label, in order of appearance.
    pub points: Vec<(String, Pt)>,
    pub segments: Vec<Segment>,
    pub marks: Vec<RightAngle>,
    pub caption: String,
}

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn dot(a: Pt, b: Pt) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn norm(a: Pt) -> f64 {
    a.0.hypot(a.1)
}

fn cos_between(a: Pt, b: Pt) -> f64 {
    dot(a, b) / (norm(a) * norm(b))
}

fn bad(msg: String) -> Error {
    Error::InconsistentTrace(msg)
}

struct Resolver {
    current: Vec<(String, Pt)>,
    placed: Vec<(String, Pt)>,
}

impl Resolver {
    fn at(&mut self, p: &PointRef) -> Result<Pt> {
        if let Some(xy) = p.at {
            match self.current.iter_mut().find(|(l, _)| *l == p.label) {
                Some(slot) => slot.1 = xy,
                None => self.current.push((p.label.clone(), xy)),
            }
            if !self.placed.iter().any(|(l, q)| *l == p.label && *q == xy) {
                self.placed.push((p.label.clone(), xy));
            }
            return Ok(xy);
        }
        self.current
            .iter()
            .find(|(l, _)| *l == p.label)
            .map(|(_, xy)| *xy)
            .ok_or_else(|| bad(format!("point {} used before it is placed", p.label)))
    }
}

fn extent(points: &[(String, Pt)]) -> (Pt, Pt) {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, p) in points {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    (lo, hi)
}

impl Diagram {
    /// Resolves and checks every step of a trace.
    pub fn from_trace(trace: &Trace) -> Result<Diagram> {
        if trace.is_empty() {
            return Err(bad("empty trace".into()));
        }
        let mut r = Resolver { current: Vec::new(), placed: Vec::new() };
        let mut segments = Vec::new();
        let mut perps = Vec::new();
        for step in &trace.steps {
            match step {
                Step::ConstructAngle { vertex, base, apex, .. } => {
                    let (c, b, a) = (r.at(vertex)?, r.at(base)?, r.at(apex)?);
                    for (p, q) in [(c, b), (b, a), (c, a)] {
                        segments.push(Segment { a: p, b: q, style: Style::Side });
                    }
                    perps.push((b, c, (b, a), format!("angle at {}", base.label)));
                }
                Step::DropPerpendicular { from, line, foot } => {
                    let (f, l0, l1, d) = (r.at(from)?, r.at(&line.0)?, r.at(&line.1)?, r.at(foot)?);
                    segments.push(Segment { a: f, b: d, style: Style::Perpendicular });
                    perps.push((d, f, (l0, l1), format!("foot {}", foot.label)));
                }
                Step::BisectAngle { vertex, arm1, arm2, out } => {
                    let (v, a1, a2, o) = (r.at(vertex)?, r.at(arm1)?, r.at(arm2)?, r.at(out)?);
                    let (c1, c2) = (cos_between(sub(a1, v), sub(o, v)), cos_between(sub(a2, v), sub(o, v)));
                    if !((c1 - c2).abs() <= RIGHT_ANGLE_TOL) {
                        return Err(bad(format!("{} does not bisect the angle at {}", out.label, vertex.label)));
                    }
                    for p in [a1, a2, o] {
                        segments.push(Segment { a: v, b: p, style: Style::Ray });
                    }
                }
                Step::RotateHypotenuse { pivot, vertex, .. } => {
                    let (p, v) = (r.at(pivot)?, r.at(vertex)?);
                    segments.push(Segment { a: p, b: v, style: Style::Rotation });
                }
                Step::MeasureLength { from, to, .. } => {
                    let (a, b) = (r.at(from)?, r.at(to)?);
                    segments.push(Segment { a, b, style: Style::Measure });
                }
            }
        }

        let (lo, hi) = extent(&r.placed);
        let size = norm(sub(hi, lo)).max(f64::MIN_POSITIVE);
        let mut marks = Vec::new();
        for (foot, from, (l0, l1), what) in perps {
            let dir = sub(l1, l0);
            if norm(dir) <= ON_LINE_TOL * size {
                return Err(bad(format!("{what}: the target line has no length")));
            }
            let t = dot(sub(foot, l0), dir) / dot(dir, dir);
            let off = (sub(foot, l0).0 * dir.1 - sub(foot, l0).1 * dir.0).abs() / norm(dir);
            if off > ON_LINE_TOL * size || !(-ON_LINE_TOL..=1.0 + ON_LINE_TOL).contains(&t) {
                return Err(bad(format!("{what} is off its target segment")));
            }
            let arm = sub(from, foot);
            if norm(arm) < MARK_MIN * size {
                continue;
            }
            if cos_between(arm, dir).abs() > RIGHT_ANGLE_TOL {
                return Err(bad(format!("{what} is not perpendicular to its line")));
            }
            if what.starts_with("foot") {
                marks.push(RightAngle { foot, from, line: (l0, l1) });
            }
        }

        let caption = StepKind::ALL
            .iter()
            .filter_map(|&k| match trace.count(k) {
                0 => None,
                n => Some(format!("{} x{n}", k.name())),
            })
            .collect::<Vec<_>>()
            .join(", ");
        Ok(Diagram { points: r.placed, segments, marks, caption })
    }

    pub fn to_svg(&self, width: u32, height: u32) -> String {
        let (w, h) = (width as f64, height as f64);
        let (lo, hi) = extent(&self.points);
        let (dx, dy) = (hi.0 - lo.0, hi.1 - lo.1);
        let inner = 1.0 - 2.0 * MARGIN;
        let scale = match (dx > 0.0, dy > 0.0) {
            (true, true) => (w * inner / dx).min(h * inner / dy),
            (true, false) => w * inner / dx,
            (false, true) => h * inner / dy,
            (false, false) => 1.0,
        };
        let (ox, oy) = ((w - dx * scale) / 2.0, (h - dy * scale) / 2.0);
        let map = |p: Pt| (ox + (p.0 - lo.0) * scale, h - oy - (p.1 - lo.1) * scale);

        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.caption));
        s.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
        s.push_str("<g fill=\"none\" stroke-linecap=\"round\">\n");
        for seg in &self.segments {
            let (a, b) = (map(seg.a), map(seg.b));
            let _ = writeln!(
                s,
                r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" {}/>"#,
                seg.style.class(),
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1),
                seg.style.attrs()
            );
        }
        for m in &self.marks {
            let (foot, from, l0, l1) = (map(m.foot), map(m.from), map(m.line.0), map(m.line.1));
            let far = if norm(sub(l0, foot)) > norm(sub(l1, foot)) { l0 } else { l1 };
            let along = unit(sub(far, foot));
            let up = unit(sub(from, foot));
            let size = (0.3 * norm(sub(from, foot))).min(0.3 * norm(sub(far, foot))).min(10.0);
            let p1 = (foot.0 + along.0 * size, foot.1 + along.1 * size);
            let p2 = (p1.0 + up.0 * size, p1.1 + up.1 * size);
            let p3 = (foot.0 + up.0 * size, foot.1 + up.1 * size);
            let _ = writeln!(
                s,
                r##"<path class="right-angle" data-right-angle="{} {} {} {}" d="M {} {} L {} {} L {} {}" stroke="#dc2626" stroke-width="0.8"/>"##,
                pair(foot),
                pair(from),
                pair(l0),
                pair(l1),
                num(p1.0),
                num(p1.1),
                num(p2.0),
                num(p2.1),
                num(p3.0),
                num(p3.1)
            );
        }
        s.push_str("</g>\n");
        s.push_str("<g font-family=\"DejaVu Sans, sans-serif\" font-size=\"12\" fill=\"#111827\">\n");
        for (label, p) in &self.points {
            let q = map(*p);
            let _ = writeln!(
                s,
                r#"<circle class="point" data-label="{}" cx="{}" cy="{}" r="2"/>"#,
                escape(label),
                num(q.0),
                num(q.1)
            );
            let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, num(q.0 + 4.0), num(q.1 - 4.0), escape(label));
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn unit(p: Pt) -> Pt {
    let n = norm(p);
    if n == 0.0 {
        (0.0, 0.0)
    } else {
        (p.0 / n, p.1 / n)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000000".to_string()
    } else {
        s
    }
}

fn pair(p: Pt) -> String {
    format!("{},{}", num(p.0), num(p.1))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace('\'', "&apos;")
}

/// SVG for a trace on a `width` x `height` canvas, scaled to fit with a 5% margin.
pub fn render_trace(trace: &Trace, width: u32, height: u32) -> Result<String> {
    if width == 0 || height == 0 {
        return Err(Error::Domain("canvas must have a positive size".into()));
    }
    Ok(Diagram::from_trace(trace)?.to_svg(width, height))
}
