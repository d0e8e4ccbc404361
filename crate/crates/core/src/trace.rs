//! Line-oriented record of the geometric primitives used by a construction.
//!
//! One step per line: a kind followed by `key=value` fields. A point is
//! written `LABEL@x,y` where it is first placed and `LABEL` afterwards.
//!
//! ```text
//! construct-angle vertex=C@0,0 base=B@1.333,0 apex=A@1.333,1 cos=0.8
//! drop-perpendicular from=B line=C|A foot=D@0.853,0.64
//! measure-length from=B to=D value=0.8
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::real::Real;

/// Most perpendiculars written to one trace; deeper cascades are summarized
/// by a final measurement.
pub const MAX_TRACED_PERPENDICULARS: usize = 64;
/// Most rotate steps written per search.
pub const MAX_TRACED_ROTATIONS: usize = 12;
/// Significant digits kept for numeric fields.
const FIELD_DIGITS: u32 = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct PointRef {
    pub label: String,
    pub at: Option<(f64, f64)>,
}

impl PointRef {
    pub fn def(label: impl Into<String>, x: f64, y: f64) -> Self {
        PointRef { label: label.into(), at: Some((x, y)) }
    }

    pub fn named(label: impl Into<String>) -> Self {
        PointRef { label: label.into(), at: None }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some((x, y)) => write!(f, "{}@{},{}", self.label, x, y),
            None => f.write_str(&self.label),
        }
    }
}

impl FromStr for PointRef {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (label, at) = match s.split_once('@') {
            Some((l, xy)) => {
                let (x, y) = xy.split_once(',').ok_or_else(|| format!("bad point {s:?}"))?;
                let x: f64 = x.parse().map_err(|_| format!("bad x in {s:?}"))?;
                let y: f64 = y.parse().map_err(|_| format!("bad y in {s:?}"))?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(format!("non-finite point {s:?}"));
                }
                (l, Some((x, y)))
            }
            None => (s, None),
        };
        if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_') {
            return Err(format!("bad label {s:?}"));
        }
        Ok(PointRef { label: label.to_string(), at })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// Right triangle with the given cosine at `vertex`, right angle at `base`.
    ConstructAngle { vertex: PointRef, base: PointRef, apex: PointRef, cos: Real },
    DropPerpendicular { from: PointRef, line: (PointRef, PointRef), foot: PointRef },
    BisectAngle { vertex: PointRef, arm1: PointRef, arm2: PointRef, out: PointRef },
    /// Hypotenuse turned about `pivot`; `vertex` is where it now meets the base.
    RotateHypotenuse { pivot: PointRef, vertex: PointRef, cos: Real },
    MeasureLength { from: PointRef, to: PointRef, value: Real },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    ConstructAngle,
    DropPerpendicular,
    BisectAngle,
    RotateHypotenuse,
    MeasureLength,
}

impl StepKind {
    pub const ALL: [StepKind; 5] = [
        StepKind::ConstructAngle,
        StepKind::DropPerpendicular,
        StepKind::BisectAngle,
        StepKind::RotateHypotenuse,
        StepKind::MeasureLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepKind::ConstructAngle => "construct-angle",
            StepKind::DropPerpendicular => "drop-perpendicular",
            StepKind::BisectAngle => "bisect-angle",
            StepKind::RotateHypotenuse => "rotate-hypotenuse",
            StepKind::MeasureLength => "measure-length",
        }
    }
}

impl Step {
    pub fn kind(&self) -> StepKind {
        match self {
            Step::ConstructAngle { .. } => StepKind::ConstructAngle,
            Step::DropPerpendicular { .. } => StepKind::DropPerpendicular,
            Step::BisectAngle { .. } => StepKind::BisectAngle,
            Step::RotateHypotenuse { .. } => StepKind::RotateHypotenuse,
            Step::MeasureLength { .. } => StepKind::MeasureLength,
        }
    }

    /// Every point mentioned by the step, in field order.
    pub fn points(&self) -> Vec<&PointRef> {
        match self {
            Step::ConstructAngle { vertex, base, apex, .. } => vec![vertex, base, apex],
            Step::DropPerpendicular { from, line, foot } => vec![from, &line.0, &line.1, foot],
            Step::BisectAngle { vertex, arm1, arm2, out } => vec![vertex, arm1, arm2, out],
            Step::RotateHypotenuse { pivot, vertex, .. } => vec![pivot, vertex],
            Step::MeasureLength { from, to, .. } => vec![from, to],
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().name())?;
        match self {
            Step::ConstructAngle { vertex, base, apex, cos } => {
                write!(f, " vertex={vertex} base={base} apex={apex} cos={}", cos.to_sci(FIELD_DIGITS))
            }
            Step::DropPerpendicular { from, line, foot } => {
                write!(f, " from={from} line={}|{} foot={foot}", line.0, line.1)
            }
            Step::BisectAngle { vertex, arm1, arm2, out } => {
                write!(f, " vertex={vertex} arm1={arm1} arm2={arm2} out={out}")
            }
            Step::RotateHypotenuse { pivot, vertex, cos } => {
                write!(f, " pivot={pivot} vertex={vertex} cos={}", cos.to_sci(FIELD_DIGITS))
            }
            Step::MeasureLength { from, to, value } => {
                write!(f, " from={from} to={to} value={}", value.to_sci(FIELD_DIGITS))
            }
        }
    }
}

struct Fields<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn take(&mut self, key: &str) -> std::result::Result<&'a str, String> {
        let i = self.pairs.iter().position(|(k, _)| *k == key).ok_or_else(|| format!("missing field {key}"))?;
        Ok(self.pairs.remove(i).1)
    }

    fn point(&mut self, key: &str) -> std::result::Result<PointRef, String> {
        self.take(key)?.parse()
    }

    fn real(&mut self, key: &str) -> std::result::Result<Real, String> {
        self.take(key)?.parse().map_err(|e: Error| e.to_string())
    }

    fn finish(self) -> std::result::Result<(), String> {
        match self.pairs.first() {
            Some((k, _)) => Err(format!("unexpected field {k}")),
            None => Ok(()),
        }
    }
}

impl FromStr for Step {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        let mut words = line.split_whitespace();
        let kind = words.next().ok_or("empty step")?;
        let mut pairs = Vec::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| format!("expected key=value, got {w:?}"))?;
            pairs.push((k, v));
        }
        let mut f = Fields { pairs };
        let step = match kind {
            "construct-angle" => Step::ConstructAngle {
                vertex: f.point("vertex")?,
                base: f.point("base")?,
                apex: f.point("apex")?,
                cos: f.real("cos")?,
            },
            "drop-perpendicular" => {
                let from = f.point("from")?;
                let line = f.take("line")?;
                let (p, q) = line.split_once('|').ok_or_else(|| format!("line needs two points, got {line:?}"))?;
                Step::DropPerpendicular { from, line: (p.parse()?, q.parse()?), foot: f.point("foot")? }
            }
            "bisect-angle" => Step::BisectAngle {
                vertex: f.point("vertex")?,
                arm1: f.point("arm1")?,
                arm2: f.point("arm2")?,
                out: f.point("out")?,
            },
            "rotate-hypotenuse" => {
                Step::RotateHypotenuse { pivot: f.point("pivot")?, vertex: f.point("vertex")?, cos: f.real("cos")? }
            }
            "measure-length" => {
                Step::MeasureLength { from: f.point("from")?, to: f.point("to")?, value: f.real("value")? }
            }
            other => return Err(format!("unknown step kind {other:?}")),
        };
        f.finish()?;
        Ok(step)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: Trace) {
        self.steps.extend(other.steps);
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind() == kind).count()
    }

    pub fn parse(text: &str) -> Result<Trace> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let step = line.parse().map_err(|m| Error::InconsistentTrace(format!("line {}: {m}", i + 1)))?;
            steps.push(step);
        }
        Ok(Trace { steps })
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Label of the i-th cascade foot (1-based): D, E, F, ... then P24, P25, ...
pub fn foot_label(i: usize) -> String {
    if (1..=23).contains(&i) {
        char::from(b'C' + i as u8).to_string()
    } else {
        format!("P{i}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_text_round_trip() {
        let text = "construct-angle vertex=C@0,0 base=B@1.25,0 apex=A@1.25,1 cos=7.8e-1\n\
                    drop-perpendicular from=B line=C|A foot=D@0.76,0.61\n\
                    bisect-angle vertex=C arm1=B arm2=A out=Y'@1,0.3\n\
                    rotate-hypotenuse pivot=F vertex=C1@0.2,0 cos=5e-1\n\
                    measure-length from=B to=D value=7.8e-1\n";
        let t = Trace::parse(text).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.to_string(), text);
        for k in StepKind::ALL {
            assert_eq!(t.count(k), 1);
        }
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in [
            "fly-kite a=b",
            "measure-length from=B to=D",
            "measure-length from=B to=D value=1 extra=2",
            "drop-perpendicular from=B line=CA foot=D",
            "measure-length from=B@x,1 to=D value=1",
            "measure-length from=B to=D value=abc",
        ] {
            assert!(Trace::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn labels() {
        assert_eq!(foot_label(1), "D");
        assert_eq!(foot_label(4), "G");
        assert_eq!(foot_label(23), "Z");
        assert_eq!(foot_label(24), "P24");
    }
}
