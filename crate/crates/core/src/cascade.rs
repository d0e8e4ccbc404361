//! The perpendicular cascade and the operations built directly on it.
//!
//! In right triangle ABC (right angle at B) with base angle C, drop BD onto
//! AC, then DE onto BC, then EF onto AC, and so on. Each perpendicular is the
//! previous one times cos C, so the i-th has length `AB * cos^i C`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numeric::{PrecisionPolicy, SignedScaled};
use crate::oracle::{oracle_eval, OracleOp};
use crate::real::Real;
use crate::root::search_increasing;
use crate::trace::{foot_label, PointRef, Step, Trace, MAX_TRACED_PERPENDICULARS, MAX_TRACED_ROTATIONS};

/// Cascades deeper than this are evaluated by repeated squaring.
pub const LITERAL_CASCADE_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Construction,
    Oracle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub cos_c: Real,
    pub perp: Real,
    pub depth: usize,
    pub backend: Backend,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cascade {
    /// `p_1 .. p_depth`.
    pub lengths: Vec<Real>,
    pub trace: Trace,
}

/// A result together with the primitive steps that produced it. The trace is
/// empty for the oracle backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluated {
    pub value: SignedScaled,
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReciprocalMethod {
    Angle,
    UnitPerpendicular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeanMethod {
    Bisect,
    Rotate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivideMethod {
    Hypotenuse,
    SimilarTriangles,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Calculator {
    pub policy: PrecisionPolicy,
    pub backend: Backend,
    /// Largest `|n|` accepted by [`Calculator::power`].
    pub max_power: u64,
}

impl Default for Calculator {
    fn default() -> Self {
        Calculator { policy: PrecisionPolicy::default(), backend: Backend::Construction, max_power: 1_000_000 }
    }
}

pub(crate) fn check_cos(cos: &Real) -> Result<()> {
    if !cos.is_positive() || *cos >= Real::one() {
        return Err(Error::DegenerateAngle(cos.to_sci(20)));
    }
    Ok(())
}

/// `perp * cos^depth`, stepping one perpendicular at a time up to
/// [`LITERAL_CASCADE_LIMIT`] and squaring beyond.
pub fn cascade_tip(cos: &Real, perp: &Real, depth: u64, digits: u32) -> Real {
    if depth > LITERAL_CASCADE_LIMIT {
        return perp.mul(&cos.powi(depth, digits + 2), digits);
    }
    let mut p = perp.round(digits);
    for _ in 0..depth {
        p = p.mul(cos, digits);
    }
    p
}

pub fn build_cascade(c: &Construction, policy: &PrecisionPolicy) -> Result<Cascade> {
    check_cos(&c.cos_c)?;
    if !c.perp.is_positive() {
        return Err(Error::Domain("perpendicular AB must be positive".into()));
    }
    if c.depth == 0 {
        return Err(Error::Domain("cascade depth must be at least 1".into()));
    }
    let digits = policy.guard_digits();
    let mut lengths = Vec::with_capacity(c.depth);
    let mut p = c.perp.clone();
    for _ in 0..c.depth {
        p = p.mul(&c.cos_c, digits);
        lengths.push(p.round(policy.working_digits));
    }
    let trace = match c.backend {
        Backend::Construction => sketch_cascade(&c.cos_c, &c.perp, &lengths),
        Backend::Oracle => Trace::new(),
    };
    Ok(Cascade { lengths, trace })
}

type Pt = (f64, f64);

/// Vertices C, B, A of the triangle with base angle `cos` and perpendicular `ab`.
fn triangle(cos: f64, ab: f64) -> (Pt, Pt, Pt) {
    let sin = (1.0 - cos * cos).sqrt();
    let bx = ab * cos / sin;
    ((0.0, 0.0), (bx, 0.0), (bx, ab))
}

fn project(q: Pt, dir: Pt) -> Pt {
    let t = q.0 * dir.0 + q.1 * dir.1;
    (t * dir.0, t * dir.1)
}

fn construct_angle(cos: &Real, ab: f64) -> (Step, Pt, Pt, Pt) {
    let (c, b, a) = triangle(cos.to_f64(), ab);
    let step = Step::ConstructAngle {
        vertex: PointRef::def("C", c.0, c.1),
        base: PointRef::def("B", b.0, b.1),
        apex: PointRef::def("A", a.0, a.1),
        cos: cos.clone(),
    };
    (step, c, b, a)
}

/// Triangle plus perpendiculars, each followed by its measurement.
fn sketch_cascade(cos: &Real, ab: &Real, lengths: &[Real]) -> Trace {
    let mut t = Trace::new();
    let cf = cos.to_f64();
    let (step, _, b, _) = construct_angle(cos, ab.to_f64());
    t.push(step);
    let hyp = (cf, (1.0 - cf * cf).sqrt());
    let mut prev = ("B".to_string(), b);
    for (i, len) in lengths.iter().take(MAX_TRACED_PERPENDICULARS).enumerate() {
        let i = i + 1;
        let (line_end, dir) = if i % 2 == 1 { ("A", hyp) } else { ("B", (1.0, 0.0)) };
        let foot = project(prev.1, dir);
        let label = foot_label(i);
        t.push(Step::DropPerpendicular {
            from: PointRef::named(&prev.0),
            line: (PointRef::named("C"), PointRef::named(line_end)),
            foot: PointRef::def(&label, foot.0, foot.1),
        });
        t.push(Step::MeasureLength { from: PointRef::named(&prev.0), to: PointRef::named(&label), value: len.clone() });
        prev = (label, foot);
    }
    t
}

/// Rotations of the hypotenuse about A while C slides along the base.
pub(crate) fn sketch_rotations(ab: f64, b: Pt, cosines: &[Real]) -> Trace {
    let mut t = Trace::new();
    let n = cosines.len();
    for (i, c) in cosines.iter().enumerate() {
        // Keep the first rotations and the last one.
        if i + 1 >= MAX_TRACED_ROTATIONS && i + 1 != n {
            continue;
        }
        let cf = c.to_f64();
        let sin = (1.0 - cf * cf).sqrt();
        let x = b.0 - ab * cf / sin;
        t.push(Step::RotateHypotenuse {
            pivot: PointRef::named("A"),
            vertex: PointRef::def(format!("C{}", i + 1), x, 0.0),
            cos: c.clone(),
        });
    }
    t
}

pub(crate) fn sketch_search(cos_final: &Real, ab: &Real, depth: usize, path: &[Real], digits: u32) -> Trace {
    let first = path.first().cloned().unwrap_or_else(|| cos_final.clone());
    let (step, _, b, _) = construct_angle(&first, ab.to_f64());
    let mut t = Trace::new();
    t.push(step);
    t.extend(sketch_rotations(ab.to_f64(), b, path));
    let mut lengths = Vec::new();
    let mut p = ab.clone();
    for _ in 0..depth.min(MAX_TRACED_PERPENDICULARS) {
        p = p.mul(cos_final, digits);
        lengths.push(p.clone());
    }
    let mut tail = sketch_cascade(cos_final, ab, &lengths);
    tail.steps.remove(0);
    // Relabel the base vertex once it has settled.
    t.push(construct_angle(cos_final, ab.to_f64()).0);
    t.extend(tail);
    t
}

fn even_split(k: i64) -> bool {
    k.is_even()
}

impl Calculator {
    pub fn new(policy: PrecisionPolicy, backend: Backend) -> Self {
        Calculator { policy, backend, ..Calculator::default() }
    }

    pub fn oracle() -> Self {
        Calculator { backend: Backend::Oracle, ..Calculator::default() }
    }

    /// Same backend, carrying the guard digits as working precision. Used
    /// for intermediate results of composite operations.
    pub(crate) fn wider(&self) -> Calculator {
        let policy = PrecisionPolicy::new(self.policy.guard_digits()).expect("wider policy is valid");
        Calculator { policy, ..self.clone() }
    }

    fn digits(&self) -> u32 {
        self.policy.guard_digits()
    }

    fn finish(&self, negative: bool, mantissa: Real, exponent: i64, trace: Trace) -> Result<Evaluated> {
        let value = SignedScaled::new(negative, mantissa, exponent)?.round(self.policy.working_digits);
        Ok(Evaluated { value, trace })
    }

    fn from_oracle(&self, op: OracleOp, args: &[SignedScaled]) -> Result<Evaluated> {
        let v = oracle_eval(op, args, &self.policy)?;
        Ok(Evaluated { value: v.round(self.policy.working_digits), trace: Trace::new() })
    }

    pub fn build_cascade(&self, cos_c: &Real, perp: &Real, depth: usize) -> Result<Cascade> {
        build_cascade(&Construction { cos_c: cos_c.clone(), perp: perp.clone(), depth, backend: self.backend }, &self.policy)
    }

    /// `x^n` for nonzero integer `n`.
    pub fn power(&self, x: &SignedScaled, n: i64) -> Result<Evaluated> {
        if n == 0 {
            return Err(Error::Domain("exponent 0 has no cascade".into()));
        }
        if n.unsigned_abs() > self.max_power {
            return Err(Error::Domain(format!("|n| = {} exceeds the limit {}", n.unsigned_abs(), self.max_power)));
        }
        let negative = x.is_negative() && n % 2 != 0;
        let k = x.exponent();
        let depth = n.unsigned_abs();
        if n > 0 {
            let exponent = k.checked_mul(n).ok_or(Error::ExponentOverflow)?;
            if self.backend == Backend::Oracle {
                return self.from_oracle(OracleOp::Pow(n), std::slice::from_ref(x));
            }
            let cos = x.mantissa().clone();
            let tip = cascade_tip(&cos, &Real::one(), depth, self.digits());
            let trace = self.power_sketch(&cos, depth);
            return self.finish(negative, tip, exponent, trace);
        }
        // x = Y * 10^(k-1) with Y in [1, 10): x^-m = (1/Y)^m * 10^(-(k-1)m).
        let exponent = (k - 1).checked_mul(n).ok_or(Error::ExponentOverflow)?;
        if self.backend == Backend::Oracle {
            return self.from_oracle(OracleOp::Pow(n), std::slice::from_ref(x));
        }
        let y = x.mantissa().mul_pow10(1);
        if y == Real::one() {
            return self.finish(negative, Real::one(), exponent, Trace::new());
        }
        let cos = y.recip(self.digits());
        let tip = cascade_tip(&cos, &Real::one(), depth, self.digits());
        let trace = self.power_sketch(&cos, depth);
        self.finish(negative, tip, exponent, trace)
    }

    fn power_sketch(&self, cos: &Real, depth: u64) -> Trace {
        let shown = depth.min(MAX_TRACED_PERPENDICULARS as u64) as usize;
        let mut lengths = Vec::with_capacity(shown);
        let mut p = Real::one();
        for _ in 0..shown {
            p = p.mul(cos, self.digits());
            lengths.push(p.round(self.policy.working_digits));
        }
        sketch_cascade(cos, &Real::one(), &lengths)
    }

    pub fn reciprocal(&self, x: &SignedScaled, method: ReciprocalMethod) -> Result<Evaluated> {
        if self.backend == Backend::Oracle {
            return self.from_oracle(OracleOp::Recip, std::slice::from_ref(x));
        }
        let d = self.digits();
        let k = x.exponent();
        match method {
            ReciprocalMethod::Angle => {
                // cos C = 1/Y with AB = 1, so BD reads 1/Y.
                let y = x.mantissa().mul_pow10(1);
                let exponent = 1 - k;
                if y == Real::one() {
                    return self.finish(x.is_negative(), Real::one(), exponent, Trace::new());
                }
                let cos = y.recip(d);
                let bd = cascade_tip(&cos, &Real::one(), 1, d);
                let trace = sketch_cascade(&cos, &Real::one(), std::slice::from_ref(&bd));
                self.finish(x.is_negative(), bd, exponent, trace)
            }
            ReciprocalMethod::UnitPerpendicular => {
                // Fix BD = 1 and DE = X; the perpendicular AB completing the
                // figure is 1/X. E at the origin, D straight above it.
                let p2 = x.mantissa().clone();
                let one = Real::one();
                let b = (&one - &p2).mul(&(&one + &p2), d).sqrt(d);
                let cx = -p2.mul(&p2, d).div(&b, d);
                let ab = p2.mul(&b.sub(&cx, d), d).div(&-&cx, d);
                let trace = self.unit_sketch(&p2, &ab);
                self.finish(x.is_negative(), ab, -k, trace)
            }
        }
    }

    fn unit_sketch(&self, p2: &Real, ab: &Real) -> Trace {
        // Same figure as the cascade with cos C = DE/BD = p2 and AB = 1/p2.
        let d = self.digits();
        let lengths = vec![ab.mul(p2, d), ab.mul(p2, d).mul(p2, d)];
        let mut t = sketch_cascade(p2, ab, &lengths);
        t.push(Step::MeasureLength { from: PointRef::named("A"), to: PointRef::named("B"), value: ab.round(self.policy.working_digits) });
        t
    }

    /// Mantissas and the shared half exponent for a geometric mean.
    fn mean_setup(&self, a: &SignedScaled, b: &SignedScaled) -> (Real, Real, i64) {
        let (mut xa, mut ka) = (a.mantissa().clone(), a.exponent());
        let (mut xb, mut kb) = (b.mantissa().clone(), b.exponent());
        if !even_split(ka + kb) {
            // Push the smaller mantissa down into [0.01, 0.1).
            if xa <= xb {
                xa = xa.mul_pow10(-1);
                ka += 1;
            } else {
                xb = xb.mul_pow10(-1);
                kb += 1;
            }
        }
        let half = (ka + kb) / 2;
        if xa >= xb {
            (xa, xb, half)
        } else {
            (xb, xa, half)
        }
    }

    /// `sqrt(a b)`, negative when both inputs are.
    pub fn geometric_mean(&self, a: &SignedScaled, b: &SignedScaled, method: MeanMethod) -> Result<Evaluated> {
        if a.is_negative() != b.is_negative() {
            return Err(Error::SignMismatch);
        }
        if self.backend == Backend::Oracle {
            return self.from_oracle(OracleOp::Gmean, &[a.clone(), b.clone()]);
        }
        let negative = a.is_negative();
        let (big_p, p2, half) = self.mean_setup(a, b);
        if big_p == p2 {
            return self.finish(negative, big_p, half, Trace::new());
        }
        let d = self.digits();
        match method {
            MeanMethod::Bisect => {
                let (bd, trace) = self.mean_by_bisection(&big_p, &p2, d);
                self.finish(negative, bd, half, trace)
            }
            MeanMethod::Rotate => {
                // Rotate the hypotenuse until a triangle with second
                // perpendicular p2 has AB = P; then BD = p2 / cos C.
                let f = |c: &Real| p2.div(&c.mul(c, d), d);
                let target = big_p.clone();
                let outcome = search_increasing(|c| -f(c), &-&target, &self.policy, d)?;
                let c = outcome.cos;
                let bd = p2.div(&c, d);
                let trace = sketch_search(&c, &big_p, 2, &outcome.path, d);
                self.finish(negative, bd, half, trace)
            }
        }
    }

    /// Constructs 2C from cos 2C = (2 p2 - P)/P, bisects it and reads BD.
    fn mean_by_bisection(&self, big_p: &Real, p2: &Real, d: u32) -> (Real, Trace) {
        let one = Real::one();
        let c2 = p2.mul_i64(2, d).sub(big_p, d).div(big_p, d);
        let s2 = (&one - &c2).mul(&(&one + &c2), d).sqrt(d);
        let norm = c2.add(&one, d).mul_i64(2, d).sqrt(d);
        let c = c2.add(&one, d).div(&norm, d);
        let s = s2.div(&norm, d);
        // D on the bisector at height p2, B on the base with BD normal to CD.
        let dx = p2.mul(&c, d).div(&s, d);
        let bx = p2.div(&s.mul(&c, d), d);
        let run = bx.sub(&dx, d);
        let bd = run.mul(&run, d).add(&p2.mul(p2, d), d).sqrt(d);

        let (c2f, s2f, cf, sf) = (c2.to_f64(), s2.to_f64(), c.to_f64(), s.to_f64());
        let pf = big_p.to_f64();
        let mut t = Trace::new();
        // The doubled angle may be obtuse, so it is laid out as two rays.
        t.push(Step::BisectAngle {
            vertex: PointRef::def("C", 0.0, 0.0),
            arm1: PointRef::def("X", pf, 0.0),
            arm2: PointRef::def("Y", pf * c2f, pf * s2f),
            out: PointRef::def("Y'", pf * cf, pf * sf),
        });
        let p2f = p2.to_f64();
        let df = (p2f * cf / sf, p2f);
        let bf = (p2f / (sf * cf), 0.0);
        let af = (bf.0, bf.0 * sf / cf);
        t.push(Step::ConstructAngle {
            vertex: PointRef::named("C"),
            base: PointRef::def("B", bf.0, bf.1),
            apex: PointRef::def("A", af.0, af.1),
            cos: c.round(self.policy.working_digits),
        });
        t.push(Step::DropPerpendicular {
            from: PointRef::named("B"),
            line: (PointRef::named("C"), PointRef::named("A")),
            foot: PointRef::def("D", df.0, df.1),
        });
        t.push(Step::DropPerpendicular {
            from: PointRef::named("D"),
            line: (PointRef::named("C"), PointRef::named("B")),
            foot: PointRef::def("E", df.0, 0.0),
        });
        t.push(Step::MeasureLength { from: PointRef::named("B"), to: PointRef::named("D"), value: bd.round(self.policy.working_digits) });
        (bd, t)
    }

    /// `a b` as the square of the geometric mean of `|a|` and `|b|`.
    pub fn multiply(&self, a: &SignedScaled, b: &SignedScaled) -> Result<Evaluated> {
        if self.backend == Backend::Oracle {
            return self.from_oracle(OracleOp::Mul, &[a.clone(), b.clone()]);
        }
        let wide = self.wider();
        let g = wide.geometric_mean(&a.abs(), &b.abs(), MeanMethod::Bisect)?;
        let sq = wide.power(&g.value, 2)?;
        let mut trace = g.trace;
        trace.extend(sq.trace);
        let negative = a.is_negative() != b.is_negative();
        self.finish(negative, sq.value.mantissa().clone(), sq.value.exponent(), trace)
    }

    pub fn divide(&self, num: &SignedScaled, den: &SignedScaled, method: DivideMethod) -> Result<Evaluated> {
        if self.backend == Backend::Oracle {
            return self.from_oracle(OracleOp::Div, &[num.clone(), den.clone()]);
        }
        let d = self.digits();
        let negative = num.is_negative() != den.is_negative();
        let (kn, kd) = (num.exponent(), den.exponent());
        match method {
            DivideMethod::Hypotenuse => {
                // AB = numerator mantissa, cos C = 1/Y with the denominator
                // written Y * 10^(kd - 1), Y in [1, 10).
                let ab = num.mantissa().clone();
                let y = den.mantissa().mul_pow10(1);
                let exponent = kn.checked_sub(kd - 1).ok_or(Error::ExponentOverflow)?;
                if y == Real::one() {
                    return self.finish(negative, ab, exponent, Trace::new());
                }
                let cos = y.recip(d);
                let bd = cascade_tip(&cos, &ab, 1, d);
                let trace = sketch_cascade(&cos, &ab, std::slice::from_ref(&bd));
                self.finish(negative, bd, exponent, trace)
            }
            DivideMethod::SimilarTriangles => {
                // Base BC = 1, AB = P; a perpendicular XY = p raised from the
                // base meets AC at distance CX = p/P from C.
                let big_p = den.mantissa().clone();
                let (mut p, mut k) = (num.mantissa().clone(), kn);
                if p >= big_p {
                    p = p.mul_pow10(-1);
                    k += 1;
                }
                let slope = big_p.clone();
                let cx = p.div(&slope, d);
                let exponent = k.checked_sub(kd).ok_or(Error::ExponentOverflow)?;
                let trace = self.similar_sketch(&big_p, &p, &cx);
                self.finish(negative, cx, exponent, trace)
            }
        }
    }

    fn similar_sketch(&self, big_p: &Real, p: &Real, cx: &Real) -> Trace {
        let d = self.digits();
        let one = Real::one();
        let cos = one.div(&one.add(&big_p.mul(big_p, d), d).sqrt(d), d);
        let (pf, xf) = (p.to_f64(), cx.to_f64());
        let mut t = Trace::new();
        t.push(Step::ConstructAngle {
            vertex: PointRef::def("C", 0.0, 0.0),
            base: PointRef::def("B", 1.0, 0.0),
            apex: PointRef::def("A", 1.0, big_p.to_f64()),
            cos,
        });
        t.push(Step::DropPerpendicular {
            from: PointRef::def("Y", xf, pf),
            line: (PointRef::named("C"), PointRef::named("B")),
            foot: PointRef::def("X", xf, 0.0),
        });
        t.push(Step::MeasureLength { from: PointRef::named("C"), to: PointRef::named("X"), value: cx.round(self.policy.working_digits) });
        t
    }
}
