//! The mechanical analogue calculator: telescopic graduated arms that are set
//! and read on a scale, and one assembly script per operation.
//!
//! Lengths are plain `f64` in the arm unit (metres on the real device). Every
//! length that is set or read snaps to the nearest graduation, ties to even.
//! Each script reports a worst-case half-width that covers both the setting
//! and the reading errors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{check_exponent, SignedScaled};
use crate::real::Real;
use crate::root::MAX_BISECTIONS;
use crate::trace::foot_label;

pub const DEFAULT_ARMS: usize = 10;
pub const DEFAULT_ARM_MIN: f64 = 0.01;
pub const DEFAULT_ARM_MAX: f64 = 2.0;

/// Vernier caliper, bench micrometer, light microscope, electron microscope (metres).
pub const RESOLUTION_LADDER: [f64; 4] = [1e-5, 5e-7, 2e-7, 1e-10];

/// Steps counted for one term before the log script stops expanding.
pub const MAX_COUNT: u64 = 10_000;
/// Terms after the integer part taken for each logarithm.
pub const LOG_TERMS: usize = 4;

/// Hypotenuse-to-base ratio set for the log script: `CB = 0.5`, `AC = e/2`.
const LOG_BASE: f64 = 0.5;
const LOG_HYPOTENUSE: f64 = std::f64::consts::E / 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementModel {
    /// Smallest readable graduation.
    pub resolution: f64,
    /// Collapsed arm length.
    pub arm_min: f64,
    /// Full telescopic extension.
    pub arm_max: f64,
}

impl MeasurementModel {
    pub fn new(resolution: f64) -> Result<Self> {
        Self::with_limits(resolution, DEFAULT_ARM_MIN, DEFAULT_ARM_MAX)
    }

    pub fn with_limits(resolution: f64, arm_min: f64, arm_max: f64) -> Result<Self> {
        let m = MeasurementModel { resolution, arm_min, arm_max };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.resolution, self.arm_min, self.arm_max].iter().all(|v| v.is_finite());
        if finite && 0.0 < self.resolution && self.resolution < self.arm_min && self.arm_min < self.arm_max {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "need 0 < resolution < arm_min < arm_max, got {} {} {}",
                self.resolution, self.arm_min, self.arm_max
            )))
        }
    }

    /// Nearest graduation count, ties to even.
    pub fn graduations(&self, x: f64) -> i64 {
        (x / self.resolution).round_ties_even() as i64
    }

    pub fn quantize(&self, x: f64) -> f64 {
        self.graduations(x) as f64 * self.resolution
    }

    fn half(&self) -> f64 {
        self.resolution / 2.0
    }

    /// The graduation as an exact decimal.
    fn exact(&self, x: f64) -> Real {
        &Real::from_i64(self.graduations(x)) * &Real::from_f64(self.resolution)
    }

    fn check(&self, arm: &str, length: f64) -> Result<()> {
        if length < self.arm_min || length > self.arm_max {
            return Err(Error::ArmOutOfRange { arm: arm.to_string(), length });
        }
        Ok(())
    }
}

/// `BD`, `DE`, `EF`, ... for arms 1, 2, 3, ...
pub fn arm_label(i: usize) -> String {
    let from = if i <= 1 { "B".to_string() } else { foot_label(i - 1) };
    format!("{from}{}", foot_label(i))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reading {
    pub arm: String,
    pub length: Real,
}

/// A triangle set on the device with some perpendicular arms fitted.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviceState {
    model: MeasurementModel,
    cos_c: f64,
    base_length: f64,
    perp_ab: f64,
    arm_lengths: Vec<f64>,
    fastened: Vec<bool>,
}

impl DeviceState {
    /// `AC = 1`, `BC = cos C`, `AB = perp`, then `depth` arms fitted.
    pub fn assemble(cos_c: f64, perp: f64, depth: usize, model: &MeasurementModel) -> Result<Self> {
        Self::set_triangle(cos_c, 1.0, perp, depth, model)
    }

    /// Sets `BC`, `AC` and `AB` to the nearest graduations and fits `depth` arms.
    pub fn set_triangle(base: f64, hypotenuse: f64, perp: f64, depth: usize, model: &MeasurementModel) -> Result<Self> {
        model.validate()?;
        if depth > DEFAULT_ARMS {
            return Err(Error::DepthExceeded { depth, arms: DEFAULT_ARMS });
        }
        let (bc, ac, ab) = (model.quantize(base), model.quantize(hypotenuse), model.quantize(perp));
        model.check("BC", bc)?;
        model.check("AC", ac)?;
        model.check("AB", ab)?;
        if bc > ac {
            return Err(Error::DegenerateAngle(format!("base {bc} longer than hypotenuse {ac}")));
        }
        let mut state = Self::fit(model, bc / ac, ab, depth)?;
        state.base_length = bc;
        Ok(state)
    }

    /// Fits arms to a triangle whose angle and `AB` are already in place.
    /// `cos C = 1` flattens the triangle and every arm equals `AB`.
    fn fit(model: &MeasurementModel, cos_c: f64, perp_ab: f64, depth: usize) -> Result<Self> {
        if depth > DEFAULT_ARMS {
            return Err(Error::DepthExceeded { depth, arms: DEFAULT_ARMS });
        }
        if !(cos_c > 0.0 && cos_c <= 1.0) {
            return Err(Error::DegenerateAngle(format!("cos C = {cos_c}")));
        }
        let mut arm_lengths = vec![model.arm_min; DEFAULT_ARMS];
        let mut fastened = vec![false; DEFAULT_ARMS];
        for i in 1..=depth {
            let len = perp_ab * cos_c.powi(i as i32);
            model.check(&arm_label(i), len)?;
            arm_lengths[i - 1] = len;
            fastened[i - 1] = true;
        }
        let sin = (1.0 - cos_c * cos_c).sqrt();
        let base_length = perp_ab * cos_c / sin;
        Ok(DeviceState { model: *model, cos_c, base_length, perp_ab, arm_lengths, fastened })
    }

    pub fn model(&self) -> &MeasurementModel {
        &self.model
    }

    pub fn cos_c(&self) -> f64 {
        self.cos_c
    }

    pub fn base_length(&self) -> f64 {
        self.base_length
    }

    pub fn perp_ab(&self) -> f64 {
        self.perp_ab
    }

    pub fn n_arms(&self) -> usize {
        self.arm_lengths.len()
    }

    pub fn arm_lengths(&self) -> &[f64] {
        &self.arm_lengths
    }

    pub fn is_fastened(&self, arm: usize) -> bool {
        arm >= 1 && self.fastened.get(arm - 1).copied().unwrap_or(false)
    }

    /// Length of a fitted arm (1-based) to the nearest graduation.
    pub fn read_length(&self, arm: usize) -> Result<f64> {
        Ok(self.model.quantize(self.exact_length(arm)?))
    }

    pub fn exact_length(&self, arm: usize) -> Result<f64> {
        if arm == 0 || arm > self.n_arms() {
            return Err(Error::Domain(format!("no arm {arm} on a {}-arm device", self.n_arms())));
        }
        if !self.fastened[arm - 1] {
            return Err(Error::NotFastened(arm_label(arm)));
        }
        Ok(self.arm_lengths[arm - 1])
    }

    fn reading(&self, arm: usize) -> Result<Reading> {
        Ok(Reading { arm: arm_label(arm), length: self.model.exact(self.exact_length(arm)?) })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredResult {
    pub value: SignedScaled,
    /// Worst-case distance from `value` to the exact result.
    pub half_width: Real,
    pub readings: Vec<Reading>,
}

impl MeasuredResult {
    /// Whether `exact` lies within `half_width` of `value`.
    pub fn covers(&self, exact: &Real) -> bool {
        self.value.to_real().sub(exact, 40).abs() <= self.half_width
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScriptOp {
    Power { x: SignedScaled, n: usize },
    Gmean { a: SignedScaled, b: SignedScaled },
    Divide { num: SignedScaled, den: SignedScaled },
    Root { x: SignedScaled, n: usize },
    /// `m/n` with `x^(m/n) = a`, through the logarithms of both.
    CfRecover { x: SignedScaled, a: SignedScaled },
}

impl fmt::Display for ScriptOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptOp::Power { x, n } => write!(f, "power {x} {n}"),
            ScriptOp::Gmean { a, b } => write!(f, "gmean {a} {b}"),
            ScriptOp::Divide { num, den } => write!(f, "divide {num} {den}"),
            ScriptOp::Root { x, n } => write!(f, "root {x} {n}"),
            ScriptOp::CfRecover { x, a } => write!(f, "cf-recover {x} {a}"),
        }
    }
}

/// Per-line overrides of the measurement model.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ModelOverride {
    pub resolution: Option<f64>,
    pub arm_min: Option<f64>,
    pub arm_max: Option<f64>,
}

impl ModelOverride {
    pub fn apply(&self, base: &MeasurementModel) -> Result<MeasurementModel> {
        MeasurementModel::with_limits(
            self.resolution.unwrap_or(base.resolution),
            self.arm_min.unwrap_or(base.arm_min),
            self.arm_max.unwrap_or(base.arm_max),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScriptLine {
    pub line: usize,
    pub op: ScriptOp,
    pub model: ModelOverride,
}

/// Parses `op arg1 arg2 [resolution=R] [arm-min=M] [arm-max=M]` lines.
/// Blank lines and `#` comments are skipped.
pub fn parse_script(text: &str) -> Result<Vec<ScriptLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Script { line: i + 1, msg };
        let mut args = Vec::new();
        let mut model = ModelOverride::default();
        for w in line.split_whitespace() {
            match w.split_once('=') {
                Some((k, v)) => {
                    let v: f64 = v.parse().map_err(|_| err(format!("bad number in {w:?}")))?;
                    match k {
                        "resolution" => model.resolution = Some(v),
                        "arm-min" => model.arm_min = Some(v),
                        "arm-max" => model.arm_max = Some(v),
                        _ => return Err(err(format!("unknown key {k:?}"))),
                    }
                }
                None => args.push(w),
            }
        }
        let op = parse_op(&args).map_err(err)?;
        out.push(ScriptLine { line: i + 1, op, model });
    }
    Ok(out)
}

fn parse_op(args: &[&str]) -> std::result::Result<ScriptOp, String> {
    let [name, p, q] = args else {
        return Err(format!("expected an operation and two arguments, got {} words", args.len()));
    };
    let num = |s: &str| s.parse::<SignedScaled>().map_err(|e| e.to_string());
    let count = |s: &str| s.parse::<usize>().map_err(|_| format!("bad count {s:?}"));
    Ok(match *name {
        "power" => ScriptOp::Power { x: num(p)?, n: count(q)? },
        "gmean" => ScriptOp::Gmean { a: num(p)?, b: num(q)? },
        "divide" => ScriptOp::Divide { num: num(p)?, den: num(q)? },
        "root" => ScriptOp::Root { x: num(p)?, n: count(q)? },
        "cf-recover" => ScriptOp::CfRecover { x: num(p)?, a: num(q)? },
        other => return Err(format!("unknown operation {other:?}")),
    })
}

impl FromStr for ScriptOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let args: Vec<&str> = s.split_whitespace().collect();
        parse_op(&args).map_err(|msg| Error::Script { line: 1, msg })
    }
}

pub fn run_script(op: &ScriptOp, model: &MeasurementModel) -> Result<MeasuredResult> {
    model.validate()?;
    match op {
        ScriptOp::Power { x, n } => power(x, *n, model),
        ScriptOp::Gmean { a, b } => gmean(a, b, model),
        ScriptOp::Divide { num, den } => divide(num, den, model),
        ScriptOp::Root { x, n } => root(x, *n, model),
        ScriptOp::CfRecover { x, a } => cf_recover(x, a, model),
    }
}

fn around(x: f64, h: f64) -> (f64, f64) {
    ((x - h).max(0.0), x + h)
}

/// Range of `f` over a box, for `f` monotone in each argument.
fn range<const K: usize>(boxes: [(f64, f64); K], f: impl Fn([f64; K]) -> f64) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for mask in 0..(1usize << K) {
        let mut p = [0.0; K];
        for (j, b) in boxes.iter().enumerate() {
            p[j] = if mask >> j & 1 == 1 { b.1 } else { b.0 };
        }
        let v = f(p);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// `ideal` is the range of the true result over the setting errors and
/// `measured` the range consistent with the readings. The true result and
/// the set configuration's result both lie in `ideal`; the latter also lies
/// in `measured`.
fn bound(value: f64, ideal: (f64, f64), measured: (f64, f64)) -> f64 {
    let off = (value - measured.0).abs().max((value - measured.1).abs());
    widen(ideal.1 - ideal.0 + off, value)
}

/// Slack for the floating-point evaluation itself.
fn widen(hw: f64, value: f64) -> f64 {
    hw * (1.0 + 1e-12) + value.abs() * 1e-13
}

fn finish(negative: bool, mantissa: Real, scale: i64, hw: f64, readings: Vec<Reading>) -> Result<MeasuredResult> {
    check_exponent(scale)?;
    let value = SignedScaled::new(negative, mantissa, scale)?;
    let half_width = Real::from_f64(hw).mul_pow10(scale);
    Ok(MeasuredResult { value, half_width, readings })
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    if n > DEFAULT_ARMS {
        return Err(Error::DepthExceeded { depth: n, arms: DEFAULT_ARMS });
    }
    Ok(())
}

/// `x^n` read off the n-th arm with `BC` set to the mantissa of `x`.
fn power(x: &SignedScaled, n: usize, model: &MeasurementModel) -> Result<MeasuredResult> {
    check_count(n)?;
    let dev = DeviceState::set_triangle(x.mantissa().to_f64(), 1.0, 1.0, n, model)?;
    let readings = (1..=n).map(|i| dev.reading(i)).collect::<Result<Vec<_>>>()?;
    let r = dev.read_length(n)?;
    let h = model.half();
    let (bc, ac, ab) = (dev.base_length, model.quantize(1.0), dev.perp_ab);
    let ideal = range([around(bc, h), around(ac, h), around(ab, h)], |[bc, ac, ab]| ab * (bc / ac).powi(n as i32));
    let scale = x.exponent().checked_mul(n as i64).ok_or(Error::ExponentOverflow)?;
    let mantissa = readings[n - 1].length.clone();
    finish(x.is_negative() && n % 2 == 1, mantissa, scale, bound(r, ideal, around(r, h)), readings)
}

/// `sqrt(ab)` read off `BD` with `ED` and `AB` set to the two mantissas.
fn gmean(a: &SignedScaled, b: &SignedScaled, model: &MeasurementModel) -> Result<MeasuredResult> {
    if a.is_negative() != b.is_negative() {
        return Err(Error::SignMismatch);
    }
    let (mut ma, mut ea) = (a.mantissa().to_f64(), a.exponent());
    let (mb, eb) = (b.mantissa().to_f64(), b.exponent());
    if (ea + eb).rem_euclid(2) != 0 {
        ma /= 10.0;
        ea += 1;
    }
    let (ed, ab) = (model.quantize(ma.min(mb)), model.quantize(ma.max(mb)));
    model.check("DE", ed)?;
    model.check("AB", ab)?;
    let dev = DeviceState::fit(model, (ed / ab).sqrt(), ab, 1)?;
    let r = dev.read_length(1)?;
    let h = model.half();
    let ideal = range([around(ed, h), around(ab, h)], |[e, p]| (e * p).sqrt());
    let reading = dev.reading(1)?;
    let mantissa = reading.length.clone();
    finish(a.is_negative(), mantissa, (ea + eb) / 2, bound(r, ideal, around(r, h)), vec![reading])
}

/// `num/den` read off `BD` with `BC = 0.1`, `AC` the mantissa of `den` and
/// `AB` the mantissa of `num`.
fn divide(num: &SignedScaled, den: &SignedScaled, model: &MeasurementModel) -> Result<MeasuredResult> {
    let (ma, mb) = (num.mantissa().to_f64(), den.mantissa().to_f64());
    let dev = DeviceState::set_triangle(0.1, mb, ma, 1, model)?;
    let r = dev.read_length(1)?;
    let h = model.half();
    let (bc, ac, ab) = (dev.base_length, model.quantize(mb), dev.perp_ab);
    let ideal = range([around(bc, h), around(ac, h), around(ab, h)], |[bc, ac, ab]| ab * bc / ac);
    let scale = num
        .exponent()
        .checked_sub(den.exponent())
        .and_then(|k| k.checked_add(1))
        .ok_or(Error::ExponentOverflow)?;
    let reading = dev.reading(1)?;
    let mantissa = reading.length.clone();
    finish(num.is_negative() != den.is_negative(), mantissa, scale, bound(r, ideal, around(r, h)), vec![reading])
}

/// `x^(1/n)`: with `AB` fixed the angle is changed until the n-th arm reads
/// the target, then `BC` and `AC` are read. The search halves a bracket of
/// graduations on `BC` and stops when it is one graduation wide.
///
/// `x = X 10^(nq)` with `q` picked to bring `X` near one. For `X > 1` the
/// target is `AB/X` and the root is `AC/BC`, otherwise `AB X` and `BC/AC`.
fn root(x: &SignedScaled, n: usize, model: &MeasurementModel) -> Result<MeasuredResult> {
    check_count(n)?;
    if x.is_negative() && n % 2 == 0 {
        return Err(Error::EvenRootOfNegative);
    }
    let ni = n as i64;
    let m = x.mantissa().to_f64();
    let log = x.exponent() as f64 + m.log10();
    let q = (log / n as f64).round() as i64;
    let shift = x.exponent() - ni * q;
    if shift.abs() > 300 {
        return Err(Error::Domain(format!("{x} is outside the range of the device")));
    }
    let big = m * 10f64.powi(shift as i32);
    let inverse = big > 1.0;
    let ratio = if inverse { 1.0 / big } else { big };
    let ab = model.quantize(if ratio >= model.arm_min { 1.0 } else { model.arm_max });
    let target = ab * ratio;
    model.check(&arm_label(n), target)?;

    let ac = model.quantize(1.0);
    let g_max = model.graduations(ac);
    let read_at = |g: i64| model.quantize(ab * (g as f64 * model.resolution / ac).powi(n as i32));
    let (mut lo, mut hi) = (0i64, g_max);
    let mut steps = 0;
    while hi - lo > 1 {
        if steps == MAX_BISECTIONS {
            return Err(Error::NoConvergence(format!("angle search for root {n} did not settle")));
        }
        let mid = lo + (hi - lo) / 2;
        if read_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    let g = if lo > 0 && (target - read_at(lo)).abs() < (read_at(hi) - target).abs() { lo } else { hi };
    let bc = g as f64 * model.resolution;
    let dev = DeviceState::set_triangle(bc, ac, ab, n, model)?;
    let bc_exact = model.exact(bc);
    let ac_exact = model.exact(ac);
    let readings = vec![
        Reading { arm: "BC".into(), length: bc_exact.clone() },
        Reading { arm: "AC".into(), length: ac_exact.clone() },
        dev.reading(n)?,
    ];

    // The bracket ends straddle the target up to one reading error each, so
    // the exact cosine lies in [lo_end, hi_end].
    let h = model.half();
    let step = model.resolution / ac;
    let inv = 1.0 / n as f64;
    let cos = bc / ac;
    let lo_end = ((target - h).max(0.0) / ab).powf(inv) - step;
    let hi_end = ((target + h) / ab).powf(inv) + step;
    let (value, mantissa, ends) = if inverse {
        if lo_end <= 0.0 {
            return Err(Error::NoConvergence(format!("root {n} is not resolved at this resolution")));
        }
        (1.0 / cos, ac_exact.div(&bc_exact, 30), (1.0 / hi_end, 1.0 / lo_end))
    } else {
        (cos, bc_exact.div(&ac_exact, 30), (lo_end, hi_end))
    };
    let hw = widen((value - ends.0).abs().max((ends.1 - value).abs()), value);
    finish(x.is_negative(), mantissa, q, hw, readings)
}

/// Counts the steps of a cascade with cosine `base` whose lengths stay at or
/// above `target`, starting from `AB = 1`. Arms are re-fitted from the last
/// reading when they run out or fall below one tenth, which is then scaled
/// up by ten. Returns the count and the last counted length.
fn count_steps(base: f64, target: f64, model: &MeasurementModel, readings: &mut Vec<Reading>) -> Result<(u64, f64)> {
    let mut scale = 1.0;
    let mut ab = model.quantize(1.0);
    let (mut i, mut n, mut last) = (0usize, 0u64, 1.0);
    let mut last_reading = None;
    while n < MAX_COUNT {
        i += 1;
        let len = ab * base.powi(i as i32);
        model.check(&arm_label(i), len)?;
        let r = model.quantize(len);
        if r * scale < target {
            break;
        }
        n += 1;
        last = r * scale;
        last_reading = Some(Reading { arm: arm_label(i), length: model.exact(len).mul_pow10(-scale.log10().round() as i64) });
        if i == DEFAULT_ARMS || r < 0.1 {
            let up = if r < 0.1 { 10.0 } else { 1.0 };
            ab = model.quantize(r * up);
            scale /= up;
            i = 0;
        }
    }
    readings.extend(last_reading);
    Ok((n, last))
}

struct LogTerms {
    terms: Vec<u64>,
    negative: bool,
}

/// Terms of `log_(1/c) v`: the Euclidean loop on the cascade with cosine
/// `c`, then on the remainder, swapping roles each time.
fn measure_log(v: &SignedScaled, c: f64, model: &MeasurementModel, readings: &mut Vec<Reading>) -> Result<LogTerms> {
    if v.is_negative() {
        return Err(Error::Domain("logarithm of a negative number".into()));
    }
    let f = v.to_f64();
    if !f.is_finite() || f == 0.0 {
        return Err(Error::Domain(format!("{v} is outside the range of the device")));
    }
    if f == 1.0 {
        return Err(Error::Domain("logarithm of one has no continued fraction".into()));
    }
    let (mut target, negative) = if f > 1.0 { (1.0 / f, false) } else { (f, true) };
    let mut base = c;
    let one = model.graduations(1.0);
    let mut terms = Vec::new();
    loop {
        let (n, last) = count_steps(base, target, model, readings)?;
        if n == 0 && !terms.is_empty() {
            break;
        }
        terms.push(n);
        if terms.len() > LOG_TERMS || n == MAX_COUNT {
            break;
        }
        let rem = target / last;
        if model.graduations(rem) >= one {
            break;
        }
        target = base;
        base = model.quantize(rem) / model.quantize(1.0);
    }
    Ok(LogTerms { terms, negative })
}

fn cf_value(terms: &[u64]) -> f64 {
    let mut v = *terms.last().unwrap() as f64;
    for &t in terms[..terms.len() - 1].iter().rev() {
        v = t as f64 + 1.0 / v;
    }
    v
}

/// The expansion's value and the range covered by the unfinished tail and a
/// miscount of one in the last term.
fn log_range(l: &LogTerms) -> (f64, (f64, f64)) {
    let t = &l.terms;
    let k = t.len() - 1;
    let mut vals = vec![cf_value(t)];
    let mut alt = t.clone();
    alt[k] += 1;
    vals.push(cf_value(&alt));
    if t[k] >= 2 || (k == 0 && t[k] >= 1) {
        alt[k] = t[k] - 1;
        vals.push(cf_value(&alt));
    }
    let sign = if l.negative { -1.0 } else { 1.0 };
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min) * sign;
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max) * sign;
    (vals[0] * sign, (lo.min(hi), lo.max(hi)))
}

/// `ln a / ln x` from the logarithms of both to the base set by `CB = 0.5`
/// and `AC = e/2`; the base cancels in the ratio.
fn cf_recover(x: &SignedScaled, a: &SignedScaled, model: &MeasurementModel) -> Result<MeasuredResult> {
    let dev = DeviceState::set_triangle(LOG_BASE, LOG_HYPOTENUSE, 1.0, 0, model)?;
    let c = dev.cos_c;
    let mut readings = vec![
        Reading { arm: "BC".into(), length: model.exact(LOG_BASE) },
        Reading { arm: "AC".into(), length: model.exact(LOG_HYPOTENUSE) },
    ];
    let p = measure_log(a, c, model, &mut readings)?;
    let q = measure_log(x, c, model, &mut readings)?;
    let (pv, pr) = log_range(&p);
    let (qv, qr) = log_range(&q);
    if qr.0 <= 0.0 && qr.1 >= 0.0 {
        return Err(Error::NoConvergence(format!("logarithm of {x} cannot be told from zero on the device")));
    }
    let ratio = pv / qv;
    let r = range([pr, qr], |[p, q]| p / q);
    let hw = widen((ratio - r.0).abs().max((r.1 - ratio).abs()), ratio);
    let value = Real::from_f64(ratio);
    if value.is_zero() {
        return Err(Error::ZeroNotRepresentable);
    }
    finish(false, value, 0, hw, readings)
}
