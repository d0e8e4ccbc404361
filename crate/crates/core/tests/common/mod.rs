#![allow(dead_code)]

use perpcalc::cascade::{Calculator, DivideMethod, MeanMethod};
use perpcalc::mech::ScriptOp;
use perpcalc::numeric::SignedScaled;
use perpcalc::real::Real;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A mantissa with `digits` random decimals in `[lo, 1)`.
pub fn mantissa(rng: &mut ChaCha8Rng, lo: f64, digits: u32) -> Real {
    let scale = 10i64.pow(digits);
    let min = (lo * scale as f64).ceil() as i64;
    let k = rng.gen_range(min.max(1)..scale);
    Real::from_parts(k.into(), -(digits as i64))
}

/// A random sign, a mantissa in `[lo, 1)` and an exponent in `[-30, 30)`.
pub fn signed(rng: &mut ChaCha8Rng, lo: f64) -> SignedScaled {
    let m = mantissa(rng, lo, 6);
    let exp = rng.gen_range(-30..30);
    SignedScaled::new(rng.gen_bool(0.3), m, exp).unwrap()
}

/// A script whose arms stay inside the default telescopic limits.
pub fn random_script(rng: &mut ChaCha8Rng) -> ScriptOp {
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(1..=10usize);
            ScriptOp::Power { x: signed(rng, 0.011f64.powf(1.0 / n as f64)), n }
        }
        1 => {
            let neg = rng.gen_bool(0.3);
            let a = signed(rng, 0.1).with_sign(neg);
            let b = signed(rng, 0.1).with_sign(neg);
            ScriptOp::Gmean { a, b }
        }
        2 => {
            let num = signed(rng, 0.1);
            let den = signed(rng, 0.11);
            ScriptOp::Divide { num, den }
        }
        _ => {
            let n = rng.gen_range(1..=6usize);
            let m = mantissa(rng, 0.1, 6);
            let e = rng.gen_range(-1..=1);
            let mut x = SignedScaled::new(false, m, e).unwrap();
            if n % 2 == 1 && rng.gen_bool(0.3) {
                x = x.with_sign(true);
            }
            // Shift by whole multiples of n so the scaled radicand stays near one.
            let k = rng.gen_range(-5..5) * n as i64;
            ScriptOp::Root { x: SignedScaled::new(x.is_negative(), x.mantissa().clone(), x.exponent() + k).unwrap(), n }
        }
    }
}

/// The same operation on the exact construction backend.
pub fn exact(calc: &Calculator, op: &ScriptOp) -> Real {
    let v = match op {
        ScriptOp::Power { x, n } => calc.power(x, *n as i64),
        ScriptOp::Gmean { a, b } => calc.geometric_mean(a, b, MeanMethod::Bisect),
        ScriptOp::Divide { num, den } => calc.divide(num, den, DivideMethod::Hypotenuse),
        ScriptOp::Root { x, n } => calc.nth_root_signed(x, *n as i64),
        ScriptOp::CfRecover { .. } => panic!("no exact counterpart"),
    };
    v.unwrap().value.to_real()
}

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Consecutive perpendiculars shrink by `cos C`, and `p_1^2 = P p_2`.
pub fn check_cascade(cos: &Real, perp: &Real, depth: usize) -> Check {
    use perpcalc::{build_cascade, Backend, Construction, PrecisionPolicy};
    let pol = PrecisionPolicy::default();
    let c = Construction { cos_c: cos.clone(), perp: perp.clone(), depth, backend: Backend::Construction };
    let casc = build_cascade(&c, &pol).map_err(|e| e.to_string())?;
    let tol = 10.0 * pol.rel_tol.to_f64();
    ensure(casc.lengths.len() == depth, || format!("{} lengths for depth {depth}", casc.lengths.len()))?;
    let first = casc.lengths[0].div(perp, 40);
    ensure(first.rel_diff(cos) <= tol, || format!("p1/P = {first} for cos {cos}"))?;
    for w in casc.lengths.windows(2) {
        let ratio = w[1].div(&w[0], 40);
        ensure(ratio.rel_diff(cos) <= tol, || format!("ratio {ratio} for cos {cos}"))?;
    }
    if depth >= 2 {
        let lhs = casc.lengths[0].mul(&casc.lengths[0], 40);
        let rhs = perp.mul(&casc.lengths[1], 40);
        ensure(lhs.rel_diff(&rhs) <= tol, || format!("p1^2 = {lhs} but P p2 = {rhs}"))?;
    }
    Ok(())
}

/// `(x^n)^(1/n)` and `(x^(1/n))^n` both return `x`.
pub fn check_round_trip(calc: &Calculator, x: &SignedScaled, n: i64) -> Check {
    let err = |e: perpcalc::Error| e.to_string();
    let up = calc.power(x, n).map_err(err)?.value;
    let back = calc.nth_root_signed(&up, n).map_err(err)?.value;
    let principal = if n % 2 == 0 { x.abs() } else { x.clone() };
    ensure(back.rel_diff(&principal) <= 1e-10, || format!("({x}^{n})^(1/{n}) = {back}"))?;
    if x.is_negative() && n % 2 == 0 {
        return Ok(());
    }
    let down = calc.nth_root_signed(x, n).map_err(err)?.value;
    let again = calc.power(&down, n).map_err(err)?.value;
    ensure(again.rel_diff(x) <= 1e-10, || format!("({x}^(1/{n}))^{n} = {again}"))
}

/// Both mean constructions agree, and so do both division constructions.
pub fn check_methods(calc: &Calculator, a: &SignedScaled, b: &SignedScaled) -> Check {
    let err = |e: perpcalc::Error| e.to_string();
    let b_same = b.with_sign(a.is_negative());
    let g1 = calc.geometric_mean(a, &b_same, MeanMethod::Bisect).map_err(err)?.value;
    let g2 = calc.geometric_mean(a, &b_same, MeanMethod::Rotate).map_err(err)?.value;
    ensure(g1.rel_diff(&g2) <= 1e-10, || format!("gmean({a}, {b_same}): {g1} vs {g2}"))?;
    let d1 = calc.divide(a, b, DivideMethod::Hypotenuse).map_err(err)?.value;
    let d2 = calc.divide(a, b, DivideMethod::SimilarTriangles).map_err(err)?.value;
    ensure(d1.rel_diff(&d2) <= 1e-10, || format!("{a}/{b}: {d1} vs {d2}"))
}

/// Signs follow the ordinary rules, and mixed-sign means are refused.
pub fn check_signs(calc: &Calculator, a: &SignedScaled, b: &SignedScaled, n: i64) -> Check {
    use perpcalc::{Error, ReciprocalMethod};
    let neg = a.is_negative() != b.is_negative();
    let err = |e: Error| e.to_string();
    ensure(calc.multiply(a, b).map_err(err)?.value.is_negative() == neg, || format!("sign of {a} * {b}"))?;
    for m in [DivideMethod::Hypotenuse, DivideMethod::SimilarTriangles] {
        ensure(calc.divide(a, b, m).map_err(err)?.value.is_negative() == neg, || format!("sign of {a} / {b}"))?;
    }
    for m in [ReciprocalMethod::Angle, ReciprocalMethod::UnitPerpendicular] {
        ensure(calc.reciprocal(a, m).map_err(err)?.value.is_negative() == a.is_negative(), || format!("sign of 1/{a}"))?;
    }
    if n != 0 {
        let p = calc.power(a, n).map_err(err)?.value;
        ensure(p.is_negative() == (a.is_negative() && n % 2 != 0), || format!("sign of {a}^{n}"))?;
    }
    let g = calc.geometric_mean(a, b, MeanMethod::Bisect);
    if neg {
        ensure(g == Err(Error::SignMismatch), || format!("gmean({a}, {b}) accepted mixed signs"))?;
    } else {
        ensure(g.map_err(err)?.value.is_negative() == a.is_negative(), || format!("sign of gmean({a}, {b})"))?;
    }
    Ok(())
}

pub const CANVAS: (u32, u32) = (800, 600);

/// The four reference drawings: a cascade, both mean constructions and a root search.
pub fn canonical_traces() -> Vec<(&'static str, perpcalc::Trace)> {
    use perpcalc::RootQuery;
    let calc = Calculator::default();
    let r = |s: &str| s.parse::<Real>().unwrap();
    let (earth, moon): (SignedScaled, SignedScaled) = ("5.972e24".parse().unwrap(), "7.348e22".parse().unwrap());
    vec![
        ("cascade", calc.build_cascade(&r("0.6"), &r("1"), 4).unwrap().trace),
        ("gmean_bisect", calc.geometric_mean(&earth, &moon, MeanMethod::Bisect).unwrap().trace),
        ("gmean_rotate", calc.geometric_mean(&earth, &moon, MeanMethod::Rotate).unwrap().trace),
        ("nth_root", calc.nth_root(&RootQuery::new(earth, 6)).unwrap().trace),
    ]
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.svg"))
}

/// Largest `|cos|` over the marked right angles, from the coordinates in the SVG.
pub fn worst_right_angle(svg: &str) -> (usize, f64) {
    let re = regex::Regex::new(r#"data-right-angle="([^"]+)""#).unwrap();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for cap in re.captures_iter(svg) {
        let pts: Vec<(f64, f64)> = cap[1]
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        let (foot, from, a, b) = (pts[0], pts[1], pts[2], pts[3]);
        let u = (from.0 - foot.0, from.1 - foot.1);
        let v = (b.0 - a.0, b.1 - a.1);
        let cos = (u.0 * v.0 + u.1 * v.1) / (u.0.hypot(u.1) * v.0.hypot(v.1));
        worst = worst.max(cos.abs());
        count += 1;
    }
    (count, worst)
}
