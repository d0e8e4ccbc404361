//! High-precision reference arithmetic.
//!
//! Everything here goes through `ln` and `exp` evaluated by series, so it
//! shares nothing with the cascade constructions except basic decimal
//! arithmetic. Tests use it to check the construction backend.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{PrecisionPolicy, SignedScaled};
use crate::real::Real;

/// Extra digits carried inside every oracle evaluation.
const GUARD: u32 = 20;
const LN10_CACHE_DIGITS: u32 = 600;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOp {
    Pow(i64),
    Root(u64),
    Mul,
    Div,
    Gmean,
    Recip,
    Ln,
    Exp,
}

impl OracleOp {
    fn arity(self) -> usize {
        match self {
            OracleOp::Mul | OracleOp::Div | OracleOp::Gmean => 2,
            _ => 1,
        }
    }
}

/// Evaluates `op` on `args` to `policy.oracle_digits` significant digits.
pub fn oracle_eval(op: OracleOp, args: &[SignedScaled], policy: &PrecisionPolicy) -> Result<SignedScaled> {
    if args.len() != op.arity() {
        return Err(Error::Domain(format!("{op:?} takes {} argument(s), got {}", op.arity(), args.len())));
    }
    let d = policy.oracle_digits;
    let wd = d + GUARD;
    let x = args[0].to_real();
    let value = match op {
        OracleOp::Pow(n) => {
            if n == 0 {
                Real::one()
            } else {
                let m = pow_real(&x.abs(), &Real::from_i64(n), wd)?;
                if x.is_negative() && n % 2 != 0 {
                    -m
                } else {
                    m
                }
            }
        }
        OracleOp::Root(n) => {
            if n == 0 {
                return Err(Error::Domain("zeroth root".into()));
            }
            if x.is_negative() && n % 2 == 0 {
                return Err(Error::EvenRootOfNegative);
            }
            let inv = Real::one().div(&Real::from_u64(n), wd + 10);
            let m = pow_real(&x.abs(), &inv, wd)?;
            if x.is_negative() {
                -m
            } else {
                m
            }
        }
        OracleOp::Mul => (&x * &args[1].to_real()).round(wd),
        OracleOp::Div => x.div(&args[1].to_real(), wd),
        OracleOp::Gmean => {
            let y = args[1].to_real();
            if x.is_negative() != y.is_negative() {
                return Err(Error::SignMismatch);
            }
            let g = (&x * &y).sqrt(wd);
            if x.is_negative() {
                -g
            } else {
                g
            }
        }
        OracleOp::Recip => x.recip(wd),
        OracleOp::Ln => ln(&x, wd)?,
        OracleOp::Exp => exp(&x, wd)?,
    };
    Ok(SignedScaled::from_real(&value)?.round(d))
}

/// `x^y` for `x > 0` as `exp(y ln x)`.
pub fn pow_real(x: &Real, y: &Real, digits: u32) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain("power of a non-positive base".into()));
    }
    // exp amplifies the absolute error of its argument; widen by the
    // argument's size.
    let extra = (y.magnitude().max(0) as u32) + 4;
    let l = ln(x, digits + extra)?;
    let arg = l.mul(y, digits + extra);
    exp(&arg, digits)
}

/// `x^(m/n)` for `x > 0`.
pub fn pow_rational(x: &Real, m: i64, n: u64, digits: u32) -> Result<Real> {
    let y = Real::from_i64(m).div(&Real::from_u64(n), digits + 30);
    pow_real(x, &y, digits)
}

/// Natural logarithm of `x > 0`.
pub fn ln(x: &Real, digits: u32) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain("logarithm of a non-positive number".into()));
    }
    let wd = digits + 10;
    let one = Real::one();
    let near_one = (x - &one).abs() <= "0.5".parse().unwrap();
    if near_one {
        return Ok(ln_near_one(x, wd).round(digits));
    }
    let k = x.magnitude();
    let m = x.mul_pow10(-k);
    let lm = ln_near_one(&m, wd + 2);
    let kl = ln10(wd + 20).mul_i64(k, wd + 20);
    Ok(lm.add(&kl, digits))
}

/// `ln 10` to `digits` digits.
pub fn ln10(digits: u32) -> Real {
    static CACHE: OnceLock<Real> = OnceLock::new();
    if digits <= LN10_CACHE_DIGITS {
        let cached = CACHE.get_or_init(|| -ln_near_one(&"0.1".parse().unwrap(), LN10_CACHE_DIGITS + 10));
        return cached.round(digits);
    }
    -ln_near_one(&"0.1".parse().unwrap(), digits + 10).round(digits)
}

/// Logarithm by repeated square roots and the atanh series. Good for any
/// positive `x`, but only efficient for `x` within a decade or so of 1.
fn ln_near_one(x: &Real, digits: u32) -> Real {
    let wd = digits + 10;
    let one = Real::one();
    let thresh = Real::pow10(-3);
    let mut y = x.clone();
    let mut halvings = 0u32;
    while (&y - &one).abs() > thresh {
        y = y.sqrt(wd);
        halvings += 1;
    }
    // ln y = 2 atanh(t), t = (y - 1)/(y + 1)
    let t = (&y - &one).div(&(&y + &one), wd);
    if t.is_zero() {
        return Real::zero();
    }
    let t2 = t.mul(&t, wd);
    let mut power = t.clone();
    let mut sum = t.clone();
    let eps_mag = t.magnitude() - wd as i64 - 2;
    let mut k = 1u64;
    loop {
        power = power.mul(&t2, wd);
        k += 2;
        let term = power.div(&Real::from_u64(k), wd);
        if term.is_zero() || term.magnitude() < eps_mag {
            break;
        }
        sum = sum.add(&term, wd);
    }
    let scale = Real::from_bigint(BigInt::from(2u32) << halvings as usize);
    sum.mul(&scale, wd).round(digits)
}

/// `e^x`.
pub fn exp(x: &Real, digits: u32) -> Result<Real> {
    if x.is_zero() {
        return Ok(Real::one());
    }
    let extra = x.magnitude().max(0) as u32;
    let wd = digits + extra + 15;
    let l10 = ln10(wd + 5);
    let kq = x.div(&l10, wd);
    let kk = kq.round_to_decimals(0);
    let k: i64 = kk.to_i64().ok_or(Error::ExponentOverflow)?;
    crate::numeric::check_exponent(k)?;
    let r = x.sub(&l10.mul_i64(k, wd + 5), wd);
    const SQUARINGS: u32 = 10;
    let s = r.div(&Real::from_u64(1 << SQUARINGS), wd);
    let mut term = Real::one();
    let mut sum = Real::one();
    let mut i = 1u64;
    loop {
        term = term.mul(&s, wd).div(&Real::from_u64(i), wd);
        if term.is_zero() || term.magnitude() < -(wd as i64) - 2 {
            break;
        }
        sum = sum.add(&term, wd);
        i += 1;
    }
    for _ in 0..SQUARINGS {
        sum = sum.mul(&sum, wd);
    }
    Ok(sum.mul_pow10(k).round(digits))
}

/// Euler's number to `digits` digits.
pub fn e(digits: u32) -> Real {
    exp(&Real::one(), digits).expect("e is finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Real {
        s.parse().unwrap()
    }

    const E50: &str = "2.71828182845904523536028747135266249775724709369995";
    const LN10_50: &str = "2.30258509299404568401799145468436420760110148862877";
    const LN2_50: &str = "0.693147180559945309417232121458176568075500134360255";

    #[test]
    fn constants_match_published_digits() {
        assert_eq!(e(50), r(E50).round(50));
        assert_eq!(ln10(50), r(LN10_50).round(50));
        assert_eq!(ln(&Real::from_i64(2), 50).unwrap(), r(LN2_50).round(50));
    }

    #[test]
    fn ln_exp_inverse() {
        for s in ["1e-30", "0.37", "1.0000000001", "7", "123456.789", "9.9e250"] {
            let x = r(s);
            let back = exp(&ln(&x, 80).unwrap(), 70).unwrap();
            assert!(back.rel_diff(&x) < 1e-65, "{s}: {}", back.rel_diff(&x));
        }
    }

    #[test]
    fn ln_of_near_unit_keeps_relative_precision() {
        let x = r("1.000000000000000000001");
        let l = ln(&x, 40).unwrap();
        // ln(1 + h) = h - h^2/2 + ...
        let h = r("1e-21");
        assert!(l.rel_diff(&h) < 1e-20);
        assert!(l < h);
    }

    #[test]
    fn eval_examples() {
        let p = PrecisionPolicy::default();
        let x: SignedScaled = "32357".parse().unwrap();
        let v = oracle_eval(OracleOp::Pow(10), &[x.clone()], &p).unwrap();
        assert_eq!(v.to_text(5), "1.2580e45");
        let one = SignedScaled::one();
        assert_eq!(oracle_eval(OracleOp::Recip, &[one.clone()], &p).unwrap(), one);
        let g = oracle_eval(OracleOp::Gmean, &[x.clone(), x.clone()], &p).unwrap();
        assert_eq!(g, x);
        let m2: SignedScaled = "-4".parse().unwrap();
        assert_eq!(oracle_eval(OracleOp::Root(2), &[m2], &p), Err(Error::EvenRootOfNegative));
    }

    #[test]
    fn power_reciprocity() {
        let p = PrecisionPolicy::default();
        let tol = 10f64.powi(1 - p.oracle_digits as i32);
        for (s, n) in [("32357", 10), ("0.731", 77), ("-2.5", 3), ("1.1", 1000)] {
            let x: SignedScaled = s.parse().unwrap();
            let a = oracle_eval(OracleOp::Pow(n), &[x.clone()], &p).unwrap().to_real();
            let b = oracle_eval(OracleOp::Pow(-n), &[x], &p).unwrap().to_real();
            let prod = a.mul(&b, 100);
            assert!(prod.rel_diff(&Real::one()) <= tol, "{s}^{n}");
        }
    }
}
