//! Decimal floating-point numbers of arbitrary precision.
//!
//! A [`Real`] is an exact value `coeff * 10^exp` with a big-integer
//! coefficient. The arithmetic operators on references are exact; the named
//! methods taking a `digits` argument round the result to that many
//! significant decimal digits (round-half-even).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const POW10_CACHE: usize = 512;

fn pow10_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(POW10_CACHE);
        let mut p = BigInt::one();
        for _ in 0..POW10_CACHE {
            v.push(p.clone());
            p *= 10u32;
        }
        v
    })
}

/// `10^k` as a big integer.
pub(crate) fn pow10(k: u64) -> BigInt {
    let table = pow10_table();
    if (k as usize) < table.len() {
        table[k as usize].clone()
    } else {
        num_traits::pow(BigInt::from(10u32), k as usize)
    }
}

/// Number of decimal digits of `|n|` (0 for zero).
pub(crate) fn num_digits(n: &BigInt) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let bits = n.bits();
    // floor((bits - 1) * log10(2)) + 1 is exact or one too small.
    let est = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
    let mag = n.magnitude();
    let table = pow10_table();
    let bound = if (est as usize) < table.len() {
        table[est as usize].magnitude().clone()
    } else {
        pow10(est).magnitude().clone()
    };
    if *mag >= bound {
        est + 1
    } else {
        est
    }
}

#[derive(Clone, Debug)]
pub struct Real {
    coeff: BigInt,
    exp: i64,
}

impl Real {
    pub fn zero() -> Self {
        Real { coeff: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Real { coeff: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Real { coeff: BigInt::from(v), exp: 0 }
    }

    pub fn from_u64(v: u64) -> Self {
        Real { coeff: BigInt::from(v), exp: 0 }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Real { coeff: v, exp: 0 }
    }

    /// `coeff * 10^exp`, exactly.
    pub fn from_parts(coeff: BigInt, exp: i64) -> Self {
        if coeff.is_zero() {
            return Real::zero();
        }
        Real { coeff, exp }
    }

    /// `10^k`, exactly.
    pub fn pow10(k: i64) -> Self {
        Real { coeff: BigInt::one(), exp: k }
    }

    /// The shortest decimal that round-trips to `v`. Panics on non-finite input.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        format!("{v:e}").parse().expect("f64 formatting is valid decimal")
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.coeff.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Real {
        Real { coeff: self.coeff.abs(), exp: self.exp }
    }

    /// Number of significant digits held in the coefficient.
    pub fn precision(&self) -> u64 {
        num_digits(&self.coeff)
    }

    /// Decimal exponent `e` such that `10^(e-1) <= |self| < 10^e`.
    /// Zero reports 0.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.exp + num_digits(&self.coeff) as i64
    }

    /// Exact multiplication by `10^k`.
    pub fn mul_pow10(&self, k: i64) -> Real {
        if self.is_zero() {
            return Real::zero();
        }
        Real { coeff: self.coeff.clone(), exp: self.exp + k }
    }

    /// Round to `digits` significant digits, ties to even.
    pub fn round(&self, digits: u32) -> Real {
        let digits = digits.max(1) as u64;
        let nd = num_digits(&self.coeff);
        if nd <= digits {
            return self.clone();
        }
        let drop = nd - digits;
        let q = shift_right_even(&self.coeff, drop);
        // A carry out of the top digit leaves an exact power of ten.
        if num_digits(&q) > digits {
            return Real::from_parts(q / 10u32, self.exp + drop as i64 + 1);
        }
        Real::from_parts(q, self.exp + drop as i64)
    }

    /// Round to a fixed number of digits after the decimal point, ties to even.
    pub fn round_to_decimals(&self, decimals: i64) -> Real {
        if self.exp >= -decimals {
            return self.clone();
        }
        let drop = (-decimals - self.exp) as u64;
        let nd = num_digits(&self.coeff);
        if drop > nd + 1 {
            return Real::zero();
        }
        let q = shift_right_even(&self.coeff, drop);
        Real::from_parts(q, -decimals)
    }

    /// Integer part, truncated toward zero.
    pub fn trunc(&self) -> BigInt {
        if self.exp >= 0 {
            &self.coeff * pow10(self.exp as u64)
        } else {
            let drop = (-self.exp) as u64;
            if drop > num_digits(&self.coeff) {
                return BigInt::zero();
            }
            &self.coeff / pow10(drop)
        }
    }

    pub fn add(&self, other: &Real, digits: u32) -> Real {
        // Avoid materializing an enormous aligned coefficient when one
        // operand is far below the precision of the other.
        if !self.is_zero() && !other.is_zero() {
            let gap = self.magnitude() - other.magnitude();
            let limit = digits as i64 + 3;
            if gap > limit {
                return self.nudge(other.signum(), digits);
            }
            if -gap > limit {
                return other.nudge(self.signum(), digits);
            }
        }
        (self + other).round(digits)
    }

    pub fn sub(&self, other: &Real, digits: u32) -> Real {
        self.add(&-other, digits)
    }

    /// `self` plus an infinitesimal of the given sign, rounded. The sticky
    /// digit keeps round-half-even honest.
    fn nudge(&self, sign: i32, digits: u32) -> Real {
        let pad = (digits as u64 + 3).saturating_sub(num_digits(&self.coeff)) + 1;
        let c = &self.coeff * pow10(pad) + BigInt::from(sign);
        Real::from_parts(c, self.exp - pad as i64).round(digits)
    }

    pub fn mul(&self, other: &Real, digits: u32) -> Real {
        (self * other).round(digits)
    }

    pub fn mul_i64(&self, k: i64, digits: u32) -> Real {
        Real::from_parts(&self.coeff * k, self.exp).round(digits)
    }

    pub fn div(&self, other: &Real, digits: u32) -> Real {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero();
        }
        let na = num_digits(&self.coeff) as i64;
        let nb = num_digits(&other.coeff) as i64;
        let shift = (digits as i64 + 3 + nb - na).max(0);
        let num = &self.coeff * pow10(shift as u64);
        let (q, r) = num.div_rem(&other.coeff);
        // Append a sticky digit so an inexact quotient never looks like a tie.
        let mut q = q * 10u32;
        if !r.is_zero() {
            let sticky = if (r.is_negative()) ^ (other.coeff.is_negative()) { -1 } else { 1 };
            q += sticky;
        }
        Real::from_parts(q, self.exp - other.exp - shift - 1).round(digits)
    }

    pub fn recip(&self, digits: u32) -> Real {
        Real::one().div(self, digits)
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self, digits: u32) -> Real {
        assert!(!self.is_negative(), "sqrt of negative");
        if self.is_zero() {
            return Real::zero();
        }
        let mut c = self.coeff.clone();
        let mut e = self.exp;
        let want = 2 * (digits as i64 + 3);
        let nd = num_digits(&c) as i64;
        let mut pad = (want - nd).max(0);
        if (e - pad).rem_euclid(2) != 0 {
            pad += 1;
        }
        c *= pow10(pad as u64);
        e -= pad;
        let s = c.sqrt();
        let mut s10 = &s * 10u32;
        if &s * &s != c {
            s10 += 1;
        }
        Real::from_parts(s10, e / 2 - 1).round(digits)
    }

    /// `self^n` by repeated squaring, rounding every product to `digits`.
    pub fn powi(&self, n: u64, digits: u32) -> Real {
        let mut result = Real::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, digits);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, digits);
            }
        }
        result
    }

    /// Nearest `f64`. Values outside the `f64` range saturate to infinity or zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Parsing the decimal text rounds correctly.
        let r = self.round(20);
        format!("{}e{}", r.coeff, r.exp).parse().unwrap_or(f64::NAN)
    }

    /// `|self - other| <= tol * |other|`.
    pub fn rel_close(&self, other: &Real, tol: &Real) -> bool {
        let diff = self.sub(other, 40).abs();
        diff <= tol.mul(&other.abs(), 40)
    }

    /// Relative difference `|self - other| / |other|` as an `f64`.
    pub fn rel_diff(&self, other: &Real) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        self.sub(other, 40).abs().div(&other.abs(), 20).to_f64()
    }

    /// Compact scientific rendering with up to `digits` significant digits.
    pub fn to_sci(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let r = self.round(digits);
        let neg = r.coeff.is_negative();
        let s = r.coeff.abs().to_string();
        let s = s.trim_end_matches('0');
        let s = if s.is_empty() { "0" } else { s };
        // value = 0.<s> * 10^(magnitude)
        let mag = r.magnitude();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push_str(&format!("e{}", mag - 1));
        out
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.exp < 0 {
            return None;
        }
        (&self.coeff * pow10(self.exp as u64)).to_i64()
    }
}

/// `c / 10^drop` rounded half-even.
fn shift_right_even(c: &BigInt, drop: u64) -> BigInt {
    let divisor = pow10(drop);
    let (mut q, r) = c.div_rem(&divisor);
    let twice = r.abs() * 2u32;
    let up = match twice.cmp(&divisor) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => q.is_odd(),
    };
    if up {
        if c.is_negative() {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

fn align(a: &Real, b: &Real) -> (BigInt, BigInt, i64) {
    let e = a.exp.min(b.exp);
    let ca = if a.exp > e { &a.coeff * pow10((a.exp - e) as u64) } else { a.coeff.clone() };
    let cb = if b.exp > e { &b.coeff * pow10((b.exp - e) as u64) } else { b.coeff.clone() };
    (ca, cb, e)
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = align(self, rhs);
        Real::from_parts(a + b, e)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real::from_parts(&self.coeff * &rhs.coeff, self.exp + rhs.exp)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { coeff: -&self.coeff, exp: self.exp }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { coeff: -self.coeff, exp: self.exp }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.magnitude(), other.magnitude());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        let (a, b, _) = align(self, other);
        a.cmp(&b)
    }
}

impl FromStr for Real {
    type Err = Error;

    /// Optional sign, digits, optional fraction, optional `e`/`E` exponent.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(text.to_string());
        let s = text.trim();
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], Some(&s[i + 1..])),
            None => (s, None),
        };
        let (neg, body) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut exp: i64 = match exponent {
            Some(e) => {
                let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                e.parse().map_err(|_| bad())?
            }
            None => 0,
        };
        exp = exp.checked_sub(frac_part.len() as i64).ok_or_else(bad)?;
        let digits = format!("{int_part}{frac_part}");
        let mut coeff: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            coeff = -coeff;
        }
        Ok(Real::from_parts(coeff, exp))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}e{}", self.coeff, self.exp)
        }
    }
}
