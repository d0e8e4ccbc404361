//! Mantissa/exponent form of a nonzero real and the precision policy.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::real::Real;

/// Largest decimal exponent magnitude accepted anywhere in the crate.
pub const MAX_EXPONENT: i64 = 1_000_000_000_000_000;

/// A nonzero real written as `sign * mantissa * 10^exponent`, mantissa in `[0.1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedScaled {
    negative: bool,
    mantissa: Real,
    exponent: i64,
}

impl SignedScaled {
    /// Builds from parts, renormalizing the mantissa if it is out of range.
    pub fn new(negative: bool, mantissa: Real, exponent: i64) -> Result<Self> {
        if mantissa.is_zero() {
            return Err(Error::ZeroNotRepresentable);
        }
        let v = Self::from_real(&mantissa.abs())?;
        let exponent = v.exponent.checked_add(exponent).ok_or(Error::ExponentOverflow)?;
        check_exponent(exponent)?;
        Ok(SignedScaled { negative: negative ^ mantissa.is_negative(), mantissa: v.mantissa, exponent })
    }

    pub fn from_real(x: &Real) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroNotRepresentable);
        }
        let k = x.magnitude();
        check_exponent(k)?;
        Ok(SignedScaled { negative: x.is_negative(), mantissa: x.abs().mul_pow10(-k), exponent: k })
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        Self::from_real(&Real::from_i64(v))
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Parse(v.to_string()));
        }
        Self::from_real(&Real::from_f64(v))
    }

    pub fn one() -> Self {
        SignedScaled { negative: false, mantissa: "0.1".parse().unwrap(), exponent: 1 }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn mantissa(&self) -> &Real {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn abs(&self) -> Self {
        SignedScaled { negative: false, ..self.clone() }
    }

    pub fn with_sign(&self, negative: bool) -> Self {
        SignedScaled { negative, ..self.clone() }
    }

    pub fn to_real(&self) -> Real {
        let m = self.mantissa.mul_pow10(self.exponent);
        if self.negative {
            -m
        } else {
            m
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_real().to_f64()
    }

    /// Rounds the mantissa to `digits` significant digits.
    pub fn round(&self, digits: u32) -> Self {
        let m = self.mantissa.round(digits);
        // Rounding 0.99.. up yields exactly 1.
        if m == Real::one() {
            return SignedScaled { negative: self.negative, mantissa: m.mul_pow10(-1), exponent: self.exponent + 1 };
        }
        SignedScaled { negative: self.negative, mantissa: m, exponent: self.exponent }
    }

    /// Scientific text with exactly `digits` significant digits, e.g. `3.2357e4`.
    pub fn to_text(&self, digits: u32) -> String {
        let digits = digits.max(1);
        let r = self.round(digits);
        // mantissa * 10^digits is an integer with exactly `digits` digits.
        let scaled = r.mantissa.mul_pow10(digits as i64).trunc();
        let s = scaled.to_string();
        let mut out = String::with_capacity(s.len() + 8);
        if r.negative {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&(r.exponent - 1).to_string());
        out
    }

    /// Relative difference against another value, as an `f64`.
    pub fn rel_diff(&self, other: &SignedScaled) -> f64 {
        self.to_real().rel_diff(&other.to_real())
    }
}

pub(crate) fn check_exponent(k: i64) -> Result<()> {
    if k.checked_abs().is_none_or(|a| a > MAX_EXPONENT) {
        Err(Error::ExponentOverflow)
    } else {
        Ok(())
    }
}

/// Parses decimal text into mantissa/exponent form.
pub fn normalize(text: &str) -> Result<SignedScaled> {
    let x: Real = text.parse()?;
    // Guard the exponent before the text's own exponent can blow the range.
    if x.is_zero() {
        return Err(Error::ZeroNotRepresentable);
    }
    SignedScaled::from_real(&x)
}

pub fn to_text(v: &SignedScaled, digits: u32) -> String {
    v.to_text(digits)
}

impl FromStr for SignedScaled {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        normalize(s)
    }
}

impl fmt::Display for SignedScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.precision().max(1) as u32;
        f.write_str(&self.to_text(digits))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionPolicy {
    pub working_digits: u32,
    pub oracle_digits: u32,
    pub rel_tol: Real,
}

impl PrecisionPolicy {
    pub fn new(working_digits: u32) -> Result<Self> {
        Self::with_tolerance(working_digits, None)
    }

    /// `rel_tol` defaults to `10^(1 - working_digits)`.
    pub fn with_tolerance(working_digits: u32, rel_tol: Option<Real>) -> Result<Self> {
        if working_digits < 15 {
            return Err(Error::InvalidPolicy(format!("working_digits must be at least 15, got {working_digits}")));
        }
        let rel_tol = rel_tol.unwrap_or_else(|| Real::pow10(1 - working_digits as i64));
        if !rel_tol.is_positive() || rel_tol >= Real::one() {
            return Err(Error::InvalidPolicy(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
        }
        Ok(PrecisionPolicy { working_digits, oracle_digits: 2 * working_digits, rel_tol })
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 15 {
            return Err(Error::InvalidPolicy("working_digits below 15".into()));
        }
        if self.oracle_digits < 2 * self.working_digits {
            return Err(Error::InvalidPolicy("oracle_digits below twice working_digits".into()));
        }
        Ok(())
    }

    /// Digits carried internally by construction arithmetic.
    pub fn guard_digits(&self) -> u32 {
        self.working_digits + 10
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::new(30).expect("default policy is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let v = normalize("32357").unwrap();
        assert!(!v.is_negative());
        assert_eq!(v.mantissa(), &"0.32357".parse::<Real>().unwrap());
        assert_eq!(v.exponent(), 5);

        let one = normalize("1").unwrap();
        assert_eq!(one, SignedScaled::one());

        let q = normalize("-1.602176634e-19").unwrap();
        assert!(q.is_negative());
        assert_eq!(q.mantissa(), &"0.1602176634".parse::<Real>().unwrap());
        assert_eq!(q.exponent(), -18);
    }

    #[test]
    fn normalize_rejects() {
        assert_eq!(normalize("0"), Err(Error::ZeroNotRepresentable));
        assert_eq!(normalize("-0.000e5"), Err(Error::ZeroNotRepresentable));
        assert!(matches!(normalize("1.2.3"), Err(Error::Parse(_))));
        assert!(matches!(normalize("inf"), Err(Error::Parse(_))));
        assert_eq!(normalize("1e9999999999999999"), Err(Error::ExponentOverflow));
    }

    #[test]
    fn to_text_examples() {
        assert_eq!(normalize("5").unwrap().to_text(3), "5.00e0");
        assert_eq!(normalize("-1.602176634e-19").unwrap().to_text(4), "-1.602e-19");
        assert_eq!(normalize("32357").unwrap().to_text(5), "3.2357e4");
        assert_eq!(normalize("9.9996").unwrap().to_text(4), "1.000e1");
        assert_eq!(normalize("2.25").unwrap().to_text(2), "2.2e0");
    }

    #[test]
    fn policy_bounds() {
        let p = PrecisionPolicy::default();
        assert_eq!(p.working_digits, 30);
        assert_eq!(p.oracle_digits, 60);
        assert_eq!(p.rel_tol, Real::pow10(-29));
        assert!(PrecisionPolicy::new(14).is_err());
        let bad = PrecisionPolicy { oracle_digits: 40, ..PrecisionPolicy::default() };
        assert!(bad.validate().is_err());
    }

    fn arb_scaled() -> impl Strategy<Value = SignedScaled> {
        (any::<bool>(), 1u64..10u64.pow(18), -400i64..400).prop_map(|(neg, digits, k)| {
            let m = Real::from_u64(digits);
            SignedScaled::new(neg, m, k).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn text_round_trip(v in arb_scaled(), digits in 1u32..25) {
            let back = normalize(&v.to_text(digits)).unwrap();
            prop_assert_eq!(back, v.round(digits));
        }

        #[test]
        fn mantissa_in_decade(v in arb_scaled()) {
            let m = v.mantissa();
            prop_assert!(*m >= "0.1".parse::<Real>().unwrap());
            prop_assert!(*m < Real::one());
        }
    }
}
