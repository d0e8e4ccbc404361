//! Euler's number from the cascade with cos C = n/(n+1), and natural
//! logarithms and antilogarithms against it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::cascade::{cascade_tip, Backend, Calculator, ReciprocalMethod};
use crate::error::{Error, Result};
use crate::exponent::{recover_real, CfOptions};
use crate::numeric::{SignedScaled, MAX_EXPONENT};
use crate::real::Real;
use crate::root::RootQuery;

/// The constant the error bound is stated against.
pub const E_REF: &str = "2.7182818284590452";
/// Steps used for the crate's own value of e.
pub const INTERNAL_E_STEPS: u64 = 100_000_000;
const INTERNAL_E_DIGITS: u32 = 80;
/// Decimal places of an antilog argument that are honored.
pub const ANTILOG_DECIMALS: u32 = 18;

#[derive(Clone, Debug, PartialEq)]
pub struct EulerApprox {
    pub n_steps: u64,
    /// `(1 + 1/n)^n`.
    pub value: Real,
    /// `e / (2n)`.
    pub error_bound: Real,
}

/// `1/p_n` for the cascade with `cos C = n/(n+1)` and `n` perpendiculars.
pub fn approximate_e_digits(n_steps: u64, digits: u32) -> Result<EulerApprox> {
    if n_steps == 0 {
        return Err(Error::Domain("n_steps must be at least 1".into()));
    }
    let n = Real::from_u64(n_steps);
    let cos = n.div(&Real::from_u64(n_steps + 1), digits + 5);
    let pn = cascade_tip(&cos, &Real::one(), n_steps, digits + 5);
    let value = pn.recip(digits);
    let e_ref: Real = E_REF.parse().expect("constant parses");
    let error_bound = e_ref.div(&Real::from_u64(2 * n_steps), 20);
    Ok(EulerApprox { n_steps, value, error_bound })
}

pub fn approximate_e(n_steps: u64) -> Result<EulerApprox> {
    approximate_e_digits(n_steps, 40)
}

/// e from 10^8 steps, computed once.
pub fn internal_e() -> &'static Real {
    static E: OnceLock<Real> = OnceLock::new();
    E.get_or_init(|| approximate_e_digits(INTERNAL_E_STEPS, INTERNAL_E_DIGITS).expect("positive steps").value)
}

/// `e^(1/10^j)` for `j = 1..=ANTILOG_DECIMALS`, per precision.
fn decimal_roots(calc: &Calculator) -> Result<Arc<Vec<SignedScaled>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<SignedScaled>>>>> = OnceLock::new();
    let key = calc.policy.working_digits;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let e = SignedScaled::from_real(internal_e())?;
    let mut roots = Vec::with_capacity(ANTILOG_DECIMALS as usize);
    let mut index = 1u64;
    for _ in 0..ANTILOG_DECIMALS {
        index *= 10;
        roots.push(calc.nth_root(&RootQuery::new(e.clone(), index))?.value);
    }
    let roots = Arc::new(roots);
    cache.lock().unwrap().insert(key, roots.clone());
    Ok(roots)
}

impl Calculator {
    pub fn approximate_e(&self, n_steps: u64) -> Result<EulerApprox> {
        approximate_e_digits(n_steps, self.policy.guard_digits())
    }

    /// `ln a`, the exponent of the crate's e that yields `a`. Zero for `a = 1`.
    pub fn natural_log(&self, a: &SignedScaled, depth: usize) -> Result<Real> {
        if a.is_negative() {
            return Err(Error::Domain("logarithm of a negative number".into()));
        }
        let d = self.policy.oracle_digits + 10;
        let one = Real::one();
        let ar = a.to_real();
        if ar == one {
            return Ok(Real::zero());
        }
        let (ar, negative) = if ar < one { (ar.recip(d), true) } else { (ar, false) };
        let opts = CfOptions { max_depth: depth, ..CfOptions::default() };
        let cf = recover_real(internal_e(), &ar, &opts, d, self.backend)?;
        let v = cf.evaluate().to_real(self.policy.working_digits);
        Ok(if negative { -v } else { v })
    }

    /// `e^n` as a product of an integer power of e and small powers of the
    /// roots `e^(1/10^j)`, one per decimal digit of the fraction.
    pub fn antilog(&self, n: &Real) -> Result<SignedScaled> {
        if n.is_zero() {
            return Ok(SignedScaled::one());
        }
        // log10(e) < 0.4343, so |n| up to this keeps the exponent in range.
        let limit = Real::from_i64(MAX_EXPONENT).mul(&"2.3".parse().unwrap(), 20);
        if n.abs() > limit {
            return Err(Error::ExponentOverflow);
        }
        let wide = self.wider();
        if self.backend == Backend::Oracle {
            let v = crate::oracle::exp(&n.mul(&internal_ln_scale(), 80), self.policy.oracle_digits)?;
            return Ok(SignedScaled::from_real(&v)?.round(self.policy.working_digits));
        }
        let mag = n.abs().round_to_decimals(ANTILOG_DECIMALS as i64);
        let int_part = mag.trunc();
        let frac = &mag - &Real::from_bigint(int_part.clone());
        let digits = decimal_digits(&frac);

        let e = SignedScaled::from_real(internal_e())?;
        let mut acc = SignedScaled::one();
        if !int_part.is_zero() {
            let i = int_part.to_i64().ok_or(Error::ExponentOverflow)?;
            acc = wide.power_unbounded(&e, i)?;
        }
        let roots = decimal_roots(&wide)?;
        for (j, &dj) in digits.iter().enumerate() {
            if dj == 0 {
                continue;
            }
            let f = if dj == 1 { roots[j].clone() } else { wide.power(&roots[j], dj as i64)?.value };
            acc = wide.multiply(&acc, &f)?.value;
        }
        if n.is_negative() {
            acc = wide.reciprocal(&acc, ReciprocalMethod::Angle)?.value;
        }
        Ok(acc.round(self.policy.working_digits))
    }

    /// `power` without the exponent-size limit, for e^I.
    fn power_unbounded(&self, x: &SignedScaled, n: i64) -> Result<SignedScaled> {
        let calc = Calculator { max_power: u64::MAX, ..self.clone() };
        Ok(calc.power(x, n)?.value)
    }
}

/// `ln(internal e)`, so the oracle antilog matches the construction one.
fn internal_ln_scale() -> Real {
    static L: OnceLock<Real> = OnceLock::new();
    L.get_or_init(|| crate::oracle::ln(internal_e(), 80).expect("e is positive")).clone()
}

/// Decimal digits of a fraction in `[0, 1)`, most significant first.
fn decimal_digits(frac: &Real) -> Vec<u8> {
    let scaled = frac.mul_pow10(ANTILOG_DECIMALS as i64).round_to_decimals(0).trunc();
    let s = format!("{:0>width$}", scaled.abs().to_string(), width = ANTILOG_DECIMALS as usize);
    let mut d: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
    while d.last() == Some(&0) {
        d.pop();
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_is_two() {
        let a = approximate_e(1).unwrap();
        assert_eq!(a.value, Real::from_i64(2));
        assert!(approximate_e(0).is_err());
    }

    #[test]
    fn internal_constant_is_close() {
        let e = internal_e();
        let r: Real = E_REF.parse().unwrap();
        assert!(e.rel_diff(&r) < 1e-8);
        assert!(*e < r);
    }

    #[test]
    fn fraction_digits() {
        assert_eq!(decimal_digits(&"0.25".parse().unwrap()), vec![2, 5]);
        assert_eq!(decimal_digits(&"0.05".parse().unwrap()), vec![0, 5]);
        assert!(decimal_digits(&Real::zero()).is_empty());
    }

    #[test]
    fn log_special_cases() {
        let c = Calculator::default();
        assert!(c.natural_log(&"1".parse().unwrap(), 16).unwrap().is_zero());
        assert_eq!(c.antilog(&Real::zero()).unwrap(), SignedScaled::one());
        let e = SignedScaled::from_real(internal_e()).unwrap();
        let l = c.natural_log(&e, 16).unwrap();
        assert!(l.rel_diff(&Real::one()) < 1e-12);
        assert!(matches!(c.natural_log(&"-2".parse().unwrap(), 16), Err(Error::Domain(_))));
        assert_eq!(c.antilog(&"1e20".parse().unwrap()), Err(Error::ExponentOverflow));
    }
}
