//! Roots and rational powers by rotating the hypotenuse until the n-th
//! perpendicular has the wanted length.

use num_integer::Integer;

use crate::cascade::{cascade_tip, sketch_search, Backend, Calculator, Evaluated};
use crate::error::{Error, Result};
use crate::numeric::{PrecisionPolicy, SignedScaled};
use crate::oracle::{oracle_eval, pow_rational, OracleOp};
use crate::real::Real;
use crate::trace::Trace;

pub const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub cos: Real,
    /// Cosine tried at each rotation, in order.
    pub path: Vec<Real>,
    /// `(lo, hi)` after each rotation.
    pub brackets: Vec<(Real, Real)>,
}

/// Bisection on `c` in `(0, 1)` for an increasing `f` until `f(c)` matches
/// `target` to `rel_tol`, the bracket is narrower than `rel_tol * lo`, or
/// [`MAX_BISECTIONS`] rotations have been made.
pub fn search_increasing<F>(f: F, target: &Real, policy: &PrecisionPolicy, digits: u32) -> Result<SearchOutcome>
where
    F: Fn(&Real) -> Real,
{
    let half = Real::from_parts(5.into(), -1);
    let tol = target.abs().mul(&policy.rel_tol, digits);
    let mut lo = Real::zero();
    let mut hi = Real::one();
    let mut path = Vec::new();
    let mut brackets = Vec::new();
    for _ in 0..MAX_BISECTIONS {
        let mid = &(&lo + &hi) * &half;
        let v = f(&mid);
        path.push(mid.clone());
        let diff = v.sub(target, digits);
        if diff.abs() <= tol {
            brackets.push((lo, hi));
            return Ok(SearchOutcome { cos: mid, path, brackets });
        }
        if diff.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
        brackets.push((lo.clone(), hi.clone()));
        if (&hi - &lo) < lo.mul(&policy.rel_tol, digits) {
            break;
        }
    }
    let cos = &(&lo + &hi) * &half;
    if !cos.is_positive() || cos >= Real::one() {
        return Err(Error::NoConvergence("target lies outside the reach of the cascade".into()));
    }
    Ok(SearchOutcome { cos, path, brackets })
}

/// Finds `cos C` with `perp * cos^depth C = target`.
pub fn search_cosine(perp: &Real, target: &Real, depth: u64, policy: &PrecisionPolicy) -> Result<SearchOutcome> {
    if !target.is_positive() || target >= perp {
        return Err(Error::Domain("cascade target must lie strictly between 0 and AB".into()));
    }
    let d = policy.guard_digits();
    search_increasing(|c| cascade_tip(c, perp, depth, d), target, policy, d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Radicand {
    Value(SignedScaled),
    /// `l / m`, divided out before the search.
    Ratio(SignedScaled, SignedScaled),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootQuery {
    pub radicand: Radicand,
    pub n: u64,
}

impl RootQuery {
    pub fn new(x: SignedScaled, n: u64) -> Self {
        RootQuery { radicand: Radicand::Value(x), n }
    }

    pub fn ratio(l: SignedScaled, m: SignedScaled, n: u64) -> Self {
        RootQuery { radicand: Radicand::Ratio(l, m), n }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerStrategy {
    /// `(x^m)^(1/n)`.
    Compose,
    /// `x^(m1 + m2/n)` with `m = n m1 + m2`.
    Split,
}

impl Calculator {
    pub fn nth_root(&self, q: &RootQuery) -> Result<Evaluated> {
        let n = q.n;
        if n == 0 {
            return Err(Error::Domain("root index must be at least 1".into()));
        }
        let (x, mut trace) = match &q.radicand {
            Radicand::Value(x) => (x.clone(), Trace::new()),
            Radicand::Ratio(l, m) => {
                let r = self.wider().divide(l, m, crate::cascade::DivideMethod::Hypotenuse)?;
                (r.value, r.trace)
            }
        };
        if x.is_negative() && n.is_even() {
            return Err(Error::EvenRootOfNegative);
        }
        if self.backend == Backend::Oracle {
            let v = oracle_eval(OracleOp::Root(n), std::slice::from_ref(&x), &self.policy)?;
            return Ok(Evaluated { value: v.round(self.policy.working_digits), trace: Trace::new() });
        }
        let negative = x.is_negative();
        if n == 1 {
            return Ok(Evaluated { value: x.round(self.policy.working_digits), trace });
        }
        // |x| = X'' * 10^(n q) with X'' = X * 10^r, 0 <= r < n.
        let k = x.exponent();
        let q_exp = k.div_euclid(n as i64);
        let r = k - q_exp * n as i64;
        let xr = x.mantissa().mul_pow10(r);
        let d = self.policy.guard_digits();
        let one = Real::one();
        let mantissa = if xr == one {
            one.clone()
        } else if xr > one {
            // AB = X'', last perpendicular 1; the root reads as AC/BC = 1/cos C.
            let out = search_cosine(&xr, &one, n, &self.policy)?;
            trace.extend(sketch_search(&out.cos, &xr, n as usize, &out.path, d));
            out.cos.recip(d)
        } else {
            let out = search_cosine(&one, &xr, n, &self.policy)?;
            trace.extend(sketch_search(&out.cos, &one, n as usize, &out.path, d));
            out.cos
        };
        assert_between(&xr, &mantissa);
        let value = SignedScaled::new(negative, mantissa, q_exp)?.round(self.policy.working_digits);
        Ok(Evaluated { value, trace })
    }

    /// `x^(-1/n)`, as the root of the reciprocal.
    pub fn nth_root_signed(&self, x: &SignedScaled, n: i64) -> Result<Evaluated> {
        if n >= 0 {
            return self.nth_root(&RootQuery::new(x.clone(), n as u64));
        }
        let wide = self.wider();
        let inv = wide.reciprocal(x, crate::cascade::ReciprocalMethod::Angle)?;
        let mut out = self.nth_root(&RootQuery::new(inv.value, n.unsigned_abs()))?;
        let mut trace = inv.trace;
        trace.extend(out.trace);
        out.trace = trace;
        Ok(out)
    }

    pub fn rational_power(&self, x: &SignedScaled, m: i64, n: u64, strategy: PowerStrategy) -> Result<Evaluated> {
        if n == 0 {
            return Err(Error::Domain("denominator of the exponent must be at least 1".into()));
        }
        if m == 0 {
            return Ok(Evaluated { value: SignedScaled::one(), trace: Trace::new() });
        }
        let g = (m.unsigned_abs()).gcd(&n);
        let (m, n) = (m / g as i64, n / g);
        if x.is_negative() && n.is_even() {
            return Err(Error::EvenRootOfNegative);
        }
        let negative = x.is_negative() && m % 2 != 0;
        if self.backend == Backend::Oracle {
            let dig = self.policy.oracle_digits + 20;
            let mag = pow_rational(&x.abs().to_real(), m, n, dig)?;
            let v = SignedScaled::from_real(&mag)?.with_sign(negative);
            return Ok(Evaluated { value: v.round(self.policy.working_digits), trace: Trace::new() });
        }
        let wide = self.wider();
        let base = x.abs();
        let (value, trace) = match strategy {
            PowerStrategy::Compose => {
                let p = wide.power(&base, m)?;
                let r = wide.nth_root(&RootQuery::new(p.value, n))?;
                let mut t = p.trace;
                t.extend(r.trace);
                (r.value, t)
            }
            PowerStrategy::Split => wide.split_power(&base, m, n)?,
        };
        let value = value.with_sign(negative).round(self.policy.working_digits);
        Ok(Evaluated { value, trace })
    }

    /// Mantissa and power of ten handled separately:
    /// `X^m1 * (X^(1/n))^m2 * 10^(r/n) * 10^q` with `k m = n q + r`.
    fn split_power(&self, x: &SignedScaled, m: i64, n: u64) -> Result<(SignedScaled, Trace)> {
        let ni = n as i64;
        let (m1, m2) = (m.div_euclid(ni), m.rem_euclid(ni));
        let mant = SignedScaled::new(false, x.mantissa().clone(), 0)?;
        let mut trace = Trace::new();
        let mut factors: Vec<SignedScaled> = Vec::new();
        if m1 != 0 {
            let p = self.power(&mant, m1)?;
            trace.extend(p.trace);
            factors.push(p.value);
        }
        if m2 != 0 {
            let root = self.nth_root(&RootQuery::new(mant.clone(), n))?;
            trace.extend(root.trace);
            let p = if m2 == 1 { root.value } else {
                let p = self.power(&root.value, m2)?;
                trace.extend(p.trace);
                p.value
            };
            factors.push(p);
        }
        let e = x.exponent().checked_mul(m).ok_or(Error::ExponentOverflow)?;
        let q = nearest_div(e, ni);
        let r = e - q * ni;
        if r != 0 {
            let ten_r = SignedScaled::new(false, Real::one(), r)?;
            let f = self.nth_root(&RootQuery::new(ten_r, n))?;
            trace.extend(f.trace);
            factors.push(f.value);
        }
        let mut acc = match factors.first() {
            Some(f) => f.clone(),
            None => SignedScaled::one(),
        };
        for f in factors.iter().skip(1) {
            let p = self.multiply(&acc, f)?;
            trace.extend(p.trace);
            acc = p.value;
        }
        let exponent = acc.exponent().checked_add(q).ok_or(Error::ExponentOverflow)?;
        Ok((SignedScaled::new(false, acc.mantissa().clone(), exponent)?, trace))
    }
}

/// `a / b` rounded to the nearest integer, ties away from zero.
fn nearest_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    if 2 * r >= b {
        q + 1
    } else {
        q
    }
}

/// The n-th root of `x` lies between `x` and 1, inclusive once rounded.
fn assert_between(x: &Real, root: &Real) {
    let one = Real::one();
    let ok = if *x < one { *root >= *x && *root <= one } else { *root >= one && *root <= *x };
    assert!(ok, "root {root} escaped the interval between {x} and 1");
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ss(s: &str) -> SignedScaled {
        s.parse().unwrap()
    }

    fn assert_close(a: &SignedScaled, b: &SignedScaled) {
        assert_eq!(a.is_negative(), b.is_negative());
        assert!(a.rel_diff(b) < 1e-27, "{a} vs {b}");
    }

    fn root(x: &str, n: u64) -> Result<SignedScaled> {
        Calculator::default().nth_root(&RootQuery::new(ss(x), n)).map(|e| e.value)
    }

    #[test]
    fn simple_roots() {
        assert_close(&root("8", 3).unwrap(), &ss("2"));
        assert_close(&root("-27", 3).unwrap(), &ss("-3"));
        assert_eq!(root("-4", 2).unwrap_err(), Error::EvenRootOfNegative);
        assert_close(&root("1e-6", 3).unwrap(), &ss("0.01"));
        assert_close(&root("0.0625", 4).unwrap(), &ss("0.5"));
        assert_close(&root("7.5", 1).unwrap(), &ss("7.5"));
    }

    #[test]
    fn ratio_radicand() {
        let c = Calculator::default();
        let v = c.nth_root(&RootQuery::ratio(ss("1"), ss("64"), 3)).unwrap().value;
        assert_close(&v, &ss("0.25"));
    }

    #[test]
    fn negative_index_is_reciprocal_root() {
        let v = Calculator::default().nth_root_signed(&ss("-32"), -5).unwrap().value;
        assert_close(&v, &ss("-0.5"));
    }

    #[test]
    fn rational_examples() {
        let c = Calculator::default();
        for s in [PowerStrategy::Compose, PowerStrategy::Split] {
            assert_close(&c.rational_power(&ss("4"), 3, 2, s).unwrap().value, &ss("8"));
            assert_close(&c.rational_power(&ss("3.7"), 1, 1, s).unwrap().value, &ss("3.7"));
            assert_close(&c.rational_power(&ss("-8"), 2, 3, s).unwrap().value, &ss("4"));
            assert_close(&c.rational_power(&ss("-8"), 1, 3, s).unwrap().value, &ss("-2"));
            assert_close(&c.rational_power(&ss("16"), -3, 4, s).unwrap().value, &ss("0.125"));
            assert_eq!(c.rational_power(&ss("-8"), 1, 2, s).unwrap_err(), Error::EvenRootOfNegative);
        }
    }

    #[test]
    fn nearest_division() {
        assert_eq!(nearest_div(475, 7), 68);
        assert_eq!(nearest_div(-475, 7), -68);
        assert_eq!(nearest_div(7, 2), 4);
        assert_eq!(nearest_div(14, 7), 2);
    }

    #[test]
    fn bracket_out_of_range() {
        let p = PrecisionPolicy::default();
        assert!(search_cosine(&Real::one(), &Real::from_i64(2), 3, &p).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bisection_brackets_hold(t in 1u64..999_999, n in 1u64..40) {
            let pol = PrecisionPolicy::default();
            let target = Real::from_u64(t).mul_pow10(-6);
            let out = search_cosine(&Real::one(), &target, n, &pol).unwrap();
            let (mut lo, mut hi) = (Real::zero(), Real::one());
            for (l, h) in &out.brackets {
                // Each rotation keeps one half of the previous bracket.
                let width = &hi - &lo;
                let new_width = h - l;
                if new_width != width {
                    prop_assert_eq!(new_width.mul_i64(2, 400), width);
                }
                prop_assert!(l.powi(n, 60) <= target);
                prop_assert!(h.powi(n, 60) >= target);
                lo = l.clone();
                hi = h.clone();
            }
        }
    }
}
