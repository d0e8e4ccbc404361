//! Recovering exponents: `n` in `x^n = a`, and `m/n` in `x^(m/n) = a` as a
//! continued fraction built by a Euclidean loop on cascade lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cascade::{Backend, Calculator};
use crate::error::{Error, Result};
use crate::numeric::SignedScaled;
use crate::oracle;
use crate::real::Real;

/// Largest partial quotient the loop will step to.
pub const MAX_TERM: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    /// `[N; N1, N2, ...]`.
    pub terms: Vec<u64>,
    /// The expansion ended on an exact-looking residual rather than a limit.
    pub terminated: bool,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>, terminated: bool) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("a continued fraction needs at least one term".into()));
        }
        if terms[1..].contains(&0) {
            return Err(Error::Domain("terms after the first must be positive".into()));
        }
        Ok(ContinuedFraction { terms, terminated })
    }

    pub fn evaluate(&self) -> Rational {
        evaluate_cf(self)
    }

    /// Every convergent `h_i/k_i`, shortest first.
    pub fn convergents(&self) -> Vec<Rational> {
        let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
        let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(self.terms.len());
        for &a in &self.terms {
            let a = BigInt::from(a);
            let h = &a * &h1 + &h0;
            let k = &a * &k1 + &k0;
            out.push(Rational::new(h.clone(), k.clone()));
            (h0, h1) = (h1, h);
            (k0, k1) = (k1, k);
        }
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        for (i, t) in self.terms[1..].iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (head, tail) = match inner.split_once(';') {
            Some((h, t)) => (h, Some(t)),
            None => (inner, None),
        };
        let mut terms = vec![head.trim().parse::<u64>().map_err(|_| bad())?];
        if let Some(t) = tail {
            for part in t.split(',') {
                terms.push(part.trim().parse::<u64>().map_err(|_| bad())?);
            }
        }
        ContinuedFraction::new(terms, true).map_err(|_| bad())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Reduced to lowest terms with a positive denominator.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn to_real(&self, digits: u32) -> Real {
        Real::from_bigint(self.num.clone()).div(&Real::from_bigint(self.den.clone()), digits)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact value by the convergent recurrence.
pub fn evaluate_cf(cf: &ContinuedFraction) -> Rational {
    cf.convergents().pop().expect("continued fraction has terms")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CfOptions {
    pub max_depth: usize,
    pub cf_tol: Real,
    pub max_term: u64,
}

impl Default for CfOptions {
    fn default() -> Self {
        CfOptions { max_depth: 16, cf_tol: Real::pow10(-12), max_term: MAX_TERM }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogRecovery {
    /// `a = e^p`.
    pub p: ContinuedFraction,
    /// `x = e^q`.
    pub q: ContinuedFraction,
    /// `p / q`.
    pub ratio: SignedScaled,
}

/// Base and target in `(0, 1)` with the same positive exponent.
fn reduce_to_unit(x: &Real, a: &Real, digits: u32) -> Result<(Real, Real)> {
    let one = Real::one();
    if *x == one {
        return Err(Error::Domain("base 1 has no exponent".into()));
    }
    if *a == one || (*x > one) != (*a > one) {
        return Err(Error::Domain("exponent would be zero or negative".into()));
    }
    if *x > one {
        Ok((x.recip(digits), a.recip(digits)))
    } else {
        Ok((x.clone(), a.clone()))
    }
}

/// Largest `N <= cap` with `u^N >= thresh`, for `u` in `(0, 1)`, found by
/// squaring up and then settling bits from the top. Also returns `u^N`.
fn largest_power_above(u: &Real, thresh: &Real, cap: u64, digits: u32) -> (u64, Real) {
    let mut squares = vec![u.clone()];
    while (1u64 << (squares.len() - 1)) <= cap {
        let last = squares.last().unwrap();
        if last < thresh {
            break;
        }
        let next = last.mul(last, digits);
        squares.push(next);
    }
    let mut n = 0u64;
    let mut acc = Real::one();
    for (j, sq) in squares.iter().enumerate().rev() {
        let step = 1u64 << j;
        if n + step > cap {
            continue;
        }
        let cand = acc.mul(sq, digits);
        if cand >= *thresh {
            acc = cand;
            n += step;
        }
    }
    (n, acc)
}

impl Calculator {
    /// `N` with `x^N = a`, found by stepping the cascade one perpendicular at
    /// a time.
    pub fn solve_integer_exponent(&self, x: &SignedScaled, a: &SignedScaled, max_n: u64) -> Result<u64> {
        let want_odd = match (x.is_negative(), a.is_negative()) {
            (false, false) => None,
            (true, true) => Some(true),
            (true, false) => Some(false),
            (false, true) => return Err(Error::NoIntegerExponent { max_n }),
        };
        let d = self.policy.guard_digits();
        let (xr, ar) = (x.abs().to_real(), a.abs().to_real());
        let one = Real::one();
        if xr == one {
            return Err(Error::Domain("base of magnitude 1 has no unique exponent".into()));
        }
        let (cos, target) = if xr > one { (xr.recip(d), ar.recip(d)) } else { (xr, ar) };
        if target >= one {
            return Err(Error::NoIntegerExponent { max_n });
        }
        let tol = Real::pow10(-9);
        let floor = target.mul(&(&one - &tol), d);
        let mut p = one.clone();
        for n in 1..=max_n {
            p = p.mul(&cos, d);
            if p.rel_close(&target, &tol) && want_odd.is_none_or(|odd| odd == (n % 2 == 1)) {
                return Ok(n);
            }
            if p < floor {
                break;
            }
        }
        Err(Error::NoIntegerExponent { max_n })
    }

    /// `n` with `x^(1/n) = a`, i.e. `a^n = x`.
    pub fn solve_root_index(&self, x: &SignedScaled, a: &SignedScaled, max_n: u64) -> Result<u64> {
        self.solve_integer_exponent(a, x, max_n)
    }

    /// Continued fraction of `m/n` with `x^(m/n) = a`.
    pub fn recover_rational_exponent(&self, x: &SignedScaled, a: &SignedScaled, opts: &CfOptions) -> Result<ContinuedFraction> {
        if x.is_negative() || a.is_negative() {
            return Err(Error::Domain("exponent recovery needs positive base and target".into()));
        }
        recover_real(&x.to_real(), &a.to_real(), opts, self.policy.oracle_digits + 10, self.backend)
    }

    /// Exponent as a ratio of natural logarithms, each recovered against the
    /// cascade approximation of e.
    pub fn recover_exponent_via_logs(&self, x: &SignedScaled, a: &SignedScaled, opts: &CfOptions) -> Result<LogRecovery> {
        if x.is_negative() || a.is_negative() {
            return Err(Error::Domain("exponent recovery needs positive base and target".into()));
        }
        let d = self.policy.oracle_digits + 10;
        let one = Real::one();
        let (mut xr, mut ar) = (x.to_real(), a.to_real());
        if xr == one || ar == one || (xr > one) != (ar > one) {
            return Err(Error::Domain("exponent would be zero or negative".into()));
        }
        if xr < one {
            xr = xr.recip(d);
            ar = ar.recip(d);
        }
        let e = crate::euler::internal_e();
        let p = recover_real(e, &ar, opts, d, self.backend)?;
        let q = recover_real(e, &xr, opts, d, self.backend)?;
        let ratio = p.evaluate().to_real(d).div(&q.evaluate().to_real(d), d);
        let ratio = SignedScaled::from_real(&ratio)?.round(self.policy.working_digits);
        Ok(LogRecovery { p, q, ratio })
    }
}

/// Continued fraction of `ln a / ln x` for positive reals.
pub(crate) fn recover_real(x: &Real, a: &Real, opts: &CfOptions, digits: u32, backend: Backend) -> Result<ContinuedFraction> {
    let (u, v) = reduce_to_unit(x, a, digits)?;
    match backend {
        Backend::Construction => euclid_on_cascades(u, v, opts, digits),
        Backend::Oracle => {
            let e = oracle::ln(&v, digits)?.div(&oracle::ln(&u, digits)?, digits);
            Ok(expand_real(&e, opts, digits))
        }
    }
}

/// The Euclidean loop: with `u^e = v`, take `N` perpendiculars while they
/// stay above `v`, keep the residual `w = v/u^N = u^(e-N)`, then continue
/// with `w` as the new base and `u` as the new target.
fn euclid_on_cascades(mut u: Real, mut v: Real, opts: &CfOptions, digits: u32) -> Result<ContinuedFraction> {
    let one = Real::one();
    let mut terms = Vec::new();
    if v > u {
        // Exponent below 1: the integer part is 0 and the roles swap.
        terms.push(0);
        std::mem::swap(&mut u, &mut v);
    }
    let thresh_factor = &one - &opts.cf_tol;
    loop {
        let thresh = v.mul(&thresh_factor, digits);
        let (n, un) = largest_power_above(&u, &thresh, opts.max_term, digits);
        if n == opts.max_term {
            // The next quotient is beyond reach; stop here.
            if terms.is_empty() {
                return Err(Error::NoConvergence(format!("integer part exceeds {}", opts.max_term)));
            }
            return Ok(ContinuedFraction { terms, terminated: false });
        }
        if n == 0 && !terms.is_empty() {
            return Err(Error::NoConvergence("residual left the unit interval".into()));
        }
        terms.push(n);
        let w = v.div(&un, digits);
        if (&w - &one).abs() <= opts.cf_tol {
            return Ok(ContinuedFraction { terms, terminated: true });
        }
        assert!(w > u && w < one, "residual {w} outside ({u}, 1)");
        if terms.len() >= opts.max_depth {
            return Ok(ContinuedFraction { terms, terminated: false });
        }
        v = u;
        u = w;
    }
}

/// Classical expansion of a positive real, with the same stopping rules.
pub fn expand_real(e: &Real, opts: &CfOptions, digits: u32) -> ContinuedFraction {
    let mut terms = Vec::new();
    let mut x = e.clone();
    loop {
        let nudged = x.add(&opts.cf_tol, digits);
        let n = nudged.trunc();
        let n_u64: u64 = (&n).try_into().unwrap_or(u64::MAX);
        if n_u64 >= opts.max_term && !terms.is_empty() {
            return ContinuedFraction { terms, terminated: false };
        }
        terms.push(n_u64);
        let frac = x.sub(&Real::from_u64(n_u64), digits);
        if frac.abs() <= opts.cf_tol.mul(&x.abs().max(Real::one()), digits) {
            return ContinuedFraction { terms, terminated: true };
        }
        if terms.len() >= opts.max_depth {
            return ContinuedFraction { terms, terminated: false };
        }
        x = frac.recip(digits);
    }
}
