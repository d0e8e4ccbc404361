//! Reference values recomputed here with exact integer arithmetic, frozen,
//! and matched against the construction backend.

use num_bigint::BigInt;
use perpcalc::{Calculator, DivideMethod, MeanMethod, PowerStrategy, Real, ReciprocalMethod, RootQuery, SignedScaled};

const POW: &str = "1.258005353154865992847814066352770291775e45";
const POW_NEG: &str = "7.949091770493409029813683204083144323819e-46";
const RECIP: &str = "-6.241509074460762607776240980930445899887e18";
const DIV: &str = "8.127381600435492651061513336962438758846e1";
const GMEAN: &str = "6.624368347246399914673954277474047296628e23";
const ROOT6: &str = "1.346955660881422313145502509104149876572e4";
const POW_19_7: &str = "1.776102501740441506900471468175161009898e67";
const CHARGE_7: &str = "-2.710021623393571386042022747150818600789e-132";

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ten(k: u32) -> BigInt {
    BigInt::from(10u8).pow(k)
}

fn real(s: &str) -> Real {
    s.parse().unwrap()
}

fn ss(s: &str) -> SignedScaled {
    s.parse().unwrap()
}

fn frozen(oracle: Real, text: &str) -> Real {
    let f = real(text);
    assert!(oracle.rel_diff(&f) < 1e-38, "oracle {oracle} moved from {text}");
    f
}

fn close(got: &SignedScaled, want: &Real, tol: f64) {
    let d = got.to_real().rel_diff(want);
    assert!(d < tol, "{got} vs {want}: {d:e}");
}

#[test]
fn powers_of_32357() {
    let want = frozen(Real::from_bigint(big(32357).pow(10)), POW);
    let calc = Calculator::default();
    close(&calc.power(&ss("32357"), 10).unwrap().value, &want, 1e-28);

    let inv = ten(90) / big(32357).pow(10);
    let want = frozen(Real::from_parts(inv, -90), POW_NEG);
    close(&calc.power(&ss("32357"), -10).unwrap().value, &want, 1e-28);
}

#[test]
fn charge_reciprocal_and_power() {
    let q = ten(70) / big(1_602_176_634);
    let want = frozen(Real::from_parts(-q, -70 + 28), RECIP);
    let calc = Calculator::default();
    for m in [ReciprocalMethod::Angle, ReciprocalMethod::UnitPerpendicular] {
        close(&calc.reciprocal(&ss("-1.602176634e-19"), m).unwrap().value, &want, 1e-28);
    }
    let p = big(1_602_176_634).pow(7);
    let want = frozen(Real::from_parts(-p, -(28 * 7)), CHARGE_7);
    close(&calc.power(&ss("-1.602176634e-19"), 7).unwrap().value, &want, 1e-28);
}

#[test]
fn earth_and_moon() {
    let calc = Calculator::default();
    let (earth, moon) = (ss("5.972e24"), ss("7.348e22"));

    let want = frozen(Real::from_parts(big(5972) * ten(60) / big(7348), -58), DIV);
    for m in [DivideMethod::Hypotenuse, DivideMethod::SimilarTriangles] {
        close(&calc.divide(&earth, &moon, m).unwrap().value, &want, 1e-27);
    }

    let want = frozen(Real::from_parts((big(5972 * 7348) * ten(100)).sqrt(), -30), GMEAN);
    for m in [MeanMethod::Bisect, MeanMethod::Rotate] {
        close(&calc.geometric_mean(&earth, &moon, m).unwrap().value, &want, 1e-27);
    }

    let radicand = big(5972) * ten(21);
    let want = frozen(Real::from_parts((&radicand * ten(6 * 45)).nth_root(6), -45), ROOT6);
    close(&calc.nth_root(&RootQuery::new(earth.clone(), 6)).unwrap().value, &want, 1e-27);

    let want = frozen(Real::from_parts((radicand.pow(19) * ten(7 * 45)).nth_root(7), -45), POW_19_7);
    for s in [PowerStrategy::Compose, PowerStrategy::Split] {
        close(&calc.rational_power(&earth, 19, 7, s).unwrap().value, &want, 1e-26);
    }
}

#[test]
fn change_of_base_ratio() {
    let want = 151f64.ln() / 98f64.ln();
    assert!((want - 1.094_289_078_418_873).abs() < 1e-15);
}

#[test]
fn compound_interest_limit() {
    let n = 1e6f64;
    let want = (n * (1.0 / n).ln_1p()).exp();
    assert!((want - 2.718_280_469_319_377).abs() < 1e-14);
    let got = perpcalc::approximate_e(1_000_000).unwrap().value.to_f64();
    assert!((got - want).abs() < 1e-14, "{got}");
}
