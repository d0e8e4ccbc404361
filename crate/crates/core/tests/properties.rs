mod common;

use perpcalc::{Calculator, Real, SignedScaled};
use proptest::prelude::*;

fn arb_value() -> impl Strategy<Value = SignedScaled> {
    (any::<bool>(), 1u64..1_000_000_000, -40i64..40)
        .prop_map(|(neg, m, e)| SignedScaled::new(neg, Real::from_u64(m), e).unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn cascade_ratio_and_altitude(c in 1u64..1_000_000, p in 1u64..1_000_000, depth in 1usize..30) {
        let cos = Real::from_u64(c).mul_pow10(-6);
        let perp = Real::from_u64(p).mul_pow10(-3);
        common::check_cascade(&cos, &perp, depth).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn power_and_root_invert(x in arb_value(), n in 1i64..12) {
        common::check_round_trip(&Calculator::default(), &x, n).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn constructions_agree(a in arb_value(), b in arb_value()) {
        common::check_methods(&Calculator::default(), &a, &b).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn sign_rules(a in arb_value(), b in arb_value(), n in -12i64..12) {
        common::check_signs(&Calculator::default(), &a, &b, n).map_err(TestCaseError::fail)?;
    }
}
