//! Fixed inputs shared by the benchmarks.

use perpcalc::{Real, SignedScaled};

pub fn earth() -> SignedScaled {
    "5.972e24".parse().unwrap()
}

pub fn moon() -> SignedScaled {
    "7.348e22".parse().unwrap()
}

pub fn charge() -> SignedScaled {
    "-1.602176634e-19".parse().unwrap()
}

/// `2^(1971/181)` at 60 digits.
pub fn cf_target() -> SignedScaled {
    let a = perpcalc::oracle::pow_rational(&Real::from_u64(2), 1971, 181, 60).unwrap();
    SignedScaled::from_real(&a).unwrap()
}
