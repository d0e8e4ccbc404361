//! Scientific calculation with cascades of perpendiculars.
//!
//! In a right triangle with legs `AB = P` and angle `C`, the perpendiculars
//! dropped alternately onto the hypotenuse and the base have lengths
//! `P cos^i C`. Powers, roots, products, quotients, reciprocals, exponents
//! and logarithms all reduce to choosing or searching `cos C`.
//!
//! ```
//! use perpcalc::{Calculator, SignedScaled};
//!
//! let calc = Calculator::default();
//! let x: SignedScaled = "32357".parse().unwrap();
//! let v = calc.power(&x, 10).unwrap().value;
//! assert_eq!(v.to_text(5), "1.2580e45");
//! ```

pub mod cascade;
pub mod error;
pub mod euler;
pub mod exponent;
pub mod mech;
pub mod numeric;
pub mod oracle;
pub mod real;
pub mod render;
pub mod root;
pub mod trace;

pub use cascade::{
    build_cascade, cascade_tip, Backend, Calculator, Cascade, Construction, DivideMethod, Evaluated, MeanMethod,
    ReciprocalMethod,
};
pub use error::{Error, Result};
pub use euler::{approximate_e, EulerApprox};
pub use exponent::{evaluate_cf, CfOptions, ContinuedFraction, LogRecovery, Rational};
pub use mech::{run_script, DeviceState, MeasuredResult, MeasurementModel, ScriptOp};
pub use numeric::{normalize, to_text, PrecisionPolicy, SignedScaled};
pub use oracle::{oracle_eval, OracleOp};
pub use real::Real;
pub use render::{render_trace, Diagram};
pub use root::{PowerStrategy, Radicand, RootQuery};
pub use trace::{Step, StepKind, Trace};
