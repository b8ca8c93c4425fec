//! Exact Smith normal forms of symmetric matrices over formally real principal
//! rings (`Z`, `Q[x]`, and norm-Euclidean real quadratic rings), together with
//! exact positivity tests on the real spectrum and an executable check of the
//! statement "PSD implies SNF diagonals positive up to association".

pub mod codec;
pub mod error;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod quadratic;
pub mod ring;
pub mod rng;
pub mod smith;
pub mod spectrum;
pub mod verifier;

pub use codec::{ElemCodec, SupportedRing};
pub use error::{MatrixError, ParseError, RingError};
pub use matrix::{determinant, Matrix};
pub use par::Execution;
pub use poly::{RatPoly, RationalPolynomials};
pub use quadratic::{QuadElem, QuadraticIntegers, SignPattern};
pub use ring::{EuclideanRing, Integers, Ring, RingSpec};
pub use rng::{RandomElement, SplitMix64};
pub use smith::{minor_gcd_profile, smith_normal_form, verify_snf, SnfResult};
pub use spectrum::{is_psd_on_spectrum, PsdReport, RealRing};
pub use verifier::{
    verify_main_theorem, AnyRing, Conclusion, TheoremReport, TrialConfig, VerifyError,
};
