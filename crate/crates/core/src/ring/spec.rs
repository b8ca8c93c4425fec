use std::fmt;
use std::str::FromStr;

use crate::error::RingError;

/// Integral basis used for a real quadratic ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadForm {
    /// `Z[sqrt(d)]`, basis `{1, sqrt(d)}`.
    Sqrt,
    /// `Z[(1+sqrt(d))/2]`, basis `{1, (1+sqrt(d))/2}`, for `d = 1 mod 4`.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingFamily {
    Integers,
    RationalPolynomials,
    QuadraticIntegers,
}

/// Selects one of the supported rings.
///
/// Textual grammar: `Z`, `Q[x]`, `Zsqrt:<d>`, `Zhalf:<d>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    RationalPolynomials,
    QuadraticIntegers { d: u64, form: QuadForm },
}

/// Norm-Euclidean values of `d` accepted for `Z[sqrt(d)]`.
pub const SQRT_ALLOWLIST: [u64; 5] = [2, 3, 6, 7, 11];
/// Norm-Euclidean values of `d` accepted for `Z[(1+sqrt(d))/2]`.
pub const HALF_ALLOWLIST: [u64; 2] = [5, 13];

impl RingSpec {
    pub fn family(&self) -> RingFamily {
        match self {
            RingSpec::Integers => RingFamily::Integers,
            RingSpec::RationalPolynomials => RingFamily::RationalPolynomials,
            RingSpec::QuadraticIntegers { .. } => RingFamily::QuadraticIntegers,
        }
    }

    /// Checked constructor for a quadratic ring.
    pub fn quadratic(d: u64, form: QuadForm) -> Result<Self, RingError> {
        let allowed = match form {
            QuadForm::Sqrt => SQRT_ALLOWLIST.contains(&d),
            QuadForm::Half => HALF_ALLOWLIST.contains(&d),
        };
        if !allowed {
            let name = RingSpec::QuadraticIntegers { d, form };
            return Err(RingError::UnsupportedRing(format!(
                "{name} is outside the norm-Euclidean allowlist"
            )));
        }
        Ok(RingSpec::QuadraticIntegers { d, form })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::RationalPolynomials => f.write_str("Q[x]"),
            RingSpec::QuadraticIntegers {
                d,
                form: QuadForm::Sqrt,
            } => write!(f, "Zsqrt:{d}"),
            RingSpec::QuadraticIntegers {
                d,
                form: QuadForm::Half,
            } => write!(f, "Zhalf:{d}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" => return Ok(RingSpec::Integers),
            "Q[x]" => return Ok(RingSpec::RationalPolynomials),
            _ => {}
        }
        let (form, rest) = if let Some(rest) = s.strip_prefix("Zsqrt:") {
            (QuadForm::Sqrt, rest)
        } else if let Some(rest) = s.strip_prefix("Zhalf:") {
            (QuadForm::Half, rest)
        } else {
            return Err(RingError::UnsupportedRing(format!(
                "unknown ring {s:?}; expected Z, Q[x], Zsqrt:<d> or Zhalf:<d>"
            )));
        };
        let d: u64 = rest
            .parse()
            .map_err(|_| RingError::UnsupportedRing(format!("bad parameter d in {s:?}")))?;
        RingSpec::quadratic(d, form)
    }
}
