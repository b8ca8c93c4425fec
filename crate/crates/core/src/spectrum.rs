//! Positivity on the real spectrum.
//!
//! For the supported rings the real spectrum is concrete: the single ordering
//! of `Z`, the points of the real line for `Q[x]`, and the two real embeddings
//! of a real quadratic ring. Everything is decided exactly.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{MatrixError, RingError};
use crate::matrix::{determinant, Matrix};
use crate::par::{map_range, Execution};
use crate::poly::{self, RatPoly, RationalPolynomials};
use crate::quadratic::{QuadElem, QuadraticIntegers};
use crate::ring::{EuclideanRing, Integers, Rationals, RingSpec};

/// Principal-minor PSD tests enumerate `2^n - 1` minors; larger inputs are refused.
pub const PSD_SIZE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embedding {
    Plus,
    Minus,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Embedding::Plus => "plus",
            Embedding::Minus => "minus",
        })
    }
}

/// A point of the real spectrum where some element is strictly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumPoint {
    /// The unique ordering of `Z`.
    Integers,
    /// Evaluation of `Q[x]` at a rational point.
    Point(BigRational),
    Embedding(Embedding),
}

/// A principal minor that is negative somewhere on the spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdWitness {
    /// Zero-based row (= column) indices of the principal minor.
    pub minor_rows: Vec<usize>,
    pub at: SpectrumPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdReport {
    pub is_psd: bool,
    pub witness: Option<PsdWitness>,
}

/// A ring that is one of the supported formally real principal rings.
pub trait RealRing: EuclideanRing {
    fn spec(&self) -> RingSpec;

    /// `a >= 0` at every point of the real spectrum.
    fn is_nonneg(&self, a: &Self::Elem) -> bool;

    /// Some point where `a < 0`, or `None` when `a` is nonnegative.
    fn negative_at(&self, a: &Self::Elem) -> Option<SpectrumPoint>;

    /// An associate of `a` that is nonnegative on the whole spectrum, if any.
    fn positive_associate(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, RingError>;

    /// Whether every non-real irreducible has an associate that is positive
    /// on the whole spectrum.
    fn pnri_holds(&self) -> bool;

    /// Short human-readable description of the sign behaviour of `a`.
    fn sign_summary(&self, a: &Self::Elem) -> String;
}

impl RealRing for Integers {
    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }

    fn is_nonneg(&self, a: &BigInt) -> bool {
        !a.is_negative()
    }

    fn negative_at(&self, a: &BigInt) -> Option<SpectrumPoint> {
        a.is_negative().then_some(SpectrumPoint::Integers)
    }

    fn positive_associate(&self, a: &BigInt) -> Result<Option<BigInt>, RingError> {
        if a.sign() == num_bigint::Sign::NoSign {
            return Err(RingError::ZeroElement);
        }
        Ok(Some(a.abs()))
    }

    /// Units are `+-1` and every nonzero prime has a finite residue field.
    fn pnri_holds(&self) -> bool {
        true
    }

    fn sign_summary(&self, a: &BigInt) -> String {
        match a.sign() {
            num_bigint::Sign::Minus => "-",
            num_bigint::Sign::NoSign => "0",
            num_bigint::Sign::Plus => "+",
        }
        .to_string()
    }
}

impl RealRing for RationalPolynomials {
    fn spec(&self) -> RingSpec {
        RingSpec::RationalPolynomials
    }

    fn is_nonneg(&self, a: &RatPoly) -> bool {
        poly::is_nonneg_on_reals(a)
    }

    fn negative_at(&self, a: &RatPoly) -> Option<SpectrumPoint> {
        poly::negative_point(a).map(SpectrumPoint::Point)
    }

    fn positive_associate(&self, a: &RatPoly) -> Result<Option<RatPoly>, RingError> {
        poly::positive_associate(a)
    }

    /// Non-real irreducibles of `Q[x]` have no real root, hence constant sign.
    fn pnri_holds(&self) -> bool {
        true
    }

    fn sign_summary(&self, a: &RatPoly) -> String {
        if a.is_zero() {
            "zero"
        } else if poly::is_nonneg_on_reals(a) {
            "nonnegative"
        } else if poly::is_nonneg_on_reals(&a.neg()) {
            "nonpositive"
        } else {
            "changes sign"
        }
        .to_string()
    }
}

impl RealRing for QuadraticIntegers {
    fn spec(&self) -> RingSpec {
        RingSpec::QuadraticIntegers {
            d: self.d(),
            form: self.form(),
        }
    }

    fn is_nonneg(&self, a: &QuadElem) -> bool {
        !self.sign_pattern(a).has_negative()
    }

    fn negative_at(&self, a: &QuadElem) -> Option<SpectrumPoint> {
        let sp = self.sign_pattern(a);
        if sp.at_plus < 0 {
            Some(SpectrumPoint::Embedding(Embedding::Plus))
        } else if sp.at_minus < 0 {
            Some(SpectrumPoint::Embedding(Embedding::Minus))
        } else {
            None
        }
    }

    fn positive_associate(&self, a: &QuadElem) -> Result<Option<QuadElem>, RingError> {
        QuadraticIntegers::positive_associate(self, a)
    }

    fn pnri_holds(&self) -> bool {
        QuadraticIntegers::pnri_holds(self)
    }

    fn sign_summary(&self, a: &QuadElem) -> String {
        self.sign_pattern(a).to_string()
    }
}

pub fn element_is_nonneg<R: RealRing>(ring: &R, a: &R::Elem) -> bool {
    ring.is_nonneg(a)
}

/// Index sets of all principal minors, by size then lexicographically.
fn principal_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| (0..n).combinations(k)).collect()
}

/// Row/column index set of a principal minor and its value.
type IndexedMinor<E> = (Vec<usize>, E);

fn principal_minors<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    exec: Execution,
) -> Result<Vec<IndexedMinor<R::Elem>>, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    if m.rows() > PSD_SIZE_LIMIT {
        return Err(MatrixError::SizeLimit {
            what: "principal-minor PSD test",
            size: m.rows(),
            limit: PSD_SIZE_LIMIT,
        });
    }
    let subsets = principal_subsets(m.rows());
    map_range(exec, subsets.len(), |i| {
        let s = &subsets[i];
        determinant(ring, &m.submatrix(s, s)).map(|det| (s.clone(), det))
    })
    .into_iter()
    .collect()
}

/// PSD on the real spectrum: every principal minor is nonnegative everywhere.
///
/// Minors commute with ring morphisms, so checking each minor's sign on the
/// spectrum is the same as testing every specialization of `M`.
pub fn is_psd_on_spectrum<R: RealRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
) -> Result<PsdReport, MatrixError> {
    is_psd_on_spectrum_with(ring, m, Execution::default())
}

pub fn is_psd_on_spectrum_with<R: RealRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    exec: Execution,
) -> Result<PsdReport, MatrixError> {
    let witness = principal_minors(ring, m, exec)?
        .into_iter()
        .find_map(|(rows, minor)| {
            ring.negative_at(&minor).map(|at| PsdWitness {
                minor_rows: rows,
                at,
            })
        });
    Ok(PsdReport {
        is_psd: witness.is_none(),
        witness,
    })
}

/// Exact PSD test for a symmetric rational matrix: all principal minors `>= 0`.
pub fn psd_exact_ordered(m: &Matrix<BigRational>) -> Result<bool, MatrixError> {
    Ok(principal_minors(&Rationals, m, Execution::Sequential)?
        .iter()
        .all(|(_, det)| !det.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn qmat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn elementwise_signs() {
        let r = QuadraticIntegers::sqrt(3).unwrap();
        assert!(element_is_nonneg(&r, &QuadElem::new(2, 1)));
        assert!(!element_is_nonneg(&r, &QuadElem::new(1, 1)));
        assert!(element_is_nonneg(
            &RationalPolynomials,
            &"x^2 + 1".parse().unwrap()
        ));
        assert!(!element_is_nonneg(&Integers, &BigInt::from(-1)));
    }

    #[test]
    fn rational_principal_minor_test() {
        assert!(!psd_exact_ordered(&qmat(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(psd_exact_ordered(&qmat(&[&[0, 0], &[0, 0]])).unwrap());
        assert!(psd_exact_ordered(&qmat(&[&[2, 1], &[1, 2]])).unwrap());
        // leading minors alone would accept this one
        assert!(!psd_exact_ordered(&qmat(&[&[0, 0], &[0, -1]])).unwrap());
        assert_eq!(
            psd_exact_ordered(&qmat(&[&[1, 2], &[3, 1]])),
            Err(MatrixError::NotSymmetric)
        );
        let big = Matrix::identity(&Rationals, 9);
        assert!(matches!(
            psd_exact_ordered(&big),
            Err(MatrixError::SizeLimit { .. })
        ));
    }

    #[test]
    fn integer_and_polynomial_psd() {
        let m = Matrix::diagonal(&Integers, 2, 2, &[BigInt::from(2), BigInt::from(3)]);
        assert!(is_psd_on_spectrum(&Integers, &m).unwrap().is_psd);

        let p = |s: &str| s.parse::<RatPoly>().unwrap();
        let m = Matrix::from_rows(vec![vec![p("x^2"), p("x")], vec![p("x"), p("1")]]).unwrap();
        assert!(is_psd_on_spectrum(&RationalPolynomials, &m).unwrap().is_psd);

        let m = Matrix::from_rows(vec![vec![p("x"), p("0")], vec![p("0"), p("1")]]).unwrap();
        let rep = is_psd_on_spectrum(&RationalPolynomials, &m).unwrap();
        assert!(!rep.is_psd);
        let w = rep.witness.unwrap();
        assert_eq!(w.minor_rows, vec![0]);
        let SpectrumPoint::Point(t) = w.at else {
            panic!("expected a point")
        };
        assert!(t.is_negative());
    }

    #[test]
    fn quadratic_psd_and_witness() {
        let r = QuadraticIntegers::sqrt(3).unwrap();
        let q = QuadElem::new(1, 1);
        let e = QuadElem::new(2, 1);
        let q2 = r.mul(&q, &q);
        let qe = r.mul(&q, &e);
        let m = Matrix::from_rows(vec![vec![q2.clone(), qe.clone()], vec![qe, r.mul(&q2, &e)]])
            .unwrap();
        assert!(is_psd_on_spectrum(&r, &m).unwrap().is_psd);

        let m = Matrix::diagonal(&r, 2, 2, &[q, r.one()]);
        let rep = is_psd_on_spectrum(&r, &m).unwrap();
        assert!(!rep.is_psd);
        assert_eq!(
            rep.witness,
            Some(PsdWitness {
                minor_rows: vec![0],
                at: SpectrumPoint::Embedding(Embedding::Minus)
            })
        );
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ])
        .unwrap();
        assert_eq!(
            is_psd_on_spectrum(&Integers, &m),
            Err(MatrixError::NotSymmetric)
        );
    }
}
