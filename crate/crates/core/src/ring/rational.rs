use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DivResult, EuclideanRing, Ring};
use crate::error::RingError;

/// The field of rationals, viewed as a (trivially) Euclidean ring.
///
/// Not selectable through `RingSpec`; it exists so that exact PSD tests on
/// rational matrices can reuse the generic determinant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl EuclideanRing for Rationals {
    fn euclidean_size(&self, _a: &BigRational) -> BigUint {
        BigUint::zero()
    }

    fn div_rem(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> Result<DivResult<BigRational>, RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(DivResult {
            quotient: a / b,
            remainder: BigRational::zero(),
        })
    }

    fn normalize(&self, a: &BigRational) -> (BigRational, BigRational) {
        if a.is_zero() {
            (BigRational::zero(), BigRational::one())
        } else {
            (BigRational::one(), a.recip())
        }
    }
}
