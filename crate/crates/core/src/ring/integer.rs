use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DivResult, EuclideanRing, Ring};
use crate::error::RingError;

/// The rational integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        self.is_unit(a).then(|| a.clone())
    }
}

impl EuclideanRing for Integers {
    fn euclidean_size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> Result<DivResult<BigInt>, RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (quotient, remainder) = a.div_mod_floor(b);
        Ok(DivResult {
            quotient,
            remainder,
        })
    }

    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }

    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return a.is_zero().then(BigInt::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

/// Prime factorization of a positive integer by trial division.
///
/// Intended for the small norms that occur in desk-scale computations.
pub fn factor_natural(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut k = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            k += 1;
        }
        if k > 0 {
            out.push((p.clone(), k));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

pub fn is_prime(n: &BigUint) -> bool {
    let f = factor_natural(n);
    f.len() == 1 && f[0].1 == 1
}

/// Factorization of a nonzero non-unit integer into canonical (positive) primes.
pub fn factor_integer(a: &BigInt) -> Result<Vec<(BigInt, u32)>, RingError> {
    if a.is_zero() {
        return Err(RingError::ZeroElement);
    }
    if a.magnitude().is_one() {
        return Err(RingError::UnitInput);
    }
    Ok(factor_natural(a.magnitude())
        .into_iter()
        .map(|(p, k)| (BigInt::from(p), k))
        .collect())
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{are_associated, gcd, valuation};

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn schoolbook_division() {
        let r = Integers.div_rem(&z(7), &z(3)).unwrap();
        assert_eq!((r.quotient, r.remainder), (z(2), z(1)));
        assert_eq!(
            Integers.div_rem(&z(7), &z(0)),
            Err(RingError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_is_nonnegative() {
        assert_eq!(gcd(&Integers, &z(12), &z(18)).unwrap(), z(6));
        assert_eq!(gcd(&Integers, &z(-12), &z(0)).unwrap(), z(12));
        assert_eq!(gcd(&Integers, &z(0), &z(0)), Err(RingError::BothZero));
    }

    #[test]
    fn association_and_valuation() {
        assert!(are_associated(&Integers, &z(3), &z(-3)));
        assert!(!are_associated(&Integers, &z(3), &z(6)));
        assert!(are_associated(&Integers, &z(0), &z(0)));
        assert_eq!(valuation(&Integers, &z(2), &z(12)).unwrap(), 2);
        assert_eq!(
            valuation(&Integers, &z(2), &z(0)),
            Err(RingError::ZeroElement)
        );
    }

    #[test]
    fn factors_six() {
        assert_eq!(factor_integer(&z(6)).unwrap(), vec![(z(2), 1), (z(3), 1)]);
        assert_eq!(
            factor_integer(&z(-360)).unwrap(),
            vec![(z(2), 3), (z(3), 2), (z(5), 1)]
        );
        assert_eq!(factor_integer(&z(-1)), Err(RingError::UnitInput));
    }
}
