//! Ring-element contract shared by every supported ring family, together with
//! the generic Euclidean algorithms (gcd, association, valuation) built on it.

pub mod integer;
mod rational;
mod spec;

pub use integer::Integers;
pub use rational::Rationals;
pub use spec::{QuadForm, RingFamily, RingSpec, HALF_ALLOWLIST, SQRT_ALLOWLIST};

use std::fmt::Debug;

use num_bigint::BigUint;

use crate::error::RingError;

/// Quotient and remainder of a Euclidean division `a = b * quotient + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivResult<E> {
    pub quotient: E,
    pub remainder: E,
}

/// A commutative ring with identity whose elements are plain values.
///
/// The ring value itself is the context (for quadratic rings it carries `d`),
/// so element types stay small and arithmetic never needs global state.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Inverse of `a` when `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A Euclidean domain with a canonical representative in every association class.
pub trait EuclideanRing: Ring {
    /// Euclidean size: `|a|` for integers, degree for polynomials, `|N(a)|` for
    /// quadratic integers. Only meaningful for nonzero `a`.
    fn euclidean_size(&self, a: &Self::Elem) -> BigUint;

    /// Secondary pivot preference among elements of equal Euclidean size.
    fn pivot_cost(&self, _a: &Self::Elem) -> u64 {
        0
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> Result<DivResult<Self::Elem>, RingError>;

    /// Canonical associate of `a` and the unit `u` with `canonical = u * a`.
    /// Zero maps to `(0, 1)`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        self.normalize(a).0
    }

    /// `a / b` when `b` divides `a` exactly.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) {
                Some(self.zero())
            } else {
                None
            };
        }
        let DivResult {
            quotient,
            remainder,
        } = self.div_rem(a, b).ok()?;
        self.is_zero(&remainder).then_some(quotient)
    }

    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        self.exact_div(a, b).is_some()
    }
}

/// Euclidean division with the ring's remainder rule.
pub fn euclidean_div<R: EuclideanRing>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<DivResult<R::Elem>, RingError> {
    ring.div_rem(a, b)
}

/// Canonical generator of the ideal `(a, b)`.
pub fn gcd<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem, RingError> {
    if ring.is_zero(a) && ring.is_zero(b) {
        return Err(RingError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !ring.is_zero(&y) {
        let r = ring.div_rem(&x, &y)?.remainder;
        x = y;
        y = r;
    }
    Ok(ring.canonical(&x))
}

/// gcd that maps `(0, 0)` to `0` instead of failing; handy for folds.
pub fn gcd_or_zero<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    gcd(ring, a, b).unwrap_or_else(|_| ring.zero())
}

/// True iff `a = u * b` for some unit `u`.
pub fn are_associated<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> bool {
    match (ring.is_zero(a), ring.is_zero(b)) {
        (true, true) => true,
        (false, false) => ring.canonical(a) == ring.canonical(b),
        _ => false,
    }
}

/// Largest `k` with `p^k | a`. `p` is taken to be irreducible.
pub fn valuation<R: EuclideanRing>(ring: &R, p: &R::Elem, a: &R::Elem) -> Result<u32, RingError> {
    if ring.is_zero(a) || ring.is_zero(p) {
        return Err(RingError::ZeroElement);
    }
    if ring.is_unit(p) {
        return Err(RingError::UnitInput);
    }
    let mut k = 0;
    let mut rest = a.clone();
    while let Some(q) = ring.exact_div(&rest, p) {
        rest = q;
        k += 1;
    }
    Ok(k)
}
