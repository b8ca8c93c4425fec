//! Real quadratic integer rings `Z[sqrt(d)]` and `Z[(1+sqrt(d))/2]`.
//!
//! Elements are stored as integer coordinates `(x, y)` in the basis `{1, w}`
//! where `w = sqrt(d)` or `w = (1+sqrt(d))/2`. Signs under the two real
//! embeddings are decided exactly by comparing squares, so nothing in here
//! ever touches floating point.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ParseError, RingError};
use crate::poly::parse_rational;
use crate::ring::integer::{exact_sqrt, factor_natural, is_prime};
use crate::ring::{gcd, DivResult, EuclideanRing, QuadForm, Ring, RingSpec};

/// `x + y*w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadElem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadElem {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn int(x: impl Into<BigInt>) -> Self {
        Self::new(x, 0)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_negative() {
            write!(f, "{}-{}w", self.x, -&self.y)
        } else {
            write!(f, "{}+{}w", self.x, self.y)
        }
    }
}

/// Splits `"<x>+<y>w"` and its shorthands into coordinate texts.
fn split_coords(s: &str) -> (String, String) {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = compact.strip_suffix('w') else {
        return (compact, "0".into());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (x_part, y_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let y = match y_part {
        "" | "+" => "1",
        "-" => "-1",
        t => t.trim_start_matches('+'),
    };
    (x_part.to_string(), y.to_string())
}

/// Parses `"<x>+<y>w"` and the usual shorthands (`"5"`, `"w"`, `"-2w"`, `"1-w"`).
pub fn parse_quad(s: &str) -> Result<QuadElem, ParseError> {
    let bad = || ParseError::new("", format!("invalid quadratic integer {s:?}"));
    let (x, y) = split_coords(s);
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| bad());
    Ok(QuadElem::new(int(&x)?, int(&y)?))
}

/// Signs of an element under `sqrt(d) -> +sqrt(d)` and `sqrt(d) -> -sqrt(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    pub at_plus: i8,
    pub at_minus: i8,
}

impl SignPattern {
    pub const POS_POS: SignPattern = SignPattern {
        at_plus: 1,
        at_minus: 1,
    };

    pub fn new(at_plus: i8, at_minus: i8) -> Self {
        SignPattern { at_plus, at_minus }
    }

    pub fn product(self, other: SignPattern) -> SignPattern {
        SignPattern::new(self.at_plus * other.at_plus, self.at_minus * other.at_minus)
    }

    pub fn has_negative(self) -> bool {
        self.at_plus < 0 || self.at_minus < 0
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: i8| match s.cmp(&0) {
            Ordering::Less => '-',
            Ordering::Equal => '0',
            Ordering::Greater => '+',
        };
        write!(f, "({},{})", c(self.at_plus), c(self.at_minus))
    }
}

/// Generator of the free part of the unit group, normalized to be `> 1`
/// under the plus embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub unit: QuadElem,
    pub norm: BigInt,
}

/// The ring of integers of `Q(sqrt(d))` for an allowlisted `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticIntegers {
    d: u64,
    form: QuadForm,
    /// `(d-1)/4` for the half form, so that `w^2 = w + m`.
    m: BigInt,
    unit: FundamentalUnit,
    unit_inv: QuadElem,
}

fn sign_int(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sign of `a + b*sqrt(d)`, decided exactly.
fn sign_surd(a: &BigInt, b: &BigInt, d: u64) -> i8 {
    let (sa, sb) = (sign_int(a), sign_int(b));
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * BigInt::from(d))) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Nearest integer to `num/den`, ties broken toward zero.
fn round_nearest(num: &BigInt, den: &BigInt) -> BigInt {
    let (num, den) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    let (q, r) = num.div_mod_floor(&den);
    let twice: BigInt = &r * 2;
    match twice.cmp(&den) {
        Ordering::Greater => q + 1,
        Ordering::Less => q,
        Ordering::Equal if q.is_negative() => q + 1,
        Ordering::Equal => q,
    }
}

impl QuadraticIntegers {
    pub fn new(spec: RingSpec) -> Result<Self, RingError> {
        let RingSpec::QuadraticIntegers { d, form } = spec else {
            return Err(RingError::UnsupportedRing(format!(
                "{spec} is not a quadratic ring"
            )));
        };
        // re-validate against the allowlist
        RingSpec::quadratic(d, form)?;
        let m = match form {
            QuadForm::Sqrt => BigInt::zero(),
            QuadForm::Half => BigInt::from((d - 1) / 4),
        };
        let unit = pell_search(d, form);
        let mut ring = QuadraticIntegers {
            d,
            form,
            m,
            unit_inv: QuadElem::int(1),
            unit: unit.clone(),
        };
        ring.unit_inv = ring.scale(&ring.conjugate(&unit.unit), &unit.norm);
        Ok(ring)
    }

    pub fn sqrt(d: u64) -> Result<Self, RingError> {
        Self::new(RingSpec::quadratic(d, QuadForm::Sqrt)?)
    }

    pub fn half(d: u64) -> Result<Self, RingError> {
        Self::new(RingSpec::quadratic(d, QuadForm::Half)?)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn form(&self) -> QuadForm {
        self.form
    }

    pub fn elem(&self, x: i64, y: i64) -> QuadElem {
        QuadElem::new(x, y)
    }

    fn scale(&self, a: &QuadElem, c: &BigInt) -> QuadElem {
        QuadElem::new(&a.x * c, &a.y * c)
    }

    /// Image under `sqrt(d) -> -sqrt(d)`.
    pub fn conjugate(&self, a: &QuadElem) -> QuadElem {
        match self.form {
            QuadForm::Sqrt => QuadElem::new(a.x.clone(), -&a.y),
            // conj(w) = 1 - w
            QuadForm::Half => QuadElem::new(&a.x + &a.y, -&a.y),
        }
    }

    pub fn norm(&self, a: &QuadElem) -> BigInt {
        match self.form {
            QuadForm::Sqrt => &a.x * &a.x - &a.y * &a.y * BigInt::from(self.d),
            QuadForm::Half => &a.x * &a.x + &a.x * &a.y - &self.m * &a.y * &a.y,
        }
    }

    pub fn trace(&self, a: &QuadElem) -> BigInt {
        match self.form {
            QuadForm::Sqrt => &a.x * 2,
            QuadForm::Half => &a.x * 2 + &a.y,
        }
    }

    /// `(A, B)` with `a = (A + B*sqrt(d)) / k` for a positive constant `k`.
    fn surd_coords(&self, a: &QuadElem) -> (BigInt, BigInt) {
        match self.form {
            QuadForm::Sqrt => (a.x.clone(), a.y.clone()),
            QuadForm::Half => (&a.x * 2 + &a.y, a.y.clone()),
        }
    }

    pub fn sign_pattern(&self, a: &QuadElem) -> SignPattern {
        let (p, q) = self.surd_coords(a);
        SignPattern::new(sign_surd(&p, &q, self.d), sign_surd(&p, &(-&q), self.d))
    }

    /// Coordinate height: proportional to the sum of the squares of both
    /// embeddings, hence strictly convex along any orbit `u^k * a`.
    pub fn height(&self, a: &QuadElem) -> BigInt {
        let (p, q) = self.surd_coords(a);
        &p * &p + &q * &q * BigInt::from(self.d)
    }

    pub fn fundamental_unit(&self) -> &FundamentalUnit {
        &self.unit
    }

    /// `(N(u) = -1)`: some unit separates the two real embeddings.
    pub fn pnri_holds(&self) -> bool {
        self.unit.norm.is_negative()
    }

    /// Sign patterns realized by units.
    pub fn achievable_sign_patterns(&self) -> BTreeSet<SignPattern> {
        let one = self.one();
        let u = self.unit.unit.clone();
        [one.clone(), self.neg(&one), u.clone(), self.neg(&u)]
            .iter()
            .map(|e| self.sign_pattern(e))
            .collect()
    }

    pub fn unit_power(&self, k: i64) -> QuadElem {
        let base = if k < 0 {
            &self.unit_inv
        } else {
            &self.unit.unit
        };
        self.pow(base, k.unsigned_abs() as u32)
    }

    /// Walks `start * step^k` to the element of least height; ties go to the
    /// larger `(x, y)`.
    /// Returns the element together with the accumulated unit factor.
    fn min_height_on_orbit(
        &self,
        start: &QuadElem,
        step: &QuadElem,
        step_inv: &QuadElem,
    ) -> (QuadElem, QuadElem) {
        let key = |e: &QuadElem| (self.height(e), -&e.x, -&e.y);
        let mut cur = start.clone();
        let mut factor = self.one();
        for s in [step, step_inv] {
            loop {
                let next = self.mul(&cur, s);
                if self.height(&next) >= self.height(&cur) {
                    break;
                }
                cur = next;
                factor = self.mul(&factor, s);
            }
        }
        // height is strictly convex along the orbit, so a tie can only sit next door
        let mut best = (cur.clone(), factor.clone());
        for s in [step_inv, step] {
            let cand = (self.mul(&cur, s), self.mul(&factor, s));
            if key(&cand.0) < key(&best.0) {
                best = cand;
            }
        }
        best
    }

    /// Least-height associate that is strictly positive under both embeddings.
    pub fn positive_associate(&self, a: &QuadElem) -> Result<Option<QuadElem>, RingError> {
        if self.is_zero(a) {
            return Err(RingError::ZeroElement);
        }
        let lead = BigInt::from(self.sign_pattern(a).at_plus);
        let mut start = self.scale(a, &lead);
        if self.sign_pattern(&start).at_minus < 0 {
            if !self.pnri_holds() {
                return Ok(None);
            }
            start = self.mul(&start, &self.unit.unit);
        }
        let (step, step_inv) = self.even_step();
        Ok(Some(self.min_height_on_orbit(&start, &step, &step_inv).0))
    }

    /// Smallest unit `> 1` whose pattern is `(+,+)`.
    fn even_step(&self) -> (QuadElem, QuadElem) {
        if self.pnri_holds() {
            (self.unit_power(2), self.unit_power(-2))
        } else {
            (self.unit.unit.clone(), self.unit_inv.clone())
        }
    }

    /// Preferred face of an irreducible: the `(+,+)` associate when one exists,
    /// else the ordinary canonical associate.
    pub fn canonical_irreducible(&self, p: &QuadElem) -> QuadElem {
        match self.positive_associate(p) {
            Ok(Some(e)) => e,
            _ => self.canonical(p),
        }
    }

    /// A root of the minimal polynomial of `w` modulo the rational prime `p`.
    fn root_mod(&self, p: &BigUint) -> Option<BigInt> {
        let p = BigInt::from(p.clone());
        let limit = p.to_u64().expect("desk-scale prime");
        (0..limit).map(BigInt::from).find(|t| {
            let v = match self.form {
                QuadForm::Sqrt => t * t - BigInt::from(self.d),
                QuadForm::Half => t * t - t - &self.m,
            };
            (v % &p).is_zero()
        })
    }

    /// True iff the rational prime `p` stays prime in this ring.
    pub fn is_inert(&self, p: &BigUint) -> bool {
        self.root_mod(p).is_none()
    }

    /// Irreducibles lying over the rational prime `p` (one or two).
    fn primes_over(&self, p: &BigUint) -> Vec<QuadElem> {
        let pe = QuadElem::int(BigInt::from(p.clone()));
        let Some(t) = self.root_mod(p) else {
            return vec![pe];
        };
        let pi = gcd(self, &pe, &QuadElem::new(-t, 1)).expect("nonzero");
        let pi_bar = self.conjugate(&pi);
        if crate::ring::are_associated(self, &pi, &pi_bar) {
            vec![pi]
        } else {
            vec![pi, pi_bar]
        }
    }

    /// `|N(p)|` prime, or `|N(p)| = q^2` with `q` an inert rational prime.
    pub fn is_certified_irreducible(&self, p: &QuadElem) -> bool {
        let n = self.norm(p).magnitude().clone();
        if is_prime(&n) {
            return true;
        }
        match exact_sqrt(&BigInt::from(n)) {
            Some(q) => {
                let q = q.magnitude().clone();
                is_prime(&q) && self.is_inert(&q)
            }
            None => false,
        }
    }

    /// Factorization into canonical irreducibles; the product equals `a` up to a unit.
    pub fn factor(&self, a: &QuadElem) -> Result<Vec<(QuadElem, u32)>, RingError> {
        if self.is_zero(a) {
            return Err(RingError::ZeroElement);
        }
        if self.is_unit(a) {
            return Err(RingError::UnitInput);
        }
        let mut rest = a.clone();
        let mut out = Vec::new();
        for (p, _) in factor_natural(self.norm(a).magnitude()) {
            for pi in self.primes_over(&p) {
                let mut k = 0;
                while let Some(q) = self.exact_div(&rest, &pi) {
                    rest = q;
                    k += 1;
                }
                if k > 0 {
                    out.push((self.canonical_irreducible(&pi), k));
                }
            }
        }
        debug_assert!(self.is_unit(&rest));
        Ok(out)
    }

    /// Every nonzero prime of a ring of integers has a finite residue field,
    /// which is never formally real.
    pub fn is_real_prime(&self, _p: &QuadElem) -> bool {
        false
    }
}

/// Ascending search for the least solution of the norm equation.
fn pell_search(d: u64, form: QuadForm) -> FundamentalUnit {
    let d_big = BigInt::from(d);
    for y in 1u64.. {
        let y_big = BigInt::from(y);
        let dy2 = &d_big * &y_big * &y_big;
        // Sqrt form: x^2 = d y^2 +- 1. Half form: (2x+y)^2 = d y^2 +- 4.
        let delta = match form {
            QuadForm::Sqrt => BigInt::one(),
            QuadForm::Half => BigInt::from(4),
        };
        let mut hits: Vec<(BigInt, BigInt)> = [(-1i64, &dy2 - &delta), (1, &dy2 + &delta)]
            .into_iter()
            .filter_map(|(n, v)| exact_sqrt(&v).map(|r| (r, BigInt::from(n))))
            .collect();
        hits.sort();
        if let Some((r, norm)) = hits.into_iter().next() {
            let unit = match form {
                QuadForm::Sqrt => QuadElem::new(r, y_big),
                QuadForm::Half => QuadElem::new((r - &y_big) / 2, y_big),
            };
            return FundamentalUnit { unit, norm };
        }
    }
    unreachable!("the norm equation always has a solution")
}

impl Ring for QuadraticIntegers {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::int(0)
    }
    fn one(&self) -> QuadElem {
        QuadElem::int(1)
    }
    fn from_i64(&self, v: i64) -> QuadElem {
        QuadElem::int(v)
    }
    fn is_zero(&self, a: &QuadElem) -> bool {
        a.x.is_zero() && a.y.is_zero()
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem::new(&a.x + &b.x, &a.y + &b.y)
    }
    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem::new(&a.x - &b.x, &a.y - &b.y)
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let yy = &a.y * &b.y;
        match self.form {
            QuadForm::Sqrt => QuadElem::new(
                &a.x * &b.x + &yy * BigInt::from(self.d),
                &a.x * &b.y + &a.y * &b.x,
            ),
            QuadForm::Half => {
                QuadElem::new(&a.x * &b.x + &self.m * &yy, &a.x * &b.y + &a.y * &b.x + &yy)
            }
        }
    }
    fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem::new(-&a.x, -&a.y)
    }
    fn is_unit(&self, a: &QuadElem) -> bool {
        self.norm(a).magnitude().is_one()
    }
    fn unit_inverse(&self, a: &QuadElem) -> Option<QuadElem> {
        let n = self.norm(a);
        n.magnitude()
            .is_one()
            .then(|| self.scale(&self.conjugate(a), &n))
    }
}

impl EuclideanRing for QuadraticIntegers {
    fn euclidean_size(&self, a: &QuadElem) -> BigUint {
        self.norm(a).magnitude().clone()
    }

    /// Rounds the coordinates of `a/b` to the nearest integers (ties toward
    /// zero). For `d` in {6, 7, 11} that alone can leave a remainder that is too
    /// large, so nearby lattice points are then searched for the smallest one.
    fn div_rem(&self, a: &QuadElem, b: &QuadElem) -> Result<DivResult<QuadElem>, RingError> {
        if self.is_zero(b) {
            return Err(RingError::DivisionByZero);
        }
        let nb = self.norm(b);
        let size_b = nb.magnitude().clone();
        let num = self.mul(a, &self.conjugate(b));
        let q0 = QuadElem::new(round_nearest(&num.x, &nb), round_nearest(&num.y, &nb));
        let rem_of = |q: &QuadElem| self.sub(a, &self.mul(b, q));
        let r0 = rem_of(&q0);
        if self.is_zero(&r0) || self.euclidean_size(&r0) < size_b {
            return Ok(DivResult {
                quotient: q0,
                remainder: r0,
            });
        }
        let mut best: Option<(BigUint, QuadElem, QuadElem)> = None;
        for dy in -3i64..=3 {
            for dx in -6i64..=6 {
                let q = QuadElem::new(&q0.x + dx, &q0.y + dy);
                let r = rem_of(&q);
                let size = self.euclidean_size(&r);
                if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
                    best = Some((size, q, r));
                }
            }
        }
        match best {
            Some((size, quotient, remainder)) if size < size_b => Ok(DivResult {
                quotient,
                remainder,
            }),
            _ => Err(RingError::EuclideanFailure),
        }
    }

    /// Plus-embedding positive associate of least height.
    fn normalize(&self, a: &QuadElem) -> (QuadElem, QuadElem) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        let s = BigInt::from(self.sign_pattern(a).at_plus);
        let start = self.scale(a, &s);
        let (e, f) = self.min_height_on_orbit(&start, &self.unit.unit, &self.unit_inv);
        (e, self.scale(&f, &s))
    }

    fn exact_div(&self, a: &QuadElem, b: &QuadElem) -> Option<QuadElem> {
        if self.is_zero(b) {
            return self.is_zero(a).then(|| self.zero());
        }
        let nb = self.norm(b);
        let num = self.mul(a, &self.conjugate(b));
        let (qx, rx) = num.x.div_rem(&nb);
        let (qy, ry) = num.y.div_rem(&nb);
        (rx.is_zero() && ry.is_zero()).then(|| QuadElem::new(qx, qy))
    }
}

/// Element `x + y*sqrt(d)` of the field `Q(sqrt(d))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdFieldElem {
    pub x: BigRational,
    pub y: BigRational,
}

impl SurdFieldElem {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        SurdFieldElem { x, y }
    }

    pub fn rational(x: BigRational) -> Self {
        SurdFieldElem::new(x, BigRational::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        SurdFieldElem::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        SurdFieldElem::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn mul(&self, o: &Self, d: u64) -> Self {
        let d = BigRational::from_integer(BigInt::from(d));
        SurdFieldElem::new(
            &self.x * &o.x + &self.y * &o.y * d,
            &self.x * &o.y + &self.y * &o.x,
        )
    }

    /// Parses `"<x>+<y>w"` with rational coordinates in the basis `{1, w}` of `ring`.
    pub fn parse(s: &str, ring: &QuadraticIntegers) -> Result<Self, ParseError> {
        let (x, y) = split_coords(s);
        let x =
            parse_rational(&x).map_err(|e| ParseError::new("", format!("{s:?}: {}", e.message)))?;
        let y =
            parse_rational(&y).map_err(|e| ParseError::new("", format!("{s:?}: {}", e.message)))?;
        Ok(match ring.form {
            QuadForm::Sqrt => SurdFieldElem::new(x, y),
            // w = 1/2 + sqrt(d)/2
            QuadForm::Half => {
                let half = &y / BigRational::from_integer(2.into());
                SurdFieldElem::new(x + &half, half)
            }
        })
    }

    /// Coordinates in the ring's integral basis, when integral.
    pub fn to_integral(&self, ring: &QuadraticIntegers) -> Option<QuadElem> {
        let (x, y) = match ring.form {
            QuadForm::Sqrt => (self.x.clone(), self.y.clone()),
            // x + y sqrt(d) = (x - y) + 2y w
            QuadForm::Half => (
                &self.x - &self.y,
                &self.y * BigRational::from_integer(2.into()),
            ),
        };
        (x.is_integer() && y.is_integer()).then(|| QuadElem::new(x.to_integer(), y.to_integer()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{are_associated, valuation};

    fn z3() -> QuadraticIntegers {
        QuadraticIntegers::sqrt(3).unwrap()
    }
    fn z2() -> QuadraticIntegers {
        QuadraticIntegers::sqrt(2).unwrap()
    }
    fn e(x: i64, y: i64) -> QuadElem {
        QuadElem::new(x, y)
    }

    #[test]
    fn field_elements_parse_in_the_ring_basis() {
        let f = SurdFieldElem::parse("7/2+2w", &z3()).unwrap();
        assert_eq!(
            f,
            SurdFieldElem::new(
                BigRational::new(7.into(), 2.into()),
                BigRational::from_integer(2.into())
            )
        );
        assert_eq!(f.to_integral(&z3()), None);
        let h = QuadraticIntegers::half(5).unwrap();
        let w = SurdFieldElem::parse("w", &h).unwrap();
        assert_eq!(w.to_integral(&h), Some(e(0, 1)));
        assert_eq!(
            SurdFieldElem::parse("3", &z3()).unwrap().to_integral(&z3()),
            Some(e(3, 0))
        );
        assert!(SurdFieldElem::parse("1/0", &z3()).is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(z3().conjugate(&e(1, 1)), e(1, -1));
        assert_eq!(z3().conjugate(&e(5, 0)), e(5, 0));
        let h5 = QuadraticIntegers::half(5).unwrap();
        assert_eq!(h5.conjugate(&e(0, 1)), e(1, -1));
    }

    #[test]
    fn norms() {
        assert_eq!(z3().norm(&e(1, 1)), BigInt::from(-2));
        assert_eq!(z3().norm(&e(2, 1)), BigInt::from(1));
        assert_eq!(z2().norm(&e(1, 1)), BigInt::from(-1));
        let h5 = QuadraticIntegers::half(5).unwrap();
        assert_eq!(h5.norm(&e(0, 1)), BigInt::from(-1));
    }

    #[test]
    fn sign_patterns() {
        assert_eq!(z3().sign_pattern(&e(1, 1)), SignPattern::new(1, -1));
        assert_eq!(z3().sign_pattern(&e(2, 1)), SignPattern::new(1, 1));
        assert_eq!(z3().sign_pattern(&e(0, 0)), SignPattern::new(0, 0));
        assert_eq!(z3().sign_pattern(&e(-2, 1)), SignPattern::new(-1, -1));
        let h5 = QuadraticIntegers::half(5).unwrap();
        // (1 - sqrt 5)/2 < 0 at plus
        assert_eq!(h5.sign_pattern(&e(1, -1)), SignPattern::new(-1, 1));
    }

    #[test]
    fn fundamental_units() {
        let cases = [
            ("Zsqrt:2", (1, 1), -1),
            ("Zsqrt:3", (2, 1), 1),
            ("Zsqrt:6", (5, 2), 1),
            ("Zsqrt:7", (8, 3), 1),
            ("Zsqrt:11", (10, 3), 1),
            ("Zhalf:5", (0, 1), -1),
            ("Zhalf:13", (1, 1), -1),
        ];
        for (s, (x, y), n) in cases {
            let r = QuadraticIntegers::new(s.parse().unwrap()).unwrap();
            assert_eq!(r.fundamental_unit().unit, e(x, y), "{s}");
            assert_eq!(r.fundamental_unit().norm, BigInt::from(n), "{s}");
            assert_eq!(r.pnri_holds(), n == -1, "{s}");
        }
    }

    #[test]
    fn division_example() {
        let r = z2();
        let res = r.div_rem(&e(5, 1), &e(1, 1)).unwrap();
        assert_eq!(res.remainder, e(0, 0));
        // (5 + sqrt2)(1 - sqrt2)/(-1) = (5 - 5 sqrt2 + sqrt2 - 2)/(-1) = -3 + 4 sqrt2
        assert_eq!(res.quotient, e(-3, 4));
        assert_eq!(
            r.add(&r.mul(&e(1, 1), &res.quotient), &res.remainder),
            e(5, 1)
        );
        assert_eq!(
            r.div_rem(&e(1, 0), &e(0, 0)),
            Err(RingError::DivisionByZero)
        );
    }

    #[test]
    fn rounding_ties_toward_zero() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(round_nearest(&b(3), &b(2)), b(1));
        assert_eq!(round_nearest(&b(-3), &b(2)), b(-1));
        assert_eq!(round_nearest(&b(-1), &b(2)), b(0));
        assert_eq!(round_nearest(&b(5), &b(3)), b(2));
        assert_eq!(round_nearest(&b(5), &b(-3)), b(-2));
    }

    /// Every point of a fine rational grid must admit a quotient leaving a
    /// remainder of norm < 1 within the searched window.
    #[test]
    fn division_window_covers_fundamental_domain() {
        for spec in [
            "Zsqrt:2", "Zsqrt:3", "Zsqrt:6", "Zsqrt:7", "Zsqrt:11", "Zhalf:5", "Zhalf:13",
        ] {
            let r = QuadraticIntegers::new(spec.parse().unwrap()).unwrap();
            let den = 66i64;
            // a/b = (s + t w)/den with b = den
            for s in 0..den {
                for t in 0..den {
                    let a = e(s, t);
                    let b = e(den, 0);
                    let res = r.div_rem(&a, &b).unwrap();
                    assert!(
                        r.euclidean_size(&res.remainder) < r.euclidean_size(&b),
                        "{spec} {s} {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn gcd_and_association() {
        let r = z3();
        assert_eq!(gcd(&r, &e(1, 1), &e(2, 1)).unwrap(), e(1, 0));
        let q = e(1, 1);
        let qe = r.mul(&q, &e(2, 1));
        assert!(are_associated(&r, &q, &qe));
        assert!(!are_associated(&r, &q, &e(2, 0)));
    }

    #[test]
    fn valuation_of_planted_power() {
        let r = z3();
        let q = e(1, 1);
        let a = r.mul(&r.mul(&q, &q), &e(5, 0));
        assert_eq!(a, e(20, 10));
        assert_eq!(valuation(&r, &q, &a).unwrap(), 2);
    }

    #[test]
    fn positive_associates() {
        let r = z3();
        let pa = r.positive_associate(&e(-5, 0)).unwrap().unwrap();
        assert_eq!(pa, e(5, 0));
        assert_eq!(r.positive_associate(&e(1, 1)).unwrap(), None);
        let r2 = z2();
        let pa = r2.positive_associate(&e(1, -1)).unwrap().unwrap();
        assert_eq!(r2.sign_pattern(&pa), SignPattern::POS_POS);
        assert!(are_associated(&r2, &pa, &e(1, -1)));
        assert_eq!(pa, e(1, 0));
        assert_eq!(r.positive_associate(&e(0, 0)), Err(RingError::ZeroElement));
    }

    #[test]
    fn achievable_patterns() {
        assert_eq!(z2().achievable_sign_patterns().len(), 4);
        let p3 = z3().achievable_sign_patterns();
        assert_eq!(
            p3,
            [SignPattern::new(1, 1), SignPattern::new(-1, -1)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn factorization() {
        let r2 = z2();
        let f = r2.factor(&e(2, 0)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].1, 2);
        assert!(are_associated(&r2, &f[0].0, &e(0, 1)));

        let r = z3();
        let f = r.factor(&e(1, 1)).unwrap();
        assert_eq!(f.len(), 1);
        assert!(are_associated(&r, &f[0].0, &e(1, 1)));
        assert_eq!(f[0].1, 1);

        // 3 is inert in Z[sqrt 2]
        let f = r2.factor(&e(3, 0)).unwrap();
        assert_eq!(f, vec![(e(3, 0), 1)]);
        assert!(r2.is_certified_irreducible(&e(3, 0)));
        assert!(!r2.is_certified_irreducible(&e(7, 0)));

        assert_eq!(r.factor(&e(2, 1)), Err(RingError::UnitInput));
        assert_eq!(r.factor(&e(0, 0)), Err(RingError::ZeroElement));
    }

    #[test]
    fn real_primes_never_exist() {
        assert!(!z3().is_real_prime(&e(1, 1)));
        assert!(!z2().is_real_prime(&e(0, 1)));
    }

    #[test]
    fn textual_form() {
        assert_eq!(e(1, 1).to_string(), "1+1w");
        assert_eq!(e(3, -2).to_string(), "3-2w");
        for (s, v) in [
            ("1+1w", e(1, 1)),
            ("3-2w", e(3, -2)),
            ("5", e(5, 0)),
            ("w", e(0, 1)),
            ("-w", e(0, -1)),
            ("-4+w", e(-4, 1)),
            ("-7-12w", e(-7, -12)),
            (" 2 + 3w ", e(2, 3)),
        ] {
            assert_eq!(parse_quad(s).unwrap(), v, "{s}");
        }
        assert!(parse_quad("1/2").is_err());
        assert!(parse_quad("1+2v").is_err());
    }

    #[test]
    fn surd_field_integrality() {
        let half = BigRational::new(1.into(), 2.into());
        let r = z3();
        assert_eq!(SurdFieldElem::rational(half.clone()).to_integral(&r), None);
        let h5 = QuadraticIntegers::half(5).unwrap();
        // (1 + sqrt 5)/2 = w
        assert_eq!(
            SurdFieldElem::new(half.clone(), half).to_integral(&h5),
            Some(e(0, 1))
        );
    }
}
