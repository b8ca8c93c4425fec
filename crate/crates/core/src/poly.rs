//! Dense univariate polynomials over the rationals.
//!
//! Besides ring arithmetic this module hosts the exact real-algebraic tools the
//! positivity checks need: Sturm chains, real-root counting, square-free
//! decomposition and the nonnegativity test on the real line.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ParseError, RingError};
use crate::ring::integer::factor_natural;
use crate::ring::{DivResult, EuclideanRing, Ring};

/// Polynomial with rational coefficients, constant term first.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Polynomial long division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), RingError> {
        let dd = divisor.degree().ok_or(RingError::DivisionByZero)?;
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Sign of the leading term as `x -> +inf`.
    fn sign_at_pos_inf(&self) -> i8 {
        sign(&self.leading_coeff())
    }

    /// Sign of the leading term as `x -> -inf`: leading coefficient times `(-1)^deg`.
    fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        match self.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }

    /// Smallest integer bound `B` with every real root in `(-B, B)`.
    fn cauchy_bound(&self) -> BigRational {
        let lc = self.leading_coeff().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        (max + BigRational::one()).ceil() + BigRational::one()
    }
}

fn sign(c: &BigRational) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain `p, p', -rem(p, p'), ...` ending at the last nonzero remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    pub chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Result<Self, RingError> {
        if p.is_zero() {
            return Err(RingError::ZeroPolynomial);
        }
        let mut chain = vec![p.clone()];
        let dp = p.derivative();
        if dp.is_zero() {
            return Ok(SturmChain { chain });
        }
        chain.push(dp);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Ok(SturmChain { chain })
    }

    pub fn variations_at(&self, t: &BigRational) -> usize {
        sign_variations(self.chain.iter().map(|q| sign(&q.eval(t))))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        sign_variations(self.chain.iter().map(RatPoly::sign_at_neg_inf))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        sign_variations(self.chain.iter().map(RatPoly::sign_at_pos_inf))
    }

    /// Distinct roots on the whole line.
    pub fn total_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots in `(lo, hi]`; neither endpoint may be a root.
    pub fn roots_between(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }
}

pub fn sturm_chain(p: &RatPoly) -> Result<SturmChain, RingError> {
    SturmChain::new(p)
}

pub fn is_squarefree(p: &RatPoly) -> bool {
    !p.is_zero() && p.gcd(&p.derivative()).is_constant()
}

/// Number of distinct real roots of a square-free polynomial.
pub fn count_real_roots(p: &RatPoly) -> Result<usize, RingError> {
    if p.is_zero() {
        return Err(RingError::ZeroPolynomial);
    }
    if !is_squarefree(p) {
        return Err(RingError::NotSquareFree);
    }
    Ok(SturmChain::new(p)?.total_roots())
}

/// `p = constant * prod(factor_i ^ multiplicity_i)` with monic, square-free,
/// pairwise coprime factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub constant: BigRational,
    pub factors: Vec<(RatPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.constant.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m))
            })
    }

    /// Product of the factors of odd multiplicity.
    pub fn odd_part(&self) -> RatPoly {
        self.factors
            .iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(RatPoly::one(), |acc, (f, _)| acc.mul(f))
    }
}

/// Yun's square-free decomposition.
pub fn squarefree_decomposition(p: &RatPoly) -> Result<SquarefreeDecomposition, RingError> {
    if p.is_zero() {
        return Err(RingError::ZeroPolynomial);
    }
    let constant = p.leading_coeff();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { constant, factors });
    }
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.div_rem(&a)?.0;
    let c = df.div_rem(&a)?.0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let ai = b.gcd(&d);
        b = b.div_rem(&ai)?.0;
        let c = d.div_rem(&ai)?.0;
        d = c.sub(&b.derivative());
        if !ai.is_constant() {
            factors.push((ai, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { constant, factors })
}

/// Exact test for `p(t) >= 0` at every real `t`.
pub fn is_nonneg_on_reals(p: &RatPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    if !p.leading_coeff().is_positive() || p.degree().unwrap() % 2 == 1 {
        return false;
    }
    if p.is_constant() {
        return true;
    }
    let odd = squarefree_decomposition(p)
        .expect("nonzero polynomial")
        .odd_part();
    odd.is_constant() || SturmChain::new(&odd).expect("nonzero").total_roots() == 0
}

/// A rational point where `p` is strictly negative, if one exists.
///
/// Roots of the square-free part are isolated by Sturm bisection; every gap
/// between consecutive roots then contains an interval endpoint, so checking
/// the endpoints and the two outer bounds is exhaustive.
pub fn negative_point(p: &RatPoly) -> Option<BigRational> {
    if is_nonneg_on_reals(p) {
        return None;
    }
    let bound = p.cauchy_bound();
    let mut candidates = vec![-bound.clone(), bound.clone()];
    if !p.is_constant() {
        let sqfree = p.div_rem(&p.gcd(&p.derivative())).ok()?.0;
        let chain = SturmChain::new(&sqfree).ok()?;
        isolate(&chain, &sqfree, -bound.clone(), bound, &mut candidates);
    }
    candidates.sort();
    candidates.dedup();
    candidates.into_iter().find(|t| p.eval(t).is_negative())
}

fn isolate(
    chain: &SturmChain,
    p: &RatPoly,
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<BigRational>,
) {
    match chain.roots_between(&lo, &hi) {
        0 => {}
        1 => {
            out.push(lo);
            out.push(hi);
        }
        _ => {
            let width = &hi - &lo;
            let mid = [(1, 2), (1, 3), (2, 5), (3, 7), (4, 9)]
                .iter()
                .map(|&(n, d)| &lo + &width * BigRational::new(n.into(), d.into()))
                .find(|m| !p.eval(m).is_zero())
                .expect("a polynomial has finitely many roots");
            isolate(chain, p, lo, mid.clone(), out);
            isolate(chain, p, mid, hi, out);
        }
    }
}

/// For an irreducible `p`, the prime `(p)` is real iff `p` has a real root.
pub fn is_real_irreducible(p: &RatPoly, certify: bool) -> Result<bool, RingError> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(RingError::UnitInput);
    }
    if certify && certify_irreducible(p) != Some(true) {
        return Err(RingError::NotCertifiedIrreducible);
    }
    let sqfree = p.div_rem(&p.gcd(&p.derivative()))?.0;
    Ok(SturmChain::new(&sqfree)?.total_roots() > 0)
}

/// `c * p` nonnegative on the real line for some nonzero rational `c`.
pub fn positive_associate(p: &RatPoly) -> Result<Option<RatPoly>, RingError> {
    if p.is_zero() {
        return Err(RingError::ZeroPolynomial);
    }
    if is_nonneg_on_reals(p) {
        return Ok(Some(p.clone()));
    }
    let q = p.neg();
    Ok(is_nonneg_on_reals(&q).then_some(q))
}

/// Integer coefficients with content 1 and positive leading coefficient.
pub fn primitive_part(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sgn = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &content * &sgn).collect()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, k) in factor_natural(n) {
        let mut next = Vec::new();
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=k {
                next.push(m.clone());
                m *= &p;
            }
        }
        out = next;
    }
    out
}

/// A rational root of `p`, found by the rational-root test.
pub fn rational_root(p: &RatPoly) -> Option<BigRational> {
    let ints = primitive_part(p);
    if ints.first()?.is_zero() {
        return Some(BigRational::zero());
    }
    let num_divs = divisors(ints[0].magnitude());
    let den_divs = divisors(ints.last()?.magnitude());
    for n in &num_divs {
        for d in &den_divs {
            for s in [1i8, -1] {
                let mut t = BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone()));
                if s < 0 {
                    t = -t;
                }
                if p.eval(&t).is_zero() {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Irreducibility certificate over the rationals.
///
/// `Some(true)`: certified irreducible (degree 1, degree 2-3 without rational
/// roots, or Eisenstein at some prime). `Some(false)`: a factor was found.
/// `None`: undecided.
pub fn certify_irreducible(p: &RatPoly) -> Option<bool> {
    let deg = p.degree()?;
    match deg {
        0 => Some(false),
        1 => Some(true),
        2 | 3 => Some(rational_root(p).is_none()),
        _ => {
            if rational_root(p).is_some() {
                return Some(false);
            }
            eisenstein(&primitive_part(p)).then_some(true)
        }
    }
}

fn eisenstein(ints: &[BigInt]) -> bool {
    let (a0, rest) = (&ints[0], &ints[1..]);
    if a0.is_zero() {
        return false;
    }
    let an = ints.last().unwrap();
    factor_natural(a0.magnitude()).into_iter().any(|(q, k)| {
        let q = BigInt::from(q);
        k == 1 && !(an % &q).is_zero() && rest[..rest.len() - 1].iter().all(|c| (c % &q).is_zero())
    })
}

/// The ring `Q[x]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalPolynomials;

impl Ring for RationalPolynomials {
    type Elem = RatPoly;

    fn zero(&self) -> RatPoly {
        RatPoly::zero()
    }
    fn one(&self) -> RatPoly {
        RatPoly::one()
    }
    fn from_i64(&self, v: i64) -> RatPoly {
        RatPoly::constant(rat(v))
    }
    fn is_zero(&self, a: &RatPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.add(b)
    }
    fn sub(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.sub(b)
    }
    fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.mul(b)
    }
    fn neg(&self, a: &RatPoly) -> RatPoly {
        a.neg()
    }
    fn is_unit(&self, a: &RatPoly) -> bool {
        a.degree() == Some(0)
    }
    fn unit_inverse(&self, a: &RatPoly) -> Option<RatPoly> {
        self.is_unit(a)
            .then(|| RatPoly::constant(a.leading_coeff().recip()))
    }
}

impl EuclideanRing for RationalPolynomials {
    fn euclidean_size(&self, a: &RatPoly) -> BigUint {
        BigUint::from(a.degree().unwrap_or(0))
    }

    /// Total bit length of the coefficients of the monic associate.
    fn pivot_cost(&self, a: &RatPoly) -> u64 {
        a.monic()
            .coeffs()
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }

    fn div_rem(&self, a: &RatPoly, b: &RatPoly) -> Result<DivResult<RatPoly>, RingError> {
        let (quotient, remainder) = a.div_rem(b)?;
        Ok(DivResult {
            quotient,
            remainder,
        })
    }

    fn normalize(&self, a: &RatPoly) -> (RatPoly, RatPoly) {
        if a.is_zero() {
            return (RatPoly::zero(), RatPoly::one());
        }
        let u = a.leading_coeff().recip();
        (a.scale(&u), RatPoly::constant(u))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses an exact rational written as `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new("", format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseError::new("", "zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for RatPoly {
    type Err = ParseError;

    /// Accepts sums of terms like `3/2*x^2`, `-x`, `7`, `x^3`, `2x`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("", "empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = RatPoly::zero();
        for term in terms {
            acc = acc.add(&parse_term(term)?);
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<RatPoly, ParseError> {
    let bad = || ParseError::new("", format!("invalid polynomial term {term:?}"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff, power) = match body.find('x') {
        None => (parse_rational(body).map_err(|_| bad())?, 0usize),
        Some(pos) => {
            let head = body[..pos].trim_end_matches('*');
            let coeff = if head.is_empty() {
                BigRational::one()
            } else {
                parse_rational(head).map_err(|_| bad())?
            };
            let tail = &body[pos + 1..];
            let power = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?
            };
            (coeff, power)
        }
    };
    let coeff = if neg { -coeff } else { coeff };
    Ok(RatPoly::monomial(coeff, power))
}
