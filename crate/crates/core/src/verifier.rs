//! Executable form of the main theorem, the counterexample template, and the
//! randomized falsification harness.
//!
//! Over a principal ring where every non-real irreducible has a positive
//! associate, a symmetric matrix that is PSD on the real spectrum has Smith
//! diagonals that are positive up to association. [`verify_main_theorem`]
//! checks that statement on one matrix; [`run_property_suite`] runs it on
//! seeded Gram matrices and treats any violation as fatal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::codec::{matrix_to_json, ElemCodec, SupportedRing};
use crate::error::{MatrixError, RingError};
use crate::matrix::Matrix;
use crate::par::{map_range, Execution};
use crate::poly::{self, format_rational, RatPoly, RationalPolynomials};
use crate::quadratic::{QuadElem, QuadraticIntegers, SurdFieldElem};
use crate::ring::{valuation, Integers, RingSpec};
use crate::rng::{trial_seed, EntryBounds, RandomElement, SplitMix64};
use crate::smith::smith_normal_form;
use crate::spectrum::{PsdWitness, RealRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
    /// PSD input over a ring with positive associates for all non-real
    /// irreducibles, yet some diagonal has no positive associate.
    #[error("consistency breach: {0}")]
    ConsistencyBreach(String),
    #[error("counterexample spec violates: {}", .0.join("; "))]
    SpecInvariantViolated(Vec<String>),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("r must be nonzero")]
    ZeroRational,
    #[error("invalid trial configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conclusion {
    TheoremHolds,
    TheoremFailsPnriFails,
    NotApplicableNotPsd,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::TheoremHolds => "TheoremHolds",
            Conclusion::TheoremFailsPnriFails => "TheoremFailsPnriFails",
            Conclusion::NotApplicableNotPsd => "NotApplicableNotPsd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport<E> {
    pub input_psd: bool,
    pub psd_witness: Option<PsdWitness>,
    pub snf_diagonals: Vec<E>,
    /// Sign behaviour of each diagonal on the spectrum.
    pub sign_data: Vec<String>,
    pub positive_associates: Vec<Option<E>>,
    pub positivizable: Vec<bool>,
    pub pnri: bool,
    pub conclusion: Conclusion,
}

pub fn verify_main_theorem<R: RealRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
) -> Result<TheoremReport<R::Elem>, VerifyError> {
    verify_main_theorem_with(ring, m, Execution::default())
}

pub fn verify_main_theorem_with<R: RealRing>(
    ring: &R,
    m: &Matrix<R::Elem>,
    exec: Execution,
) -> Result<TheoremReport<R::Elem>, VerifyError> {
    let psd = crate::spectrum::is_psd_on_spectrum_with(ring, m, exec)?;
    let snf = smith_normal_form(ring, m)?;
    let positive_associates = snf
        .diagonals
        .iter()
        .map(|d| ring.positive_associate(d))
        .collect::<Result<Vec<_>, _>>()?;
    let positivizable: Vec<bool> = positive_associates.iter().map(Option::is_some).collect();
    let sign_data = snf.diagonals.iter().map(|d| ring.sign_summary(d)).collect();
    let pnri = ring.pnri_holds();
    let all_positive = positivizable.iter().all(|&b| b);

    let conclusion = if !psd.is_psd {
        Conclusion::NotApplicableNotPsd
    } else if all_positive {
        Conclusion::TheoremHolds
    } else if !pnri {
        Conclusion::TheoremFailsPnriFails
    } else {
        let bad: Vec<usize> = positivizable
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(i, _)| i + 1)
            .collect();
        return Err(VerifyError::ConsistencyBreach(format!(
            "PSD matrix over {} has non-positivizable diagonals {bad:?}",
            ring.spec()
        )));
    };

    Ok(TheoremReport {
        input_psd: psd.is_psd,
        psd_witness: psd.witness,
        snf_diagonals: snf.diagonals,
        sign_data,
        positive_associates,
        positivizable,
        pnri,
        conclusion,
    })
}

pub fn theorem_report_to_json<R: RealRing + ElemCodec>(
    ring: &R,
    report: &TheoremReport<R::Elem>,
) -> Value {
    json!({
        "ring": ring.spec().to_string(),
        "input_psd": report.input_psd,
        "snf_diagonals": report.snf_diagonals.iter().map(|e| ring.elem_to_json(e)).collect::<Vec<_>>(),
        "sign_data": report.sign_data,
        "positive_associates": report
            .positive_associates
            .iter()
            .map(|e| e.as_ref().map_or(Value::Null, |e| ring.elem_to_json(e)))
            .collect::<Vec<_>>(),
        "positivizable": report.positivizable,
        "pnri": report.pnri,
        "conclusion": report.conclusion.to_string(),
    })
}

/// Parameters of the 2x2 template
/// `M = diag(d1, d1*e1) * [[a, b*e1], [b, c]]` with `a*c - b^2*e1 = epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleSpec<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d1: E,
    pub e1: E,
    pub epsilon: E,
}

/// Integral realization in `Z[sqrt 3]`: `a = c = d1 = 1+sqrt3`, `b = 1`,
/// `e1 = epsilon = 2+sqrt3`. Then `a*c - e1 = (4+2sqrt3) - (2+sqrt3)` is the
/// fundamental unit, which is totally positive.
pub fn builtin_counterexample() -> (QuadraticIntegers, CounterexampleSpec<QuadElem>) {
    let ring = QuadraticIntegers::sqrt(3).expect("3 is allowlisted");
    let q = QuadElem::new(1, 1);
    let u = QuadElem::new(2, 1);
    let spec = CounterexampleSpec {
        a: q.clone(),
        b: QuadElem::int(1),
        c: q.clone(),
        d1: q,
        e1: u.clone(),
        epsilon: u,
    };
    (ring, spec)
}

/// Checks the template conditions; returns one message per violated condition.
pub fn counterexample_violations<R: RealRing>(
    ring: &R,
    spec: &CounterexampleSpec<R::Elem>,
) -> Vec<String> {
    let mut out = Vec::new();
    let b2e1 = ring.mul(&ring.mul(&spec.b, &spec.b), &spec.e1);
    if ring.sub(&ring.mul(&spec.a, &spec.c), &b2e1) != spec.epsilon {
        out.push("a*c - b^2*e1 != epsilon".to_string());
    }
    if !ring.is_unit(&spec.epsilon) {
        out.push("epsilon is not a unit".to_string());
    } else if !ring.is_nonneg(&spec.epsilon) {
        out.push("epsilon is not positive on the real spectrum".to_string());
    }
    let d1e1 = ring.mul(&spec.d1, &spec.e1);
    let conditions = [
        ("a*d1 >= 0", ring.mul(&spec.a, &spec.d1)),
        ("c*d1*e1 >= 0", ring.mul(&spec.c, &d1e1)),
        ("d1^2*e1 >= 0", ring.mul(&spec.d1, &d1e1)),
    ];
    for (name, value) in conditions {
        if !ring.is_nonneg(&value) {
            out.push(format!("{name} fails on the real spectrum"));
        }
    }
    out
}

pub fn build_counterexample<R: RealRing>(
    ring: &R,
    spec: &CounterexampleSpec<R::Elem>,
) -> Result<Matrix<R::Elem>, VerifyError> {
    let violations = counterexample_violations(ring, spec);
    if !violations.is_empty() {
        return Err(VerifyError::SpecInvariantViolated(violations));
    }
    let d1e1 = ring.mul(&spec.d1, &spec.e1);
    let off = ring.mul(&spec.b, &d1e1);
    Ok(Matrix::from_rows(vec![
        vec![ring.mul(&spec.a, &spec.d1), off.clone()],
        vec![off, ring.mul(&spec.c, &d1e1)],
    ])?)
}

/// Field-level data of the rational counterexample in `Q(sqrt 3)`:
/// `epsilon = 1/2`, `e1 = (r + sqrt3/r)^2 + 7/2 - (r^4+3)/r^2`.
pub fn rational_counterexample_fields(
    r: &BigRational,
) -> Result<[(&'static str, SurdFieldElem); 6], VerifyError> {
    if r.is_zero() {
        return Err(VerifyError::ZeroRational);
    }
    let q = SurdFieldElem::new(rat(1), rat(1));
    let e1 = e1_of(r);
    Ok([
        ("a", q.clone()),
        ("b", SurdFieldElem::rational(rat(1))),
        ("c", q.clone()),
        ("d1", q),
        ("e1", e1),
        (
            "epsilon",
            SurdFieldElem::rational(BigRational::new(1.into(), 2.into())),
        ),
    ])
}

/// Pulls field-level spec data into the ring, failing on non-integral fields.
pub fn integral_spec(
    ring: &QuadraticIntegers,
    fields: &[(&'static str, SurdFieldElem); 6],
) -> Result<CounterexampleSpec<QuadElem>, VerifyError> {
    let mut values = Vec::new();
    let mut bad = Vec::new();
    for (name, v) in fields {
        match v.to_integral(ring) {
            Some(e) => values.push(e),
            None => bad.push(format!(
                "{name} = {} + {}*sqrt({}) is not in the ring",
                format_rational(&v.x),
                format_rational(&v.y),
                ring.d()
            )),
        }
    }
    if !bad.is_empty() {
        return Err(VerifyError::SpecInvariantViolated(bad));
    }
    let mut it = values.into_iter();
    let mut next = || it.next().expect("six fields");
    Ok(CounterexampleSpec {
        a: next(),
        b: next(),
        c: next(),
        d1: next(),
        e1: next(),
        epsilon: next(),
    })
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn e1_of(r: &BigRational) -> SurdFieldElem {
    let inner = SurdFieldElem::new(r.clone(), r.recip());
    let residual = residual_of(r);
    inner.mul(&inner, 3).add(&SurdFieldElem::rational(residual))
}

fn residual_of(r: &BigRational) -> BigRational {
    let r2 = r * r;
    BigRational::new(7.into(), 2.into()) - (&r2 * &r2 + rat(3)) / r2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldIdentityReport {
    pub identity_holds: bool,
    /// `7/2 - (r^4 + 3)/r^2`
    pub residual: BigRational,
    pub residual_positive: bool,
}

/// Expands `(1+sqrt3)^2 = 1/2 + (r + sqrt3/r)^2 + 7/2 - (r^4+3)/r^2` in `Q(sqrt 3)`.
pub fn verify_field_identity(r: &BigRational) -> Result<FieldIdentityReport, VerifyError> {
    if r.is_zero() {
        return Err(VerifyError::ZeroRational);
    }
    let q = SurdFieldElem::new(rat(1), rat(1));
    let lhs = q.mul(&q, 3);
    let half = SurdFieldElem::rational(BigRational::new(1.into(), 2.into()));
    let rhs = half.add(&e1_of(r));
    let residual = residual_of(r);
    Ok(FieldIdentityReport {
        identity_holds: lhs == rhs,
        residual_positive: residual.is_positive(),
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationLemmaCheck {
    pub holds: bool,
    /// `None` stands for an infinite valuation (zero element).
    pub nu_a: Option<u32>,
    pub nu_b: Option<u32>,
}

/// For `a - b^2 >= 0` on the real line and a real irreducible `p`, checks
/// `nu_p(a) <= 2 nu_p(b)`.
pub fn check_valuation_lemma(
    a: &RatPoly,
    b: &RatPoly,
    p: &RatPoly,
) -> Result<ValuationLemmaCheck, VerifyError> {
    if !poly::is_nonneg_on_reals(&a.sub(&b.mul(b))) {
        return Err(VerifyError::PreconditionFailed(
            "a - b^2 is not nonnegative on the real line".into(),
        ));
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(VerifyError::PreconditionFailed(
            "p is zero or a unit".into(),
        ));
    }
    if poly::certify_irreducible(p) == Some(false) {
        return Err(VerifyError::PreconditionFailed("p is reducible".into()));
    }
    if !poly::is_real_irreducible(p, false)? {
        return Err(VerifyError::PreconditionFailed(
            "p is not a real irreducible (no real root)".into(),
        ));
    }
    let nu = |e: &RatPoly| -> Result<Option<u32>, VerifyError> {
        if e.is_zero() {
            Ok(None)
        } else {
            Ok(Some(valuation(&RationalPolynomials, p, e)?))
        }
    };
    let (nu_a, nu_b) = (nu(a)?, nu(b)?);
    let holds = match (nu_a, nu_b) {
        (None, _) => true,
        (Some(_), None) => true,
        (Some(va), Some(vb)) => va <= 2 * vb,
    };
    Ok(ValuationLemmaCheck { holds, nu_a, nu_b })
}

/// Real irreducibles used by the instance generator.
fn real_irreducible_pool() -> Vec<RatPoly> {
    [
        "x",
        "x - 1",
        "x + 2",
        "x - 1/2",
        "x^2 - 2",
        "x^2 - 3",
        "x^2 - x - 1",
        "x^3 - 2",
        "2x^2 - 5",
    ]
    .iter()
    .map(|s| s.parse().expect("valid literal"))
    .collect()
}

/// Draws `(a, b, p)` with `a = b^2 * (1 + g1^2 + g2^2) + p^(2i) * g3^2`, so that
/// `a - b^2` is a sum of squares, and `b = p^j * g`.
pub fn valuation_lemma_instance(seed: u64) -> (RatPoly, RatPoly, RatPoly) {
    let mut rng = SplitMix64::new(seed);
    let pool = real_irreducible_pool();
    let p = pool[rng.below(pool.len() as u64) as usize].clone();
    let bounds = EntryBounds {
        height: 3,
        degree: 2,
    };
    let nonzero = |rng: &mut SplitMix64| loop {
        let g = RationalPolynomials.random_elem(rng, &bounds);
        if !g.is_zero() {
            break g;
        }
    };
    let g = nonzero(&mut rng);
    let b = p.pow(rng.below(3) as u32).mul(&g);
    let g1 = RationalPolynomials.random_elem(&mut rng, &bounds);
    let g2 = RationalPolynomials.random_elem(&mut rng, &bounds);
    let sigma = RatPoly::one().add(&g1.mul(&g1)).add(&g2.mul(&g2));
    let g3 = RationalPolynomials.random_elem(&mut rng, &bounds);
    let t = p.pow(2 * rng.below(4) as u32).mul(&g3.mul(&g3));
    let a = b.mul(&b).mul(&sigma).add(&t);
    (a, b, p)
}

/// Seeded experiment parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialConfig {
    pub ring: RingSpec,
    /// Rows of the Gram matrix, at most 5.
    pub matrix_size: usize,
    pub entry_height_bound: u64,
    /// Degree bound for polynomial entries of the Gram factor.
    pub poly_degree: usize,
    pub trial_count: usize,
    pub seed: u64,
}

impl TrialConfig {
    pub fn new(ring: RingSpec) -> Self {
        TrialConfig {
            ring,
            matrix_size: 3,
            entry_height_bound: 3,
            poly_degree: 2,
            trial_count: 100,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(1..=5).contains(&self.matrix_size) {
            return Err(VerifyError::InvalidConfig(format!(
                "matrix size {} outside 1..=5",
                self.matrix_size
            )));
        }
        if self.entry_height_bound == 0 {
            return Err(VerifyError::InvalidConfig(
                "entry height bound must be positive".into(),
            ));
        }
        Ok(())
    }

    fn bounds(&self) -> EntryBounds {
        EntryBounds {
            height: self.entry_height_bound,
            degree: self.poly_degree,
        }
    }
}

/// `N * N^T` for a seeded `n x k` factor `N` with `k` drawn from `1..=n`.
pub fn random_psd_matrix<R: SupportedRing>(
    ring: &R,
    cfg: &TrialConfig,
    trial: usize,
) -> Result<Matrix<R::Elem>, VerifyError> {
    cfg.validate()?;
    if ring.spec() != cfg.ring {
        return Err(RingError::UnsupportedRing(format!(
            "config names {} but the ring is {}",
            cfg.ring,
            ring.spec()
        ))
        .into());
    }
    let mut rng = SplitMix64::new(trial_seed(cfg.seed, trial as u64));
    Ok(gram_matrix(ring, &mut rng, cfg.matrix_size, &cfg.bounds()))
}

pub fn gram_matrix<R: SupportedRing>(
    ring: &R,
    rng: &mut SplitMix64,
    n: usize,
    bounds: &EntryBounds,
) -> Matrix<R::Elem> {
    let k = 1 + rng.below(n as u64) as usize;
    let entries = (0..n * k).map(|_| ring.random_elem(rng, bounds)).collect();
    let factor = Matrix::new(n, k, entries).expect("shape");
    factor
        .mul(ring, &factor.transpose())
        .expect("compatible shapes")
}

/// Product of random elementary operations: row additions, swaps and unit scalings.
pub fn random_unimodular<R: SupportedRing>(
    ring: &R,
    rng: &mut SplitMix64,
    n: usize,
    bounds: &EntryBounds,
) -> Matrix<R::Elem> {
    let mut u = Matrix::identity(ring, n);
    if n == 0 {
        return u;
    }
    for _ in 0..3 * n {
        match rng.below(4) {
            0 if n > 1 => {
                let (i, j) = (rng.below(n as u64) as usize, rng.below(n as u64) as usize);
                u.swap_rows(i, j);
            }
            1 => {
                let i = rng.below(n as u64) as usize;
                let unit = ring.random_unit(rng);
                u.scale_row(ring, i, &unit);
            }
            _ if n > 1 => {
                let i = rng.below(n as u64) as usize;
                let j = (i + 1 + rng.below(n as u64 - 1) as usize) % n;
                let c = ring.random_elem(rng, bounds);
                u.add_row_multiple(ring, i, j, &c);
            }
            _ => {}
        }
    }
    u
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub conclusion: Option<Conclusion>,
    pub diagonals: Vec<String>,
    pub positivizable: Vec<bool>,
    pub breach: Option<String>,
}

impl TrialRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "trial": self.index.to_string(),
            "seed": self.seed.to_string(),
            "diagonals": self.diagonals,
            "positivizable": self.positivizable,
            "conclusion": self.conclusion.map(|c| c.to_string()),
            "breach": self.breach,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub ring: RingSpec,
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    pub holds: usize,
    pub fails_pnri: usize,
    pub not_psd: usize,
    pub breaches: usize,
}

impl SuiteSummary {
    pub fn trials(&self) -> usize {
        self.records.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "seed": self.seed.to_string(),
            "trials": self.trials().to_string(),
            "TheoremHolds": self.holds.to_string(),
            "TheoremFailsPnriFails": self.fails_pnri.to_string(),
            "NotApplicableNotPsd": self.not_psd.to_string(),
            "breaches": self.breaches.to_string(),
        })
    }
}

pub fn run_property_suite<R: SupportedRing>(
    ring: &R,
    cfg: &TrialConfig,
) -> Result<SuiteSummary, VerifyError> {
    run_property_suite_with(ring, cfg, Execution::default())
}

/// Trials are independent, so the parallel strategy fans them out; records
/// come back in trial order either way.
pub fn run_property_suite_with<R: SupportedRing>(
    ring: &R,
    cfg: &TrialConfig,
    exec: Execution,
) -> Result<SuiteSummary, VerifyError> {
    cfg.validate()?;
    let records = map_range(exec, cfg.trial_count, |i| {
        let seed = trial_seed(cfg.seed, i as u64);
        let record = |conclusion, diagonals, positivizable, breach| TrialRecord {
            index: i,
            seed,
            conclusion,
            diagonals,
            positivizable,
            breach,
        };
        let m = match random_psd_matrix(ring, cfg, i) {
            Ok(m) => m,
            Err(e) => return record(None, vec![], vec![], Some(e.to_string())),
        };
        // the outer loop already owns the pool
        match verify_main_theorem_with(ring, &m, Execution::Sequential) {
            Ok(rep) => {
                let diagonals = rep
                    .snf_diagonals
                    .iter()
                    .map(|d| ring.format_elem(d))
                    .collect();
                let breach = (!rep.input_psd)
                    .then(|| format!("Gram matrix reported non-PSD: {}", matrix_to_json(ring, &m)));
                record(Some(rep.conclusion), diagonals, rep.positivizable, breach)
            }
            Err(e) => record(None, vec![], vec![], Some(e.to_string())),
        }
    });
    let count = |c: Conclusion| {
        records
            .iter()
            .filter(|r| r.breach.is_none() && r.conclusion == Some(c))
            .count()
    };
    Ok(SuiteSummary {
        ring: cfg.ring,
        seed: cfg.seed,
        holds: count(Conclusion::TheoremHolds),
        fails_pnri: count(Conclusion::TheoremFailsPnriFails),
        not_psd: count(Conclusion::NotApplicableNotPsd),
        breaches: records.iter().filter(|r| r.breach.is_some()).count(),
        records,
    })
}

/// One of the supported rings, chosen at run time.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum AnyRing {
    Integers(Integers),
    Polynomials(RationalPolynomials),
    Quadratic(QuadraticIntegers),
}

impl AnyRing {
    pub fn new(spec: RingSpec) -> Result<Self, RingError> {
        Ok(match spec {
            RingSpec::Integers => AnyRing::Integers(Integers),
            RingSpec::RationalPolynomials => AnyRing::Polynomials(RationalPolynomials),
            RingSpec::QuadraticIntegers { .. } => AnyRing::Quadratic(QuadraticIntegers::new(spec)?),
        })
    }
}

/// Runs `$body` with `$r` bound to the concrete ring inside an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::verifier::AnyRing::Integers($r) => $body,
            $crate::verifier::AnyRing::Polynomials($r) => $body,
            $crate::verifier::AnyRing::Quadratic($r) => $body,
        }
    };
}
