//! `realsnf` command-line front end.
//!
//! Every subcommand prints JSON on stdout. Exit codes: 0 success, 1 a negative
//! verdict under `--expect-holds`, 2 bad input, 3 internal invariant breach.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use realsnf::codec::{matrix_from_json, matrix_to_json, psd_report_to_json, snf_to_json};
use realsnf::error::{MatrixError, ParseError, RingError};
use realsnf::poly::parse_rational;
use realsnf::quadratic::SurdFieldElem;
use realsnf::smith::MINOR_SIZE_LIMIT;
use realsnf::verifier::{
    build_counterexample, builtin_counterexample, check_valuation_lemma, integral_spec,
    rational_counterexample_fields, run_property_suite, theorem_report_to_json,
    valuation_lemma_instance, CounterexampleSpec,
};
use realsnf::{
    is_psd_on_spectrum, smith_normal_form, verify_main_theorem, verify_snf, with_ring, AnyRing,
    Conclusion, ElemCodec, QuadraticIntegers, RationalPolynomials, RealRing, RingSpec,
    SupportedRing, TrialConfig, VerifyError,
};

#[derive(Parser)]
#[command(
    name = "realsnf",
    version,
    about = "Exact Smith normal forms and positivity over real principal rings"
)]
struct Cli {
    /// Pretty-print JSON for humans.
    #[arg(long, global = true)]
    pretty: bool,
    /// Exit 1 when the verdict is negative (not PSD, PNRI fails, theorem fails).
    #[arg(long, global = true)]
    expect_holds: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form with unimodular transforms.
    Snf {
        #[arg(long)]
        ring: RingSpec,
        /// Matrix JSON, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Positive semidefiniteness on the real spectrum.
    Psd {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        input: String,
    },
    /// Full theorem report for one symmetric matrix.
    Verify {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        input: String,
    },
    /// Whether every non-real irreducible has a positive associate.
    Pnri {
        #[arg(long)]
        ring: RingSpec,
    },
    /// Fundamental unit of a quadratic ring.
    Unit {
        #[arg(long)]
        ring: RingSpec,
    },
    /// Builds the 2x2 counterexample template and reports on it.
    Counterexample {
        #[arg(long, default_value = "Zsqrt:3")]
        ring: RingSpec,
        /// Object with fields a, b, c, d1, e1, epsilon; defaults to the built-in spec.
        #[arg(long)]
        input: Option<String>,
    },
    /// Checks nu_p(a) <= 2 nu_p(b) over Q[x].
    ValuationLemma {
        /// Object with polynomial fields a, b, p; without it an instance is generated.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded property suite: one JSON line per trial, then a summary.
    Suite {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Breach(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Breach(_) => 3,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(if e.field.is_empty() {
            e.message
        } else {
            format!("field `{}`: {}", e.field, e.message)
        })
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::EuclideanFailure => Failure::Breach(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Ring(r) => r.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Matrix(m) => m.into(),
            VerifyError::Ring(r) => r.into(),
            VerifyError::ConsistencyBreach(_) => Failure::Breach(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Outcome of a subcommand that ran to completion.
struct Verdict {
    holds: bool,
}

const HOLDS: Verdict = Verdict { holds: true };

struct Out {
    pretty: bool,
}

impl Out {
    fn emit(&self, v: &Value) {
        let text = if self.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        };
        println!("{}", text.expect("JSON values always serialize"));
    }
}

fn read_input(arg: &str) -> Result<Value, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with(['[', '{', '"']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| Failure::Input(format!("input: cannot read {arg:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("input: malformed JSON: {e}")))
}

fn ring_for(spec: RingSpec) -> Result<AnyRing, Failure> {
    Ok(AnyRing::new(spec)?)
}

fn snf<R: SupportedRing>(ring: &R, input: &Value, out: &Out) -> Result<Verdict, Failure> {
    let m = matrix_from_json(ring, input)?;
    let s = smith_normal_form(ring, &m)?;
    if m.rows().max(m.cols()) <= MINOR_SIZE_LIMIT {
        let check = verify_snf(ring, &m, &s)?;
        if !check.ok {
            return Err(Failure::Breach(format!(
                "Smith form failed its own check: {}",
                check.diagnostics.join("; ")
            )));
        }
    }
    out.emit(&snf_to_json(ring, &s));
    Ok(HOLDS)
}

fn psd<R: SupportedRing>(ring: &R, input: &Value, out: &Out) -> Result<Verdict, Failure> {
    let m = matrix_from_json(ring, input)?;
    let report = is_psd_on_spectrum(ring, &m)?;
    out.emit(&psd_report_to_json(&report));
    Ok(Verdict {
        holds: report.is_psd,
    })
}

fn report_verdict(c: Conclusion) -> Verdict {
    Verdict {
        holds: c == Conclusion::TheoremHolds,
    }
}

fn verify<R: SupportedRing>(ring: &R, input: &Value, out: &Out) -> Result<Verdict, Failure> {
    let m = matrix_from_json(ring, input)?;
    let report = verify_main_theorem(ring, &m)?;
    out.emit(&theorem_report_to_json(ring, &report));
    Ok(report_verdict(report.conclusion))
}

fn pnri(ring: &AnyRing, out: &Out) -> Result<Verdict, Failure> {
    let (holds, unit, norm) = match ring {
        AnyRing::Quadratic(q) => {
            let u = q.fundamental_unit();
            (
                q.pnri_holds(),
                json!(q.format_elem(&u.unit)),
                json!(u.norm.to_string()),
            )
        }
        AnyRing::Integers(r) => (r.pnri_holds(), Value::Null, Value::Null),
        AnyRing::Polynomials(r) => (r.pnri_holds(), Value::Null, Value::Null),
    };
    out.emit(&json!({"pnri": holds, "unit": unit, "norm": norm}));
    Ok(Verdict { holds })
}

fn unit(ring: &AnyRing, out: &Out) -> Result<Verdict, Failure> {
    let AnyRing::Quadratic(q) = ring else {
        return Err(Failure::Input(
            "ring: fundamental units exist only for the quadratic rings".into(),
        ));
    };
    let u = q.fundamental_unit();
    out.emit(&json!({
        "ring": q.spec().to_string(),
        "unit": q.format_elem(&u.unit),
        "norm": u.norm.to_string(),
    }));
    Ok(HOLDS)
}

const SPEC_FIELDS: [&str; 6] = ["a", "b", "c", "d1", "e1", "epsilon"];

fn spec_field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Failure> {
    v.get(name)
        .ok_or_else(|| ParseError::new(name, "missing field").into())
}

fn field_text(v: &Value, name: &str) -> Result<String, Failure> {
    match spec_field(v, name)? {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(ParseError::new(name, format!("expected a string, got {other}")).into()),
    }
}

fn spec_from_parts<E>(mut parts: Vec<E>) -> CounterexampleSpec<E> {
    let epsilon = parts.pop().expect("six parts");
    let e1 = parts.pop().expect("six parts");
    let d1 = parts.pop().expect("six parts");
    let c = parts.pop().expect("six parts");
    let b = parts.pop().expect("six parts");
    let a = parts.pop().expect("six parts");
    CounterexampleSpec {
        a,
        b,
        c,
        d1,
        e1,
        epsilon,
    }
}

fn quadratic_spec(
    ring: &QuadraticIntegers,
    v: &Value,
) -> Result<CounterexampleSpec<realsnf::QuadElem>, Failure> {
    if let Some(r) = v.get("r") {
        // the rational family over Q(sqrt 3), which is never integral
        if ring.spec() != "Zsqrt:3".parse().expect("valid ring") {
            return Err(ParseError::new(
                "r",
                "the rational family lives in Q(sqrt 3); use --ring Zsqrt:3",
            )
            .into());
        }
        let text = r
            .as_str()
            .ok_or_else(|| ParseError::new("r", "expected a rational string"))?;
        let r = parse_rational(text).map_err(|e| e.within("r"))?;
        let fields = rational_counterexample_fields(&r)?;
        return Ok(integral_spec(ring, &fields)?);
    }
    let mut fields = Vec::new();
    for name in SPEC_FIELDS {
        let f = match spec_field(v, name)? {
            Value::Object(_) => {
                let e = ring.elem_from_json(&v[name]).map_err(|e| e.within(name))?;
                SurdFieldElem::parse(&ring.format_elem(&e), ring)?
            }
            _ => SurdFieldElem::parse(&field_text(v, name)?, ring).map_err(|e| e.within(name))?,
        };
        fields.push((name, f));
    }
    let fields: [(&'static str, SurdFieldElem); 6] = fields.try_into().expect("six fields");
    Ok(integral_spec(ring, &fields)?)
}

fn integer_spec(v: &Value) -> Result<CounterexampleSpec<num_bigint::BigInt>, Failure> {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for name in SPEC_FIELDS {
        let q = parse_rational(&field_text(v, name)?).map_err(|e| e.within(name))?;
        if q.is_integer() {
            parts.push(q.to_integer());
        } else {
            bad.push(format!("{name} = {q} is not an integer"));
        }
    }
    if !bad.is_empty() {
        return Err(VerifyError::SpecInvariantViolated(bad).into());
    }
    Ok(spec_from_parts(parts))
}

fn polynomial_spec(v: &Value) -> Result<CounterexampleSpec<realsnf::RatPoly>, Failure> {
    let parts = SPEC_FIELDS
        .iter()
        .map(|&name| {
            RationalPolynomials
                .elem_from_json(spec_field(v, name)?)
                .map_err(|e| Failure::from(e.within(name)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(spec_from_parts(parts))
}

fn counterexample_report<R: SupportedRing>(
    ring: &R,
    spec: &CounterexampleSpec<R::Elem>,
    out: &Out,
) -> Result<Verdict, Failure> {
    let m = build_counterexample(ring, spec)?;
    let report = verify_main_theorem(ring, &m)?;
    out.emit(&json!({
        "matrix": matrix_to_json(ring, &m),
        "report": theorem_report_to_json(ring, &report),
    }));
    Ok(report_verdict(report.conclusion))
}

fn counterexample(spec: RingSpec, input: Option<&str>, out: &Out) -> Result<Verdict, Failure> {
    let ring = ring_for(spec)?;
    let Some(input) = input else {
        let (builtin_ring, builtin) = builtin_counterexample();
        if builtin_ring.spec() != spec {
            return Err(Failure::Input(format!(
                "ring: the built-in spec lives in {}; pass --input for {spec}",
                builtin_ring.spec()
            )));
        }
        return counterexample_report(&builtin_ring, &builtin, out);
    };
    let v = read_input(input)?;
    if !v.is_object() {
        return Err(ParseError::new(
            "",
            "expected an object with fields a, b, c, d1, e1, epsilon",
        )
        .into());
    }
    match &ring {
        AnyRing::Integers(z) => counterexample_report(z, &integer_spec(&v)?, out),
        AnyRing::Polynomials(p) => counterexample_report(p, &polynomial_spec(&v)?, out),
        AnyRing::Quadratic(q) => counterexample_report(q, &quadratic_spec(q, &v)?, out),
    }
}

fn valuation_lemma(input: Option<&str>, seed: u64, out: &Out) -> Result<Verdict, Failure> {
    let (a, b, p) = match input {
        Some(input) => {
            let v = read_input(input)?;
            let poly = |name: &str| -> Result<realsnf::RatPoly, Failure> {
                Ok(RationalPolynomials
                    .elem_from_json(spec_field(&v, name)?)
                    .map_err(|e| e.within(name))?)
            };
            (poly("a")?, poly("b")?, poly("p")?)
        }
        None => valuation_lemma_instance(seed),
    };
    let check = check_valuation_lemma(&a, &b, &p)?;
    let nu = |n: Option<u32>| n.map_or(json!("inf"), |n| json!(n.to_string()));
    out.emit(&json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "p": p.to_string(),
        "nu_a": nu(check.nu_a),
        "nu_b": nu(check.nu_b),
        "holds": check.holds,
    }));
    if !check.holds {
        return Err(Failure::Breach(format!(
            "valuation inequality violated for p = {p}"
        )));
    }
    Ok(HOLDS)
}

fn suite<R: SupportedRing>(ring: &R, cfg: &TrialConfig, out: &Out) -> Result<Verdict, Failure> {
    let summary = run_property_suite(ring, cfg)?;
    for record in &summary.records {
        out.emit(&record.to_json());
    }
    out.emit(&summary.to_json());
    if summary.breaches > 0 {
        return Err(Failure::Breach(format!(
            "{} of {} trials breached consistency",
            summary.breaches,
            summary.trials()
        )));
    }
    Ok(Verdict {
        holds: summary.holds == summary.trials(),
    })
}

fn run(cli: &Cli) -> Result<Verdict, Failure> {
    let out = Out { pretty: cli.pretty };
    match &cli.command {
        Command::Snf { ring, input } => {
            let v = read_input(input)?;
            with_ring!(&ring_for(*ring)?, r => snf(r, &v, &out))
        }
        Command::Psd { ring, input } => {
            let v = read_input(input)?;
            with_ring!(&ring_for(*ring)?, r => psd(r, &v, &out))
        }
        Command::Verify { ring, input } => {
            let v = read_input(input)?;
            with_ring!(&ring_for(*ring)?, r => verify(r, &v, &out))
        }
        Command::Pnri { ring } => pnri(&ring_for(*ring)?, &out),
        Command::Unit { ring } => unit(&ring_for(*ring)?, &out),
        Command::Counterexample { ring, input } => counterexample(*ring, input.as_deref(), &out),
        Command::ValuationLemma { input, seed } => valuation_lemma(input.as_deref(), *seed, &out),
        Command::Suite {
            ring,
            seed,
            trials,
            size,
        } => {
            let cfg = TrialConfig {
                matrix_size: *size,
                trial_count: *trials,
                seed: *seed,
                ..TrialConfig::new(*ring)
            };
            with_ring!(&ring_for(*ring)?, r => suite(r, &cfg, &out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) if cli.expect_holds && !v.holds => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(msg) | Failure::Breach(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
