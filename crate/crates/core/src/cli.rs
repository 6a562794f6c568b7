//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::apolarity::{self, ArtinOptions, Convention};
use crate::curvering::CurveRing;
use crate::error::{Error, Result};
use crate::fracideal::{self, FractionalIdeal};
use crate::pfaffian::{self, SkewEntries};
use crate::poly::Poly;
use crate::powerseries::{self, LaurentSeries};
use crate::semigroup::parse_generators;
use crate::verification;

#[derive(Parser, Debug)]
#[command(name = "curve-canonical", version, about = "Canonical ideals of monomial curve singularities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Truncation precision for power-series input; doubled up to three
    /// times when exhausted.
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct SemigroupArg {
    /// Generators, space- or comma-separated.
    #[arg(value_name = "GENERATORS")]
    generators: Vec<String>,
    /// Generators as one comma-separated list, e.g. 4,7,9.
    #[arg(long, value_name = "LIST")]
    semigroup: Option<String>,
}

impl SemigroupArg {
    fn ring(&self) -> Result<CurveRing> {
        let text = match &self.semigroup {
            Some(s) => s.clone(),
            None => self.generators.join(" "),
        };
        CurveRing::from_generators(&parse_generators(&text)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semigroup and curve invariants.
    Invariants(SemigroupArg),
    /// Hilbert-Samuel data of the maximal ideal.
    Hilbert(SemigroupArg),
    /// Value set of the canonical module and a basis of ω/dR.
    CanonicalModule(SemigroupArg),
    /// The canonical ideal t^s ω, or x₁^t ω with the closed formulas.
    CanonicalIdeal {
        #[command(flatten)]
        sg: SemigroupArg,
        /// Shift s; defaults to the least s with s + W inside the semigroup.
        #[arg(long, conflicts_with = "t")]
        shift: Option<i64>,
        /// Use s = t·e₀ and compare with the colength and socle-degree formulas.
        #[arg(long)]
        t: Option<i64>,
    },
    /// Whether an ideal of the curve ring is canonical.
    IsCanonical {
        #[command(flatten)]
        sg: SemigroupArg,
        /// A generator as a series, e.g. "t^4 + 2*t^7" (repeatable).
        #[arg(long = "series", value_name = "SERIES")]
        series: Vec<String>,
        /// Monomial generators given by exponents, e.g. 5,6,7.
        #[arg(long, value_name = "EXPONENTS")]
        monomials: Option<String>,
    },
    /// Socle degrees of R/zω for random z of order t.
    SampleSocle {
        #[command(flatten)]
        sg: SemigroupArg,
        /// Order of z; defaults to 4μ + 1.
        #[arg(long)]
        t: Option<i64>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Herzog equations and the Pfaffian canonical ideal of a 3-generated semigroup.
    Pfaffian {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        a12: Option<String>,
        #[arg(long)]
        a13: Option<String>,
        /// Defaults to x1^pn when no entry is given.
        #[arg(long)]
        a23: Option<String>,
        /// Try x_v^pn in each entry until one gives a canonical ideal.
        #[arg(long, conflicts_with_all = ["a12", "a13", "a23"])]
        search: bool,
    },
    /// Artinian analysis and dual generator of R/t^s ω in k[[x₁,x₂,x₃]].
    InverseSystem {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        shift: i64,
        /// Repeat rank computations over a large prime field.
        #[arg(long)]
        modp_check: bool,
    },
    /// Check the built-in reference examples.
    #[command(name = "verify-examples", alias = "verify-paper-examples")]
    VerifyExamples,
}

/// Runs the command line `argv` (including the program name) and returns the
/// exit code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if e.exit_code() == 0 => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.render());
            let _ = write!(err, "{}", usage_help(&argv));
            return 2;
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok((value, ok)) => {
            let _ = writeln!(out, "{}", render(&value, format));
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let value = json!({"error": e.name(), "message": e.to_string()});
            let _ = writeln!(err, "{}", render(&value, format));
            1
        }
    }
}

/// Help of the subcommand named in `argv`, or of the whole program.
fn usage_help(argv: &[OsString]) -> String {
    let mut cmd = Cli::command();
    let name = argv.iter().skip(1).filter_map(|a| a.to_str()).find(|a| cmd.find_subcommand(a).is_some());
    match name {
        Some(name) => cmd.find_subcommand_mut(name).expect("found above").render_help().to_string(),
        None => cmd.render_help().to_string(),
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let value = match &cli.command {
        Command::Invariants(sg) => {
            let ring = sg.ring()?;
            let mut v = to_value(ring.invariants()?);
            let extra = json!({
                "generators": ring.generators(),
                "frobenius": ring.frobenius(),
                "gaps": ring.gaps(),
                "pseudo_frobenius": ring.pseudo_frobenius(),
                "symmetric": ring.is_symmetric()?,
            });
            merge(&mut v, extra);
            v
        }
        Command::Hilbert(sg) => to_value(sg.ring()?.hilbert_data()?),
        Command::CanonicalModule(sg) => {
            let ring = sg.ring()?;
            let w = ring.canonical_value_set();
            let (mu, basis) = ring.milnor_via_differentials()?;
            json!({
                "values": w,
                "minimal_generators": w.minimal_generators(&ring),
                "mu": mu,
                "differential_basis_exponents": basis,
            })
        }
        Command::CanonicalIdeal { sg, shift, t } => {
            let ring = sg.ring()?;
            match t {
                Some(t) => {
                    let report = fracideal::canideal_formulas(&ring, *t)?;
                    let shifted = fracideal::shift_canonical(&ring, t * ring.multiplicity());
                    json!({"ideal": shifted, "formulas": report})
                }
                None => {
                    let s = shift.unwrap_or_else(|| least_integral_shift(&ring));
                    to_value(fracideal::shift_canonical(&ring, s))
                }
            }
        }
        Command::IsCanonical { sg, series, monomials } => {
            let ring = sg.ring()?;
            match (monomials, series.is_empty()) {
                (Some(m), true) => {
                    let ideal = FractionalIdeal::monomial(&ring, &parse_generators(m)?)?;
                    json!({"ideal": ideal, "certificate": fracideal::is_canonical(&ring, &ideal)?})
                }
                (None, false) => {
                    let (ideal, precision, retries) = ideal_with_retry(&ring, series, cli.precision)?;
                    json!({
                        "ideal": ideal,
                        "certificate": fracideal::is_canonical(&ring, &ideal)?,
                        "precision": precision,
                        "precision_retries": retries,
                    })
                }
                _ => return Err(Error::Parse("give either --series (repeatable) or --monomials".into())),
            }
        }
        Command::SampleSocle { sg, t, trials } => {
            let ring = sg.ring()?;
            let inv = ring.invariants()?;
            let t = t.unwrap_or(4 * inv.mu + 1);
            let sample = fracideal::sample_generic_socle(&ring, t, *trials, cli.seed)?;
            let bound = (t > 4 * inv.mu).then(|| inv.socle_degree_bound(t));
            let mut v = to_value(&sample);
            merge(&mut v, json!({"socle_degree_bound": bound, "expected_length": t * inv.e0 - 2 * inv.delta}));
            v
        }
        Command::Pfaffian { sg, a12, a13, a23, search } => {
            let ring = sg.ring()?;
            let result = if *search {
                pfaffian::search_canonical_from_pfaffian(&ring)?
            } else {
                let entries = if a12.is_none() && a13.is_none() && a23.is_none() {
                    SkewEntries::default_for(&ring)?
                } else {
                    let parse = |p: &Option<String>| p.as_deref().map_or(Ok(Poly::zero(3)), |t| Poly::parse(t, 3));
                    SkewEntries { a12: parse(a12)?, a13: parse(a13)?, a23: parse(a23)? }
                };
                pfaffian::canonical_from_pfaffian(&ring, &entries)?
            };
            to_value(result)
        }
        Command::InverseSystem { sg, shift, modp_check } => inverse_system(&sg.ring()?, *shift, *modp_check)?,
        Command::VerifyExamples => {
            let report = verification::verify_examples()?;
            let ok = report.pass;
            return Ok((to_value(report), ok));
        }
    };
    Ok((value, true))
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn least_integral_shift(ring: &CurveRing) -> i64 {
    let (w, r) = (ring.canonical_value_set(), ring.value_set());
    (0..).find(|&s| w.shift(s).is_subset(&r)).expect("c + W lies in the semigroup")
}

/// Parses the series and builds their standard basis, doubling the default
/// precision on exhaustion at most three times.
fn ideal_with_retry(
    ring: &CurveRing,
    series: &[String],
    precision: Option<i64>,
) -> Result<(FractionalIdeal, i64, u32)> {
    let mut p = precision.unwrap_or_else(|| powerseries::default_precision(ring));
    let mut retries = 0;
    loop {
        let gens = series.iter().map(|s| LaurentSeries::parse(s, p)).collect::<Result<Vec<_>>>()?;
        match fracideal::standard_basis(ring, &gens) {
            Err(Error::PrecisionExhausted { .. }) if retries < 3 => {
                retries += 1;
                p *= 2;
            }
            other => return other.map(|ideal| (ideal, p, retries)),
        }
    }
}

fn inverse_system(ring: &CurveRing, shift: i64, modp_check: bool) -> Result<Value> {
    let shifted = fracideal::shift_canonical(ring, shift);
    let quotient = fracideal::quotient_report(ring, &shifted.ideal)?;
    let gens = pfaffian::quotient_generators(ring, shifted.ideal.values())?;
    let opts = ArtinOptions { socle_hint: Some(quotient.socle_degree as u32), modp_check, ..Default::default() };
    let analysis = apolarity::artin_analysis(&gens, 3, &opts)?;
    let agrees = analysis.length as i64 == quotient.length
        && analysis.socle_degree as i64 == quotient.socle_degree
        && analysis.hf.iter().map(|&h| h as i64).eq(quotient.hf.iter().copied())
        && analysis.socle_dim == quotient.cm_type_of_quotient;
    if !agrees {
        return Err(Error::InternalInconsistency("polynomial and value-set quotients differ".into()));
    }
    let dual = apolarity::dual_socle_generator(&gens, analysis.socle_degree, 3)?;
    let modp_perp =
        if modp_check { Some(apolarity::perp_dimension_modp(&gens, analysis.socle_degree, 3)?) } else { None };
    let differentiation = Poly::new(
        3,
        dual.generator.terms().map(|(e, c)| {
            let f = e.iter().fold(crate::rational::one(), |acc, &b| acc * factorial(b));
            (e.clone(), c / f)
        }),
    );
    Ok(json!({
        "shift": shift,
        "generators": gens,
        "analysis": analysis,
        "gorenstein": analysis.gorenstein(),
        "dual_generator": dual,
        "dual_generator_differentiation": differentiation,
        "annihilated_differentiation": apolarity::annihilates(&gens, &differentiation, Convention::Differentiation)?,
        "modp_perp_dim": modp_perp,
    }))
}

fn factorial(n: u32) -> crate::rational::Rational {
    (1..=n as i64).fold(crate::rational::one(), |acc, k| acc * crate::rational::int(k))
}

/// JSON, or `key: value` lines with nested objects flattened to dotted keys.
fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("valid JSON"),
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            lines.join("\n")
        }
    }
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, lines);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, lines);
            }
        }
        Value::String(s) => lines.push(format!("{prefix}: {s}")),
        other => lines.push(format!("{prefix}: {other}")),
    }
}
