//! Command-line front end.
//!
//! Vector-consuming commands read one or more JSON documents from stdin, each
//! either `{"backend": "rational", "elements": ["1", "3", "9"], "label": …}` or
//! a bare array of elements, and write one JSON line per document.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage
//! or parse error, 3 budget exceeded.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{self, BhVerdict};
use crate::bhg;
use crate::compositions::{self, Composition};
use crate::error::Error;
use crate::oracle;
use crate::repair;
use crate::sample;
use crate::scalar::{format_rational, parse_scalar, Backend, Magnitude, Rational, Scalar};
use crate::sumset::{build_profile, RepresentationProfile, Tolerance, VectorKn};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bhsets",
    version,
    about = "Exact B_h-set verification, certificates and repair"
)]
struct Cli {
    /// Backend for documents that do not declare one.
    #[arg(long, global = true, default_value = "rational")]
    backend: Backend,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest number of h-fold sums any command may enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,

    /// Route computations through the brute-force reference implementation.
    #[arg(long, global = true)]
    oracle: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the B_h property (exit 0 if B_h, 1 if not).
    Check {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
    },
    /// Separation margin Δ of a B_h-vector.
    Margin {
        #[arg(long = "h")]
        h: u32,
    },
    /// Openness certificate: Δ and the radius Δ/(2h).
    Certify {
        #[arg(long = "h")]
        h: u32,
    },
    /// Move the vector by less than ε onto a B_h-vector.
    Repair {
        #[arg(long = "h")]
        h: u32,
        #[arg(long)]
        epsilon: String,
    },
    /// Representation profile of the h-fold sumset.
    Profile {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
    },
    /// B_h verdicts for h = 1..H.
    Sweep {
        #[arg(long = "h")]
        h: u32,
    },
    /// Sample the ∞-ball around a B_h[g]-vector and tally g_max.
    Probe {
        #[arg(long = "h")]
        h: u32,
        #[arg(long = "g")]
        g: usize,
        #[arg(long)]
        radius: String,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print X(h, n), one composition per line.
    Compositions {
        #[arg(long = "h")]
        h: u32,
        #[arg(long = "n")]
        n: usize,
    },
    /// Random integer vectors in [-range, range]^n with verdicts and margins.
    Sample {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "h")]
        h: u32,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        range: i64,
    },
}

/// Input document.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum VectorDocument {
    Tagged {
        backend: Option<Backend>,
        elements: Vec<serde_json::Value>,
        #[allow(dead_code)]
        label: Option<String>,
    },
    Bare(Vec<serde_json::Value>),
}

impl VectorDocument {
    fn into_vector(self, default: Backend) -> Result<VectorKn, Failure> {
        let (backend, elements) = match self {
            VectorDocument::Tagged { backend, elements, .. } => (backend.unwrap_or(default), elements),
            VectorDocument::Bare(elements) => (default, elements),
        };
        let texts = elements
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(k) => Ok(k.to_string()),
                other => Err(Failure::usage(format!(
                    "element {other} is neither a string nor a number"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorKn::parse(&texts, backend)?)
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::CountOverflow { .. } => EXIT_BUDGET,
            Error::NotBh { .. } => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("invalid JSON: {e}"))
    }
}

#[derive(Serialize)]
struct CheckOut {
    is_bh: bool,
    distinct_coords: bool,
    witness: Option<(Composition, Composition)>,
}

#[derive(Serialize)]
struct SumOut<'a> {
    value: &'a Scalar,
    reps: &'a [Composition],
}

#[derive(Serialize)]
struct ProfileOut<'a> {
    h: u32,
    sums: Vec<SumOut<'a>>,
    g_max: usize,
}

#[derive(Serialize)]
struct MarginOut {
    delta: String,
    radius: String,
    squared: bool,
}

#[derive(Serialize)]
struct RepairOut<'a> {
    c: &'a [Scalar],
    lambda: Option<String>,
    delta_u: Option<String>,
    verified: bool,
}

#[derive(Serialize)]
struct SweepEntry {
    h: u32,
    is_bh: bool,
}

#[derive(Serialize)]
struct SweepOut {
    sweep: Vec<SweepEntry>,
}

#[derive(Serialize)]
struct Counterexample<'a> {
    index: u64,
    vector: &'a [Scalar],
}

#[derive(Serialize)]
struct ProbeOut<'a> {
    kind: &'static str,
    center: &'a [Scalar],
    h: u32,
    g: usize,
    samples: u64,
    radius: String,
    seed: u64,
    frequencies: &'a BTreeMap<usize, usize>,
    min_g_max: Option<usize>,
    max_g_max: Option<usize>,
    counterexamples: Vec<Counterexample<'a>>,
}

#[derive(Serialize)]
struct SampleOut<'a> {
    index: u64,
    vector: &'a [Scalar],
    is_bh: bool,
    delta: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    samples: u64,
    bh: u64,
    rate: Option<String>,
}

#[derive(Serialize)]
struct SummaryOut {
    summary: Summary,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Diagnostics go to `stderr` only.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "bhsets: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Compositions { h, n } => {
            check_budget(*h, *n, cli.budget)?;
            for x in compositions::enumerate(*h, *n)? {
                writeln!(out, "{x}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Sample {
            n,
            h,
            samples,
            seed,
            range,
        } => {
            check_budget(*h, *n, cli.budget)?;
            let run = sample::sample(*n, *h, *samples, *seed, *range)?;
            if cli.format == Format::Csv {
                writeln!(out, "index,is_bh,delta")?;
            }
            for r in &run.records {
                let delta = r.margin.as_ref().map(|m| m.to_string());
                match cli.format {
                    Format::Json => json_line(
                        out,
                        &SampleOut {
                            index: r.index,
                            vector: r.vector.coords(),
                            is_bh: r.verdict.is_bh,
                            delta,
                        },
                    )?,
                    Format::Csv => writeln!(out, "{},{},{}", r.index, r.verdict.is_bh, delta.unwrap_or_default())?,
                }
            }
            if cli.format == Format::Json {
                let summary = Summary {
                    samples: *samples,
                    bh: run.bh_count,
                    rate: run.rate().as_ref().map(format_rational),
                };
                json_line(out, &SummaryOut { summary })?;
            }
            Ok(EXIT_OK)
        }
        _ => {
            let mut input = String::new();
            stdin.read_to_string(&mut input)?;
            let docs = serde_json::Deserializer::from_str(&input)
                .into_iter::<VectorDocument>()
                .collect::<Result<Vec<_>, _>>()?;
            if docs.is_empty() {
                return Err(Failure::usage("no input vector on stdin"));
            }
            write_csv_header(cli, out)?;
            let mut code = EXIT_OK;
            for doc in docs {
                let a = doc.into_vector(cli.backend)?;
                code = code.max(process(cli, &a, out)?);
            }
            Ok(code)
        }
    }
}

fn write_csv_header(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    if cli.format != Format::Csv {
        return Ok(());
    }
    let header = match cli.command {
        Command::Check { .. } => "is_bh,distinct_coords",
        Command::Margin { .. } | Command::Certify { .. } => "delta,radius,squared",
        Command::Repair { .. } => "c,lambda,delta_u,verified",
        Command::Profile { .. } => "value,multiplicity",
        Command::Sweep { .. } => "h,is_bh",
        Command::Probe { .. } => "g_max,frequency",
        Command::Compositions { .. } | Command::Sample { .. } => return Ok(()),
    };
    writeln!(out, "{header}")?;
    Ok(())
}

fn check_budget(h: u32, n: usize, budget: u64) -> Result<(), Failure> {
    let needed = compositions::count(h, n)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

fn tolerance(tau: f64) -> Result<Tolerance, Failure> {
    Ok(Tolerance::new(tau)?)
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    match parse_scalar(text, Backend::Rational)? {
        Scalar::Rational(q) => Ok(q),
        _ => unreachable!("rational backend"),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn profile(cli: &Cli, a: &VectorKn, h: u32, tol: Tolerance) -> Result<RepresentationProfile, Failure> {
    if cli.oracle {
        if !tol.is_exact() {
            return Err(Failure::usage("the reference path supports exact grouping only"));
        }
        Ok(oracle::oracle_profile(a, h, cli.budget)?)
    } else {
        Ok(build_profile(a, h, tol)?)
    }
}

fn verdict(cli: &Cli, a: &VectorKn, h: u32, tol: Tolerance) -> Result<BhVerdict, Failure> {
    if !cli.oracle {
        return Ok(analysis::is_bh(a, h, tol)?);
    }
    if let Some((i, j)) = a.first_repeated_pair(tol) {
        let w = (
            Composition::concentrated(h, a.n(), i),
            Composition::concentrated(h, a.n(), j),
        );
        return Ok(BhVerdict {
            is_bh: false,
            has_distinct_coords: false,
            collision_witness: Some(w),
        });
    }
    let p = profile(cli, a, h, tol)?;
    let witness = p
        .entries
        .iter()
        .filter(|e| e.reps.len() > 1)
        .min_by(|e, f| e.reps[0].canonical_cmp(&f.reps[0]))
        .map(|e| (e.reps[0].clone(), e.reps[1].clone()));
    Ok(BhVerdict {
        is_bh: witness.is_none(),
        has_distinct_coords: true,
        collision_witness: witness,
    })
}

fn margin_of(cli: &Cli, a: &VectorKn, h: u32) -> Result<Magnitude, Failure> {
    if cli.oracle {
        Ok(oracle::oracle_margin(a, h, cli.budget)?)
    } else {
        Ok(analysis::margin(a, h)?)
    }
}

fn process(cli: &Cli, a: &VectorKn, out: &mut dyn Write) -> Result<i32, Failure> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Check { h, tolerance: tau } => {
            check_budget(*h, a.n(), cli.budget)?;
            let v = verdict(cli, a, *h, tolerance(*tau)?)?;
            if csv {
                writeln!(out, "{},{}", v.is_bh, v.has_distinct_coords)?;
            } else {
                json_line(
                    out,
                    &CheckOut {
                        is_bh: v.is_bh,
                        distinct_coords: v.has_distinct_coords,
                        witness: v.collision_witness,
                    },
                )?;
            }
            Ok(if v.is_bh { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Margin { h } | Command::Certify { h } => {
            check_budget(*h, a.n(), cli.budget)?;
            if matches!(cli.command, Command::Certify { .. }) && !a.backend().is_exact() {
                return Err(Error::NotExact(a.backend()).into());
            }
            let delta = margin_of(cli, a, *h)?;
            let radius = crate::analysis::certified_radius(&delta, *h);
            let m = MarginOut {
                delta: delta.to_string(),
                radius: radius.to_string(),
                squared: delta.is_squared(),
            };
            if csv {
                writeln!(out, "{},{},{}", m.delta, m.radius, m.squared)?;
            } else {
                json_line(out, &m)?;
            }
            Ok(EXIT_OK)
        }
        Command::Repair { h, epsilon } => {
            check_budget(*h, a.n(), cli.budget)?;
            let eps = parse_rational(epsilon)?;
            let report = repair::repair(a, *h, &eps)?;
            if cli.oracle && !verdict(cli, &report.output, *h, Tolerance::EXACT)?.is_bh {
                return Err(Error::Internal("reference check rejects the repaired vector".into()).into());
            }
            let r = RepairOut {
                c: report.output.coords(),
                lambda: report.lambda.as_ref().map(format_rational),
                delta_u: report.delta_u.as_ref().map(|m| m.to_string()),
                verified: report.verified,
            };
            if csv {
                let c: Vec<String> = r.c.iter().map(|s| s.to_string()).collect();
                writeln!(
                    out,
                    "{},{},{},{}",
                    c.join(";"),
                    r.lambda.unwrap_or_default(),
                    r.delta_u.unwrap_or_default(),
                    r.verified
                )?;
            } else {
                json_line(out, &r)?;
            }
            Ok(EXIT_OK)
        }
        Command::Profile { h, tolerance: tau } => {
            check_budget(*h, a.n(), cli.budget)?;
            let p = profile(cli, a, *h, tolerance(*tau)?)?;
            if csv {
                for e in &p.entries {
                    writeln!(out, "{},{}", e.value, e.reps.len())?;
                }
            } else {
                let sums = p
                    .entries
                    .iter()
                    .map(|e| SumOut {
                        value: &e.value,
                        reps: &e.reps,
                    })
                    .collect();
                json_line(
                    out,
                    &ProfileOut {
                        h: *h,
                        sums,
                        g_max: p.g_max(),
                    },
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { h } => {
            let needed = compositions::count(*h, a.n())?;
            if needed > cli.budget {
                return Err(Error::BudgetExceeded {
                    needed,
                    budget: cli.budget,
                }
                .into());
            }
            let sweep: Vec<SweepEntry> = if cli.oracle {
                (1..=*h)
                    .map(|k| verdict(cli, a, k, Tolerance::EXACT).map(|v| SweepEntry { h: k, is_bh: v.is_bh }))
                    .collect::<Result<_, _>>()?
            } else {
                bhg::bh_sweep(a, *h, cli.budget)?
                    .into_iter()
                    .map(|(k, v)| SweepEntry { h: k, is_bh: v.is_bh })
                    .collect()
            };
            if csv {
                for s in &sweep {
                    writeln!(out, "{},{}", s.h, s.is_bh)?;
                }
            } else {
                json_line(out, &SweepOut { sweep })?;
            }
            Ok(EXIT_OK)
        }
        Command::Probe {
            h,
            g,
            radius,
            samples,
            seed,
        } => {
            check_budget(*h, a.n(), cli.budget)?;
            let r = parse_rational(radius)?;
            let report = bhg::probe_openness(a, *h, *g, *samples, &r, *seed)?;
            if csv {
                for (g_max, freq) in &report.frequencies {
                    writeln!(out, "{g_max},{freq}")?;
                }
            } else {
                json_line(
                    out,
                    &ProbeOut {
                        kind: "evidence",
                        center: report.center.coords(),
                        h: report.h,
                        g: report.g,
                        samples: report.samples,
                        radius: format_rational(&report.radius),
                        seed: report.seed,
                        frequencies: &report.frequencies,
                        min_g_max: report.min_g_max,
                        max_g_max: report.max_g_max,
                        counterexamples: report
                            .counterexamples
                            .iter()
                            .map(|(index, v)| Counterexample {
                                index: *index,
                                vector: v.coords(),
                            })
                            .collect(),
                    },
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Compositions { .. } | Command::Sample { .. } => unreachable!("handled without stdin"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut argv = vec!["bhsets"];
        argv.extend_from_slice(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_verdicts() {
        let (code, out, _) = call(&["check", "--h", "2"], r#"["1","3","9"]"#);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"is_bh\":true,\"distinct_coords\":true,\"witness\":null}\n");
        let (code, out, _) = call(
            &["check", "--h", "2"],
            r#"{"backend":"rational","elements":["1","2","3"]}"#,
        );
        assert_eq!(code, 1);
        assert_eq!(
            out,
            "{\"is_bh\":false,\"distinct_coords\":true,\"witness\":[[1,0,1],[0,2,0]]}\n"
        );
    }

    #[test]
    fn compositions_lines() {
        let (code, out, _) = call(&["compositions", "--h", "1", "--n", "3"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "1,0,0\n0,1,0\n0,0,1\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["check"], "[1]").0, 2);
        assert_eq!(call(&["check", "--h", "2"], "").0, 2);
        assert_eq!(call(&["check", "--h", "2"], r#"["1/0"]"#).0, 2);
        assert_eq!(call(&["bogus"], "").0, 2);
        let (code, _, err) = call(&["check", "--h", "2", "--tolerance", "0.1"], "[1,2]");
        assert_eq!(code, 2);
        assert!(err.contains("tolerance"));
    }

    #[test]
    fn budget_exit() {
        assert_eq!(call(&["check", "--h", "6", "--budget", "10"], "[1,2,3]").0, 3);
        assert_eq!(call(&["compositions", "--h", "500", "--n", "500"], "").0, 3);
    }
}
