//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (or an internal
//! inconsistency of the map), 2 usage or parse error, 3 cap or
//! precondition error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{Convention, Settings};
use crate::error::Error;
use crate::map::{fiber_images, forward_map, source_weight, InverseRoute};
use crate::order::{djm_leq, dominance_leq, hasse_edges, PosetEdges};
use crate::partition::{
    enumerate_bipartitions, enumerate_xn, parse_bipartition, parse_partition, Bipartition,
    Partition, XnElement, DEFAULT_CAP,
};
use crate::verify::{self, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "t0-swap")]
    T0Swap,
    #[value(name = "t0-keep")]
    T0Keep,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::T0Swap => Convention::SwapAtZero,
            ConventionArg::T0Keep => Convention::KeepAtZero,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spin-springer", version, about = "Generalized Springer correspondence for spin groups")]
pub struct CliConfig {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Which component comes first when t = 0.
    #[arg(long, global = true, value_enum, default_value = "t0-swap")]
    pub convention: ConventionArg,

    /// Largest size any enumeration may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Image of a partition in X_n.
    Map { partition: String },
    /// Preimage of a bipartition in the fiber over t.
    Invert {
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        bipartition: String,
    },
    /// Members of X_n.
    EnumXn { n: u64 },
    /// Bipartitions of m.
    EnumBipartitions { m: u64 },
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Theorem violation counts for each t in a range.
    ScanThreshold {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        t_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: i64,
    },
    /// Check the order-reversing pair at defect t.
    Counterexample {
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    #[command(subcommand)]
    Hasse(HasseCommand),
}

#[derive(Debug, Args)]
pub struct MtArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: i64,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Bijection {
        #[arg(long)]
        n: u64,
    },
    Lemma1(MtArgs),
    Lemma2(MtArgs),
    Theorem(MtArgs),
}

#[derive(Debug, Subcommand)]
pub enum HasseCommand {
    /// Dominance order on X_n.
    Xn {
        #[arg(long)]
        n: u64,
    },
    /// Bipartition order on bipartitions of m, or the order induced at t.
    Bipartitions {
        #[arg(long)]
        m: u64,
        #[arg(long, requires = "t")]
        induced: bool,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(code: i32, message: String) -> Self {
        Outcome { code, stdout: String::new(), stderr: message }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Parse { .. } => EXIT_USAGE,
        Error::CapExceeded { .. }
        | Error::Precondition(_)
        | Error::WeightMismatch { .. }
        | Error::NotInXn(_) => EXIT_PRECONDITION,
        Error::InvariantViolation { .. }
        | Error::Ambiguous { .. }
        | Error::NotFound { .. }
        | Error::Antisymmetry { .. } => EXIT_FAILED,
    }
}

/// Parses `argv` (including the program name) and runs the command. Uses
/// [`Settings::from_env`] for the worker count.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(config) => config,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(EXIT_USAGE, rendered)
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let settings = Settings::from_env()
        .with_cap(config.cap)
        .with_convention(config.convention.into());
    run_config(&config, &settings)
}

pub fn run_config(config: &CliConfig, settings: &Settings) -> Outcome {
    if config.format == Format::Dot && !matches!(config.command, Command::Hasse(_)) {
        return Outcome::error(EXIT_USAGE, "--format dot is only valid for hasse\n".to_string());
    }
    match execute(config, settings) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(exit_code(&e), format!("error: {e}\n")),
    }
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn json_line(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes") + "\n"
}

fn render_report(report: &VerificationReport, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => report.to_json() + "\n",
        _ => {
            let mut out = String::new();
            let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "check={} {} passed={}", report.check, params.join(" "), report.passed);
            for (k, v) in &report.counters {
                let _ = writeln!(out, "  {k}={v}");
            }
            for v in &report.violations {
                let _ = writeln!(out, "  violation {}", serde_json::to_string(v).expect("violation serializes"));
            }
            out
        }
    };
    Outcome {
        code: if report.passed { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    }
}

/// Graphviz rendering: one node per element, one arc per cover pair from
/// the lower element to the upper one.
pub fn emit_dot<T>(edges: &PosetEdges<T>, labels: &[String]) -> String {
    let mut out = String::from("digraph hasse {\n");
    for (i, label) in labels.iter().enumerate().take(edges.elements.len()) {
        let _ = writeln!(out, "  n{i} [label={label:?}];");
    }
    for &(lo, hi) in &edges.cover_pairs {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

fn render_hasse<T: ToString>(edges: &PosetEdges<T>, format: Format) -> String {
    let labels: Vec<String> = edges.elements.iter().map(ToString::to_string).collect();
    match format {
        Format::Dot => emit_dot(edges, &labels),
        Format::Json => json_line(&json!({
            "elements": labels,
            "cover_pairs": edges.cover_pairs,
        })),
        Format::Text => lines(
            edges
                .cover_pairs
                .iter()
                .map(|&(lo, hi)| format!("{} < {}", labels[lo], labels[hi])),
        ),
    }
}

fn execute(config: &CliConfig, settings: &Settings) -> crate::error::Result<Outcome> {
    let format = config.format;
    let out = match &config.command {
        Command::Map { partition } => {
            let lambda = XnElement::new(parse_partition(partition)?)?;
            let image = forward_map(&lambda, settings.convention)?;
            match format {
                Format::Json => json_line(&json!({
                    "partition": lambda.partition(),
                    "t": image.t,
                    "bipartition": image.bipartition,
                    "alpha_raw": image.alpha_raw,
                    "beta_raw": image.beta_raw,
                    "convention": settings.convention.name(),
                })),
                _ => format!("t={} {}\n", image.t, image.bipartition),
            }
        }
        Command::Invert { t, bipartition } => {
            let bp = parse_bipartition(bipartition)?;
            let m = bp.weight();
            let closed = *t >= 0 && *t as u64 >= m;
            let route = if closed { "closed_form" } else { "brute_force" };
            let lambda = fiber_images(std::slice::from_ref(&bp), m, *t, InverseRoute::Auto, settings)?
                .pop()
                .expect("one target");
            match format {
                Format::Json => json_line(&json!({
                    "bipartition": bp,
                    "t": t,
                    "n": source_weight(m, *t),
                    "route": route,
                    "partition": lambda.partition(),
                })),
                _ => format!("{lambda}\n"),
            }
        }
        Command::EnumXn { n } => {
            let all: Vec<Partition> = enumerate_xn(*n, settings.cap)?
                .map(XnElement::into_partition)
                .collect();
            match format {
                Format::Json => json_line(&json!(all)),
                _ => lines(&all),
            }
        }
        Command::EnumBipartitions { m } => {
            let all: Vec<Bipartition> = enumerate_bipartitions(*m, settings.cap)?.collect();
            match format {
                Format::Json => json_line(&json!(all)),
                _ => lines(&all),
            }
        }
        Command::Verify(cmd) => {
            let report = match cmd {
                VerifyCommand::Bijection { n } => verify::verify_bijection(*n, settings)?,
                VerifyCommand::Lemma1(a) => verify::verify_lemma1(a.m, a.t, settings)?,
                VerifyCommand::Lemma2(a) => verify::verify_lemma2(a.m, a.t, settings)?,
                VerifyCommand::Theorem(a) => verify::verify_theorem(a.m, a.t, settings)?,
            };
            return Ok(render_report(&report, format));
        }
        Command::ScanThreshold { m, t_min, t_max } => {
            let scan = verify::scan_threshold(*m, *t_min, *t_max, settings)?;
            match format {
                Format::Json => json_line(&json!({
                    "m": m,
                    "threshold": verify::theorem_threshold(*m),
                    "counts": scan
                        .iter()
                        .map(|&(t, violations)| json!({"t": t, "violations": violations}))
                        .collect::<Vec<_>>(),
                })),
                _ => lines(scan.iter().map(|(t, c)| format!("t={t} violations={c}"))),
            }
        }
        Command::Counterexample { t } => {
            let report = verify::reproduce_counterexample(*t, settings)?;
            return Ok(render_report(&report, format));
        }
        Command::Hasse(HasseCommand::Xn { n }) => {
            let all: Vec<Partition> = enumerate_xn(*n, settings.cap)?
                .map(XnElement::into_partition)
                .collect();
            render_hasse(&hasse_edges(&all, dominance_leq)?, format)
        }
        Command::Hasse(HasseCommand::Bipartitions { m, induced, t }) => {
            let all: Vec<Bipartition> = enumerate_bipartitions(*m, settings.cap)?.collect();
            let edges = match (induced, t) {
                (true, Some(t)) => {
                    let images = fiber_images(&all, *m, *t, InverseRoute::Auto, settings)?;
                    let index: Vec<usize> = (0..all.len()).collect();
                    let ranked = hasse_edges(&index, |&i, &j| dominance_leq(&images[i], &images[j]))?;
                    PosetEdges {
                        elements: all,
                        cover_pairs: ranked.cover_pairs,
                    }
                }
                _ => hasse_edges(&all, djm_leq)?,
            };
            render_hasse(&edges, format)
        }
    };
    Ok(Outcome::ok(out))
}
