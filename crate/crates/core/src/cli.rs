//! The `seshadri` command-line front end.
//!
//! Every subcommand builds [`OutputRecord`]s and hands them to one of three
//! renderers (text, JSON lines, CSV). Exit codes: 0 success, 1 usage,
//! 2 domain error, 3 verification counterexample.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    compare_bounds, generic_main_value, nagata_plane_value, szemberg_dominance_threshold, szemberg_last_failure,
    BoundValue, PlaneStatus, NINE_POINT_NOTE,
};
use crate::catalog::{make_custom, SurfaceSpec};
use crate::error::Error;
use crate::exact::{RenderMode, Surd};
use crate::oracle::{
    classify_case, k3_case2_excluded, min_ratio_search_with, natural_m_max, verify_han_exhaustive_with,
    verify_theorem_with,
};
use crate::par::Execution;
use crate::pell::{fsst_applicable, pell_fundamental};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

const SEARCH_DISCLAIMER: &str =
    "values are minima over EL-Xu feasible multiplicity configurations inside the searched box, not Seshadri constants of actual curves";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "seshadri", version, about = "Exact bounds for multi-point Seshadri constants on Picard-number-one surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "SESHADRI_FORMAT", default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare every applicable bound for eps(X, L, r).
    Bounds(BoundsArgs),
    /// Run an exhaustive verification suite.
    Verify(VerifyArgs),
    /// Minimise dk/sum(m) over EL-Xu feasible configurations.
    Search(SearchArgs),
    /// Fundamental Pell solution and single-point bound for k.
    Pell {
        #[arg(long)]
        k: u64,
    },
    /// Least L^2 from which the floor bound beats the main bound.
    Threshold {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 10_000)]
        k_cap: u64,
    },
    /// Known values of eps(P2, O(1), r).
    #[command(name = "p2-table")]
    P2Table {
        #[arg(long, default_value_t = 12)]
        r_max: u64,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// L^2; comma-separated values give one record each.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u64>,
    /// p2 | k3:<k> | hyp:<deg> | ab:<d> | custom:<k>[,va]
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub digits: u32,
    /// Digits as printed in the literature: 2 when k > r, 3 when k <= r < 100, 4 otherwise.
    #[arg(long)]
    pub paper_mode: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem,
    Han,
    K3,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 20)]
    pub k_max: u64,
    #[arg(long, default_value_t = 10)]
    pub r_max: u64,
    #[arg(long, default_value_t = 5)]
    pub d_max: u64,
    /// Per-point multiplicity cap (default 8 for theorem, 12 for han).
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = 8)]
    pub s_max: usize,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub d_max: u64,
    /// Defaults to the largest multiplicity any feasible configuration can have.
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = 4)]
    pub digits: u32,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputEntry {
    pub name: String,
    pub exact: String,
    pub decimal: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub entries: Vec<OutputEntry>,
    pub notes: Vec<String>,
}

impl OutputRecord {
    fn new(command: &str, inputs: &[(&str, String)]) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            entries: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, exact: impl Into<String>, decimal: impl Into<String>, status: impl Into<String>) {
        self.entries.push(OutputEntry {
            name: name.into(),
            exact: exact.into(),
            decimal: decimal.into(),
            status: status.into(),
        });
    }

    fn push_surd(&mut self, name: impl Into<String>, value: &Surd, digits: u32, status: impl Into<String>) {
        self.push(name, value.to_string(), value.render(digits, RenderMode::Truncate), status);
    }

    fn inputs_text(&self) -> String {
        self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    command: &'a str,
    inputs: serde_json::Map<String, serde_json::Value>,
    entries: &'a [OutputEntry],
    notes: &'a [String],
}

pub fn render(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for rec in records {
                writeln!(out, "{} {}", rec.command, rec.inputs_text())?;
                let w_name = rec.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                let w_exact = rec.entries.iter().map(|e| e.exact.len()).max().unwrap_or(0);
                let w_dec = rec.entries.iter().map(|e| e.decimal.len()).max().unwrap_or(0);
                for e in &rec.entries {
                    let line = format!(
                        "  {:<w_name$}  {:<w_exact$}  {:<w_dec$}  {}",
                        e.name, e.exact, e.decimal, e.status
                    );
                    writeln!(out, "{}", line.trim_end())?;
                }
                for n in &rec.notes {
                    writeln!(out, "  note: {n}")?;
                }
            }
        }
        Format::Json => {
            for rec in records {
                let inputs = rec
                    .inputs
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                let json = JsonRecord {
                    command: &rec.command,
                    inputs,
                    entries: &rec.entries,
                    notes: &rec.notes,
                };
                writeln!(out, "{}", serde_json::to_string(&json).expect("records serialize"))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["command", "inputs", "name", "exact", "decimal", "status"])?;
            for rec in records {
                let inputs = rec.inputs_text();
                for e in &rec.entries {
                    w.write_record([&rec.command, &inputs, &e.name, &e.exact, &e.decimal, &e.status])?;
                }
                for n in &rec.notes {
                    w.write_record([rec.command.as_str(), &inputs, "note", "", "", n])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

fn status_of(value: &BoundValue, extra: &[(&str, bool)]) -> String {
    let mut flags: Vec<&str> = Vec::new();
    if value.conditional {
        flags.push("conditional");
    }
    if !value.attained {
        flags.push("supremum");
    }
    flags.extend(extra.iter().filter(|(_, on)| *on).map(|(n, _)| *n));
    if flags.is_empty() {
        "proven".to_string()
    } else {
        flags.join(",")
    }
}

fn paper_digits(k: u64, r: u64) -> u32 {
    if k > r {
        2
    } else if r < 100 {
        3
    } else {
        4
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn resolve_surface(k: Option<u64>, surface: Option<&str>) -> Result<SurfaceSpec, Failure> {
    match (k, surface) {
        (None, None) => Err(Failure::Usage("either --k or --surface is required".into())),
        (Some(k), None) => Ok(make_custom(k, false)?),
        (k, Some(text)) => {
            let spec: SurfaceSpec = text.parse()?;
            match k {
                Some(k) if k != spec.k => Err(Failure::Domain(Error::Domain(format!(
                    "--k {k} disagrees with surface {spec}, which has L^2 = {}",
                    spec.k
                )))),
                _ => Ok(spec),
            }
        }
    }
}

fn cmd_bounds(args: &BoundsArgs) -> Result<Vec<OutputRecord>, Failure> {
    let surfaces: Vec<SurfaceSpec> = if args.k.is_empty() {
        vec![resolve_surface(None, args.surface.as_deref())?]
    } else {
        args.k
            .iter()
            .map(|&k| resolve_surface(Some(k), args.surface.as_deref()))
            .collect::<Result<_, _>>()?
    };
    let mut records = Vec::new();
    for spec in &surfaces {
        for &r in &args.r {
            let k = spec.k;
            let digits = if args.paper_mode { paper_digits(k, r) } else { args.digits };
            let rep = compare_bounds(k, r, spec.flags())?;
            let mut rec = OutputRecord::new(
                "bounds",
                &[("k", k.to_string()), ("r", r.to_string()), ("surface", spec.to_string()), ("digits", digits.to_string())],
            );
            rec.push_surd("upper", &rep.upper.value, digits, "upper");
            for e in &rep.entries {
                let status = status_of(
                    &e.value,
                    &[("conjectural", e.conjectural), ("advisory", e.advisory), ("tie", e.ties_previous)],
                );
                rec.push_surd(e.name.to_string(), &e.value.value, digits, status);
            }
            for el in &rep.harbourne.elements {
                let name = match el.d {
                    Some(d) => format!("harbourne_set[{}; d={d}]", el.family),
                    None => format!("harbourne_set[{}]", el.family),
                };
                rec.push_surd(name, &Surd::from(el.value.clone()), digits, format!("member {el}"));
            }
            rec.notes.extend(rep.notes.iter().cloned());
            rec.notes.push(format!("surface: {}", spec.notes));
            records.push(rec);
        }
    }
    Ok(records)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(Vec<OutputRecord>, bool), Failure> {
    let exec = execution(args.sequential);
    match args.suite {
        Suite::Theorem => {
            let m_max = args.m_max.unwrap_or(8);
            let mut rec = OutputRecord::new(
                "verify",
                &[
                    ("suite", "theorem".into()),
                    ("k_max", args.k_max.to_string()),
                    ("r_max", args.r_max.to_string()),
                    ("d_max", args.d_max.to_string()),
                    ("m_max", m_max.to_string()),
                ],
            );
            let rep = verify_theorem_with(1..=args.k_max, 2..=args.r_max, args.d_max, m_max, exec)?;
            rec.push("configurations", rep.configurations.to_string(), "", "feasible");
            rec.push("sub_generic", rep.sub_generic.to_string(), "", "below main bound");
            rec.push("sub_generic_reduced", rep.sub_generic_reduced.to_string(), "", "ReducedCurve2b");
            rec.push("sub_generic_two_six", rep.sub_generic_two_six.to_string(), "", "TwoSix3");
            rec.push("violations", rep.violations.len().to_string(), "", "");
            for v in &rep.violations {
                rec.push("counterexample", format!("d={} k={} r={} m={}", v.d, v.k, v.r, v.m), "", v.reason.clone());
            }
            rec.notes.push(SEARCH_DISCLAIMER.into());
            let clean = rep.violations.is_empty();
            Ok((vec![rec], clean))
        }
        Suite::Han => {
            let m_max = args.m_max.unwrap_or(12);
            let mut rec = OutputRecord::new(
                "verify",
                &[("suite", "han".into()), ("s_max", args.s_max.to_string()), ("m_max", m_max.to_string())],
            );
            let rep = verify_han_exhaustive_with(args.s_max, m_max, exec)?;
            rec.push("checked", rep.checked.to_string(), "", "vectors");
            rec.push("applicable", rep.applicable.to_string(), "", "vectors");
            rec.push("counterexamples", rep.counterexamples.len().to_string(), "", "");
            for m in &rep.equality_witnesses {
                rec.push("equality", m.to_string(), "", "holds with equality");
            }
            for m in &rep.counterexamples {
                rec.push("counterexample", m.to_string(), "", "inequality fails");
            }
            let clean = rep.counterexamples.is_empty();
            Ok((vec![rec], clean))
        }
        Suite::K3 => {
            let mut rec = OutputRecord::new(
                "verify",
                &[
                    ("suite", "k3".into()),
                    ("k_max", args.k_max.to_string()),
                    ("r_max", args.r_max.to_string()),
                    ("d_max", args.d_max.to_string()),
                ],
            );
            let mut cases = 0u64;
            let mut open = Vec::new();
            for k in (2..=args.k_max).step_by(2) {
                for r in 3..=args.r_max {
                    let ex = k3_case2_excluded(k, r, args.d_max)?;
                    cases += ex.trace.len() as u64;
                    if !ex.excluded {
                        open.push((k, r));
                    }
                }
            }
            rec.push("cases", cases.to_string(), "", "(k, r, d, s) replayed");
            rec.push("open", open.len().to_string(), "", "");
            for (k, r) in &open {
                rec.push("counterexample", format!("k={k} r={r}"), "", "exclusion argument did not close");
            }
            let clean = open.is_empty();
            Ok((vec![rec], clean))
        }
    }
}

fn cmd_search(args: &SearchArgs) -> Result<Vec<OutputRecord>, Failure> {
    let spec = resolve_surface(args.k, args.surface.as_deref())?;
    let k = spec.k;
    let m_max = args.m_max.unwrap_or_else(|| natural_m_max(k, args.d_max));
    let res = min_ratio_search_with(k, args.r, args.d_max, m_max, execution(args.sequential))?;
    let mut rec = OutputRecord::new(
        "search",
        &[
            ("k", k.to_string()),
            ("r", args.r.to_string()),
            ("d_max", args.d_max.to_string()),
            ("m_max", m_max.to_string()),
        ],
    );
    rec.push_surd("minimum", &Surd::from(res.minimum.clone()), args.digits, "candidate-level");
    for (d, m) in &res.witnesses {
        let label = match classify_case(*d, k, args.r, m) {
            Ok(label) => label.to_string(),
            Err(e) => e.to_string(),
        };
        rec.push("witness", format!("d={d} m={m}"), "", label);
    }
    rec.notes.push(SEARCH_DISCLAIMER.into());
    Ok(vec![rec])
}

fn cmd_pell(k: u64) -> Result<Vec<OutputRecord>, Failure> {
    let sol = pell_fundamental(k)?;
    let mut rec = OutputRecord::new("pell", &[("k", k.to_string())]);
    rec.push("p0", sol.p0.to_string(), "", "");
    rec.push("q0", sol.q0.to_string(), "", "");
    let bound = Surd::from(crate::exact::Rational::new(&sol.p0 * k, sol.q0.clone()));
    let status = match fsst_applicable(k) {
        Some(_) => "proved",
        None => "conjectural",
    };
    rec.push_surd("single_point_bound", &bound, 4, status);
    match fsst_applicable(k) {
        Some(w) => rec.push("fsst", w.to_string(), "", "applicable"),
        None => rec.push("fsst", "none", "", "not applicable"),
    }
    Ok(vec![rec])
}

fn cmd_threshold(r: u64, k_cap: u64) -> Result<Vec<OutputRecord>, Failure> {
    let t = szemberg_dominance_threshold(r, k_cap)?;
    let mut rec = OutputRecord::new("threshold", &[("r", r.to_string()), ("k_cap", k_cap.to_string())]);
    match t {
        Some(t) => rec.push(
            "threshold",
            t.n.to_string(),
            "",
            if t.stable_beyond_cap { "stable" } else { "within cap only" },
        ),
        None => rec.push("threshold", "none", "", "no dominance tail within cap"),
    }
    rec.notes.push(format!(
        "last k where the main bound beats the floor bound: {}",
        szemberg_last_failure(r)
    ));
    Ok(vec![rec])
}

fn cmd_p2_table(r_max: u64) -> Result<Vec<OutputRecord>, Failure> {
    let mut rec = OutputRecord::new("p2-table", &[("r_max", r_max.to_string())]);
    for r in 1..=r_max {
        let v = nagata_plane_value(r)?;
        let mut status = v.status.to_string();
        if r >= 2 && v.status != PlaneStatus::Conjectural && v.value.value < generic_main_value(1, r) {
            status.push_str(",below_main");
        }
        rec.push_surd(format!("r={r}"), &v.value.value, 4, status);
    }
    if r_max >= 9 {
        rec.notes.push(NINE_POINT_NOTE.into());
    }
    Ok(vec![rec])
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Bounds(a) => cmd_bounds(a).map(|r| (r, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a).map(|r| (r, true)),
        Command::Pell { k } => cmd_pell(*k).map(|r| (r, true)),
        Command::Threshold { r, k_cap } => cmd_threshold(*r, *k_cap).map(|r| (r, true)),
        Command::P2Table { r_max } => cmd_p2_table(*r_max).map(|r| (r, true)),
    };
    match outcome {
        Ok((records, clean)) => {
            if let Err(e) = render(&records, cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if clean {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
