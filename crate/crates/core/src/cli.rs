//! Command-line interface. Exit codes are the machine contract; see
//! [`run`].

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructor::{construct_traced, feasibility, Method};
use crate::dot::to_dot;
use crate::error::Error;
use crate::group::GroupParams;
use crate::labeling::{verify, Labeling, LabelingDocument, Shape};
use crate::oracle::{enumerate_table, search, search_naive, Outcome, SearchBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGETED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rainbow", version, about = "Rainbow labelings of three-spine caterpillars over Z_p^k")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a labeling.
    Label {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Print how the labeling was built to stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Decide feasibility without constructing.
    Feasible {
        #[command(flatten)]
        instance: Instance,
    },
    /// Run the exhaustive search.
    Oracle {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        timeout_ms: Option<u64>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Try every spine triple instead of the canonical models.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Tabulate predicate and search verdicts for every shape.
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: u32,
        /// Exit nonzero if the predicate and the search disagree anywhere.
        #[arg(long)]
        cross_check: bool,
        /// Per-shape time limit.
        #[arg(long)]
        timeout_ms: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check a labeling file ("-" for stdin).
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub k: u32,
    /// Hair counts h1,h2,h3 in spine order.
    #[arg(long, value_parser = parse_hairs)]
    pub hairs: [u64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

fn parse_hairs(s: &str) -> Result<[u64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected h1,h2,h3, got {s:?}"));
    }
    let mut h = [0u64; 3];
    for (slot, part) in h.iter_mut().zip(parts) {
        *slot = part
            .parse()
            .map_err(|e| format!("bad hair count {part:?}: {e}"))?;
    }
    Ok(h)
}

fn instance(inst: &Instance) -> crate::Result<(GroupParams, Shape)> {
    let params = GroupParams::new(inst.p, inst.k)?;
    let shape = Shape::new(&params, inst.hairs)?;
    Ok((params, shape))
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_) => EXIT_NO,
        Error::ConstructionFailed(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn render_text(params: &GroupParams, shape: &Shape, lab: &Labeling) -> String {
    let list = |v: &[crate::group::Element]| {
        v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut s = format!("C{shape} over Z_{}^{}\n", params.p(), params.k());
    s += &format!("spine: {}\n", list(&lab.spine));
    s += &format!("x: {}\n", list(&lab.hairs.x));
    s += &format!("y: {}\n", list(&lab.hairs.y));
    s += &format!("z: {}\n", list(&lab.hairs.z));
    if let Ok(report) = verify(params, shape, lab) {
        if let Some(m) = report.missing_edge_label {
            s += &format!("missing edge label: {m}\n");
        }
    }
    s
}

/// Executes a parsed command. Data goes to `out`, diagnostics to `err`.
///
/// Exit codes: 0 success (found / feasible / valid), 1 negative answer
/// (infeasible / invalid / disagreement), 2 usage or input error,
/// 3 search budget exhausted, 4 internal construction failure.
pub fn run(cli: Cli, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut (dyn Write + Send), err: &mut dyn Write) -> crate::Result<i32> {
    match cli.command {
        Command::Label { instance: inst, format, verbose } => {
            let (params, shape) = instance(&inst)?;
            let c = match construct_traced(&params, &shape) {
                Ok(c) => c,
                Err(Error::Infeasible(v)) => {
                    let tag = v.exception.map(|t| t.as_str()).unwrap_or("unknown");
                    let _ = writeln!(out, "infeasible: {tag}");
                    let _ = writeln!(err, "{}", v.detail);
                    return Ok(EXIT_NO);
                }
                Err(e) => return Err(e),
            };
            if verbose {
                let _ = writeln!(err, "{}", method_json(&c.method));
            }
            let text = match format {
                OutputFormat::Text => render_text(&params, &shape, &c.labeling),
                OutputFormat::Json => {
                    LabelingDocument::new(params, shape, &c.labeling).to_json() + "\n"
                }
                OutputFormat::Dot => to_dot(&params, &c.labeling),
            };
            let _ = out.write_all(text.as_bytes());
            Ok(EXIT_OK)
        }
        Command::Feasible { instance: inst } => {
            let (params, shape) = instance(&inst)?;
            let v = feasibility(&params, &shape)?;
            match v.exception {
                None => {
                    let _ = writeln!(out, "feasible");
                }
                Some(t) => {
                    let _ = writeln!(out, "infeasible: {t}");
                }
            }
            let _ = writeln!(out, "reason: {}", v.detail);
            Ok(if v.feasible { EXIT_OK } else { EXIT_NO })
        }
        Command::Oracle {
            instance: inst,
            timeout_ms,
            node_limit,
            no_symmetry,
        } => {
            let (params, shape) = instance(&inst)?;
            let budget = SearchBudget { timeout_ms, node_limit };
            let start = Instant::now();
            let v = if no_symmetry {
                search_naive(&params, &shape, &budget)?
            } else {
                search(&params, &shape, &budget)?
            };
            let ms = start.elapsed().as_millis();
            let _ = writeln!(out, "{}", v.outcome.name());
            let _ = writeln!(out, "nodes: {}", v.nodes_explored);
            let _ = writeln!(out, "models: {}", v.models_tried.len());
            let _ = writeln!(out, "elapsed_ms: {ms}");
            Ok(match v.outcome {
                Outcome::Found(lab) => {
                    let _ = writeln!(out, "{}", LabelingDocument::new(params, shape, &lab).to_json());
                    EXIT_OK
                }
                Outcome::ExhaustedInfeasible => EXIT_NO,
                Outcome::Budgeted => EXIT_BUDGETED,
            })
        }
        Command::Table {
            p,
            k,
            cross_check,
            timeout_ms,
            jobs,
        } => {
            let params = GroupParams::new(p, k)?;
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let budget = SearchBudget { timeout_ms, node_limit: None };
            let rows = enumerate_table(&params, &budget, jobs, |row| {
                let _ = writeln!(out, "{}", row.to_json());
                let _ = out.flush();
            })?;
            let disagreements = rows.iter().filter(|r| r.agree == Some(false)).count();
            let budgeted = rows.iter().filter(|r| r.agree.is_none()).count();
            let _ = writeln!(
                err,
                "{} rows, {disagreements} disagreements, {budgeted} budgeted",
                rows.len()
            );
            Ok(if cross_check && disagreements > 0 { EXIT_NO } else { EXIT_OK })
        }
        Command::Verify { input } => {
            let mut text = String::new();
            let read = if input.as_os_str() == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(&input).map(|t| text = t)
            };
            if let Err(e) = read {
                let _ = writeln!(err, "error: cannot read {}: {e}", input.display());
                return Ok(EXIT_USAGE);
            }
            let doc = LabelingDocument::from_json(&text)?;
            let shape = doc.shape;
            let report = verify(&doc.group, &shape, &doc.labeling())?;
            if report.valid {
                let _ = writeln!(out, "valid");
                if let Some(m) = report.missing_edge_label {
                    let _ = writeln!(out, "missing edge label: {m}");
                }
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(out, "invalid");
                if let Some((a, b)) = report.duplicate_vertex {
                    let _ = writeln!(out, "duplicate vertex label: {a:?} and {b:?}");
                }
                if let Some((a, b)) = report.duplicate_edge {
                    let _ = writeln!(out, "duplicate edge label: {a:?} and {b:?}");
                }
                Ok(EXIT_NO)
            }
        }
    }
}

fn method_json(m: &Method) -> String {
    serde_json::to_string_pretty(m).expect("method serializes")
}
