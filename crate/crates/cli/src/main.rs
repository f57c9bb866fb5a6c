//! `invmetrics`: batch front end for the invariant-metrics library.
//!
//! Every command writes one JSON document to stdout (or `--out`). Exit
//! codes: 0 success, 2 domain or membership error, 3 parse or configuration
//! error, 4 numerical contradiction (the document is still written).

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "invmetrics", version, about = "Carathéodory / Kobayashi invariants on domains in C^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Domain document (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Second (target) domain document.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec2: Option<PathBuf>,
    /// Point of C^2 as RE,IM,RE,IM; repeatable.
    #[arg(long = "point", global = true, value_name = "RE,IM,RE,IM", allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Tangent vector as RE,IM,RE,IM.
    #[arg(long, global = true, value_name = "RE,IM,RE,IM", allow_hyphen_values = true)]
    pub vector: Option<String>,
    /// Map document (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub map: Option<PathBuf>,
    /// Grid document (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub grid: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 4)]
    pub degree: usize,
    #[arg(long, global = true, default_value_t = 20_000)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Command-specific tolerance (classification, line deduplication).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the document here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Carathéodory distance between two --point values.
    Dist,
    /// Carathéodory metric at --point along --vector.
    Metric,
    /// Indicatrix functionals and kernel lines at --point.
    Indicatrix,
    /// Face through the indicatrix boundary point --vector, base --point.
    Faces,
    /// Classify a map: a linear map alone, or at each --point of --spec.
    Classify,
    /// Global holomorphy verdict for --map from --spec to --spec2 on --grid.
    IsometryCheck,
    /// Lempert (or, with --vector, metric) upper bound and gap.
    LempertGap,
    /// Image of the unit circle under z -> a z + b conj(z).
    #[command(alias = "lemma4")]
    CircleImage {
        /// RE or RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// RE or RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command, &cli.opts) {
        Ok(Outcome { document, contradiction }) => {
            if let Err(e) = emit(&document, &cli.opts) {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
            if let Some(msg) = contradiction {
                eprintln!("contradiction: {msg}");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(document: &Value, opts: &Options) -> Result<(), CliError> {
    let mut text = if opts.pretty {
        table(document)
    } else {
        serde_json::to_string(document).expect("JSON values always serialize")
    };
    text.push('\n');
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write output: {e}"))),
    }
}

/// One `path  value` row per scalar leaf.
fn table(v: &Value) -> String {
    fn walk(v: &Value, path: &str, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, &p, rows);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), rows);
                }
            }
            scalar => rows.push((path.to_string(), scalar.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk(v, "", &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}
