//! Command-line front end: `ftkit validate|cutsets|quantify|coherence`.
//!
//! Exit codes are a stable contract: 0 on success, 1 when parsing,
//! validation, or analysis fails, 2 for i/o and usage errors. The env var
//! `FTKIT_NODE_BUDGET` overrides the BDD node cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bdd::DEFAULT_NODE_BUDGET;
use crate::coherence::{coherence_check, CoherenceCondition};
use crate::error::Error;
use crate::model::{EventId, FaultTree};
use crate::parse::parse_tree;
use crate::quantify::{IeOrder, NotFrequencyPolicy, QMethod, QuantConfig};
use crate::report::{analyze, derive_sets, Derivation};
use crate::validate::validate;

#[derive(Parser)]
#[command(
    name = "ftkit",
    version,
    about = "Fault-tree analysis: cut sets, prime implicants, and top-event quantification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Top-down table expansion: minimal cut sets
    Mocus,
    /// BDD construction: prime implicants
    Bdd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QMethodArg {
    Exact,
    EpCommon,
    Ep,
    RareEvent,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum NotFreqArg {
    /// Negated literals carry no frequency (enabling conditions)
    #[default]
    Zero,
    /// Negated literals mirror the event's own frequency
    Mirror,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fault-tree document; print diagnostics one per line
    Validate { file: PathBuf },

    /// List minimal cut sets or prime implicants
    Cutsets {
        file: PathBuf,
        /// How to derive the sets
        #[arg(long, value_enum, default_value_t = MethodArg::Mocus)]
        method: MethodArg,
        /// Strip negated literals from prime implicants and re-minimize
        #[arg(long)]
        coherent_approx: bool,
        /// Comma-separated BDD variable order (default: declaration order)
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Write the BDD as a graph description to this path
        #[arg(long)]
        export_bdd: Option<PathBuf>,
    },

    /// Compute per-set and top-event unavailability and frequency
    Quantify {
        file: PathBuf,
        /// How to derive the sets being quantified
        #[arg(long, value_enum, default_value_t = MethodArg::Mocus)]
        method: MethodArg,
        /// Strip negated literals from prime implicants and re-minimize
        #[arg(long)]
        coherent_approx: bool,
        /// Comma-separated BDD variable order (default: declaration order)
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Top-event unavailability method(s) to report
        #[arg(long = "q-method", value_enum, default_value_t = QMethodArg::All)]
        q_method: QMethodArg,
        /// Mission time in hours (overrides the document)
        #[arg(long = "time-hours")]
        time_hours: Option<f64>,
        /// Frequency contribution of negated literals
        #[arg(long = "not-frequency", value_enum, default_value_t)]
        not_frequency: NotFreqArg,
        /// Truncate inclusion-exclusion at this intersection order
        #[arg(long = "ie-order")]
        ie_order: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        /// Display frequencies per year instead of per hour
        #[arg(long = "per-year")]
        per_year: bool,
    },

    /// Check the three coherence conditions exhaustively
    Coherence {
        file: PathBuf,
        /// Maximum number of events the exhaustive check will accept
        #[arg(long, default_value_t = crate::coherence::DEFAULT_EVENT_LIMIT)]
        limit: usize,
    },
}

/// Entry point for the binary: reads real args, env, and stdio.
pub fn run_from_env() -> i32 {
    let args: Vec<OsString> = std::env::args_os().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against explicit arguments and output sinks; returns the
/// process exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };

    let node_budget = match node_budget_from_env() {
        Ok(b) => b,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return 2;
        }
    };

    match dispatch(cli.command, node_budget, out) {
        Ok(code) => code,
        Err(CmdError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct CmdError {
    code: i32,
    message: String,
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn node_budget_from_env() -> Result<usize, String> {
    match std::env::var("FTKIT_NODE_BUDGET") {
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("FTKIT_NODE_BUDGET must be a positive integer, got `{raw}`")),
    }
}

fn read_tree(path: &Path) -> Result<FaultTree, CmdError> {
    let text = std::fs::read_to_string(path).map_err(|e| CmdError {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(parse_tree(&text)?)
}

fn event_order(order: Option<Vec<String>>) -> Option<Vec<EventId>> {
    order.map(|names| names.into_iter().map(EventId).collect())
}

fn derivation_of(method: MethodArg, coherent_approx: bool) -> Result<Derivation, CmdError> {
    match (method, coherent_approx) {
        (MethodArg::Mocus, false) => Ok(Derivation::Mocus),
        (MethodArg::Bdd, false) => Ok(Derivation::Bdd),
        (MethodArg::Bdd, true) => Ok(Derivation::BddCoherentApprox),
        (MethodArg::Mocus, true) => Err(CmdError {
            code: 2,
            message: "--coherent-approx requires --method bdd".to_string(),
        }),
    }
}

fn dispatch(command: Command, node_budget: usize, out: &mut dyn Write) -> Result<i32, CmdError> {
    match command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Cutsets {
            file,
            method,
            coherent_approx,
            order,
            export_bdd,
        } => cmd_cutsets(&file, method, coherent_approx, order, export_bdd, node_budget, out),
        Command::Quantify {
            file,
            method,
            coherent_approx,
            order,
            q_method,
            time_hours,
            not_frequency,
            ie_order,
            format,
            per_year,
        } => {
            let derivation = derivation_of(method, coherent_approx)?;
            if ie_order == Some(0) {
                return Err(CmdError {
                    code: 2,
                    message: "--ie-order must be at least 1".to_string(),
                });
            }
            let methods: Vec<QMethod> = match q_method {
                QMethodArg::Exact => vec![QMethod::ExactIe],
                QMethodArg::EpCommon => vec![QMethod::EpCommon],
                QMethodArg::Ep => vec![QMethod::Ep],
                QMethodArg::RareEvent => vec![QMethod::RareEvent],
                QMethodArg::All => QMethod::ALL.to_vec(),
            };
            let cfg = QuantConfig {
                q_method: methods[0],
                ie_max_order: match ie_order {
                    Some(k) => IeOrder::Bounded(k),
                    None => IeOrder::Auto,
                },
                not_frequency_policy: match not_frequency {
                    NotFreqArg::Zero => NotFrequencyPolicy::Zero,
                    NotFreqArg::Mirror => NotFrequencyPolicy::Mirror,
                },
                mission_time_hours: time_hours,
            };
            let tree = read_tree(&file)?;
            let order = event_order(order);
            let report = analyze(&tree, derivation, &methods, &cfg, order.as_deref(), node_budget)?;
            match format {
                FormatArg::Table => write!(out, "{}", report.to_table(per_year))?,
                FormatArg::Machine => writeln!(out, "{}", report.to_machine())?,
            }
            Ok(0)
        }
        Command::Coherence { file, limit } => cmd_coherence(&file, limit, out),
    }
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Result<i32, CmdError> {
    let text = std::fs::read_to_string(file).map_err(|e| CmdError {
        code: 2,
        message: format!("cannot read {}: {e}", file.display()),
    })?;
    match parse_tree(&text) {
        Ok(tree) => {
            // parse only rejects error-severity findings; surface warnings
            for diagnostic in validate(&tree) {
                writeln!(out, "{diagnostic}")?;
            }
            writeln!(
                out,
                "ok: {} events, {} gates, top `{}`",
                tree.events.len(),
                tree.gates.len(),
                tree.top
            )?;
            Ok(0)
        }
        Err(Error::Invalid(diagnostics)) => {
            for diagnostic in diagnostics {
                writeln!(out, "{diagnostic}")?;
            }
            Ok(1)
        }
        Err(e) => Err(CmdError {
            code: 1,
            message: e.to_string(),
        }),
    }
}

fn cmd_cutsets(
    file: &Path,
    method: MethodArg,
    coherent_approx: bool,
    order: Option<Vec<String>>,
    export_bdd: Option<PathBuf>,
    node_budget: usize,
    out: &mut dyn Write,
) -> Result<i32, CmdError> {
    let derivation = derivation_of(method, coherent_approx)?;
    if export_bdd.is_some() && method != MethodArg::Bdd {
        return Err(CmdError {
            code: 2,
            message: "--export-bdd requires --method bdd".to_string(),
        });
    }
    let tree = read_tree(file)?;
    let order = event_order(order);
    let (sets, bdd) = derive_sets(&tree, derivation, order.as_deref(), node_budget)?;

    let label = match derivation {
        Derivation::Mocus => "minimal cut sets",
        Derivation::Bdd => "prime implicants",
        Derivation::BddCoherentApprox => "minimal cut sets (coherent approximation)",
    };
    writeln!(out, "{label} ({}):", sets.len())?;
    for set in sets.sorted_members() {
        writeln!(out, "  {set}")?;
    }

    if let Some(path) = export_bdd {
        let graph = bdd.expect("bdd derivation retains the graph");
        std::fs::write(&path, graph.export_graph()).map_err(|e| CmdError {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        writeln!(out, "bdd graph written to {}", path.display())?;
    }
    Ok(0)
}

fn cmd_coherence(file: &Path, limit: usize, out: &mut dyn Write) -> Result<i32, CmdError> {
    let tree = read_tree(file)?;
    let report = match coherence_check(&tree, limit) {
        Ok(report) => report,
        Err(e @ Error::TooManyEvents { .. }) => {
            return Err(CmdError {
                code: 1,
                message: format!("{e}; raise it with --limit"),
            })
        }
        Err(e) => return Err(e.into()),
    };

    writeln!(out, "coherent: {}", if report.coherent { "yes" } else { "no" })?;
    if !report.irrelevant_events.is_empty() {
        let names: Vec<&str> = report.irrelevant_events.iter().map(|e| e.as_str()).collect();
        writeln!(out, "irrelevant events: {}", names.join(", "))?;
    }
    for violation in &report.violations {
        match (&violation.condition, &violation.event) {
            (CoherenceCondition::Relevance, Some(event)) => {
                writeln!(out, "violation: relevance — `{event}` never affects the top event")?;
            }
            (condition, Some(event)) => {
                writeln!(out, "violation: {condition} at `{event}`")?;
            }
            (condition, None) => {
                writeln!(out, "violation: {condition}")?;
            }
        }
        for (i, witness) in violation.witnesses.iter().enumerate() {
            let rendered: Vec<String> = witness
                .iter()
                .map(|(event, value)| format!("{event}={}", if *value { 1 } else { 0 }))
                .collect();
            let tag = match (violation.condition, i) {
                (CoherenceCondition::Monotonicity, 0) => "witness (before flip)",
                (CoherenceCondition::Monotonicity, _) => "witness (after flip) ",
                _ => "witness",
            };
            writeln!(out, "  {tag}: {}", rendered.join(", "))?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_strings(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn fixture(name: &str) -> String {
        format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn validate_ok() {
        let (code, out, _) = run_to_strings(&["ftkit", "validate", &fixture("sif.json")]);
        assert_eq!(code, 0);
        assert!(out.contains("ok: 7 events, 5 gates"));
    }

    #[test]
    fn missing_file_is_exit_2() {
        let (code, _, err) = run_to_strings(&["ftkit", "validate", "/no/such/file.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn usage_error_is_exit_2() {
        let (code, _, err) = run_to_strings(&["ftkit", "cutsets"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn coherent_approx_needs_bdd() {
        let (code, _, err) = run_to_strings(&[
            "ftkit",
            "cutsets",
            &fixture("gas_leakage.json"),
            "--coherent-approx",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("--method bdd"));
    }

    #[test]
    fn cutsets_bdd_lists_prime_implicants() {
        let (code, out, _) = run_to_strings(&[
            "ftkit",
            "cutsets",
            &fixture("gas_leakage.json"),
            "--method",
            "bdd",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("prime implicants (3):"));
        assert!(out.contains("{L, R, !V}"));
        assert!(out.contains("{I, L, R}"));
    }

    #[test]
    fn help_is_exit_0() {
        let (code, out, _) = run_to_strings(&["ftkit", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("validate"));
        assert!(out.contains("quantify"));
    }
}
