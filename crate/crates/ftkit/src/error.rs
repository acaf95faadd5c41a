//! Crate-wide error type.

use crate::validate::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The document text is not well-formed (bad JSON, wrong field types,
    /// unknown keys, duplicate keys). Position is 1-based.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// The document parsed but violates tree invariants; all diagnostics
    /// are carried along.
    #[error("invalid fault tree: {}", format_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),

    /// A model parameter or numeric argument is out of range.
    #[error("invalid parameter: {what}")]
    BadParameter { what: String },

    /// A `Rate` model needs a mission time but none was given (neither in
    /// the document nor on the command line).
    #[error("missing mission time: rate models need `mission_time_hours` in the document or an explicit time")]
    MissingMissionTime,

    /// A computation referenced an event with no entry in the supplied
    /// probability or frequency map.
    #[error("no {kind} value for event `{event}`")]
    MissingEventValue { event: String, kind: &'static str },

    /// BDD construction exceeded the node budget.
    #[error("BDD node budget of {budget} nodes exceeded")]
    NodeBudgetExceeded { budget: usize },

    /// The variable order given to the BDD builder does not cover the tree.
    #[error("variable order error: {what}")]
    BadVariableOrder { what: String },

    /// Exhaustive analysis was asked for more events than the limit allows.
    #[error("tree has {events} events, more than the limit of {limit} for exhaustive analysis")]
    TooManyEvents { events: usize, limit: usize },

    /// Top-event frequency is undefined because a cut set has Q = 1.
    #[error("cut set {set} has unavailability 1; top-event frequency is undefined")]
    DegenerateCutSet { set: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    let shown: Vec<String> = diags.iter().take(3).map(|d| d.to_string()).collect();
    let mut s = shown.join("; ");
    if diags.len() > 3 {
        s.push_str(&format!(" (and {} more)", diags.len() - 3));
    }
    s
}
