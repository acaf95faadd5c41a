//! Fault-tree analysis: qualitative cut-set generation, BDD-based prime
//! implicants, and probabilistic quantification of top events.
//!
//! The library works on fault trees read from a strict JSON document format
//! (see [`parse_tree`]) and offers:
//!
//! * basic-event models (fixed probability, failure-repair rate, dormant)
//!   with unavailability `q` and failure frequency `w` ([`event_model`]),
//! * normalization of arbitrary gate types to AND/OR over signed literals
//!   ([`normalize()`]),
//! * minimal cut sets via top-down table expansion ([`mocus()`]) and
//!   absorption-based minimization ([`minimize`]),
//! * reduced ordered BDDs with exact top-event probability and prime
//!   implicant extraction for non-coherent trees ([`bdd`]),
//! * coherence diagnosis by exhaustive evaluation ([`coherence_check`]),
//! * top-event unavailability under four methods (exact inclusion-exclusion,
//!   Esary-Proschan with and without common-event factoring, rare-event) and
//!   top-event frequency ([`quantify`]).
//!
//! The `ftkit` binary exposes all of this as `validate`, `cutsets`,
//! `quantify`, and `coherence` subcommands; the crate's `examples/`
//! directory shows one runnable program per capability.

pub mod bdd;
pub mod cli;
pub mod coherence;
pub mod error;
pub mod event_model;
pub mod implicant;
pub mod mocus;
pub mod model;
pub mod normalize;
pub mod parse;
pub mod quantify;
pub mod report;
pub mod validate;

pub use bdd::{bdd_prob, build_bdd, build_bdd_with_budget, prime_implicants,
    prime_implicants_with_budget, BddGraph, DEFAULT_NODE_BUDGET};
pub use coherence::{coherence_check, Assignment, CoherenceCondition, CoherenceReport,
    CoherenceViolation, DEFAULT_EVENT_LIMIT};
pub use error::Error;
pub use event_model::{measure_of, q_dormant, q_dormant_simplified, q_fixed, q_rate,
    BasicEventModel, Measure, HOURS_PER_YEAR};
pub use implicant::{coherent_mcs_from_pi, minimize, CutSet, ImplicantSet, SetKind};
pub use mocus::mocus;
pub use model::{EventId, FaultTree, Gate, GateId, GateKind, InputRef, Literal};
pub use normalize::{normalize, NormalizedTree};
pub use parse::{parse_tree, serialize_tree};
pub use quantify::{and_freq, event_measures, mcs_q, mcs_w, or_freq, quantify as quantify_sets,
    top_q, top_w, FreqMap, IeOrder, NotFrequencyPolicy, ProbMap, QMethod, QuantConfig,
    QuantResult, TopEstimate};
pub use report::{analyze, AnalysisReport, Derivation};
pub use validate::{validate, Diagnostic, DiagnosticKind, Severity};
