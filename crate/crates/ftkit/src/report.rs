//! Analysis reports: assembling quantification results for a tree and
//! rendering them as a human-readable table or a machine-readable JSON
//! document.

use serde::{Deserialize, Serialize};

use crate::bdd::{build_bdd_with_budget, prime_implicants_with_budget, BddGraph};
use crate::coherence::{coherence_check, CoherenceCondition, DEFAULT_EVENT_LIMIT};
use crate::error::Error;
use crate::event_model::HOURS_PER_YEAR;
use crate::implicant::{coherent_mcs_from_pi, minimize, ImplicantSet, SetKind};
use crate::mocus::mocus;
use crate::model::{EventId, FaultTree};
use crate::normalize::normalize;
use crate::quantify::{self, QMethod, QuantConfig};

/// Scientific notation with a six-digit mantissa fraction: `2.494063E-3`.
/// The only locale-independent formatter used for report numbers.
pub fn sci6(x: f64) -> String {
    format!("{:.6E}", x)
}

/// How the implicant sets were derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    /// Top-down table expansion plus absorption: minimal cut sets.
    Mocus,
    /// BDD prime implicants.
    Bdd,
    /// BDD prime implicants with negated literals stripped afterwards.
    BddCoherentApprox,
}

impl Derivation {
    pub fn label(&self) -> &'static str {
        match self {
            Derivation::Mocus => "mocus",
            Derivation::Bdd => "bdd",
            Derivation::BddCoherentApprox => "bdd+coherent-approx",
        }
    }
}

/// Echo of the configuration an analysis ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub derivation: String,
    pub q_methods: Vec<String>,
    pub not_frequency: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mission_time_hours: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variable_order: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerSetEntry {
    pub set: Vec<String>,
    pub q: f64,
    pub w: f64,
}

/// A complete, self-describing quantification report. All frequencies are
/// per hour; display conversion to per-year happens only in the table
/// renderer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree: Option<String>,
    pub config: ConfigEcho,
    /// Structural findings from validation (warning severity; anything
    /// stronger would have failed parsing).
    pub diagnostics: Vec<String>,
    /// Minimal cut sets (mocus or coherent approximation)...
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mcs: Option<Vec<Vec<String>>>,
    /// ...or prime implicants, depending on the derivation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pi: Option<Vec<Vec<String>>>,
    pub per_set: Vec<PerSetEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_exact_ie: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_ep_common: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_ep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_rare_event: Option<f64>,
    pub w_top: f64,
    pub frequency_unit: String,
    pub coherence: String,
    pub warnings: Vec<String>,
}

/// Derives the implicant sets of a tree. Returns the sets and, for the BDD
/// routes, the graph itself (for optional export).
pub fn derive_sets(
    tree: &FaultTree,
    derivation: Derivation,
    order: Option<&[EventId]>,
    node_budget: usize,
) -> Result<(ImplicantSet, Option<BddGraph>), Error> {
    let norm = normalize(tree)?;
    match derivation {
        Derivation::Mocus => {
            let raw = mocus(&norm);
            Ok((minimize(&raw), None))
        }
        Derivation::Bdd | Derivation::BddCoherentApprox => {
            let declaration_order = norm.vars().to_vec();
            let order = order.unwrap_or(&declaration_order);
            let bdd = build_bdd_with_budget(&norm, order, node_budget)?;
            let pis = prime_implicants_with_budget(&bdd, node_budget)?;
            let sets = if derivation == Derivation::BddCoherentApprox {
                coherent_mcs_from_pi(&pis)
            } else {
                pis
            };
            Ok((sets, Some(bdd)))
        }
    }
}

/// One-line coherence summary for quantification reports.
fn coherence_summary(tree: &FaultTree) -> String {
    let n = tree.events.len();
    if n > DEFAULT_EVENT_LIMIT {
        return format!("not checked ({n} events exceed the limit of {DEFAULT_EVENT_LIMIT})");
    }
    match coherence_check(tree, DEFAULT_EVENT_LIMIT) {
        Err(e) => format!("not checked ({e})"),
        Ok(report) if report.coherent => {
            format!("coherent (checked exhaustively over {n} events)")
        }
        Ok(report) => {
            let mut reasons: Vec<String> = Vec::new();
            for v in &report.violations {
                let reason = match (&v.condition, &v.event) {
                    (CoherenceCondition::Relevance, Some(e)) => format!("irrelevant event {e}"),
                    (cond, Some(e)) => format!("{cond} violated at {e}"),
                    (cond, None) => format!("{cond} violated"),
                };
                if !reasons.contains(&reason) {
                    reasons.push(reason);
                }
            }
            format!("non-coherent ({})", reasons.join("; "))
        }
    }
}

/// Runs the full quantification pipeline and assembles the report.
pub fn analyze(
    tree: &FaultTree,
    derivation: Derivation,
    methods: &[QMethod],
    cfg: &QuantConfig,
    order: Option<&[EventId]>,
    node_budget: usize,
) -> Result<AnalysisReport, Error> {
    let (sets, _) = derive_sets(tree, derivation, order, node_budget)?;
    let (q, w) = quantify::event_measures(tree, cfg.mission_time_hours)?;

    let mut warnings: Vec<String> = Vec::new();
    let mut per_set = Vec::with_capacity(sets.len());
    for set in sets.sorted_members() {
        per_set.push(PerSetEntry {
            set: set.iter().map(|l| l.to_string()).collect(),
            q: quantify::mcs_q(set, &q)?,
            w: quantify::mcs_w(set, &q, &w, cfg.not_frequency_policy)?,
        });
    }

    let mut q_values: [Option<f64>; 4] = [None; 4];
    for method in methods {
        let est = quantify::top_q(&sets, &q, &QuantConfig {
            q_method: *method,
            ..cfg.clone()
        })?;
        for warning in est.warnings {
            if !warnings.contains(&warning) {
                warnings.push(warning);
            }
        }
        let slot = QMethod::ALL.iter().position(|m| m == method).unwrap();
        q_values[slot] = Some(est.value);
    }

    let w_est = quantify::top_w(&sets, &q, &w, cfg)?;
    for warning in w_est.warnings {
        if !warnings.contains(&warning) {
            warnings.push(warning);
        }
    }

    let listing: Vec<Vec<String>> = sets
        .sorted_members()
        .iter()
        .map(|s| s.iter().map(|l| l.to_string()).collect())
        .collect();
    let (mcs, pi) = match sets.kind {
        SetKind::Prime => (None, Some(listing)),
        _ => (Some(listing), None),
    };

    Ok(AnalysisReport {
        tree: tree.name.clone(),
        diagnostics: crate::validate::validate(tree)
            .iter()
            .map(|d| d.to_string())
            .collect(),
        config: ConfigEcho {
            derivation: derivation.label().to_string(),
            q_methods: methods.iter().map(|m| m.name().to_string()).collect(),
            not_frequency: match cfg.not_frequency_policy {
                quantify::NotFrequencyPolicy::Zero => "zero".to_string(),
                quantify::NotFrequencyPolicy::Mirror => "mirror".to_string(),
            },
            mission_time_hours: cfg.mission_time_hours.or(tree.mission_time_hours),
            variable_order: order.map(|o| o.iter().map(|e| e.to_string()).collect()),
        },
        mcs,
        pi,
        per_set,
        q_exact_ie: q_values[0],
        q_ep_common: q_values[1],
        q_ep: q_values[2],
        q_rare_event: q_values[3],
        w_top: w_est.value,
        frequency_unit: "per_hour".to_string(),
        coherence: coherence_summary(tree),
        warnings,
    })
}

impl AnalysisReport {
    /// Machine-readable JSON with stable key names.
    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report to json")
    }

    /// Human-readable table. `per_year` converts displayed frequencies from
    /// per-hour to per-year.
    pub fn to_table(&self, per_year: bool) -> String {
        let (w_scale, w_unit) = if per_year {
            (HOURS_PER_YEAR, "/y")
        } else {
            (1.0, "/h")
        };
        let mut out = String::new();
        if let Some(name) = &self.tree {
            out.push_str(&format!("tree: {name}\n"));
        }
        let kind_label = if self.pi.is_some() {
            "prime implicants"
        } else {
            "minimal cut sets"
        };
        out.push_str(&format!("derivation: {} ({kind_label})\n", self.config.derivation));
        match self.config.mission_time_hours {
            Some(t) => out.push_str(&format!("mission time: {t} h\n")),
            None => out.push_str("mission time: none\n"),
        }
        out.push_str(&format!(
            "not-frequency policy: {}\n",
            self.config.not_frequency
        ));
        if let Some(order) = &self.config.variable_order {
            out.push_str(&format!("variable order: {}\n", order.join(" ")));
        }
        for diagnostic in &self.diagnostics {
            out.push_str(&format!("diagnostic: {diagnostic}\n"));
        }

        out.push_str(&format!("\n{kind_label} ({}):\n", self.per_set.len()));
        let set_strings: Vec<String> = self
            .per_set
            .iter()
            .map(|entry| format!("{{{}}}", entry.set.join(", ")))
            .collect();
        let set_width = set_strings.iter().map(|s| s.len()).max().unwrap_or(3).max(3);
        let w_header = format!("W_i [{w_unit}]");
        out.push_str(&format!(
            "  {:>3} {:<width$}  {:<13} {w_header}\n",
            "#",
            "set",
            "Q_i",
            width = set_width
        ));
        for (i, (entry, set_string)) in self.per_set.iter().zip(&set_strings).enumerate() {
            out.push_str(&format!(
                "  {:>3} {:<width$}  {:<13} {}\n",
                i + 1,
                set_string,
                sci6(entry.q),
                sci6(entry.w * w_scale),
                width = set_width
            ));
        }

        out.push_str("\ntop event:\n");
        for (method, value) in [
            ("exact_ie", self.q_exact_ie),
            ("ep_common", self.q_ep_common),
            ("ep", self.q_ep),
            ("rare_event", self.q_rare_event),
        ] {
            if let Some(v) = value {
                let label = format!("Q({method})");
                out.push_str(&format!("  {label:<13} = {}\n", sci6(v)));
            }
        }
        out.push_str(&format!(
            "  {:<13} = {} {w_unit}\n",
            "W",
            sci6(self.w_top * w_scale)
        ));

        out.push_str(&format!("\ncoherence: {}\n", self.coherence));
        for warning in &self.warnings {
            out.push_str(&format!("warning: {warning}\n"));
        }
        out
    }
}
