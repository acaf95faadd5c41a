//! Structural validation of fault trees.

use std::collections::HashMap;
use std::fmt;

use crate::model::{is_valid_token, FaultTree, GateKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

/// What a diagnostic is about; used by tests and tooling to match on
/// specific failures without string parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    BadIdentifier,
    DuplicateId,
    UnknownReference,
    CyclicReference,
    BadGateArity,
    BadModelParameter,
    BadMissionTime,
    BadTop,
    UnreferencedEvent,
}

/// One validation finding: severity, the id it is attached to, and a
/// human-readable message.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    fn error(kind: DiagnosticKind, location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            location: location.into(),
            message: message.into(),
        }
    }

    fn warning(kind: DiagnosticKind, location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            kind,
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev} [{}]: {}", self.location, self.message)
    }
}

/// Checks every tree invariant and returns the findings. The list is empty
/// exactly when the tree is valid; warnings do not make a tree invalid.
pub fn validate(tree: &FaultTree) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    for id in tree.events.keys() {
        if !is_valid_token(id.as_str()) {
            diags.push(Diagnostic::error(
                DiagnosticKind::BadIdentifier,
                id.as_str(),
                format!("event id `{id}` is not a valid token"),
            ));
        }
    }
    for id in tree.gates.keys() {
        if !is_valid_token(id.as_str()) {
            diags.push(Diagnostic::error(
                DiagnosticKind::BadIdentifier,
                id.as_str(),
                format!("gate id `{id}` is not a valid token"),
            ));
        }
        if tree.is_event(id.as_str()) {
            diags.push(Diagnostic::error(
                DiagnosticKind::DuplicateId,
                id.as_str(),
                format!("id `{id}` is declared both as a gate and as an event"),
            ));
        }
    }

    for (id, model) in &tree.events {
        if let Some(problem) = model.parameter_error() {
            diags.push(Diagnostic::error(
                DiagnosticKind::BadModelParameter,
                id.as_str(),
                format!("event `{id}`: {problem}"),
            ));
        }
    }

    if let Some(t) = tree.mission_time_hours {
        if !t.is_finite() || t <= 0.0 {
            diags.push(Diagnostic::error(
                DiagnosticKind::BadMissionTime,
                "mission_time_hours",
                format!("mission_time_hours must be a positive number, got {t}"),
            ));
        }
    }

    for (id, gate) in &tree.gates {
        if !gate.kind.arity_ok(gate.inputs.len()) {
            let expect = match gate.kind {
                GateKind::Not => "exactly 1 input".to_string(),
                GateKind::AtLeast(k) => format!("at least k = {k} inputs (and k >= 1)"),
                _ => "at least 2 inputs".to_string(),
            };
            diags.push(Diagnostic::error(
                DiagnosticKind::BadGateArity,
                id.as_str(),
                format!(
                    "gate `{id}` ({}) has {} inputs, needs {expect}",
                    gate.kind,
                    gate.inputs.len()
                ),
            ));
        }
        for input in &gate.inputs {
            if !tree.is_event(&input.id) && !tree.is_gate(&input.id) {
                diags.push(Diagnostic::error(
                    DiagnosticKind::UnknownReference,
                    id.as_str(),
                    format!("gate `{id}` references undeclared id `{}`", input.id),
                ));
            }
        }
    }

    if !tree.is_gate(tree.top.as_str()) {
        let message = if tree.is_event(tree.top.as_str()) {
            format!("top `{}` names an event; it must name a gate", tree.top)
        } else {
            format!("top `{}` is not a declared gate", tree.top)
        };
        diags.push(Diagnostic::error(DiagnosticKind::BadTop, tree.top.as_str(), message));
    }

    diags.extend(find_cycles(tree));

    // Events a valid top never reaches are reported as warnings; the
    // coherence checker treats them as relevance violations.
    if diags.iter().all(|d| !d.is_error()) {
        let mut reached: HashMap<&str, bool> = HashMap::new();
        let mut stack = vec![tree.top.as_str()];
        while let Some(id) = stack.pop() {
            if reached.insert(id, true).is_some() {
                continue;
            }
            if let Some(gate) = tree.gates.get(id) {
                for input in &gate.inputs {
                    stack.push(&input.id);
                }
            }
        }
        for id in tree.events.keys() {
            if !reached.contains_key(id.as_str()) {
                diags.push(Diagnostic::warning(
                    DiagnosticKind::UnreferencedEvent,
                    id.as_str(),
                    format!("event `{id}` is declared but never referenced from the top gate"),
                ));
            }
        }
    }

    diags
}

/// DFS cycle detection over the gate graph. Emits one diagnostic per gate
/// that closes a cycle.
fn find_cycles(tree: &FaultTree) -> Vec<Diagnostic> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        InProgress,
        Done,
    }

    fn visit<'a>(
        tree: &'a FaultTree,
        id: &'a str,
        marks: &mut HashMap<&'a str, Mark>,
        diags: &mut Vec<Diagnostic>,
    ) {
        match marks.get(id) {
            Some(Mark::Done) => return,
            Some(Mark::InProgress) => {
                diags.push(Diagnostic::error(
                    DiagnosticKind::CyclicReference,
                    id,
                    format!("gate `{id}` is part of a cyclic reference chain"),
                ));
                return;
            }
            None => {}
        }
        marks.insert(id, Mark::InProgress);
        if let Some(gate) = tree.gates.get(id) {
            for input in &gate.inputs {
                if tree.is_gate(&input.id) {
                    visit(tree, &input.id, marks, diags);
                }
            }
        }
        marks.insert(id, Mark::Done);
    }

    let mut marks = HashMap::new();
    let mut diags = Vec::new();
    for id in tree.gates.keys() {
        visit(tree, id.as_str(), &mut marks, &mut diags);
    }
    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::tree_from_parts;
    use crate::model::GateKind;
    use crate::parse::parse_tree;

    #[test]
    fn reference_tree_is_clean() {
        let tree = parse_tree(crate::parse::tests::FIG1).unwrap();
        assert!(validate(&tree).is_empty());
    }

    #[test]
    fn not_gate_arity() {
        let tree = tree_from_parts(
            &["A", "B"],
            vec![("N", GateKind::Not, vec!["A", "B"]), ("T", GateKind::Or, vec!["N", "B"])],
            "T",
        );
        let diags = validate(&tree);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::BadGateArity);
        assert_eq!(diags[0].location, "N");
    }

    #[test]
    fn unknown_reference() {
        let tree = tree_from_parts(&["A"], vec![("T", GateKind::Or, vec!["A", "X9"])], "T");
        let diags = validate(&tree);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::UnknownReference);
        assert!(diags[0].message.contains("X9"));
    }

    #[test]
    fn top_must_be_a_gate() {
        let tree = tree_from_parts(&["A", "B"], vec![("G", GateKind::Or, vec!["A", "B"])], "A");
        let diags = validate(&tree);
        assert!(diags.iter().any(|d| d.kind == DiagnosticKind::BadTop));
    }

    #[test]
    fn shared_subtrees_are_not_cycles() {
        let tree = tree_from_parts(
            &["A", "B"],
            vec![
                ("G2", GateKind::Or, vec!["A", "B"]),
                ("T", GateKind::And, vec!["G2", "G2"]),
            ],
            "T",
        );
        assert!(validate(&tree).is_empty());
    }

    #[test]
    fn two_gate_cycle_is_reported() {
        let tree = tree_from_parts(
            &["A", "B"],
            vec![
                ("G1", GateKind::And, vec!["G2", "A"]),
                ("G2", GateKind::Or, vec!["G1", "B"]),
            ],
            "G1",
        );
        let diags = validate(&tree);
        assert!(diags.iter().any(|d| d.kind == DiagnosticKind::CyclicReference));
    }

    #[test]
    fn unreferenced_event_is_a_warning_only() {
        let tree = tree_from_parts(
            &["A", "B", "C"],
            vec![("T", GateKind::Or, vec!["A", "B"])],
            "T",
        );
        let diags = validate(&tree);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::UnreferencedEvent);
        assert!(!diags[0].is_error());
        assert_eq!(diags[0].location, "C");
    }

    #[test]
    fn gate_event_id_clash() {
        let mut tree = tree_from_parts(&["A", "B"], vec![("T", GateKind::Or, vec!["A", "B"])], "T");
        tree.gates.insert(
            crate::model::GateId::new("A"),
            crate::model::Gate::new(GateKind::Or, vec![
                crate::model::InputRef::new("A"),
                crate::model::InputRef::new("B"),
            ]),
        );
        let diags = validate(&tree);
        assert!(diags.iter().any(|d| d.kind == DiagnosticKind::DuplicateId));
    }
}
