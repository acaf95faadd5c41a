//! Fault-tree data model: events, literals, gates, and the tree itself.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use crate::event_model::BasicEventModel;

/// Returns true if `s` is a valid identifier token: non-empty, made of
/// ASCII letters, digits, `_` and `-`. Identifiers are case-sensitive.
pub fn is_valid_token(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Identifier of a basic event.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub String);

impl EventId {
    pub fn new(name: impl Into<String>) -> Self {
        EventId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EventId {
    fn from(s: &str) -> Self {
        EventId(s.to_string())
    }
}

impl std::borrow::Borrow<str> for EventId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Identifier of a gate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateId(pub String);

impl GateId {
    pub fn new(name: impl Into<String>) -> Self {
        GateId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for GateId {
    fn from(s: &str) -> Self {
        GateId(s.to_string())
    }
}

impl std::borrow::Borrow<str> for GateId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A basic event with a polarity: the event occurring (`A`) or the event
/// not occurring (`!A`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub event: EventId,
    pub negated: bool,
}

impl Literal {
    pub fn positive(event: impl Into<EventId>) -> Self {
        Literal {
            event: event.into(),
            negated: false,
        }
    }

    pub fn negative(event: impl Into<EventId>) -> Self {
        Literal {
            event: event.into(),
            negated: true,
        }
    }

    /// The same event with the opposite polarity.
    pub fn complement(&self) -> Self {
        Literal {
            event: self.event.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!{}", self.event)
        } else {
            write!(f, "{}", self.event)
        }
    }
}

/// Logic gate kinds accepted in input documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    And,
    Or,
    Not,
    Nand,
    Nor,
    Xor,
    /// At least `k` of the inputs occur.
    AtLeast(usize),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::And => "and",
            GateKind::Or => "or",
            GateKind::Not => "not",
            GateKind::Nand => "nand",
            GateKind::Nor => "nor",
            GateKind::Xor => "xor",
            GateKind::AtLeast(_) => "atleast",
        }
    }

    /// Arity check: NOT takes exactly one input, ATLEAST(k) takes n >= k >= 1
    /// inputs, everything else takes two or more.
    pub fn arity_ok(&self, n_inputs: usize) -> bool {
        match self {
            GateKind::Not => n_inputs == 1,
            GateKind::AtLeast(k) => *k >= 1 && n_inputs >= *k,
            _ => n_inputs >= 2,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::AtLeast(k) => write!(f, "atleast({})", k),
            other => f.write_str(other.name()),
        }
    }
}

/// A reference from a gate to one of its inputs. The id may name a gate or a
/// basic event; resolution happens during validation. A `!` prefix in the
/// document sets `negated`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InputRef {
    pub id: String,
    pub negated: bool,
}

impl InputRef {
    pub fn new(id: impl Into<String>) -> Self {
        InputRef {
            id: id.into(),
            negated: false,
        }
    }

    pub fn negated(id: impl Into<String>) -> Self {
        InputRef {
            id: id.into(),
            negated: true,
        }
    }
}

impl fmt::Display for InputRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!{}", self.id)
        } else {
            f.write_str(&self.id)
        }
    }
}

/// A logic gate: a kind plus an ordered list of input references.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: Vec<InputRef>,
}

impl Gate {
    pub fn new(kind: GateKind, inputs: Vec<InputRef>) -> Self {
        Gate { kind, inputs }
    }
}

/// A fault tree: basic events with their probabilistic models, gates over
/// events and other gates, and a designated top gate. Sharing is allowed
/// (the reference graph is a DAG), cycles are not.
///
/// The struct itself does not enforce its invariants; `validate` reports
/// violations and `parse_tree` only returns trees that pass it. Maps keep
/// declaration order, which downstream code uses as the default variable
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultTree {
    pub name: Option<String>,
    pub mission_time_hours: Option<f64>,
    pub events: IndexMap<EventId, BasicEventModel>,
    pub gates: IndexMap<GateId, Gate>,
    pub top: GateId,
}

impl FaultTree {
    /// Declared events in declaration order.
    pub fn event_order(&self) -> Vec<EventId> {
        self.events.keys().cloned().collect()
    }

    pub fn is_event(&self, id: &str) -> bool {
        self.events.contains_key(id)
    }

    pub fn is_gate(&self, id: &str) -> bool {
        self.gates.contains_key(id)
    }

    /// Evaluates the tree's Boolean function for one assignment of event
    /// states (`true` = the failure event occurred). Requires a valid tree;
    /// panics on dangling references or cycles.
    pub fn evaluate(&self, assignment: &HashMap<EventId, bool>) -> bool {
        let mut memo: HashMap<&str, bool> = HashMap::new();
        self.eval_gate(self.top.as_str(), assignment, &mut memo)
    }

    fn eval_ref<'a>(
        &'a self,
        input: &'a InputRef,
        assignment: &HashMap<EventId, bool>,
        memo: &mut HashMap<&'a str, bool>,
    ) -> bool {
        let raw = if let Some(&v) = assignment.get(input.id.as_str()) {
            v
        } else {
            self.eval_gate(&input.id, assignment, memo)
        };
        raw ^ input.negated
    }

    fn eval_gate<'a>(
        &'a self,
        id: &str,
        assignment: &HashMap<EventId, bool>,
        memo: &mut HashMap<&'a str, bool>,
    ) -> bool {
        let (key, gate) = self
            .gates
            .get_key_value(id)
            .unwrap_or_else(|| panic!("unresolved gate reference `{}`", id));
        if let Some(&v) = memo.get(key.as_str()) {
            return v;
        }
        let vals: Vec<bool> = gate
            .inputs
            .iter()
            .map(|r| self.eval_ref(r, assignment, memo))
            .collect();
        let out = match gate.kind {
            GateKind::And => vals.iter().all(|&v| v),
            GateKind::Or => vals.iter().any(|&v| v),
            GateKind::Not => !vals[0],
            GateKind::Nand => !vals.iter().all(|&v| v),
            GateKind::Nor => !vals.iter().any(|&v| v),
            // n-ary XOR folds the binary gate left to right (odd parity).
            GateKind::Xor => vals.iter().fold(false, |acc, &v| acc ^ v),
            GateKind::AtLeast(k) => vals.iter().filter(|&&v| v).count() >= k,
        };
        memo.insert(key.as_str(), out);
        out
    }
}
