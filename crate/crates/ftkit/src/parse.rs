//! Reading and writing the fault-tree document format.
//!
//! Documents are JSON objects:
//!
//! ```json
//! { "name": "example", "mission_time_hours": 35040,
//!   "events": { "A": {"model": "fixed", "p": 0.05} },
//!   "gates":  { "T": {"type": "and", "inputs": ["A", "!A"]} },
//!   "top": "T" }
//! ```
//!
//! Parsing is strict: unknown keys and duplicate ids are rejected with the
//! position where they occur, and the resulting tree must pass validation.

use std::fmt;
use std::marker::PhantomData;

use indexmap::IndexMap;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use crate::error::Error;
use crate::event_model::BasicEventModel;
use crate::model::{FaultTree, Gate, GateId, GateKind, EventId, InputRef};
use crate::validate::validate;

/// Insertion-ordered map that rejects duplicate keys while deserializing.
#[derive(Debug, Default)]
struct UniqueMap<V>(IndexMap<String, V>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MapVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for MapVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut map = IndexMap::with_capacity(access.size_hint().unwrap_or(0));
                while let Some((key, value)) = access.next_entry::<String, V>()? {
                    if map.insert(key.clone(), value).is_some() {
                        return Err(serde::de::Error::custom(format!("duplicate id `{key}`")));
                    }
                }
                Ok(UniqueMap(map))
            }
        }

        deserializer.deserialize_map(MapVisitor(PhantomData))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocGate {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    k: Option<u64>,
    inputs: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    mission_time_hours: Option<f64>,
    events: UniqueMap<BasicEventModel>,
    gates: UniqueMap<DocGate>,
    top: String,
}

fn gate_from_doc(id: &str, doc: DocGate) -> Result<Gate, Error> {
    let bad = |what: String| Error::BadParameter { what };
    let kind = match doc.kind.as_str() {
        "and" => GateKind::And,
        "or" => GateKind::Or,
        "not" => GateKind::Not,
        "nand" => GateKind::Nand,
        "nor" => GateKind::Nor,
        "xor" => GateKind::Xor,
        "atleast" => {
            let k = doc.k.ok_or_else(|| {
                bad(format!("gate `{id}`: atleast gates need a `k` field"))
            })?;
            GateKind::AtLeast(k as usize)
        }
        other => {
            return Err(bad(format!(
                "gate `{id}`: unknown gate type `{other}` (expected and|or|not|nand|nor|xor|atleast)"
            )))
        }
    };
    if doc.k.is_some() && !matches!(kind, GateKind::AtLeast(_)) {
        return Err(bad(format!(
            "gate `{id}`: `k` is only valid on atleast gates"
        )));
    }
    let inputs = doc
        .inputs
        .iter()
        .map(|raw| match raw.strip_prefix('!') {
            Some(rest) => InputRef::negated(rest),
            None => InputRef::new(raw.as_str()),
        })
        .collect();
    Ok(Gate::new(kind, inputs))
}

/// Parses a fault-tree document and validates the result. Returns an error
/// if the text is not well-formed or any tree invariant fails.
pub fn parse_tree(text: &str) -> Result<FaultTree, Error> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position_suffix(&e.to_string()),
    })?;

    let events: IndexMap<EventId, BasicEventModel> = doc
        .events
        .0
        .into_iter()
        .map(|(k, v)| (EventId(k), v))
        .collect();
    let mut gates: IndexMap<GateId, Gate> = IndexMap::with_capacity(doc.gates.0.len());
    for (id, g) in doc.gates.0 {
        let gate = gate_from_doc(&id, g)?;
        gates.insert(GateId(id), gate);
    }

    let tree = FaultTree {
        name: doc.name,
        mission_time_hours: doc.mission_time_hours,
        events,
        gates,
        top: GateId(doc.top),
    };

    let diagnostics = validate(&tree);
    if diagnostics.iter().any(|d| d.is_error()) {
        return Err(Error::Invalid(diagnostics));
    }
    Ok(tree)
}

/// serde_json appends " at line L column C" to its messages; the position
/// already lives in structured fields, so drop the duplicate.
fn strip_position_suffix(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) if message[i..].chars().all(|c| {
            c.is_ascii_digit() || c.is_ascii_lowercase() || c == ' '
        }) =>
        {
            message[..i].to_string()
        }
        _ => message.to_string(),
    }
}

/// Renders a tree back into document text. The output parses to an
/// identical tree (same fields, same declaration order).
pub fn serialize_tree(tree: &FaultTree) -> String {
    use serde_json::{json, Map, Value};

    let mut root = Map::new();
    if let Some(name) = &tree.name {
        root.insert("name".into(), Value::String(name.clone()));
    }
    if let Some(t) = tree.mission_time_hours {
        root.insert("mission_time_hours".into(), json!(t));
    }

    let mut events = Map::new();
    for (id, model) in &tree.events {
        events.insert(id.0.clone(), serde_json::to_value(model).expect("model to json"));
    }
    root.insert("events".into(), Value::Object(events));

    let mut gates = Map::new();
    for (id, gate) in &tree.gates {
        let mut g = Map::new();
        g.insert("type".into(), Value::String(gate.kind.name().into()));
        if let GateKind::AtLeast(k) = gate.kind {
            g.insert("k".into(), json!(k));
        }
        let inputs: Vec<Value> = gate
            .inputs
            .iter()
            .map(|r| Value::String(r.to_string()))
            .collect();
        g.insert("inputs".into(), Value::Array(inputs));
        gates.insert(id.0.clone(), Value::Object(g));
    }
    root.insert("gates".into(), Value::Object(gates));
    root.insert("top".into(), Value::String(tree.top.0.clone()));

    serde_json::to_string_pretty(&Value::Object(root)).expect("document to json")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const FIG1: &str =
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sif.json"));
    pub(crate) const GAS: &str = include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/gas_leakage.json"
    ));

    #[test]
    fn parses_reference_tree() {
        let tree = parse_tree(FIG1).unwrap();
        assert_eq!(tree.gates.len(), 5);
        assert_eq!(tree.events.len(), 7);
        assert_eq!(tree.top.as_str(), "G1");
        assert_eq!(tree.mission_time_hours, Some(35040.0));
        let order: Vec<&str> = tree.events.keys().map(|e| e.as_str()).collect();
        assert_eq!(order, ["S1", "S2", "L1", "S3", "R1", "V1", "V2"]);
    }

    #[test]
    fn idempotent_and_gate_is_allowed() {
        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5}},
          "gates": {"T": {"type": "and", "inputs": ["A", "A"]}},
          "top": "T"
        }"#;
        let tree = parse_tree(text).unwrap();
        assert_eq!(tree.gates["T"].inputs.len(), 2);
    }

    #[test]
    fn self_reference_is_a_cycle() {
        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5}},
          "gates": {"G1": {"type": "and", "inputs": ["G1", "A"]}},
          "top": "G1"
        }"#;
        match parse_tree(text) {
            Err(Error::Invalid(diags)) => {
                assert!(diags.iter().any(|d| d.message.contains("cycl")), "{diags:?}");
            }
            other => panic!("expected cycle diagnostics, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_keys_are_rejected_with_position() {
        let text = r#"{
          "events": {
            "A": {"model": "fixed", "p": 0.5},
            "A": {"model": "fixed", "p": 0.6}
          },
          "gates": {"T": {"type": "or", "inputs": ["A", "A"]}},
          "top": "T"
        }"#;
        match parse_tree(text) {
            Err(Error::Syntax { line, message, .. }) => {
                assert!(message.contains("duplicate id `A`"), "{message}");
                assert!(line >= 3, "line {line}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5, "typo": 1}},
          "gates": {"T": {"type": "or", "inputs": ["A", "A"]}},
          "top": "T"
        }"#;
        assert!(matches!(parse_tree(text), Err(Error::Syntax { .. })));

        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5}},
          "gates": {"T": {"type": "or", "inputs": ["A", "A"]}},
          "top": "T",
          "extra": true
        }"#;
        assert!(matches!(parse_tree(text), Err(Error::Syntax { .. })));
    }

    #[test]
    fn k_requires_atleast() {
        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5}, "B": {"model": "fixed", "p": 0.5}},
          "gates": {"T": {"type": "or", "k": 1, "inputs": ["A", "B"]}},
          "top": "T"
        }"#;
        assert!(matches!(parse_tree(text), Err(Error::BadParameter { .. })));

        let text = r#"{
          "events": {"A": {"model": "fixed", "p": 0.5}, "B": {"model": "fixed", "p": 0.5}},
          "gates": {"T": {"type": "atleast", "inputs": ["A", "B"]}},
          "top": "T"
        }"#;
        assert!(matches!(parse_tree(text), Err(Error::BadParameter { .. })));
    }

    #[test]
    fn negative_lambda_is_invalid() {
        let text = r#"{
          "events": {"A": {"model": "rate", "lambda_per_hour": -1e-6, "mttr_hours": 8}},
          "gates": {"T": {"type": "or", "inputs": ["A", "!A"]}},
          "top": "T"
        }"#;
        assert!(matches!(parse_tree(text), Err(Error::Invalid(_))));
    }

    #[test]
    fn round_trip_preserves_tree() {
        let tree = parse_tree(FIG1).unwrap();
        let text = serialize_tree(&tree);
        let again = parse_tree(&text).unwrap();
        assert_eq!(tree, again);
        let order: Vec<&str> = again.events.keys().map(|e| e.as_str()).collect();
        assert_eq!(order, ["S1", "S2", "L1", "S3", "R1", "V1", "V2"]);
    }

    #[test]
    fn negated_refs_round_trip() {
        let text = r#"{
          "events": {"L": {"model": "fixed", "p": 0.05}, "V": {"model": "fixed", "p": 0.05}, "R": {"model": "fixed", "p": 0.05}},
          "gates": {"B": {"type": "and", "inputs": ["L", "!V", "R"]}, "T": {"type": "or", "inputs": ["B", "L"]}},
          "top": "T"
        }"#;
        let tree = parse_tree(text).unwrap();
        assert!(tree.gates["B"].inputs[1].negated);
        let again = parse_tree(&serialize_tree(&tree)).unwrap();
        assert_eq!(tree, again);
    }
}
