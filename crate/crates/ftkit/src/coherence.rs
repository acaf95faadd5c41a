//! Coherence diagnosis by exhaustive evaluation.
//!
//! A structure function is coherent when every event is relevant, the
//! all-failed state fails and the all-working state works, and the function
//! is monotone (an extra failure never repairs the system). The check here
//! evaluates the full truth table, so it is exact but limited to trees with
//! at most `event_limit` events (default 20). Negating gates are a hint of
//! non-coherence, not proof, which is why the semantic check is preferred
//! at this scale.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::model::{EventId, FaultTree};
use crate::normalize::{normalize, NormInput, NormKind, NormalizedTree};

pub const DEFAULT_EVENT_LIMIT: usize = 20;

/// Hard ceiling on the exhaustive check regardless of the requested limit;
/// the truth tables grow as 2^n per gate.
pub const MAX_EVENT_LIMIT: usize = 24;

/// A complete assignment of event states; `true` means the failure event
/// occurred.
pub type Assignment = BTreeMap<EventId, bool>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceCondition {
    Relevance,
    Boundary,
    Monotonicity,
}

impl std::fmt::Display for CoherenceCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoherenceCondition::Relevance => "relevance",
            CoherenceCondition::Boundary => "boundary",
            CoherenceCondition::Monotonicity => "monotonicity",
        })
    }
}

/// One violated coherence condition with the assignments that witness it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceViolation {
    pub condition: CoherenceCondition,
    /// The event involved, for relevance and monotonicity findings.
    pub event: Option<EventId>,
    pub witnesses: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub irrelevant_events: Vec<EventId>,
    pub violations: Vec<CoherenceViolation>,
}

/// Truth table of the normalized tree over its declared events, one bit per
/// assignment, packed into 64-bit blocks. Bit `x` of the table is the
/// function value for the assignment where event `i` (declaration order)
/// takes bit `i` of `x`.
fn truth_table(norm: &NormalizedTree) -> Vec<u64> {
    let n = norm.vars().len();
    let bits = 1usize << n;
    let blocks = bits.div_ceil(64);
    let position: BTreeMap<&EventId, usize> =
        norm.vars().iter().enumerate().map(|(i, e)| (e, i)).collect();

    // block `b` of the table for plain variable `i`
    fn var_block(i: usize, b: usize) -> u64 {
        if i < 6 {
            let mut pattern = 0u64;
            for bit in 0..64usize {
                if bit >> i & 1 == 1 {
                    pattern |= 1u64 << bit;
                }
            }
            pattern
        } else if b >> (i - 6) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    }

    fn eval_gate(
        norm: &NormalizedTree,
        idx: usize,
        blocks: usize,
        position: &BTreeMap<&EventId, usize>,
        memo: &mut Vec<Option<Vec<u64>>>,
    ) -> Vec<u64> {
        if let Some(t) = &memo[idx] {
            return t.clone();
        }
        let gate = &norm.gates()[idx];
        let neutral = match gate.kind {
            NormKind::And => u64::MAX,
            NormKind::Or => 0,
        };
        let mut acc = vec![neutral; blocks];
        for input in &gate.inputs {
            let table: Vec<u64> = match input {
                NormInput::Literal(lit) => {
                    let i = position[&lit.event];
                    (0..blocks)
                        .map(|b| {
                            let v = var_block(i, b);
                            if lit.negated {
                                !v
                            } else {
                                v
                            }
                        })
                        .collect()
                }
                NormInput::Gate(g) => eval_gate(norm, *g, blocks, position, memo),
            };
            for (a, t) in acc.iter_mut().zip(&table) {
                match gate.kind {
                    NormKind::And => *a &= t,
                    NormKind::Or => *a |= t,
                }
            }
        }
        memo[idx] = Some(acc.clone());
        acc
    }

    let mut memo: Vec<Option<Vec<u64>>> = vec![None; norm.gates().len()];
    let mut table = eval_gate(norm, norm.top(), blocks, &position, &mut memo);
    // mask off the bits beyond 2^n in the last block
    if !bits.is_multiple_of(64) {
        let last = table.len() - 1;
        table[last] &= (1u64 << (bits % 64)) - 1;
    }
    table
}

fn get_bit(table: &[u64], idx: usize) -> bool {
    table[idx / 64] >> (idx % 64) & 1 == 1
}

fn assignment_from_bits(events: &[EventId], bits: usize) -> Assignment {
    events
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), bits >> i & 1 == 1))
        .collect()
}

/// Checks the three coherence conditions over every assignment of event
/// states. Requires a valid tree with at most `event_limit` events.
pub fn coherence_check(tree: &FaultTree, event_limit: usize) -> Result<CoherenceReport, Error> {
    let n = tree.events.len();
    let limit = event_limit.min(MAX_EVENT_LIMIT);
    if n > limit {
        return Err(Error::TooManyEvents { events: n, limit });
    }
    let norm = normalize(tree)?;
    let events = norm.vars().to_vec();
    let table = truth_table(&norm);
    let total = 1usize << n;

    let mut violations = Vec::new();
    let mut irrelevant = Vec::new();

    // relevance: some assignment must react to flipping each event
    for (i, event) in events.iter().enumerate() {
        let mask = 1usize << i;
        let relevant = (0..total)
            .filter(|x| x & mask == 0)
            .any(|x| get_bit(&table, x) != get_bit(&table, x | mask));
        if !relevant {
            irrelevant.push(event.clone());
            violations.push(CoherenceViolation {
                condition: CoherenceCondition::Relevance,
                event: Some(event.clone()),
                witnesses: Vec::new(),
            });
        }
    }

    // boundary: all failed -> failed, all working -> working
    if !get_bit(&table, total - 1) {
        violations.push(CoherenceViolation {
            condition: CoherenceCondition::Boundary,
            event: None,
            witnesses: vec![assignment_from_bits(&events, total - 1)],
        });
    }
    if get_bit(&table, 0) {
        violations.push(CoherenceViolation {
            condition: CoherenceCondition::Boundary,
            event: None,
            witnesses: vec![assignment_from_bits(&events, 0)],
        });
    }

    // monotonicity via single-bit flips; first witness per event
    for (i, event) in events.iter().enumerate() {
        let mask = 1usize << i;
        let witness = (0..total)
            .filter(|x| x & mask == 0)
            .find(|&x| get_bit(&table, x) && !get_bit(&table, x | mask));
        if let Some(x) = witness {
            violations.push(CoherenceViolation {
                condition: CoherenceCondition::Monotonicity,
                event: Some(event.clone()),
                witnesses: vec![
                    assignment_from_bits(&events, x),
                    assignment_from_bits(&events, x | mask),
                ],
            });
        }
    }

    Ok(CoherenceReport {
        coherent: violations.is_empty(),
        irrelevant_events: irrelevant,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::tree_from_parts;
    use crate::model::GateKind;
    use crate::parse::parse_tree;
    use crate::parse::tests::{FIG1, GAS};

    #[test]
    fn reference_tree_is_coherent() {
        let tree = parse_tree(FIG1).unwrap();
        let report = coherence_check(&tree, DEFAULT_EVENT_LIMIT).unwrap();
        assert!(report.coherent);
        assert!(report.violations.is_empty());
        assert!(report.irrelevant_events.is_empty());
    }

    #[test]
    fn gas_leakage_fails_monotonicity_at_the_valve() {
        let tree = parse_tree(GAS).unwrap();
        let report = coherence_check(&tree, DEFAULT_EVENT_LIMIT).unwrap();
        assert!(!report.coherent);
        let violation = report
            .violations
            .iter()
            .find(|v| v.condition == CoherenceCondition::Monotonicity)
            .expect("monotonicity violation");
        assert_eq!(violation.event.as_ref().unwrap().as_str(), "V");
        // flipping V from the state L=1, V=0, I=0, R=1 turns failure off
        let lower = &violation.witnesses[0];
        let expect: Assignment = [
            (EventId::from("L"), true),
            (EventId::from("V"), false),
            (EventId::from("I"), false),
            (EventId::from("R"), true),
        ]
        .into();
        assert_eq!(lower, &expect);
    }

    #[test]
    fn unused_event_is_irrelevant() {
        // T = OR(A, AND(B, B)) with C declared but unused
        let tree = tree_from_parts(
            &["A", "B", "C"],
            vec![
                ("G", GateKind::And, vec!["B", "B"]),
                ("T", GateKind::Or, vec!["A", "G"]),
            ],
            "T",
        );
        let report = coherence_check(&tree, DEFAULT_EVENT_LIMIT).unwrap();
        assert!(!report.coherent);
        assert_eq!(report.irrelevant_events, vec![EventId::from("C")]);
    }

    #[test]
    fn event_limit_is_enforced() {
        let tree = parse_tree(FIG1).unwrap();
        assert!(matches!(
            coherence_check(&tree, 3),
            Err(Error::TooManyEvents { events: 7, limit: 3 })
        ));
    }

    #[test]
    fn positive_trees_are_coherent() {
        let tree = tree_from_parts(
            &["A", "B", "C", "D"],
            vec![
                ("G1", GateKind::And, vec!["A", "B"]),
                ("G2", GateKind::AtLeast(2), vec!["B", "C", "D"]),
                ("T", GateKind::Or, vec!["G1", "G2"]),
            ],
            "T",
        );
        let report = coherence_check(&tree, DEFAULT_EVENT_LIMIT).unwrap();
        assert!(report.coherent, "{:?}", report.violations);
    }
}
