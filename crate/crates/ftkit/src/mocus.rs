//! Top-down cut-set generation by table expansion.
//!
//! Starting from a single row holding the top gate, each step replaces one
//! gate occurrence by its inputs: an AND expands in place within its row,
//! an OR forks the row into one copy per input. Rows that acquire an event
//! with both polarities are contradictions and are dropped immediately;
//! duplicate entries within a row collapse. When no gates remain, the rows
//! are the raw cut sets. Negated literals flow through the table like any
//! other symbol, which is what makes the procedure work on non-coherent
//! trees too.

use std::collections::BTreeSet;

use crate::implicant::{CutSet, ImplicantSet, SetKind};
use crate::model::Literal;
use crate::normalize::{NormInput, NormKind, NormalizedTree};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Item {
    Gate(usize),
    Lit(Literal),
}

#[derive(Debug, Clone)]
struct Row {
    items: Vec<Item>,
}

impl Row {
    fn first_gate(&self) -> Option<usize> {
        self.items.iter().position(|i| matches!(i, Item::Gate(_)))
    }

    /// Replaces the item at `pos` with `replacements`, collapsing duplicates.
    /// Returns `None` when the row becomes contradictory.
    fn replace(&self, pos: usize, replacements: &[NormInput]) -> Option<Row> {
        let mut items: Vec<Item> = Vec::with_capacity(self.items.len() + replacements.len());
        items.extend_from_slice(&self.items[..pos]);
        let tail = &self.items[pos + 1..];
        for input in replacements {
            let item = match input {
                NormInput::Gate(g) => Item::Gate(*g),
                NormInput::Literal(l) => Item::Lit(l.clone()),
            };
            if items.contains(&item) || tail.contains(&item) {
                continue;
            }
            if let Item::Lit(l) = &item {
                let complement = Item::Lit(l.complement());
                if items.contains(&complement) || tail.contains(&complement) {
                    return None;
                }
            }
            items.push(item);
        }
        items.extend_from_slice(tail);
        Some(Row { items })
    }

    fn into_cut_set(self) -> CutSet {
        CutSet::from_literals(self.items.into_iter().map(|i| match i {
            Item::Lit(l) => l,
            Item::Gate(_) => unreachable!("gate left in finished row"),
        }))
    }
}

/// Runs the table expansion over a normalized tree and returns the raw cut
/// sets (contradiction-free, but possibly containing redundant members).
pub fn mocus(tree: &NormalizedTree) -> ImplicantSet {
    let mut finished: BTreeSet<CutSet> = BTreeSet::new();
    let mut work = vec![Row {
        items: vec![Item::Gate(tree.top())],
    }];

    while let Some(row) = work.pop() {
        match row.first_gate() {
            None => {
                finished.insert(row.into_cut_set());
            }
            Some(pos) => {
                let Item::Gate(g) = row.items[pos] else { unreachable!() };
                let gate = &tree.gates()[g];
                match gate.kind {
                    NormKind::And => {
                        if let Some(next) = row.replace(pos, &gate.inputs) {
                            work.push(next);
                        }
                    }
                    NormKind::Or => {
                        for input in &gate.inputs {
                            if let Some(next) = row.replace(pos, std::slice::from_ref(input)) {
                                work.push(next);
                            }
                        }
                    }
                }
            }
        }
    }

    ImplicantSet::from_members(finished, SetKind::Raw)
}
