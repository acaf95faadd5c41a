//! Rewriting a fault tree into AND/OR form with all negations pushed down
//! onto event literals.
//!
//! The rewrite rules are the usual Boolean identities: De Morgan for
//! NAND/NOR and for negated AND/OR, double-negation elimination,
//! `xor(a, b) = (a and !b) or (!a and b)` (n-ary XOR folds pairwise), and
//! combinational expansion of `atleast(k of n)` into an OR over all
//! C(n, k) AND terms. The result evaluates identically to the source tree
//! on every assignment.

use std::collections::HashMap;

use crate::error::Error;
use crate::model::{EventId, FaultTree, GateId, GateKind, InputRef, Literal};
use crate::validate::validate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    And,
    Or,
}

/// Input of a normalized gate: another normalized gate (by index) or a
/// signed event literal.
#[derive(Debug, Clone, PartialEq)]
pub enum NormInput {
    Gate(usize),
    Literal(Literal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormGate {
    pub kind: NormKind,
    pub inputs: Vec<NormInput>,
}

/// A fault tree reduced to AND/OR gates over signed literals. Gates live in
/// an arena indexed from the `top` gate; sharing is preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedTree {
    vars: Vec<EventId>,
    gates: Vec<NormGate>,
    top: usize,
}

impl NormalizedTree {
    /// Declared events in declaration order (the default variable order).
    pub fn vars(&self) -> &[EventId] {
        &self.vars
    }

    pub fn gates(&self) -> &[NormGate] {
        &self.gates
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Evaluates the Boolean function with per-event values supplied by
    /// `state` (`true` = the failure event occurred).
    pub fn evaluate_with(&self, state: impl Fn(&EventId) -> bool) -> bool {
        let mut memo = vec![None; self.gates.len()];
        self.eval_gate(self.top, &state, &mut memo)
    }

    fn eval_gate(
        &self,
        idx: usize,
        state: &impl Fn(&EventId) -> bool,
        memo: &mut Vec<Option<bool>>,
    ) -> bool {
        if let Some(v) = memo[idx] {
            return v;
        }
        let gate = &self.gates[idx];
        let mut acc = gate.kind == NormKind::And;
        for input in &gate.inputs {
            let v = match input {
                NormInput::Literal(lit) => state(&lit.event) ^ lit.negated,
                NormInput::Gate(g) => self.eval_gate(*g, state, memo),
            };
            acc = match gate.kind {
                NormKind::And => acc && v,
                NormKind::Or => acc || v,
            };
        }
        memo[idx] = Some(acc);
        acc
    }
}

struct Builder<'t> {
    tree: &'t FaultTree,
    gates: Vec<NormGate>,
    memo: HashMap<(GateId, bool), NormInput>,
}

impl<'t> Builder<'t> {
    fn push(&mut self, kind: NormKind, inputs: Vec<NormInput>) -> NormInput {
        debug_assert!(!inputs.is_empty());
        if inputs.len() == 1 {
            return inputs.into_iter().next().unwrap();
        }
        self.gates.push(NormGate { kind, inputs });
        NormInput::Gate(self.gates.len() - 1)
    }

    /// Normalizes `negated ^ ref`: the reference's own `!` flag folds into
    /// the requested phase.
    fn norm_ref(&mut self, input: &InputRef, negated: bool) -> NormInput {
        let phase = negated ^ input.negated;
        if self.tree.is_event(&input.id) {
            NormInput::Literal(Literal {
                event: EventId(input.id.clone()),
                negated: phase,
            })
        } else {
            self.norm_gate(&GateId(input.id.clone()), phase)
        }
    }

    /// Normalizes a source gate under a phase: `negated = true` asks for the
    /// complement of the gate's function.
    fn norm_gate(&mut self, id: &GateId, negated: bool) -> NormInput {
        let key = (id.clone(), negated);
        if let Some(cached) = self.memo.get(&key) {
            return cached.clone();
        }
        let gate = &self.tree.gates[id];
        let result = match gate.kind {
            GateKind::And | GateKind::Nand => {
                let flip = negated ^ (gate.kind == GateKind::Nand);
                let inputs: Vec<_> = gate.inputs.iter().map(|r| self.norm_ref(r, flip)).collect();
                self.push(if flip { NormKind::Or } else { NormKind::And }, inputs)
            }
            GateKind::Or | GateKind::Nor => {
                let flip = negated ^ (gate.kind == GateKind::Nor);
                let inputs: Vec<_> = gate.inputs.iter().map(|r| self.norm_ref(r, flip)).collect();
                self.push(if flip { NormKind::And } else { NormKind::Or }, inputs)
            }
            GateKind::Not => self.norm_ref(&gate.inputs[0], !negated),
            GateKind::Xor => self.norm_xor(&gate.inputs, negated),
            GateKind::AtLeast(k) => self.norm_atleast(&gate.inputs, k, negated),
        };
        self.memo.insert(key, result.clone());
        result
    }

    /// Parity of the inputs, folded pairwise. Tracks both phases of the
    /// running result so each step is a plain two-term expansion.
    fn norm_xor(&mut self, inputs: &[InputRef], negated: bool) -> NormInput {
        let mut pos = self.norm_ref(&inputs[0], false);
        let mut neg = self.norm_ref(&inputs[0], true);
        for r in &inputs[1..] {
            let r_pos = self.norm_ref(r, false);
            let r_neg = self.norm_ref(r, true);
            let both_differ = vec![
                self.push(NormKind::And, vec![pos.clone(), r_neg.clone()]),
                self.push(NormKind::And, vec![neg.clone(), r_pos.clone()]),
            ];
            let both_same = vec![
                self.push(NormKind::And, vec![pos, r_pos]),
                self.push(NormKind::And, vec![neg, r_neg]),
            ];
            pos = self.push(NormKind::Or, both_differ);
            neg = self.push(NormKind::Or, both_same);
        }
        if negated {
            neg
        } else {
            pos
        }
    }

    /// `atleast(k of n)` becomes an OR over all size-k AND combinations;
    /// its complement is "at least n-k+1 inputs absent" and expands the
    /// same way over negated references.
    fn norm_atleast(&mut self, inputs: &[InputRef], k: usize, negated: bool) -> NormInput {
        let n = inputs.len();
        let (pick, phase) = if negated { (n - k + 1, true) } else { (k, false) };
        let mut terms = Vec::new();
        let mut combo: Vec<usize> = (0..pick).collect();
        loop {
            let lits: Vec<_> = combo.iter().map(|&i| self.norm_ref(&inputs[i], phase)).collect();
            terms.push(self.push(NormKind::And, lits));
            // next k-combination in lexicographic order
            let mut i = pick;
            loop {
                if i == 0 {
                    return self.push(NormKind::Or, terms);
                }
                i -= 1;
                if combo[i] != i + n - pick {
                    combo[i] += 1;
                    for j in i + 1..pick {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Normalizes a fault tree. Fails with the validation diagnostics if the
/// tree is invalid.
pub fn normalize(tree: &FaultTree) -> Result<NormalizedTree, Error> {
    let diagnostics = validate(tree);
    if diagnostics.iter().any(|d| d.is_error()) {
        return Err(Error::Invalid(diagnostics));
    }
    let mut builder = Builder {
        tree,
        gates: Vec::new(),
        memo: HashMap::new(),
    };
    let top_input = builder.norm_gate(&tree.top, false);
    let top = match top_input {
        NormInput::Gate(i) => i,
        lit => {
            builder.gates.push(NormGate {
                kind: NormKind::And,
                inputs: vec![lit],
            });
            builder.gates.len() - 1
        }
    };
    Ok(NormalizedTree {
        vars: tree.event_order(),
        gates: builder.gates,
        top,
    })
}
