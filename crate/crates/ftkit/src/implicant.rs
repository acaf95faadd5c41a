//! Cut sets, implicant sets, and Boolean minimization by absorption.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{EventId, Literal};

/// A conjunction of signed literals, stored as a set. A positive literal is
/// a failure event occurring; a negated one is the event not occurring.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutSet {
    literals: BTreeSet<Literal>,
}

impl CutSet {
    pub fn new() -> Self {
        CutSet::default()
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(literals: I) -> Self {
        CutSet {
            literals: literals.into_iter().collect(),
        }
    }

    /// Convenience constructor from `"A"` / `"!A"` names.
    pub fn parse(names: &[&str]) -> Self {
        CutSet::from_literals(names.iter().map(|n| match n.strip_prefix('!') {
            Some(rest) => Literal::negative(rest),
            None => Literal::positive(*n),
        }))
    }

    pub fn insert(&mut self, literal: Literal) {
        self.literals.insert(literal);
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        self.literals.contains(literal)
    }

    /// True when the set contains an event with both polarities, which makes
    /// the conjunction identically false.
    pub fn is_contradictory(&self) -> bool {
        self.literals
            .iter()
            .filter(|l| !l.negated)
            .any(|l| self.literals.contains(&l.complement()))
    }

    /// Subset test with polarity: every literal of `self` appears in `other`.
    pub fn is_subset_of(&self, other: &CutSet) -> bool {
        self.literals.is_subset(&other.literals)
    }

    pub fn has_negated_literal(&self) -> bool {
        self.literals.iter().any(|l| l.negated)
    }

    /// Drops negated literals (the coherent approximation of one implicant).
    pub fn without_negated(&self) -> CutSet {
        CutSet::from_literals(self.literals.iter().filter(|l| !l.negated).cloned())
    }

    /// The positive events of this set.
    pub fn positive_events(&self) -> impl Iterator<Item = &EventId> {
        self.literals.iter().filter(|l| !l.negated).map(|l| &l.event)
    }
}

impl fmt::Display for CutSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a CutSet {
    type Item = &'a Literal;
    type IntoIter = std::collections::btree_set::Iter<'a, Literal>;

    fn into_iter(self) -> Self::IntoIter {
        self.literals.iter()
    }
}

/// How far an implicant set has been processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    /// Straight out of cut-set generation; may contain redundant members.
    Raw,
    /// Minimal cut sets: an antichain under subset inclusion.
    Minimal,
    /// Prime implicants of a (possibly non-coherent) function.
    Prime,
}

/// A set of cut sets / implicants over signed literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicantSet {
    pub members: BTreeSet<CutSet>,
    pub kind: SetKind,
}

impl ImplicantSet {
    pub fn new(kind: SetKind) -> Self {
        ImplicantSet {
            members: BTreeSet::new(),
            kind,
        }
    }

    pub fn from_members<I: IntoIterator<Item = CutSet>>(members: I, kind: SetKind) -> Self {
        ImplicantSet {
            members: members.into_iter().collect(),
            kind,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CutSet> {
        self.members.iter()
    }

    /// Members sorted for display: by size, then lexicographically.
    pub fn sorted_members(&self) -> Vec<&CutSet> {
        let mut v: Vec<&CutSet> = self.members.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// True when the implicant set is an antichain: no member is a subset
    /// of another.
    pub fn is_antichain(&self) -> bool {
        for a in &self.members {
            for b in &self.members {
                if a != b && a.is_subset_of(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates the OR-of-ANDs this set denotes.
    pub fn evaluate_with(&self, state: impl Fn(&EventId) -> bool) -> bool {
        self.members.iter().any(|m| {
            m.iter().all(|lit| state(&lit.event) ^ lit.negated)
        })
    }
}

/// Removes contradictions, duplicates, and absorbed supersets
/// (`A + AB = A`). The result is an antichain denoting the same Boolean
/// function as the input.
pub fn minimize(sets: &ImplicantSet) -> ImplicantSet {
    // Sorting by size means a member can only be absorbed by one already kept.
    let mut by_size: Vec<&CutSet> = sets
        .members
        .iter()
        .filter(|s| !s.is_contradictory())
        .collect();
    by_size.sort_by_key(|s| s.len());

    let mut kept: Vec<CutSet> = Vec::new();
    for candidate in by_size {
        if !kept.iter().any(|k| k.is_subset_of(candidate)) {
            kept.push(candidate.clone());
        }
    }
    ImplicantSet::from_members(kept, SetKind::Minimal)
}

/// Coherent approximation of a prime-implicant set: deletes negated
/// literals from every member, then re-minimizes by absorption.
pub fn coherent_mcs_from_pi(pis: &ImplicantSet) -> ImplicantSet {
    let stripped = ImplicantSet::from_members(
        pis.members.iter().map(CutSet::without_negated),
        SetKind::Raw,
    );
    minimize(&stripped)
}
