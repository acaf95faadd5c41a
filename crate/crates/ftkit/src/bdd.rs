//! Reduced ordered binary decision diagrams: construction from normalized
//! trees, exact top-event probability, and prime-implicant extraction.
//!
//! Nodes are hash-consed, so the reduction invariants hold by construction:
//! no node has equal children and no two nodes share `(var, low, high)`.
//! Probability evaluation is a Shannon decomposition,
//! `P(f) = q_v * P(high) + (1 - q_v) * P(low)`, which is exact for
//! non-coherent functions under independent events.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

use crate::error::Error;
use crate::implicant::{CutSet, ImplicantSet, SetKind};
use crate::model::{EventId, Literal};
use crate::normalize::{NormInput, NormKind, NormalizedTree};
use crate::quantify::ProbMap;

/// Default cap on the number of BDD nodes in one graph.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Index into the node arena. Entries 0 and 1 are the terminals.
pub type NodeRef = u32;

pub const ZERO: NodeRef = 0;
pub const ONE: NodeRef = 1;

const TERMINAL_VAR: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    low: NodeRef,
    high: NodeRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    And,
    Or,
}

struct Manager {
    nodes: Vec<Node>,
    unique: HashMap<(u32, NodeRef, NodeRef), NodeRef>,
    cache: HashMap<(Op, NodeRef, NodeRef), NodeRef>,
    budget: usize,
}

impl Manager {
    fn new(budget: usize) -> Self {
        let terminal = Node {
            var: TERMINAL_VAR,
            low: ZERO,
            high: ZERO,
        };
        Manager {
            nodes: vec![
                terminal,
                Node {
                    var: TERMINAL_VAR,
                    low: ONE,
                    high: ONE,
                },
            ],
            unique: HashMap::new(),
            cache: HashMap::new(),
            budget,
        }
    }

    fn mk(&mut self, var: u32, low: NodeRef, high: NodeRef) -> Result<NodeRef, Error> {
        if low == high {
            return Ok(low);
        }
        if let Some(&r) = self.unique.get(&(var, low, high)) {
            return Ok(r);
        }
        if self.nodes.len() >= self.budget {
            return Err(Error::NodeBudgetExceeded {
                budget: self.budget,
            });
        }
        let r = self.nodes.len() as NodeRef;
        self.nodes.push(Node { var, low, high });
        self.unique.insert((var, low, high), r);
        Ok(r)
    }

    fn literal(&mut self, var: u32, negated: bool) -> Result<NodeRef, Error> {
        if negated {
            self.mk(var, ONE, ZERO)
        } else {
            self.mk(var, ZERO, ONE)
        }
    }

    fn apply(&mut self, op: Op, f: NodeRef, g: NodeRef) -> Result<NodeRef, Error> {
        match op {
            Op::And => {
                if f == ZERO || g == ZERO {
                    return Ok(ZERO);
                }
                if f == ONE {
                    return Ok(g);
                }
                if g == ONE || f == g {
                    return Ok(f);
                }
            }
            Op::Or => {
                if f == ONE || g == ONE {
                    return Ok(ONE);
                }
                if f == ZERO {
                    return Ok(g);
                }
                if g == ZERO || f == g {
                    return Ok(f);
                }
            }
        }
        let (f, g) = if f <= g { (f, g) } else { (g, f) };
        if let Some(&r) = self.cache.get(&(op, f, g)) {
            return Ok(r);
        }
        let nf = self.nodes[f as usize];
        let ng = self.nodes[g as usize];
        let var = nf.var.min(ng.var);
        let (f0, f1) = if nf.var == var { (nf.low, nf.high) } else { (f, f) };
        let (g0, g1) = if ng.var == var { (ng.low, ng.high) } else { (g, g) };
        let low = self.apply(op, f0, g0)?;
        let high = self.apply(op, f1, g1)?;
        let r = self.mk(var, low, high)?;
        self.cache.insert((op, f, g), r);
        Ok(r)
    }
}

/// An immutable reduced ordered BDD over the events of one tree.
#[derive(Debug, Clone)]
pub struct BddGraph {
    nodes: Vec<Node>,
    root: NodeRef,
    order: Vec<EventId>,
}

impl BddGraph {
    pub fn root(&self) -> NodeRef {
        self.root
    }

    /// Variable order, outermost variable first.
    pub fn order(&self) -> &[EventId] {
        &self.order
    }

    /// Number of nodes including the two terminals.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Verifies the reduction invariants by scanning the node store: no
    /// redundant node (`low == high`), no duplicate `(var, low, high)`
    /// triple, and variable indices strictly increasing on every path.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for node in self.nodes.iter().skip(2) {
            if node.low == node.high {
                return false;
            }
            if !seen.insert((node.var, node.low, node.high)) {
                return false;
            }
            for child in [node.low, node.high] {
                if child > ONE && self.nodes[child as usize].var <= node.var {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates the Boolean function for the event states in `state`.
    pub fn evaluate(&self, state: impl Fn(&EventId) -> bool) -> bool {
        let mut at = self.root;
        while at > ONE {
            let node = self.nodes[at as usize];
            at = if state(&self.order[node.var as usize]) {
                node.high
            } else {
                node.low
            };
        }
        at == ONE
    }

    /// Plain-text description of the graph (one node per line), for
    /// documentation rendering. Terminals are `0` and `1`; inner nodes are
    /// `n<index>`.
    pub fn export_graph(&self) -> String {
        fn name(r: NodeRef) -> String {
            match r {
                ZERO => "0".into(),
                ONE => "1".into(),
                other => format!("n{other}"),
            }
        }
        let mut out = String::new();
        let order: Vec<&str> = self.order.iter().map(|e| e.as_str()).collect();
        writeln!(out, "order: {}", order.join(" ")).unwrap();
        writeln!(out, "root: {}", name(self.root)).unwrap();
        for (i, node) in self.nodes.iter().enumerate().skip(2) {
            writeln!(
                out,
                "n{i}: var={} low={} high={}",
                self.order[node.var as usize],
                name(node.low),
                name(node.high),
            )
            .unwrap();
        }
        out
    }
}

/// Builds a reduced ordered BDD for a normalized tree with the default node
/// budget. `order` must list every declared event exactly once.
pub fn build_bdd(tree: &NormalizedTree, order: &[EventId]) -> Result<BddGraph, Error> {
    build_bdd_with_budget(tree, order, DEFAULT_NODE_BUDGET)
}

/// As [`build_bdd`] with an explicit node budget.
pub fn build_bdd_with_budget(
    tree: &NormalizedTree,
    order: &[EventId],
    budget: usize,
) -> Result<BddGraph, Error> {
    let mut position: HashMap<&EventId, u32> = HashMap::new();
    for (i, event) in order.iter().enumerate() {
        if position.insert(event, i as u32).is_some() {
            return Err(Error::BadVariableOrder {
                what: format!("event `{event}` appears twice in the order"),
            });
        }
    }
    for event in tree.vars() {
        if !position.contains_key(event) {
            return Err(Error::BadVariableOrder {
                what: format!("order is missing event `{event}`"),
            });
        }
    }
    if order.len() != tree.vars().len() {
        return Err(Error::BadVariableOrder {
            what: "order names events not declared in the tree".to_string(),
        });
    }

    let mut manager = Manager::new(budget);
    let mut memo: Vec<Option<NodeRef>> = vec![None; tree.gates().len()];
    let root = build_gate(tree, tree.top(), &position, &mut manager, &mut memo)?;
    let (nodes, root) = compact(&manager.nodes, root);
    Ok(BddGraph {
        nodes,
        root,
        order: order.to_vec(),
    })
}

/// Drops arena nodes no longer reachable from the root (intermediate apply
/// results). Surviving nodes keep their relative order, so children still
/// precede parents.
fn compact(nodes: &[Node], root: NodeRef) -> (Vec<Node>, NodeRef) {
    let mut reachable = vec![false; nodes.len()];
    reachable[ZERO as usize] = true;
    reachable[ONE as usize] = true;
    let mut stack = vec![root];
    while let Some(at) = stack.pop() {
        if reachable[at as usize] {
            continue;
        }
        reachable[at as usize] = true;
        let node = nodes[at as usize];
        stack.push(node.low);
        stack.push(node.high);
    }

    let mut remap = vec![0 as NodeRef; nodes.len()];
    let mut kept = Vec::with_capacity(reachable.iter().filter(|&&r| r).count());
    for (i, node) in nodes.iter().enumerate() {
        if !reachable[i] {
            continue;
        }
        remap[i] = kept.len() as NodeRef;
        if i <= ONE as usize {
            kept.push(*node);
        } else {
            kept.push(Node {
                var: node.var,
                low: remap[node.low as usize],
                high: remap[node.high as usize],
            });
        }
    }
    (kept, remap[root as usize])
}

fn build_gate(
    tree: &NormalizedTree,
    idx: usize,
    position: &HashMap<&EventId, u32>,
    manager: &mut Manager,
    memo: &mut Vec<Option<NodeRef>>,
) -> Result<NodeRef, Error> {
    if let Some(r) = memo[idx] {
        return Ok(r);
    }
    let gate = &tree.gates()[idx];
    let op = match gate.kind {
        NormKind::And => Op::And,
        NormKind::Or => Op::Or,
    };
    let mut acc: Option<NodeRef> = None;
    for input in &gate.inputs {
        let node = match input {
            NormInput::Literal(lit) => manager.literal(position[&lit.event], lit.negated)?,
            NormInput::Gate(g) => build_gate(tree, *g, position, manager, memo)?,
        };
        acc = Some(match acc {
            None => node,
            Some(prev) => manager.apply(op, prev, node)?,
        });
    }
    let r = acc.expect("normalized gates have at least one input");
    memo[idx] = Some(r);
    Ok(r)
}

/// Exact probability that the BDD's function is 1 under independent events
/// with the given per-event probabilities.
pub fn bdd_prob(bdd: &BddGraph, q: &ProbMap) -> Result<f64, Error> {
    let mut probs = Vec::with_capacity(bdd.order.len());
    for event in &bdd.order {
        let value = q.get(event).ok_or_else(|| Error::MissingEventValue {
            event: event.to_string(),
            kind: "probability",
        })?;
        probs.push(*value);
    }
    let mut memo: HashMap<NodeRef, f64> = HashMap::new();
    Ok(node_prob(&bdd.nodes, bdd.root, &probs, &mut memo))
}

fn node_prob(nodes: &[Node], at: NodeRef, q: &[f64], memo: &mut HashMap<NodeRef, f64>) -> f64 {
    match at {
        ZERO => 0.0,
        ONE => 1.0,
        _ => {
            if let Some(&p) = memo.get(&at) {
                return p;
            }
            let node = nodes[at as usize];
            let qv = q[node.var as usize];
            let p = qv * node_prob(nodes, node.high, q, memo)
                + (1.0 - qv) * node_prob(nodes, node.low, q, memo);
            memo.insert(at, p);
            p
        }
    }
}

/// Computes the complete prime-implicant set of the BDD's function.
///
/// For a node `v` with cofactors `f1`/`f0` and their conjunction `g`, the
/// prime implicants are those of `g` (not mentioning `v`) plus `v . p` for
/// each prime `p` of `f1` that does not already imply `g`, and dually
/// `!v . p` for the primes of `f0`. Conjunctions are formed on a scratch
/// copy of the graph, so the input stays untouched; the node budget covers
/// the scratch nodes too.
pub fn prime_implicants(bdd: &BddGraph) -> Result<ImplicantSet, Error> {
    prime_implicants_with_budget(bdd, DEFAULT_NODE_BUDGET.max(bdd.nodes.len()))
}

/// As [`prime_implicants`] with an explicit budget for scratch nodes.
pub fn prime_implicants_with_budget(
    bdd: &BddGraph,
    budget: usize,
) -> Result<ImplicantSet, Error> {
    let mut manager = Manager::new(budget);
    manager.nodes = bdd.nodes.clone();
    for (i, node) in bdd.nodes.iter().enumerate().skip(2) {
        manager
            .unique
            .insert((node.var, node.low, node.high), i as NodeRef);
    }

    let mut memo: HashMap<NodeRef, Rc<BTreeSet<CutSet>>> = HashMap::new();
    let primes = node_primes(&mut manager, bdd.root, &bdd.order, &mut memo)?;
    Ok(ImplicantSet::from_members(
        primes.iter().cloned(),
        SetKind::Prime,
    ))
}

fn node_primes(
    manager: &mut Manager,
    at: NodeRef,
    order: &[EventId],
    memo: &mut HashMap<NodeRef, Rc<BTreeSet<CutSet>>>,
) -> Result<Rc<BTreeSet<CutSet>>, Error> {
    if at == ZERO {
        return Ok(Rc::new(BTreeSet::new()));
    }
    if at == ONE {
        return Ok(Rc::new(BTreeSet::from([CutSet::new()])));
    }
    if let Some(cached) = memo.get(&at) {
        return Ok(cached.clone());
    }

    let node = manager.nodes[at as usize];
    let consensus = manager.apply(Op::And, node.low, node.high)?;
    let of_consensus = node_primes(manager, consensus, order, memo)?;
    let of_high = node_primes(manager, node.high, order, memo)?;
    let of_low = node_primes(manager, node.low, order, memo)?;

    let event = &order[node.var as usize];
    let mut result: BTreeSet<CutSet> = of_consensus.as_ref().clone();
    for (cofactor_primes, negated) in [(&of_high, false), (&of_low, true)] {
        for prime in cofactor_primes.iter() {
            if !cube_implies(manager, consensus, prime, order) {
                let mut extended = prime.clone();
                extended.insert(Literal {
                    event: event.clone(),
                    negated,
                });
                result.insert(extended);
            }
        }
    }

    let result = Rc::new(result);
    memo.insert(at, result.clone());
    Ok(result)
}

/// True when every assignment consistent with `cube` satisfies `f`.
fn cube_implies(manager: &Manager, f: NodeRef, cube: &CutSet, order: &[EventId]) -> bool {
    fn walk(nodes: &[Node], at: NodeRef, cube: &HashMap<u32, bool>) -> bool {
        match at {
            ZERO => false,
            ONE => true,
            _ => {
                let node = nodes[at as usize];
                match cube.get(&node.var) {
                    Some(true) => walk(nodes, node.high, cube),
                    Some(false) => walk(nodes, node.low, cube),
                    None => walk(nodes, node.low, cube) && walk(nodes, node.high, cube),
                }
            }
        }
    }
    let by_var: HashMap<u32, bool> = cube
        .iter()
        .map(|lit| {
            let var = order.iter().position(|e| e == &lit.event).expect("literal in order") as u32;
            (var, !lit.negated)
        })
        .collect();
    walk(&manager.nodes, f, &by_var)
}
