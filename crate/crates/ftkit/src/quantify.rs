//! Quantitative evaluation of cut sets and top events.
//!
//! Per-set measures are products and sums over independent basic events:
//! `Q = prod q_i` and `W = sum_i w_i * prod_{k != i} q_k` (the last event in
//! the set occurs while the others are already failed). A negated literal
//! contributes `1 - q` to products; what it contributes to frequency is a
//! policy choice, see [`NotFrequencyPolicy`].
//!
//! Top-event unavailability supports four methods which, for coherent
//! inputs, form a chain of bounds:
//!
//! ```text
//! exact_ie <= ep_common <= ep <= rare_event
//! ```
//!
//! * `exact_ie` — full inclusion-exclusion over the cut sets, optionally
//!   truncated at a maximum intersection order;
//! * `ep_common` — the Esary-Proschan bound with the events common to all
//!   cut sets factored out first;
//! * `ep` — the plain Esary-Proschan bound `1 - prod(1 - Q_i)`;
//! * `rare_event` — `sum Q_i`.
//!
//! The chain is not guaranteed for non-coherent inputs (sets with negated
//! literals); `exact_ie` can exceed `ep_common` there.
//!
//! Top-event frequency is `W = sum_i W_i * prod_{j != i} (1 - Q_j)`: a cut
//! set occurring while no other is failed. Q and W are approximated under
//! different assumptions and are never converted into each other.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::event_model::{measure_of, Measure};
use crate::implicant::{CutSet, ImplicantSet};
use crate::model::{EventId, FaultTree, Literal};

pub type ProbMap = BTreeMap<EventId, f64>;
pub type FreqMap = BTreeMap<EventId, f64>;

/// Unevaluated double-double value: `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// The top-event estimators chain many products of probabilities close
/// to 1; plain f64 evaluation can end up one ulp off, which matters when a
/// result lands on a decimal rounding boundary. Carrying roughly 32
/// significant digits through the sums and products keeps the final
/// rounding correct.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    Dd { hi, lo: b - (hi - a) }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    let bv = hi - a;
    Dd {
        hi,
        lo: (a - (hi - bv)) + (b - bv),
    }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let hi = a * b;
    Dd {
        hi,
        lo: a.mul_add(b, -hi),
    }
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }

    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let t = two_sum(self.lo, other.lo);
        let mid = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(mid.hi, mid.lo + t.lo)
    }

    fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * other.lo + self.lo * other.hi))
    }
}

/// Method for estimating top-event unavailability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QMethod {
    ExactIe,
    EpCommon,
    Ep,
    RareEvent,
}

impl QMethod {
    pub const ALL: [QMethod; 4] = [
        QMethod::ExactIe,
        QMethod::EpCommon,
        QMethod::Ep,
        QMethod::RareEvent,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QMethod::ExactIe => "exact_ie",
            QMethod::EpCommon => "ep_common",
            QMethod::Ep => "ep",
            QMethod::RareEvent => "rare_event",
        }
    }
}

impl std::fmt::Display for QMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Truncation of the inclusion-exclusion sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IeOrder {
    /// Unlimited for up to 20 cut sets, order 3 (with a warning) above.
    Auto,
    Unlimited,
    /// Truncate at this intersection order (>= 1).
    Bounded(usize),
}

/// Frequency contribution of a negated literal in a cut set.
///
/// `Zero` treats the absence of an event like a fixed-probability enabling
/// condition: it scales the probability but never triggers the set.
/// `Mirror` counts the event's own frequency for its absence as well, on
/// the reasoning that each occurrence is preceded by one non-occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NotFrequencyPolicy {
    #[default]
    Zero,
    Mirror,
}

#[derive(Debug, Clone)]
pub struct QuantConfig {
    pub q_method: QMethod,
    pub ie_max_order: IeOrder,
    pub not_frequency_policy: NotFrequencyPolicy,
    /// Mission time override; falls back to the document's value.
    pub mission_time_hours: Option<f64>,
}

impl Default for QuantConfig {
    fn default() -> Self {
        QuantConfig {
            q_method: QMethod::EpCommon,
            ie_max_order: IeOrder::Auto,
            not_frequency_policy: NotFrequencyPolicy::Zero,
            mission_time_hours: None,
        }
    }
}

/// A top-event estimate plus any warnings produced while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct TopEstimate {
    pub value: f64,
    pub warnings: Vec<String>,
}

/// Per-set and top-event measures for one quantification method.
#[derive(Debug, Clone)]
pub struct QuantResult {
    /// `(cut set, Q_i, W_i)`, sorted by set size then lexicographically.
    pub per_set: Vec<(CutSet, f64, f64)>,
    pub top: Measure,
    pub method: QMethod,
    pub warnings: Vec<String>,
}

fn lookup(map: &ProbMap, event: &EventId, kind: &'static str) -> Result<f64, Error> {
    map.get(event).copied().ok_or_else(|| Error::MissingEventValue {
        event: event.to_string(),
        kind,
    })
}

fn literal_prob(lit: &Literal, q: &ProbMap) -> Result<f64, Error> {
    let qe = lookup(q, &lit.event, "probability")?;
    Ok(if lit.negated { 1.0 - qe } else { qe })
}

fn literal_prob_dd(lit: &Literal, q: &ProbMap) -> Result<Dd, Error> {
    let qe = lookup(q, &lit.event, "probability")?;
    Ok(if lit.negated {
        Dd::ONE.sub(Dd::from_f64(qe))
    } else {
        Dd::from_f64(qe)
    })
}

fn mcs_q_dd(set: &CutSet, q: &ProbMap) -> Result<Dd, Error> {
    let mut product = Dd::ONE;
    for lit in set {
        product = product.mul(literal_prob_dd(lit, q)?);
    }
    Ok(product)
}

/// Unavailability of one cut set: the product of its literal probabilities.
/// The empty set has probability 1.
pub fn mcs_q(set: &CutSet, q: &ProbMap) -> Result<f64, Error> {
    Ok(mcs_q_dd(set, q)?.value())
}

/// Occurrence frequency of one cut set: each literal in turn is the last to
/// occur, at its frequency, while the rest are in place. Negated literals
/// contribute frequency per `policy` (and probability `1 - q` either way).
pub fn mcs_w(
    set: &CutSet,
    q: &ProbMap,
    w: &FreqMap,
    policy: NotFrequencyPolicy,
) -> Result<f64, Error> {
    let literals: Vec<&Literal> = set.iter().collect();
    let mut probs = Vec::with_capacity(literals.len());
    let mut freqs = Vec::with_capacity(literals.len());
    for lit in &literals {
        probs.push(literal_prob(lit, q)?);
        let we = lookup(w, &lit.event, "frequency")?;
        freqs.push(match (lit.negated, policy) {
            (false, _) => we,
            (true, NotFrequencyPolicy::Zero) => 0.0,
            (true, NotFrequencyPolicy::Mirror) => we,
        });
    }
    let mut total = 0.0;
    for (i, &fi) in freqs.iter().enumerate() {
        if fi == 0.0 {
            continue;
        }
        let mut term = fi;
        for (k, p) in probs.iter().enumerate() {
            if k != i {
                term *= p;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Signed-literal cut set encoded as positive/negative event bitmasks for
/// fast intersection tests during inclusion-exclusion.
struct MaskedSet {
    pos: u64,
    neg: u64,
}

fn effective_ie_order(order: IeOrder, m: usize, warnings: &mut Vec<String>) -> usize {
    match order {
        IeOrder::Unlimited => m,
        IeOrder::Bounded(k) => k.max(1).min(m),
        IeOrder::Auto => {
            if m <= 20 {
                m
            } else {
                warnings.push(format!(
                    "inclusion-exclusion truncated at order 3 for {m} cut sets; \
                     pass an explicit order to override"
                ));
                3
            }
        }
    }
}

/// Inclusion-exclusion over up to 64 distinct events. Terms are summed in
/// subset-rank order (by intersection order, then lexicographically) so the
/// result is reproducible bit for bit.
fn exact_ie(members: &[&CutSet], q: &ProbMap, order: usize) -> Result<f64, Error> {
    let mut events: Vec<&EventId> = Vec::new();
    for set in members {
        for lit in *set {
            if !events.contains(&&lit.event) {
                events.push(&lit.event);
            }
        }
    }
    if events.len() > 64 {
        return exact_ie_generic(members, q, order);
    }
    let index_of = |event: &EventId| events.iter().position(|e| *e == event).unwrap();
    let probs: Vec<f64> = events
        .iter()
        .map(|e| lookup(q, e, "probability"))
        .collect::<Result<_, _>>()?;

    let masked: Vec<MaskedSet> = members
        .iter()
        .map(|set| {
            let mut m = MaskedSet { pos: 0, neg: 0 };
            for lit in *set {
                let bit = 1u64 << index_of(&lit.event);
                if lit.negated {
                    m.neg |= bit;
                } else {
                    m.pos |= bit;
                }
            }
            m
        })
        .collect();

    let m = members.len();
    let mut total = Dd::ZERO;
    let mut combo: Vec<usize> = Vec::new();
    for r in 1..=order.min(m) {
        let positive = r % 2 == 1;
        let mut rank_sum = Dd::ZERO;
        combo.clear();
        combo.extend(0..r);
        'combos: loop {
            let mut pos = 0u64;
            let mut neg = 0u64;
            for &i in &combo {
                pos |= masked[i].pos;
                neg |= masked[i].neg;
            }
            if pos & neg == 0 {
                let mut product = Dd::ONE;
                let mut bits = pos;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    product = product.mul(Dd::from_f64(probs[i]));
                    bits &= bits - 1;
                }
                bits = neg;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    product = product.mul(Dd::ONE.sub(Dd::from_f64(probs[i])));
                    bits &= bits - 1;
                }
                rank_sum = rank_sum.add(product);
            }
            // next combination
            let mut i = r;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if combo[i] != i + m - r {
                    combo[i] += 1;
                    for j in i + 1..r {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        total = if positive {
            total.add(rank_sum)
        } else {
            total.sub(rank_sum)
        };
    }
    Ok(total.value())
}

/// Fallback for more than 64 distinct events: literal unions as sets.
fn exact_ie_generic(members: &[&CutSet], q: &ProbMap, order: usize) -> Result<f64, Error> {
    use std::collections::BTreeSet;
    let m = members.len();
    let mut total = Dd::ZERO;
    let mut combo: Vec<usize> = Vec::new();
    for r in 1..=order.min(m) {
        let positive = r % 2 == 1;
        let mut rank_sum = Dd::ZERO;
        combo.clear();
        combo.extend(0..r);
        'combos: loop {
            let mut union: BTreeSet<&Literal> = BTreeSet::new();
            for &i in &combo {
                union.extend(members[i].iter());
            }
            let contradictory = union
                .iter()
                .filter(|l| !l.negated)
                .any(|l| union.contains(&&l.complement()));
            if !contradictory {
                let mut product = Dd::ONE;
                for lit in &union {
                    product = product.mul(literal_prob_dd(lit, q)?);
                }
                rank_sum = rank_sum.add(product);
            }
            let mut i = r;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if combo[i] != i + m - r {
                    combo[i] += 1;
                    for j in i + 1..r {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        total = if positive {
            total.add(rank_sum)
        } else {
            total.sub(rank_sum)
        };
    }
    Ok(total.value())
}

/// Positive events present in every member.
fn common_positive_events(members: &[&CutSet]) -> Vec<EventId> {
    let Some(first) = members.first() else {
        return Vec::new();
    };
    first
        .positive_events()
        .filter(|e| {
            members[1..]
                .iter()
                .all(|s| s.contains(&Literal::positive((*e).clone())))
        })
        .cloned()
        .collect()
}

/// Top-event unavailability over a minimized implicant set, per
/// `cfg.q_method`. An empty set yields 0 with a warning.
pub fn top_q(sets: &ImplicantSet, q: &ProbMap, cfg: &QuantConfig) -> Result<TopEstimate, Error> {
    let mut warnings = Vec::new();
    let members: Vec<&CutSet> = sets.sorted_members();
    if members.is_empty() {
        return Ok(TopEstimate {
            value: 0.0,
            warnings: vec!["no cut sets; top-event unavailability is 0".to_string()],
        });
    }
    if members.iter().any(|s| s.has_negated_literal()) {
        warnings.push(
            "input contains negated literals (non-coherent); \
             the usual bound ordering of the methods is not guaranteed"
                .to_string(),
        );
    }

    let value = match cfg.q_method {
        QMethod::RareEvent => {
            let mut sum = Dd::ZERO;
            for set in &members {
                sum = sum.add(mcs_q_dd(set, q)?);
            }
            sum.value()
        }
        QMethod::Ep => {
            let mut product = Dd::ONE;
            for set in &members {
                product = product.mul(Dd::ONE.sub(mcs_q_dd(set, q)?));
            }
            Dd::ONE.sub(product).value()
        }
        QMethod::EpCommon => {
            let common = common_positive_events(&members);
            let mut q_com = Dd::ONE;
            for event in &common {
                q_com = q_com.mul(Dd::from_f64(lookup(q, event, "probability")?));
            }
            let mut product = Dd::ONE;
            for set in &members {
                let residual = CutSet::from_literals(
                    set.iter()
                        .filter(|l| l.negated || !common.contains(&l.event))
                        .cloned(),
                );
                product = product.mul(Dd::ONE.sub(mcs_q_dd(&residual, q)?));
            }
            q_com.mul(Dd::ONE.sub(product)).value()
        }
        QMethod::ExactIe => {
            let order = effective_ie_order(cfg.ie_max_order, members.len(), &mut warnings);
            exact_ie(&members, q, order)?
        }
    };
    Ok(TopEstimate { value, warnings })
}

/// Top-event frequency: `sum_i W_i * prod_{j != i} (1 - Q_j)`, computed in
/// the factored form `prod(1 - Q_j) * sum(W_i / (1 - Q_i))`. Fails when a
/// cut set has `Q_i = 1`, which makes the division degenerate.
pub fn top_w(
    sets: &ImplicantSet,
    q: &ProbMap,
    w: &FreqMap,
    cfg: &QuantConfig,
) -> Result<TopEstimate, Error> {
    let members: Vec<&CutSet> = sets.sorted_members();
    if members.is_empty() {
        return Ok(TopEstimate {
            value: 0.0,
            warnings: vec!["no cut sets; top-event frequency is 0".to_string()],
        });
    }
    let mut survival = 1.0;
    let mut ratio_sum = 0.0;
    for set in &members {
        let qi = mcs_q(set, q)?;
        if qi >= 1.0 {
            return Err(Error::DegenerateCutSet {
                set: set.to_string(),
            });
        }
        let wi = mcs_w(set, q, w, cfg.not_frequency_policy)?;
        survival *= 1.0 - qi;
        ratio_sum += wi / (1.0 - qi);
    }
    Ok(TopEstimate {
        value: survival * ratio_sum,
        warnings: Vec::new(),
    })
}

/// Frequency of `A and B` for independent events: each may be the one that
/// occurs while the other is already present.
pub fn and_freq(wa: f64, qa: f64, wb: f64, qb: f64) -> f64 {
    wa * qb + wb * qa
}

/// Frequency of `A or B` for independent events: an occurrence only counts
/// when the other event is not already present.
pub fn or_freq(wa: f64, qa: f64, wb: f64, qb: f64) -> f64 {
    wa * (1.0 - qb) + wb * (1.0 - qa)
}

/// Computes per-event `(q, w)` maps for a tree. `mission_time` overrides the
/// document's `mission_time_hours`; rate models fail without one.
pub fn event_measures(
    tree: &FaultTree,
    mission_time: Option<f64>,
) -> Result<(ProbMap, FreqMap), Error> {
    let t = mission_time.or(tree.mission_time_hours);
    let mut q = ProbMap::new();
    let mut w = FreqMap::new();
    for (event, model) in &tree.events {
        let m = measure_of(model, t)?;
        q.insert(event.clone(), m.q);
        w.insert(event.clone(), m.w);
    }
    Ok((q, w))
}

/// Full quantification of an implicant set under one method: per-set
/// measures plus the top-event pair.
pub fn quantify(
    sets: &ImplicantSet,
    q: &ProbMap,
    w: &FreqMap,
    cfg: &QuantConfig,
) -> Result<QuantResult, Error> {
    let mut per_set = Vec::with_capacity(sets.len());
    for set in sets.sorted_members() {
        let qi = mcs_q(set, q)?;
        let wi = mcs_w(set, q, w, cfg.not_frequency_policy)?;
        per_set.push((set.clone(), qi, wi));
    }
    let top_q_est = top_q(sets, q, cfg)?;
    let top_w_est = top_w(sets, q, w, cfg)?;
    let mut warnings = top_q_est.warnings;
    warnings.extend(top_w_est.warnings);
    Ok(QuantResult {
        per_set,
        top: Measure {
            q: top_q_est.value,
            w: top_w_est.value,
        },
        method: cfg.q_method,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implicant::SetKind;

    fn probs(pairs: &[(&str, f64)]) -> ProbMap {
        pairs.iter().map(|(e, p)| (EventId::from(*e), *p)).collect()
    }

    fn gas_probs() -> ProbMap {
        probs(&[("L", 0.05), ("V", 0.05), ("I", 0.05), ("R", 0.05)])
    }

    fn boolean_logic_sets() -> ImplicantSet {
        ImplicantSet::from_members(
            [CutSet::parse(&["L", "V", "I"]), CutSet::parse(&["L", "!V", "R"])],
            SetKind::Minimal,
        )
    }

    fn coherent_approx_sets() -> ImplicantSet {
        ImplicantSet::from_members(
            [CutSet::parse(&["L", "V", "I"]), CutSet::parse(&["L", "R"])],
            SetKind::Minimal,
        )
    }

    fn bdd_pi_sets() -> ImplicantSet {
        ImplicantSet::from_members(
            [
                CutSet::parse(&["L", "V", "I"]),
                CutSet::parse(&["L", "!V", "R"]),
                CutSet::parse(&["L", "R", "I"]),
            ],
            SetKind::Prime,
        )
    }

    fn q_with(method: QMethod, sets: &ImplicantSet, q: &ProbMap) -> f64 {
        let cfg = QuantConfig {
            q_method: method,
            ..QuantConfig::default()
        };
        top_q(sets, q, &cfg).unwrap().value
    }

    fn mantissa6(x: f64) -> String {
        format!("{:.6E}", x)
    }

    #[test]
    fn mcs_q_products() {
        let q = probs(&[("V1", 6.553e-3), ("V2", 6.553e-3)]);
        let set = CutSet::parse(&["V1", "V2"]);
        let got = mcs_q(&set, &q).unwrap();
        assert!((got - 4.294e-5).abs() < 5e-8, "{got:e}");

        let q = gas_probs();
        let set = CutSet::parse(&["L", "!V", "R"]);
        let got = mcs_q(&set, &q).unwrap();
        assert!((got - 2.375e-3).abs() < 1e-15);

        assert_eq!(mcs_q(&CutSet::new(), &q).unwrap(), 1.0);
    }

    #[test]
    fn mcs_q_bounded_by_min_factor() {
        let q = probs(&[("A", 0.3), ("B", 0.2), ("C", 0.7)]);
        let set = CutSet::parse(&["A", "B", "C"]);
        let got = mcs_q(&set, &q).unwrap();
        assert!(got <= 0.2);
    }

    #[test]
    fn mcs_w_single_and_fixed_events() {
        let q = probs(&[("A", 0.1)]);
        let w: FreqMap = probs(&[("A", 2.5e-4)]);
        let set = CutSet::parse(&["A"]);
        assert_eq!(
            mcs_w(&set, &q, &w, NotFrequencyPolicy::Zero).unwrap(),
            2.5e-4
        );
    }

    #[test]
    fn mcs_w_is_linear_in_w() {
        let q = probs(&[("A", 0.1), ("B", 0.2), ("C", 0.05)]);
        let w1: FreqMap = probs(&[("A", 1e-4), ("B", 3e-5), ("C", 2e-6)]);
        let w2: FreqMap = w1.iter().map(|(e, v)| (e.clone(), v * 2.0)).collect();
        let set = CutSet::parse(&["A", "B", "C"]);
        let a = mcs_w(&set, &q, &w1, NotFrequencyPolicy::Zero).unwrap();
        let b = mcs_w(&set, &q, &w2, NotFrequencyPolicy::Zero).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-18);
    }

    #[test]
    fn not_frequency_policies() {
        let q = probs(&[("A", 0.1), ("B", 0.2)]);
        let w: FreqMap = probs(&[("A", 1e-3), ("B", 4e-3)]);
        let set = CutSet::parse(&["A", "!B"]);
        // zero: only A contributes, while !B holds with probability 0.8
        let zero = mcs_w(&set, &q, &w, NotFrequencyPolicy::Zero).unwrap();
        assert!((zero - 1e-3 * 0.8).abs() < 1e-18);
        // mirror: !B also triggers at B's own frequency
        let mirror = mcs_w(&set, &q, &w, NotFrequencyPolicy::Mirror).unwrap();
        assert!((mirror - (1e-3 * 0.8 + 4e-3 * 0.1)).abs() < 1e-18);
    }

    #[test]
    fn table_of_methods_for_boolean_logic_sets() {
        let q = gas_probs();
        let sets = boolean_logic_sets();
        assert_eq!(mantissa6(q_with(QMethod::ExactIe, &sets, &q)), "2.500000E-3");
        assert_eq!(mantissa6(q_with(QMethod::EpCommon, &sets, &q)), "2.494063E-3");
        assert_eq!(mantissa6(q_with(QMethod::Ep, &sets, &q)), "2.499703E-3");
        assert_eq!(mantissa6(q_with(QMethod::RareEvent, &sets, &q)), "2.500000E-3");
    }

    #[test]
    fn table_of_methods_for_coherent_approximation_sets() {
        let q = gas_probs();
        let sets = coherent_approx_sets();
        assert_eq!(mantissa6(q_with(QMethod::ExactIe, &sets, &q)), "2.618750E-3");
        assert_eq!(mantissa6(q_with(QMethod::EpCommon, &sets, &q)), "2.618750E-3");
        assert_eq!(mantissa6(q_with(QMethod::Ep, &sets, &q)), "2.624688E-3");
        assert_eq!(mantissa6(q_with(QMethod::RareEvent, &sets, &q)), "2.625000E-3");
    }

    #[test]
    fn table_of_methods_for_prime_implicant_sets() {
        let q = gas_probs();
        let sets = bdd_pi_sets();
        assert_eq!(mantissa6(q_with(QMethod::ExactIe, &sets, &q)), "2.500000E-3");
        assert_eq!(mantissa6(q_with(QMethod::EpCommon, &sets, &q)), "2.612827E-3");
        assert_eq!(mantissa6(q_with(QMethod::Ep, &sets, &q)), "2.624391E-3");
        assert_eq!(mantissa6(q_with(QMethod::RareEvent, &sets, &q)), "2.625000E-3");
    }

    #[test]
    fn non_coherent_input_reverses_the_first_bound() {
        // regression: with negated literals present, exact exceeds ep_common
        let q = gas_probs();
        let sets = boolean_logic_sets();
        let exact = q_with(QMethod::ExactIe, &sets, &q);
        let ep_common = q_with(QMethod::EpCommon, &sets, &q);
        assert!(exact > ep_common, "{exact:e} vs {ep_common:e}");

        let warned = top_q(&sets, &q, &QuantConfig::default()).unwrap();
        assert!(!warned.warnings.is_empty());
    }

    #[test]
    fn truncated_ie_alternates_around_the_exact_value() {
        // overlapping positive sets so every order matters
        let sets = ImplicantSet::from_members(
            [
                CutSet::parse(&["A", "B"]),
                CutSet::parse(&["B", "C"]),
                CutSet::parse(&["C", "D"]),
                CutSet::parse(&["D", "A"]),
                CutSet::parse(&["A", "C"]),
            ],
            SetKind::Minimal,
        );
        let q = probs(&[("A", 0.3), ("B", 0.25), ("C", 0.2), ("D", 0.35)]);
        let exact = q_with(QMethod::ExactIe, &sets, &q);
        for order in 1..=5 {
            let cfg = QuantConfig {
                q_method: QMethod::ExactIe,
                ie_max_order: IeOrder::Bounded(order),
                ..QuantConfig::default()
            };
            let truncated = top_q(&sets, &q, &cfg).unwrap().value;
            if order % 2 == 1 {
                assert!(truncated >= exact - 1e-15, "order {order}");
            } else {
                assert!(truncated <= exact + 1e-15, "order {order}");
            }
        }
    }

    #[test]
    fn auto_order_truncates_large_inputs_with_a_warning() {
        // 21 singleton sets over 21 events trip the automatic order-3 cutoff
        let sets = ImplicantSet::from_members(
            (0..21).map(|i| CutSet::parse(&[&format!("E{i}")])),
            SetKind::Minimal,
        );
        let q: ProbMap = (0..21)
            .map(|i| (EventId::new(format!("E{i}")), 0.02 + 0.001 * i as f64))
            .collect();

        let auto = top_q(
            &sets,
            &q,
            &QuantConfig {
                q_method: QMethod::ExactIe,
                ..QuantConfig::default()
            },
        )
        .unwrap();
        assert!(auto.warnings.iter().any(|w| w.contains("order 3")), "{:?}", auto.warnings);

        let bounded = top_q(
            &sets,
            &q,
            &QuantConfig {
                q_method: QMethod::ExactIe,
                ie_max_order: IeOrder::Bounded(3),
                ..QuantConfig::default()
            },
        )
        .unwrap();
        assert_eq!(auto.value.to_bits(), bounded.value.to_bits());
        assert!(bounded.warnings.is_empty());

        // 20 sets still run unlimited, silently
        let sets20 = ImplicantSet::from_members(
            (0..20).map(|i| CutSet::parse(&[&format!("E{i}")])),
            SetKind::Minimal,
        );
        let exact = top_q(
            &sets20,
            &q,
            &QuantConfig {
                q_method: QMethod::ExactIe,
                ..QuantConfig::default()
            },
        )
        .unwrap();
        assert!(exact.warnings.is_empty());
        let ep = top_q(
            &sets20,
            &q,
            &QuantConfig {
                q_method: QMethod::Ep,
                ..QuantConfig::default()
            },
        )
        .unwrap();
        // disjoint singletons: the Esary-Proschan product is exact
        assert!((exact.value - ep.value).abs() <= 1e-12 * ep.value);
    }

    #[test]
    fn empty_set_list_warns_and_returns_zero() {
        let sets = ImplicantSet::new(SetKind::Minimal);
        let q = ProbMap::new();
        let est = top_q(&sets, &q, &QuantConfig::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(!est.warnings.is_empty());
        let est = top_w(&sets, &q, &FreqMap::new(), &QuantConfig::default()).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn degenerate_cut_set_is_an_error() {
        let sets = ImplicantSet::from_members(
            [CutSet::parse(&["A"]), CutSet::parse(&["B"])],
            SetKind::Minimal,
        );
        let q = probs(&[("A", 1.0), ("B", 0.5)]);
        let w: FreqMap = probs(&[("A", 0.0), ("B", 1e-3)]);
        assert!(matches!(
            top_w(&sets, &q, &w, &QuantConfig::default()),
            Err(Error::DegenerateCutSet { .. })
        ));
    }

    #[test]
    fn top_w_single_set_and_disjoint_pair() {
        let q = probs(&[("A", 0.1), ("B", 0.2)]);
        let w: FreqMap = probs(&[("A", 3e-3), ("B", 5e-4)]);
        let cfg = QuantConfig::default();

        let single = ImplicantSet::from_members([CutSet::parse(&["A"])], SetKind::Minimal);
        let est = top_w(&single, &q, &w, &cfg).unwrap();
        assert!((est.value - 3e-3).abs() < 1e-18);

        let pair = ImplicantSet::from_members(
            [CutSet::parse(&["A"]), CutSet::parse(&["B"])],
            SetKind::Minimal,
        );
        let est = top_w(&pair, &q, &w, &cfg).unwrap();
        let via_or = or_freq(3e-3, 0.1, 5e-4, 0.2);
        assert!((est.value - via_or).abs() < 1e-15, "{:e} vs {via_or:e}", est.value);
    }

    #[test]
    fn pairwise_frequency_reference_values() {
        // two events at 0.01/y with 5-hour dwell windows
        let w_py = 0.01;
        let q = 5.7e-6;
        let and = and_freq(w_py, q, w_py, q);
        assert!((and - 1.14e-7).abs() < 1e-13, "{and:e}");
        let or = or_freq(w_py, q, w_py, q);
        assert!((or - 1.999988e-2).abs() < 1e-8, "{or:e}");
    }

    #[test]
    fn or_freq_identity() {
        // w(A or B) = w_A + w_B - w(A and B)
        let cases = [
            (1e-3, 0.1, 2e-3, 0.3),
            (0.5, 0.9, 0.25, 0.01),
            (1e-6, 1e-4, 1e-7, 1e-5),
        ];
        for (wa, qa, wb, qb) in cases {
            let lhs = or_freq(wa, qa, wb, qb);
            let rhs = wa + wb - and_freq(wa, qa, wb, qb);
            assert!((lhs - rhs).abs() <= 1e-15 * lhs.abs().max(1.0));
        }
        assert_eq!(or_freq(1e-3, 0.0, 2e-3, 0.0), 3e-3);
        assert_eq!(and_freq(1e-3, 0.0, 2e-3, 0.0), 0.0);
    }
}
