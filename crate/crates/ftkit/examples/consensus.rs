//! Two logically equivalent trees that quantify differently under the
//! approximate methods.
//!
//! `(A and B) or (!A and C)` equals
//! `(A and B) or (!A and C) or (B and C)` — the consensus term `B and C`
//! is redundant in logic. Exact quantification agrees on both forms, but
//! the rare-event and Esary-Proschan approximations see one extra
//! implicant on the right-hand side and give larger numbers.
//!
//! ```sh
//! cargo run --example consensus
//! ```

use ftkit::quantify::{event_measures, QuantConfig};
use ftkit::{bdd_prob, build_bdd, minimize, mocus, normalize, parse_tree, top_q, QMethod};

fn main() {
    let two = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/consensus_two_terms.json"
    ))
    .expect("fixture");
    let three = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/consensus_three_terms.json"
    ))
    .expect("fixture");

    for (label, text) in [("two-term side", two), ("three-term side", three)] {
        let tree = parse_tree(&text).expect("valid document");
        let norm = normalize(&tree).expect("normalizable");
        let (q, _) = event_measures(&tree, None).expect("models complete");

        let sets = minimize(&mocus(&norm));
        let bdd = build_bdd(&norm, norm.vars()).expect("within node budget");
        let exact = bdd_prob(&bdd, &q).expect("probabilities complete");

        println!("{label}: {} implicants", sets.len());
        for set in sets.sorted_members() {
            println!("  {set}");
        }
        println!("  exact probability     = {exact:.6E}");
        for method in [QMethod::RareEvent, QMethod::Ep] {
            let cfg = QuantConfig {
                q_method: method,
                ..QuantConfig::default()
            };
            let value = top_q(&sets, &q, &cfg).unwrap().value;
            println!("  {:<21} = {value:.6E}", method.name());
        }
        println!();
    }

    println!("equivalent structures, identical exact values, different bounds.");
}
