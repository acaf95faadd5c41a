//! Minimal cut sets by top-down table expansion plus absorption.
//!
//! ```sh
//! cargo run --example minimal_cut_sets
//! ```

use ftkit::{minimize, mocus, normalize, parse_tree};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sif.json");
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");
    let norm = normalize(&tree).expect("normalizable");

    let raw = mocus(&norm);
    println!("raw cut sets from table expansion: {}", raw.len());

    let mcs = minimize(&raw);
    println!("minimal cut sets: {}", mcs.len());
    for set in mcs.sorted_members() {
        println!("  {set}");
    }

    // both sensor paths must fail, or both valves: every set has order 2
    assert!(mcs.iter().all(|s| s.len() == 2));
}
