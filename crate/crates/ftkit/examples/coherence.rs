//! Coherence diagnosis: every event relevant, boundary states correct, and
//! no failure that repairs the system.
//!
//! ```sh
//! cargo run --example coherence
//! ```

use ftkit::{coherence_check, parse_tree};

fn report(path: &str) {
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");
    let report = coherence_check(&tree, 20).expect("within event limit");

    println!(
        "`{}`: {}",
        tree.name.as_deref().unwrap_or("unnamed"),
        if report.coherent { "coherent" } else { "non-coherent" }
    );
    for violation in &report.violations {
        match &violation.event {
            Some(event) => println!("  {} violated at `{event}`", violation.condition),
            None => println!("  {} violated", violation.condition),
        }
        for witness in &violation.witnesses {
            let states: Vec<String> = witness
                .iter()
                .map(|(e, v)| format!("{e}={}", u8::from(*v)))
                .collect();
            println!("    witness: {}", states.join(", "));
        }
    }
}

fn main() {
    report(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sif.json"));
    println!();
    report(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/gas_leakage.json"));
}
