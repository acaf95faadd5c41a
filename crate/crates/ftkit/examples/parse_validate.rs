//! Parse a fault-tree document and run structural validation.
//!
//! ```sh
//! cargo run --example parse_validate
//! ```

use ftkit::{parse_tree, validate, Error};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sif.json");
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");

    println!(
        "parsed `{}`: {} events, {} gates, top `{}`",
        tree.name.as_deref().unwrap_or("unnamed"),
        tree.events.len(),
        tree.gates.len(),
        tree.top
    );
    println!("diagnostics: {:?}", validate(&tree));

    // a broken document: the gate references an undeclared event and the
    // NOT gate has two inputs
    let broken = r#"{
      "events": {"A": {"model": "fixed", "p": 0.1}},
      "gates": {
        "N": {"type": "not", "inputs": ["A", "X9"]},
        "T": {"type": "or", "inputs": ["N", "A"]}
      },
      "top": "T"
    }"#;
    match parse_tree(broken) {
        Err(Error::Invalid(diagnostics)) => {
            println!("\nbroken document rejected with:");
            for d in diagnostics {
                println!("  {d}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }

    // syntax errors carry a position
    match parse_tree("{ \"events\": { } ") {
        Err(e) => println!("\ntruncated document: {e}"),
        Ok(_) => unreachable!(),
    }
}
