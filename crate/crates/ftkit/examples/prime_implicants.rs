//! Prime implicants of a non-coherent tree via a reduced ordered BDD, and
//! the coherent approximation that strips success literals.
//!
//! The gas-leakage scenario needs the isolation valve to *work* in one
//! branch, so one implicant carries the negated literal `!V`. A third
//! implicant, {I, L, R}, appears even though no single branch of the tree
//! says so: it is the consensus of the other two.
//!
//! ```sh
//! cargo run --example prime_implicants
//! ```

use ftkit::{build_bdd, coherent_mcs_from_pi, normalize, parse_tree, prime_implicants};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/gas_leakage.json");
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");
    let norm = normalize(&tree).expect("normalizable");

    let bdd = build_bdd(&norm, norm.vars()).expect("within node budget");
    let order: Vec<&str> = norm.vars().iter().map(|e| e.as_str()).collect();
    println!("BDD over {}: {} nodes", order.join(" < "), bdd.node_count());
    println!("\ngraph description:\n{}", bdd.export_graph());

    let pis = prime_implicants(&bdd).expect("within node budget");
    println!("prime implicants ({}):", pis.len());
    for set in pis.sorted_members() {
        println!("  {set}");
    }

    let approx = coherent_mcs_from_pi(&pis);
    println!("\ncoherent approximation ({}):", approx.len());
    for set in approx.sorted_members() {
        println!("  {set}");
    }
}
