//! The four top-event unavailability methods across three ways of deriving
//! the implicant sets of the same non-coherent tree.
//!
//! For coherent inputs the methods form a chain of upper bounds
//! (exact <= ep_common <= ep <= rare_event). The boolean-logic row below
//! shows the chain breaking on a non-coherent input: the exact value
//! exceeds the factored Esary-Proschan bound.
//!
//! ```sh
//! cargo run --example bound_comparison
//! ```

use ftkit::quantify::{event_measures, QuantConfig};
use ftkit::{
    build_bdd, coherent_mcs_from_pi, minimize, mocus, normalize, parse_tree, prime_implicants,
    top_q, ImplicantSet, QMethod,
};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/gas_leakage.json");
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");
    let norm = normalize(&tree).expect("normalizable");
    let (q, _) = event_measures(&tree, None).expect("models complete");

    let boolean_logic = minimize(&mocus(&norm));
    let bdd = build_bdd(&norm, norm.vars()).expect("within node budget");
    let pis = prime_implicants(&bdd).expect("within node budget");
    let coherent = coherent_mcs_from_pi(&pis);

    let rows: [(&str, &ImplicantSet); 3] = [
        ("boolean logic", &boolean_logic),
        ("coherent approx.", &coherent),
        ("bdd (PIs)", &pis),
    ];

    println!(
        "{:<18} {:>13} {:>13} {:>13} {:>13}",
        "derivation", "exact_ie", "ep_common", "ep", "rare_event"
    );
    for (label, sets) in rows {
        print!("{label:<18}");
        for method in QMethod::ALL {
            let cfg = QuantConfig {
                q_method: method,
                ..QuantConfig::default()
            };
            let value = top_q(sets, &q, &cfg).unwrap().value;
            print!(" {value:>13.6E}");
        }
        println!();
    }
    println!("\n(all events at fixed q = 0.05)");
}
