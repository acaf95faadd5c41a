//! Full quantification of a fault tree: per-set measures, the four
//! top-event unavailability methods, and the top-event frequency.
//!
//! ```sh
//! cargo run --example quantify_top_event
//! ```

use ftkit::quantify::{event_measures, quantify, QuantConfig};
use ftkit::{minimize, mocus, normalize, parse_tree, top_q, QMethod};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sif.json");
    let text = std::fs::read_to_string(path).expect("fixture");
    let tree = parse_tree(&text).expect("valid document");
    let norm = normalize(&tree).expect("normalizable");
    let sets = minimize(&mocus(&norm));

    // q and w per basic event, using the document's mission time
    let (q, w) = event_measures(&tree, None).expect("models complete");

    let cfg = QuantConfig::default();
    let result = quantify(&sets, &q, &w, &cfg).expect("quantifiable");

    println!("{:<12} {:>13} {:>13}", "cut set", "Q_i", "W_i [/h]");
    for (set, qi, wi) in &result.per_set {
        println!("{:<12} {qi:>13.3E} {wi:>13.3E}", set.to_string());
    }

    println!("\ntop-event unavailability:");
    for method in QMethod::ALL {
        let est = top_q(&sets, &q, &QuantConfig { q_method: method, ..cfg.clone() }).unwrap();
        println!("  {:<11} {:.4E}", method.name(), est.value);
    }
    println!("top-event frequency: {:.4E} /h", result.top.w);
    println!(
        "                     {:.4E} /y",
        result.top.w * ftkit::HOURS_PER_YEAR
    );
}
