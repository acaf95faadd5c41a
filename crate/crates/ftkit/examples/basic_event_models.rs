//! Unavailability q and failure frequency w for the three basic-event
//! models: fixed probability, failure-repair rate, and dormant
//! (periodically proof-tested).
//!
//! ```sh
//! cargo run --example basic_event_models
//! ```

use ftkit::{measure_of, q_dormant_simplified, BasicEventModel};

fn main() {
    let mission_time = 35040.0; // four years

    let components = [
        (
            "pressure sensor (dormant, 4-year proof test)",
            BasicEventModel::Dormant {
                lambda_per_hour: 5.0e-8,
                tau_hours: 35040.0,
                mttr_hours: 8.0,
            },
        ),
        (
            "logic solver (fixed PFD)",
            BasicEventModel::Fixed { p: 5.6e-4 },
        ),
        (
            "relay (failure-repair rate)",
            BasicEventModel::Rate {
                lambda_per_hour: 6.0e-8,
                mttr_hours: 8.0,
            },
        ),
        (
            "shutdown valve (dormant, 1-year proof test)",
            BasicEventModel::Dormant {
                lambda_per_hour: 1.5e-6,
                tau_hours: 8760.0,
                mttr_hours: 8.0,
            },
        ),
    ];

    println!("{:<46} {:>12} {:>14}", "component", "q", "w [/h]");
    for (label, model) in &components {
        let m = measure_of(model, Some(mission_time)).unwrap();
        println!("{label:<46} {:>12.3E} {:>14.3E}", m.q, m.w);
    }

    // when repairs are short against the proof-test interval the simplified
    // dormant formula is indistinguishable from the full one
    let full = measure_of(
        &BasicEventModel::Dormant {
            lambda_per_hour: 5.0e-8,
            tau_hours: 35040.0,
            mttr_hours: 0.0,
        },
        None,
    )
    .unwrap();
    let simplified = q_dormant_simplified(5.0e-8, 35040.0).unwrap();
    println!("\ndormant with mttr=0: q = {:.6E}", full.q);
    println!("simplified formula:  q = {simplified:.6E} (identical)");
}
