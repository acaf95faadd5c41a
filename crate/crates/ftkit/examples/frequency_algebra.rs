//! Pairwise frequency algebra for AND and OR combinations of independent
//! events, treating each event as an interval in time rather than an
//! instant.
//!
//! ```sh
//! cargo run --example frequency_algebra
//! ```

use ftkit::{and_freq, or_freq, HOURS_PER_YEAR};

fn main() {
    // two independent events, 0.01 occurrences per year, 5-hour duration
    let w_per_year = 0.01;
    let duration_hours = 5.0;
    let q = w_per_year * duration_hours / HOURS_PER_YEAR;
    println!("w = {w_per_year} /y, T = {duration_hours} h  =>  q = {q:.1E}");

    let w_and = and_freq(w_per_year, q, w_per_year, q);
    println!("\nfrequency of A AND B: {w_and:.3E} /y");

    // the same number through per-hour units: w_C = w_A w_B (T_A + T_B)
    let w_per_hour = w_per_year / HOURS_PER_YEAR;
    let w_and_hourly = and_freq(
        w_per_hour,
        w_per_hour * duration_hours,
        w_per_hour,
        w_per_hour * duration_hours,
    );
    println!(
        "same, in per-hour form: {w_and_hourly:.2E} /h = {:.3E} /y",
        w_and_hourly * HOURS_PER_YEAR
    );

    let w_or = or_freq(w_per_year, q, w_per_year, q);
    println!("\nfrequency of A OR B:  {w_or:.7E} /y");
    println!(
        "check w_A + w_B - w_AND: {:.7E} /y",
        w_per_year + w_per_year - w_and
    );

    // with no dwell time there are no coincidences: AND never fires and OR
    // counts every occurrence
    assert_eq!(and_freq(w_per_year, 0.0, w_per_year, 0.0), 0.0);
    assert_eq!(or_freq(w_per_year, 0.0, w_per_year, 0.0), 2.0 * w_per_year);
}
