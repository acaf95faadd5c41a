//! Probabilistic models for basic events and their time-independent
//! unavailability `q` and unconditional failure frequency `w`.
//!
//! Three models are supported:
//!
//! * `Fixed` — a constant probability of failure. Carries no frequency
//!   information (`w = 0`); typically used for enabling conditions.
//! * `Rate` — a repairable component with failure rate `lambda` and mean
//!   time to restore `mttr` (`mttr = 0` models a non-repairable component).
//!   `q` depends on the mission time `t`.
//! * `Dormant` — an undetected fault revealed by periodic proof testing
//!   with interval `tau`; repairs found at a test take `mttr`.
//!
//! All rates are per hour and all times are in hours. One year is 8760 hours.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Hours in one year, used for per-year display conversions.
pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Probabilistic model of a basic event. Field names mirror the document
/// format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum BasicEventModel {
    /// Constant probability of failure.
    Fixed { p: f64 },
    /// Failure-repair rate model; `mttr_hours = 0` means non-repairable.
    Rate {
        lambda_per_hour: f64,
        mttr_hours: f64,
    },
    /// Periodically proof-tested component with undetected failures.
    Dormant {
        lambda_per_hour: f64,
        tau_hours: f64,
        mttr_hours: f64,
    },
}

impl BasicEventModel {
    /// Error message describing the first invalid parameter, if any.
    pub fn parameter_error(&self) -> Option<String> {
        fn finite(name: &str, v: f64) -> Option<String> {
            (!v.is_finite()).then(|| format!("{name} must be finite, got {v}"))
        }
        match *self {
            BasicEventModel::Fixed { p } => finite("p", p)
                .or_else(|| (!(0.0..=1.0).contains(&p)).then(|| format!("p must be in [0, 1], got {p}"))),
            BasicEventModel::Rate {
                lambda_per_hour,
                mttr_hours,
            } => finite("lambda_per_hour", lambda_per_hour)
                .or_else(|| finite("mttr_hours", mttr_hours))
                .or_else(|| {
                    (lambda_per_hour < 0.0)
                        .then(|| format!("lambda_per_hour must be >= 0, got {lambda_per_hour}"))
                })
                .or_else(|| (mttr_hours < 0.0).then(|| format!("mttr_hours must be >= 0, got {mttr_hours}"))),
            BasicEventModel::Dormant {
                lambda_per_hour,
                tau_hours,
                mttr_hours,
            } => finite("lambda_per_hour", lambda_per_hour)
                .or_else(|| finite("tau_hours", tau_hours))
                .or_else(|| finite("mttr_hours", mttr_hours))
                .or_else(|| {
                    (lambda_per_hour < 0.0)
                        .then(|| format!("lambda_per_hour must be >= 0, got {lambda_per_hour}"))
                })
                .or_else(|| (tau_hours <= 0.0).then(|| format!("tau_hours must be > 0, got {tau_hours}")))
                .or_else(|| (mttr_hours < 0.0).then(|| format!("mttr_hours must be >= 0, got {mttr_hours}"))),
        }
    }
}

/// Paired unavailability (probability) and occurrence frequency (per hour).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    pub q: f64,
    pub w: f64,
}

/// `x - (1 - e^-x)` evaluated without catastrophic cancellation.
///
/// The direct difference loses all significant digits for small `x` (both
/// terms approach `x`), so below a threshold the alternating series
/// `x^2/2! - x^3/3! + x^4/4! - ...` is summed instead.
fn one_minus_exp_deficit(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 0.1 {
        let mut term = x * x / 2.0;
        let mut sum = term;
        let mut n = 3.0;
        while term.abs() > f64::EPSILON * sum.abs() {
            term *= -x / n;
            sum += term;
            n += 1.0;
        }
        sum
    } else {
        // -expm1(-x) = 1 - e^-x, accurate for moderate x
        x + (-x).exp_m1()
    }
}

/// `1 - e^-x` for `x >= 0`.
fn one_minus_exp(x: f64) -> f64 {
    -(-x).exp_m1()
}

fn require_finite(name: &'static str, v: f64) -> Result<(), Error> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::BadParameter {
            what: format!("{name} must be finite, got {v}"),
        })
    }
}

/// Unavailability of a fixed-probability event: `q = p`.
pub fn q_fixed(p: f64) -> Result<f64, Error> {
    require_finite("p", p)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter {
            what: format!("p must be in [0, 1], got {p}"),
        });
    }
    Ok(p)
}

/// Unavailability of a failure-repair rate model at mission time `t`:
/// `q(t) = lambda/(lambda+mu) * (1 - e^-(lambda+mu)t)` with `mu = 1/mttr`
/// (`mu = 0` when `mttr = 0`, the non-repairable case).
pub fn q_rate(lambda: f64, mttr: f64, t: f64) -> Result<f64, Error> {
    require_finite("lambda", lambda)?;
    require_finite("mttr", mttr)?;
    require_finite("t", t)?;
    if lambda < 0.0 || mttr < 0.0 || t <= 0.0 {
        return Err(Error::BadParameter {
            what: format!("q_rate requires lambda >= 0, mttr >= 0, t > 0 (got lambda={lambda}, mttr={mttr}, t={t})"),
        });
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let mu = if mttr > 0.0 { 1.0 / mttr } else { 0.0 };
    Ok(lambda / (lambda + mu) * one_minus_exp((lambda + mu) * t))
}

/// Unavailability of a dormant (periodically proof-tested) component:
///
/// `q = [lt - (1 - e^-lt) + l*MTTR*(1 - e^-lt)] / [lt + l*MTTR*(1 - e^-lt)]`
///
/// with `lt = lambda * tau`. Equivalent to the mean-downtime construction
/// `q = (T_D + T_R) / (tau + T_R)` where `T_D` integrates the failure
/// distribution over one test interval and `T_R = (1 - e^-lt) * MTTR`.
pub fn q_dormant(lambda: f64, tau: f64, mttr: f64) -> Result<f64, Error> {
    require_finite("lambda", lambda)?;
    require_finite("tau", tau)?;
    require_finite("mttr", mttr)?;
    if lambda < 0.0 || tau <= 0.0 || mttr < 0.0 {
        return Err(Error::BadParameter {
            what: format!("q_dormant requires lambda >= 0, tau > 0, mttr >= 0 (got lambda={lambda}, tau={tau}, mttr={mttr})"),
        });
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let x = lambda * tau;
    let repair = lambda * mttr * one_minus_exp(x);
    Ok((one_minus_exp_deficit(x) + repair) / (x + repair))
}

/// Dormant-model unavailability for `MTTR << tau`:
/// `q = 1 - (1 - e^-lt)/(lt)`. Identical to `q_dormant` with `mttr = 0`.
pub fn q_dormant_simplified(lambda: f64, tau: f64) -> Result<f64, Error> {
    require_finite("lambda", lambda)?;
    require_finite("tau", tau)?;
    if lambda < 0.0 || tau <= 0.0 {
        return Err(Error::BadParameter {
            what: format!("q_dormant_simplified requires lambda >= 0, tau > 0 (got lambda={lambda}, tau={tau})"),
        });
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let x = lambda * tau;
    // Same evaluation path as q_dormant with mttr = 0, so the two agree
    // bit for bit there.
    Ok(one_minus_exp_deficit(x) / x)
}

/// Computes the `(q, w)` measure of a basic event. `t` is the mission time,
/// required for `Rate` models and ignored by the others. Frequency is
/// `w = lambda * (1 - q)`; fixed-probability events have no frequency.
pub fn measure_of(model: &BasicEventModel, t: Option<f64>) -> Result<Measure, Error> {
    match *model {
        BasicEventModel::Fixed { p } => Ok(Measure {
            q: q_fixed(p)?,
            w: 0.0,
        }),
        BasicEventModel::Rate {
            lambda_per_hour,
            mttr_hours,
        } => {
            let t = t.ok_or(Error::MissingMissionTime)?;
            let q = q_rate(lambda_per_hour, mttr_hours, t)?;
            Ok(Measure {
                q,
                w: lambda_per_hour * (1.0 - q),
            })
        }
        BasicEventModel::Dormant {
            lambda_per_hour,
            tau_hours,
            mttr_hours,
        } => {
            let q = q_dormant(lambda_per_hour, tau_hours, mttr_hours)?;
            Ok(Measure {
                q,
                w: lambda_per_hour * (1.0 - q),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_sig4(value: f64, expected: &str) {
        let shown = format!("{:.3E}", value);
        assert_eq!(shown, expected, "value {value:e} printed as {shown}");
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            ((a - b) / b).abs()
        }
    }

    #[test]
    fn fixed_probability() {
        assert_eq!(q_fixed(5.6e-4).unwrap(), 5.6e-4);
        assert_eq!(q_fixed(0.0).unwrap(), 0.0);
        assert_eq!(q_fixed(1.0).unwrap(), 1.0);
        assert!(q_fixed(1.2).is_err());
        assert!(q_fixed(-0.1).is_err());
        assert!(q_fixed(f64::NAN).is_err());
    }

    #[test]
    fn rate_model_relay() {
        // relay: lambda = 6.0E-8/h, MTTR = 8 h, t = 35040 h
        let q = q_rate(6.0e-8, 8.0, 35040.0).unwrap();
        assert_sig4(q, "4.800E-7");
    }

    #[test]
    fn rate_model_zero_lambda() {
        for t in [1.0, 1000.0, 1e6] {
            assert_eq!(q_rate(0.0, 8.0, t).unwrap(), 0.0);
            assert_eq!(q_rate(0.0, 0.0, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn rate_model_non_repairable_limit() {
        // mttr = 0: q = 1 - e^-(lambda t); series oracle for 1 - e^-x
        let q = q_rate(1.0e-5, 0.0, 1000.0).unwrap();
        let x: f64 = 0.01;
        let mut term = x;
        let mut oracle = x;
        for n in 2..20 {
            term *= -x / n as f64;
            oracle += term;
        }
        assert!(rel_err(q, oracle) < 1e-14, "q={q:e} oracle={oracle:e}");
        assert!(rel_err(q, 9.9502e-3) < 1e-4);
    }

    #[test]
    fn dormant_model_sensors_and_valves() {
        let q_s = q_dormant(5.0e-8, 35040.0, 8.0).unwrap();
        assert_sig4(q_s, "8.759E-4");
        let q_v = q_dormant(1.5e-6, 8760.0, 8.0).unwrap();
        assert_sig4(q_v, "6.553E-3");
        assert_eq!(q_dormant(0.0, 8760.0, 8.0).unwrap(), 0.0);
    }

    #[test]
    fn dormant_simplified_first_order() {
        // for small lambda*tau the simplified form behaves as lambda*tau/2
        let q = q_dormant_simplified(5.0e-8, 35040.0).unwrap();
        let first_order = 5.0e-8 * 35040.0 / 2.0;
        assert!(rel_err(q, first_order) < 1e-3, "q={q:e} vs {first_order:e}");

        // series oracle: 1 - (1 - e^-x)/x = x/2 - x^2/6 + x^3/24 - ...
        let x: f64 = 5.0e-8 * 35040.0;
        let mut term = x / 2.0;
        let mut oracle = term;
        for n in 3..25 {
            term *= -x / n as f64;
            oracle += term;
        }
        assert!(rel_err(q, oracle) < 1e-12, "q={q:e} oracle={oracle:e}");
        assert_eq!(q_dormant_simplified(0.0, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn dormant_with_zero_mttr_matches_simplified_exactly() {
        for &(lambda, tau) in &[
            (5.0e-8, 35040.0),
            (1.5e-6, 8760.0),
            (1e-3, 100.0),
            (0.5, 10.0),
            (1e-9, 1e5),
        ] {
            let full = q_dormant(lambda, tau, 0.0).unwrap();
            let simplified = q_dormant_simplified(lambda, tau).unwrap();
            assert_eq!(full.to_bits(), simplified.to_bits(), "lambda={lambda} tau={tau}");
        }
    }

    #[test]
    fn measures_match_reference_components() {
        let sensor = BasicEventModel::Dormant {
            lambda_per_hour: 5.0e-8,
            tau_hours: 35040.0,
            mttr_hours: 8.0,
        };
        let m = measure_of(&sensor, None).unwrap();
        assert_sig4(m.q, "8.759E-4");
        assert_sig4(m.w, "4.996E-8");

        let logic = BasicEventModel::Fixed { p: 5.6e-4 };
        let m = measure_of(&logic, None).unwrap();
        assert_sig4(m.q, "5.600E-4");
        assert_eq!(m.w, 0.0);

        let valve = BasicEventModel::Dormant {
            lambda_per_hour: 1.5e-6,
            tau_hours: 8760.0,
            mttr_hours: 8.0,
        };
        let m = measure_of(&valve, None).unwrap();
        assert_sig4(m.q, "6.553E-3");
        assert_sig4(m.w, "1.490E-6");
    }

    #[test]
    fn rate_measure_requires_mission_time() {
        let relay = BasicEventModel::Rate {
            lambda_per_hour: 6.0e-8,
            mttr_hours: 8.0,
        };
        assert!(matches!(
            measure_of(&relay, None),
            Err(Error::MissingMissionTime)
        ));
        let m = measure_of(&relay, Some(35040.0)).unwrap();
        assert_sig4(m.q, "4.800E-7");
        assert_sig4(m.w, "6.000E-8");
    }

    #[test]
    fn q_in_range_and_w_consistent() {
        let lambdas = [0.0, 1e-9, 1e-6, 1e-3, 0.1, 2.0];
        let times = [1.0, 8.0, 8760.0, 35040.0, 1e5];
        for &lambda in &lambdas {
            for &t in &times {
                for &mttr in &[0.0, 8.0, 100.0] {
                    let q = q_rate(lambda, mttr, t).unwrap();
                    assert!((0.0..=1.0).contains(&q));
                    assert!(lambda * (1.0 - q) >= 0.0);
                    let q = q_dormant(lambda, t, mttr).unwrap();
                    assert!((0.0..=1.0).contains(&q));
                    assert!(lambda * (1.0 - q) >= 0.0);
                }
            }
        }
    }

    #[test]
    fn monotonic_in_lambda_and_time() {
        let grid: Vec<f64> = (0..25).map(|i| 1e-9 * 10f64.powf(i as f64 * 0.25)).collect();
        let mut prev = 0.0;
        for &lambda in &grid {
            let q = q_rate(lambda, 0.0, 5000.0).unwrap();
            assert!(q >= prev, "q_rate not monotone in lambda at {lambda:e}");
            prev = q;
        }
        let mut prev = 0.0;
        for &t in &[1.0, 10.0, 100.0, 1e3, 1e4, 1e5] {
            let q = q_rate(1e-5, 8.0, t).unwrap();
            assert!(q >= prev, "q_rate not monotone in t at {t:e}");
            prev = q;
        }
        let mut prev = 0.0;
        for &lambda in &grid {
            let q = q_dormant(lambda, 8760.0, 8.0).unwrap();
            assert!(q >= prev, "q_dormant not monotone in lambda at {lambda:e}");
            prev = q;
        }
        let mut prev = 0.0;
        for &tau in &[100.0, 1e3, 1e4, 1e5] {
            let q = q_dormant(1e-6, tau, 8.0).unwrap();
            assert!(q >= prev, "q_dormant not monotone in tau at {tau:e}");
            prev = q;
        }
    }
}
