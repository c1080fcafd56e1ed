//! Partial Euler products for `SL₂` over the integers: an archimedean
//! Witten factor times local factors at odd primes, plus the two-sided
//! local bounds `(1−q^{1−s})^{−1/2} < Z_q(s) < (1−q^{1−s})^{−100}` on
//! `2 ≤ s ≤ 3` and a probe of the product near `s = 2`.
//!
//! No finite computation proves divergence. At `s = 2` the probe reports
//! monotone growth against an explicit divergent comparator instead.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::census::{zeta_partial, DegreeCensus};
use crate::error::{Error, Result};
use crate::localfactor::{check_residue_field, sl2_local_zeta};
use crate::primes::primes_up_to;

/// Largest tolerated truncation error of the archimedean factor.
pub const ARCHIMEDEAN_TOLERANCE: f64 = 1e-8;
/// Cauchy tolerance used by [`divergence_probe`] above `s = 2`.
pub const STABILIZATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerProductConfig {
    /// Power of the Witten factor.
    pub archimedean_exponent: u32,
    pub prime_bound: u64,
    pub excluded_primes: BTreeSet<u64>,
    pub s: f64,
    /// Surrogate `[lower, upper]` for the factor at `p = 2`, used only when
    /// 2 is not excluded.
    pub bracket_p2: Option<(f64, f64)>,
}

impl EulerProductConfig {
    pub fn new(s: f64, prime_bound: u64) -> Self {
        EulerProductConfig {
            archimedean_exponent: 1,
            prime_bound,
            excluded_primes: BTreeSet::from([2]),
            s,
            bracket_p2: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.s.is_nan() || self.s <= 1.0 {
            return Err(Error::ExponentOutOfRange {
                s: self.s,
                range: "s > 1",
            });
        }
        if self.prime_bound < 3 {
            return Err(Error::InvalidParameter(format!(
                "prime bound {} must be at least 3",
                self.prime_bound
            )));
        }
        if !self.excluded_primes.contains(&2) {
            match self.bracket_p2 {
                Some((lo, hi)) if lo > 0.0 && lo <= hi => {}
                Some(b) => {
                    return Err(Error::InvalidParameter(format!(
                        "bad bracket {b:?} for p = 2"
                    )))
                }
                None => {
                    return Err(Error::InvalidParameter(
                        "p = 2 has no closed-form factor; exclude it or supply a bracket".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Odd primes `≤ P` that are not excluded, ascending.
    pub fn primes(&self) -> Vec<u64> {
        primes_up_to(self.prime_bound)
            .into_iter()
            .filter(|p| *p != 2 && !self.excluded_primes.contains(p))
            .collect()
    }
}

/// Value of a partial product. Without a `p = 2` bracket the two ends agree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialProduct {
    pub log_lower: f64,
    pub log_upper: f64,
    pub log_archimedean: f64,
    pub log_local: f64,
    pub primes_used: usize,
}

impl PartialProduct {
    pub fn value(&self) -> f64 {
        self.log_lower.exp()
    }

    pub fn log_value(&self) -> f64 {
        self.log_lower
    }
}

/// `Σ log Z_p(s)` over the given primes, in the order given.
pub fn local_log_sum(primes: &[u64], s: f64) -> Result<f64> {
    primes
        .iter()
        .map(|&p| sl2_local_zeta(p, s).map(f64::ln))
        .sum()
}

/// Truncated archimedean factor. The census must be the `SL₂(ℂ)` one
/// (every degree once) so that the tail `Σ_{n>N} n^{−s} ≤ N^{1−s}/(s−1)`
/// is a valid error bound.
fn archimedean_log(census: &DegreeCensus, s: f64) -> Result<f64> {
    if census.entries().values().any(|&m| m != 1) {
        return Err(Error::InvalidParameter(
            "archimedean census must have every multiplicity equal to 1".into(),
        ));
    }
    let n = census.cap() as f64;
    let tail = n.powf(1.0 - s) / (s - 1.0);
    if tail > ARCHIMEDEAN_TOLERANCE {
        return Err(Error::InvalidParameter(format!(
            "archimedean truncation error up to {tail:e} at cap {n}; raise the cap"
        )));
    }
    Ok(zeta_partial(census, s).ln())
}

/// `Z_ℂ(s)^{#S∞} · Π_{p ≤ P} Z_p(s)`, summed in log space in ascending
/// prime order. The census is consulted only for a positive exponent.
pub fn global_partial_product(
    cfg: &EulerProductConfig,
    witten_census: Option<&DegreeCensus>,
) -> Result<PartialProduct> {
    cfg.validate()?;
    let log_archimedean = if cfg.archimedean_exponent == 0 {
        0.0
    } else {
        let c = witten_census.ok_or_else(|| {
            Error::InvalidParameter("a positive archimedean exponent needs a census".into())
        })?;
        cfg.archimedean_exponent as f64 * archimedean_log(c, cfg.s)?
    };
    let primes = cfg.primes();
    let log_local = local_log_sum(&primes, cfg.s)?;
    let (lo2, hi2) = match (cfg.excluded_primes.contains(&2), cfg.bracket_p2) {
        (false, Some((lo, hi))) => (lo.ln(), hi.ln()),
        _ => (0.0, 0.0),
    };
    Ok(PartialProduct {
        log_lower: log_archimedean + log_local + lo2,
        log_upper: log_archimedean + log_local + hi2,
        log_archimedean,
        log_local,
        primes_used: primes.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sandwich {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub ok: bool,
}

/// `(1−q^{1−s})^{−1/2}`, `Z_q(s)`, `(1−q^{1−s})^{−100}` for `s ∈ [2, 3]`.
pub fn sandwich_check(q: u64, s: f64) -> Result<Sandwich> {
    if !(2.0..=3.0).contains(&s) {
        return Err(Error::ExponentOutOfRange {
            s,
            range: "2 <= s <= 3",
        });
    }
    check_residue_field(q)?;
    let base = 1.0 - (q as f64).powf(1.0 - s);
    let lower = base.powf(-0.5);
    let upper = base.powf(-100.0);
    let value = sl2_local_zeta(q, s)?;
    Ok(Sandwich {
        lower,
        value,
        upper,
        ok: lower < value && value < upper,
    })
}

/// `log ζ_{≤P}(t) = −Σ_{odd p ≤ P} log(1 − p^{−t})`, ascending.
pub fn log_odd_zeta_truncation(prime_bound: u64, t: f64) -> f64 {
    primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| -(-(p as f64).powf(-t)).ln_1p())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeStep {
    pub prime_bound: u64,
    pub log_product: f64,
    /// `½·log ζ_{≤P}(s−1)`.
    pub lower_comparator: f64,
    /// `100·log ζ_{≤P}(s−1)`.
    pub upper_comparator: f64,
    /// `log_product / log ζ_{≤P}(s−1)`.
    pub effective_exponent: f64,
    /// Change from the previous bound; absent for the first.
    pub increment: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// `s = 2`: increasing and above the divergent lower comparator.
    Growth {
        strictly_increasing: bool,
        above_lower_comparator: bool,
    },
    /// `s > 2`: the last increment against [`STABILIZATION_TOLERANCE`].
    Stabilization {
        last_increment: f64,
        tolerance: f64,
        stable: bool,
    },
}

impl ProbeVerdict {
    pub fn passed(&self) -> bool {
        match *self {
            ProbeVerdict::Growth {
                strictly_increasing,
                above_lower_comparator,
            } => strictly_increasing && above_lower_comparator,
            ProbeVerdict::Stabilization { stable, .. } => stable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub s: f64,
    pub steps: Vec<ProbeStep>,
    pub verdict: ProbeVerdict,
}

impl ProbeReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Log partial products of the odd-prime local factors over an increasing
/// schedule of prime bounds, beside the comparators from the local bounds.
pub fn divergence_probe(s: f64, schedule: &[u64]) -> Result<ProbeReport> {
    if !(s == 2.0 || (s > 2.0 && s <= 3.0)) {
        return Err(Error::ExponentOutOfRange {
            s,
            range: "s = 2 or 2 < s <= 3",
        });
    }
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] < 3 {
        return Err(Error::InvalidParameter(
            "schedule must be strictly increasing prime bounds >= 3".into(),
        ));
    }
    let mut steps: Vec<ProbeStep> = Vec::with_capacity(schedule.len());
    for &bound in schedule {
        let log_product = global_partial_product(
            &EulerProductConfig {
                archimedean_exponent: 0,
                ..EulerProductConfig::new(s, bound)
            },
            None,
        )?
        .log_local;
        let z = log_odd_zeta_truncation(bound, s - 1.0);
        let increment = steps.last().map(|p| log_product - p.log_product);
        steps.push(ProbeStep {
            prime_bound: bound,
            log_product,
            lower_comparator: 0.5 * z,
            upper_comparator: 100.0 * z,
            effective_exponent: log_product / z,
            increment,
        });
    }
    let verdict = if s == 2.0 {
        ProbeVerdict::Growth {
            strictly_increasing: steps.iter().all(|p| p.increment.is_none_or(|d| d > 0.0)),
            above_lower_comparator: steps.iter().all(|p| p.log_product > p.lower_comparator),
        }
    } else {
        let last_increment = steps
            .last()
            .and_then(|p| p.increment)
            .unwrap_or(f64::INFINITY);
        ProbeVerdict::Stabilization {
            last_increment,
            tolerance: STABILIZATION_TOLERANCE,
            stable: last_increment.abs() < STABILIZATION_TOLERANCE,
        }
    };
    Ok(ProbeReport { s, steps, verdict })
}
