//! Witten zeta functions `Σ_λ (dim V_λ)^{-s}`: degree censuses of the
//! rational irreducibles of a simply connected simple group, partial sums,
//! and empirical abscissa estimates.

use serde::{Deserialize, Serialize};

use crate::census::DegreeCensus;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

pub use crate::census::zeta_partial;

/// Default ceiling on the number of weights a census may hold.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// All dominant weights with `dim V_λ ≤ cap`, as a degree census.
pub fn enumerate_weights_up_to(rs: &RootSystem, cap: u128) -> Result<DegreeCensus> {
    enumerate_weights_with_budget(rs, cap, DEFAULT_BUDGET)
}

pub fn enumerate_weights_with_budget(
    rs: &RootSystem,
    cap: u128,
    budget: u64,
) -> Result<DegreeCensus> {
    if cap < 1 {
        return Err(Error::InvalidParameter(
            "census cap must be at least 1".into(),
        ));
    }
    let mut walker = Walker::new(rs, cap, budget);
    walker.descend(0)?;
    Ok(walker.census)
}

/// Same census, enumerated on `threads` workers split by the first weight
/// coordinate and merged.
pub fn enumerate_weights_parallel(
    rs: &RootSystem,
    cap: u128,
    budget: u64,
    threads: usize,
) -> Result<DegreeCensus> {
    let threads = threads.max(1);
    let results: Vec<Result<DegreeCensus>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut walker = Walker::new(rs, cap, budget);
                    let mut first = t as u64;
                    loop {
                        walker.weight[0] = first;
                        if !walker.within_cap() {
                            break;
                        }
                        walker.descend(1)?;
                        first += threads as u64;
                    }
                    Ok(walker.census)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut merged = DegreeCensus::new(cap);
    let mut total = 0;
    for part in results {
        let part = part?;
        total += part.total();
        if total > budget {
            return Err(Error::BudgetExceeded { budget, cap });
        }
        merged = merged.merge(&part);
    }
    Ok(merged)
}

struct Walker<'a> {
    rs: &'a RootSystem,
    cap: u128,
    budget: u64,
    weight: Vec<u64>,
    census: DegreeCensus,
    count: u64,
}

impl<'a> Walker<'a> {
    fn new(rs: &'a RootSystem, cap: u128, budget: u64) -> Self {
        Walker {
            rs,
            cap,
            budget,
            weight: vec![0; rs.rank()],
            census: DegreeCensus::new(cap),
            count: 0,
        }
    }

    fn dimension(&self) -> Option<u128> {
        match self.rs.weyl_dim_small(&self.weight) {
            Some(d) => Some(d),
            None => {
                let big = self.rs.weyl_dim_big(&self.weight);
                num_traits::ToPrimitive::to_u128(&big)
            }
        }
    }

    fn within_cap(&self) -> bool {
        self.dimension().is_some_and(|d| d <= self.cap)
    }

    /// Coordinates `< level` are fixed, the rest are zero on entry and on exit.
    /// `dim` is strictly increasing in every coordinate, so once the
    /// all-zero completion exceeds the cap, every larger value does too.
    fn descend(&mut self, level: usize) -> Result<()> {
        let r = self.rs.rank();
        if level == r {
            let d = self.dimension().expect("checked by caller");
            self.count += 1;
            if self.count > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                    cap: self.cap,
                });
            }
            self.census.add(d, 1);
            return Ok(());
        }
        loop {
            if !self.within_cap() {
                break;
            }
            self.descend(level + 1)?;
            self.weight[level] += 1;
        }
        self.weight[level] = 0;
        Ok(())
    }
}

/// Least-squares slope of `log R_n` against `log n` over the top decade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbscissaEstimate {
    pub slope: f64,
    /// `log R_N / log N` at the cap.
    pub raw_ratio: f64,
    pub samples: usize,
}

const SAMPLE_POINTS: usize = 50;

pub fn abscissa_estimate(census: &DegreeCensus) -> Result<AbscissaEstimate> {
    let cap = census.cap();
    if cap < 100 {
        return Err(Error::InsufficientData(format!(
            "abscissa estimate needs a census cap of at least 100, got {cap}"
        )));
    }
    let cum = census.cumulative();
    let lo = cap as f64 / 10.0;
    let mut ns: Vec<u128> = (0..SAMPLE_POINTS)
        .map(|k| {
            let t = k as f64 / (SAMPLE_POINTS - 1) as f64;
            ((lo * 10f64.powf(t)).round() as u128).clamp(1, cap)
        })
        .collect();
    ns.dedup();
    let points: Vec<(f64, f64)> = ns
        .iter()
        .filter_map(|&n| {
            let r = cum.at(n);
            (r > 0).then(|| ((n as f64).ln(), (r as f64).ln()))
        })
        .collect();
    if points.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "only {} usable sample points in [N/10, N]; need 10",
            points.len()
        )));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let total = cum.at(cap);
    Ok(AbscissaEstimate {
        slope: sxy / sxx,
        raw_ratio: (total as f64).ln() / (cap as f64).ln(),
        samples: points.len(),
    })
}

/// Outcome of comparing the analytic convergence criterion for
/// `Σ_{1 ≤ b₁ < … < b_k} exp(Σ aᵢ bᵢ)` with truncated sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// `a_i + … + a_k` for `i = 1..=k`.
    pub suffix_sums: Vec<f64>,
    /// All suffix sums are negative.
    pub converges: bool,
    /// `Π exp(S_i) / (1 − exp(S_i))`, present when `converges`.
    pub closed_form: Option<f64>,
    /// Truncated sums with `b_k ≤ d` for `d = 1..=depth`.
    pub partial_sums: Vec<f64>,
    /// Whether the truncated sums behave as the analytic criterion predicts.
    pub agrees: bool,
}

pub fn convergence_lemma_check(a: &[f64], depth: usize) -> Result<ConvergenceReport> {
    if a.is_empty() || depth < 1 {
        return Err(Error::InvalidParameter(
            "convergence lemma needs a non-empty coefficient vector and depth >= 1".into(),
        ));
    }
    let k = a.len();
    let mut suffix_sums = vec![0.0; k];
    let mut acc = 0.0;
    for i in (0..k).rev() {
        acc += a[i];
        suffix_sums[i] = acc;
    }
    let converges = suffix_sums.iter().all(|&s| s < 0.0);
    let closed_form = converges.then(|| {
        suffix_sums
            .iter()
            .map(|&s| s.exp() / (1.0 - s.exp()))
            .product::<f64>()
    });

    // f[i][b]: sum over b_1 < … < b_i = b of exp(a_1 b_1 + … + a_i b_i)
    let mut prev: Vec<f64> = (0..=depth)
        .map(|b| if b == 0 { 0.0 } else { (a[0] * b as f64).exp() })
        .collect();
    for &ai in &a[1..] {
        let mut cur = vec![0.0; depth + 1];
        let mut running = 0.0;
        for b in 1..=depth {
            cur[b] = (ai * b as f64).exp() * running;
            running += prev[b];
        }
        prev = cur;
    }
    let mut partial_sums = Vec::with_capacity(depth);
    let mut total = 0.0;
    for &v in &prev[1..] {
        total += v;
        partial_sums.push(total);
    }

    let last = *partial_sums.last().unwrap();
    let agrees = match closed_form {
        Some(cf) => last.is_finite() && (last - cf).abs() <= 1e-6 * cf.abs().max(1.0),
        None => {
            // unbounded growth: the latest increment has not decayed
            let inc = |d: usize| {
                if d == 0 {
                    partial_sums[0]
                } else {
                    partial_sums[d] - partial_sums[d - 1]
                }
            };
            let late = inc(depth - 1);
            let early = inc((depth - 1) / 2);
            !last.is_finite() || (late > 0.0 && late >= early)
        }
    };
    Ok(ConvergenceReport {
        suffix_sums,
        converges,
        closed_form,
        partial_sums,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Series};

    #[test]
    fn a1_census_is_every_degree_once() {
        let a1 = build_root_system(Series::A, 1).unwrap();
        let c = enumerate_weights_up_to(&a1, 10).unwrap();
        assert_eq!(c.total(), 10);
        assert!((1..=10).all(|d| c.multiplicity(d) == 1));
    }

    #[test]
    fn a2_small_censuses() {
        let a2 = build_root_system(Series::A, 2).unwrap();
        let c = enumerate_weights_up_to(&a2, 10).unwrap();
        let got: Vec<(u128, u64)> = c.entries().iter().map(|(&d, &m)| (d, m)).collect();
        assert_eq!(got, vec![(1, 1), (3, 2), (6, 2), (8, 1), (10, 2)]);
        assert_eq!(c.total(), 8);
        let c = enumerate_weights_up_to(&a2, 2).unwrap();
        assert_eq!(c.total(), 1);
        assert_eq!(c.multiplicity(1), 1);
    }

    #[test]
    fn a2_partial_sum_at_one() {
        let a2 = build_root_system(Series::A, 2).unwrap();
        let c = enumerate_weights_up_to(&a2, 10).unwrap();
        assert!((zeta_partial(&c, 1.0) - 2.325).abs() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let a1 = build_root_system(Series::A, 1).unwrap();
        let err = enumerate_weights_with_budget(&a1, 1000, 999).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                budget: 999,
                cap: 1000
            }
        );
        assert!(enumerate_weights_with_budget(&a1, 1000, 1000).is_ok());
    }

    #[test]
    fn parallel_matches_serial() {
        for (s, r) in [
            (Series::A, 2),
            (Series::C, 2),
            (Series::A, 3),
            (Series::G, 2),
        ] {
            let rs = build_root_system(s, r).unwrap();
            let serial = enumerate_weights_up_to(&rs, 20_000).unwrap();
            for t in [1, 3, 4] {
                let par = enumerate_weights_parallel(&rs, 20_000, DEFAULT_BUDGET, t).unwrap();
                assert_eq!(par, serial, "{s}{r} threads={t}");
            }
        }
    }

    #[test]
    fn e8_census_uses_big_arithmetic() {
        let e8 = build_root_system(Series::E, 8).unwrap();
        let c = enumerate_weights_up_to(&e8, 10_000).unwrap();
        let got: Vec<(u128, u64)> = c.entries().iter().map(|(&d, &m)| (d, m)).collect();
        assert_eq!(got, vec![(1, 1), (248, 1), (3875, 1)]);
    }

    #[test]
    fn abscissa_rejects_small_caps() {
        let a1 = build_root_system(Series::A, 1).unwrap();
        let c = enumerate_weights_up_to(&a1, 99).unwrap();
        assert!(matches!(
            abscissa_estimate(&c),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn abscissa_a1_is_one() {
        let a1 = build_root_system(Series::A, 1).unwrap();
        let c = enumerate_weights_up_to(&a1, 10_000).unwrap();
        let est = abscissa_estimate(&c).unwrap();
        assert!((est.slope - 1.0).abs() < 1e-9);
        assert_eq!(est.raw_ratio, 1.0);
    }

    #[test]
    fn lemma_geometric_series() {
        let rep = convergence_lemma_check(&[-1.0], 60).unwrap();
        assert!(rep.converges && rep.agrees);
        let e = (-1f64).exp();
        assert!((rep.closed_form.unwrap() - e / (1.0 - e)).abs() < 1e-15);
    }

    #[test]
    fn lemma_divergent_pair() {
        let rep = convergence_lemma_check(&[1.0, -0.5], 60).unwrap();
        assert_eq!(rep.suffix_sums, vec![0.5, -0.5]);
        assert!(!rep.converges);
        assert!(rep.closed_form.is_none());
        assert!(rep.agrees);
    }

    #[test]
    fn lemma_boundary_case_diverges() {
        // zero suffix sum: each new b adds a constant
        let rep = convergence_lemma_check(&[0.0], 40).unwrap();
        assert!(!rep.converges && rep.agrees);
    }

    #[test]
    fn lemma_rejects_empty() {
        assert!(convergence_lemma_check(&[], 10).is_err());
        assert!(convergence_lemma_check(&[-1.0], 0).is_err());
    }
}
