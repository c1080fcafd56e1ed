//! Character degrees of symmetric and alternating groups by the hook length
//! formula, the alternating zeta values `𝒵_{A_k}(s)`, and the numeric
//! conditions behind the iterated wreath product construction.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::census::{zeta_partial, DegreeCensus};
use crate::error::{Error, Result};

/// Largest `k` accepted; `p(40) = 37338`.
pub const MAX_K: usize = 40;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        parts.shrink_to_fit();
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.0[j] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }
}

fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min || k > MAX_K {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside {min}..={MAX_K}"
        )));
    }
    Ok(())
}

/// All partitions of `k` in reverse lexicographic order, `(k)` first.
pub fn partitions(k: usize) -> Result<Vec<Partition>> {
    check_k(k, 1)?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    rec(k as u32, k as u32, &mut cur, &mut out);
    Ok(out)
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `k!/Π hooks`, the degree of the `S_k` irreducible indexed by `λ`.
pub fn hook_degree(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .hooks()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

fn to_degree(f: &BigUint) -> u128 {
    f.to_u128().expect("degrees for k <= 40 fit in 128 bits")
}

/// `S_k` census: one degree `f_λ` per partition.
pub fn sym_degree_census(k: usize) -> Result<DegreeCensus> {
    Ok(DegreeCensus::from_degrees(
        partitions(k)?.iter().map(|l| to_degree(&hook_degree(l))),
    ))
}

/// `A_k` census. A conjugate pair `{λ, λ′}` restricts to one irreducible of
/// degree `f_λ`; a self-conjugate `λ` splits into two of degree `f_λ/2`.
pub fn alt_degree_census(k: usize) -> Result<DegreeCensus> {
    check_k(k, 5)?;
    let mut degrees = Vec::new();
    for lambda in partitions(k)? {
        let conj = lambda.conjugate();
        if lambda == conj {
            let f = to_degree(&hook_degree(&lambda));
            if f % 2 == 1 {
                return Err(Error::Invariant(format!(
                    "self-conjugate {:?} has odd degree {f}",
                    lambda.parts()
                )));
            }
            degrees.extend([f / 2, f / 2]);
        } else if lambda > conj {
            degrees.push(to_degree(&hook_degree(&lambda)));
        }
    }
    Ok(DegreeCensus::from_degrees(degrees))
}

/// `𝒵_{A_k}(s)`.
pub fn alt_zeta(k: usize, s: f64) -> Result<f64> {
    if s.is_nan() || s < 0.0 {
        return Err(Error::ExponentOutOfRange { s, range: "s >= 0" });
    }
    Ok(zeta_partial(&alt_degree_census(k)?, s))
}

/// Outcome of checking `R_n ≤ c·nˢ + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnBoundReport {
    pub holds: bool,
    /// Degree where `c·nˢ + 1 − R_n` is smallest.
    pub tightest_n: u128,
    pub tightest_slack: f64,
}

/// Checks `R_n ≤ c·nˢ + 1` for every `n` up to the census cap. The right
/// side is increasing and `R_n` is a step function, so only the jump
/// degrees need checking.
pub fn perfect_rn_bound_check(census: &DegreeCensus, s: f64, c: f64) -> Result<RnBoundReport> {
    let r1 = census.multiplicity(1);
    if r1 != 1 {
        return Err(Error::NotPerfect(r1));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::ExponentOutOfRange {
            s,
            range: "0 < s < 1",
        });
    }
    let z = zeta_partial(census, s);
    if z > 1.0 + c {
        return Err(Error::InvalidParameter(format!(
            "zeta({s}) = {z} exceeds 1 + c = {}",
            1.0 + c
        )));
    }
    let mut tightest = (1u128, f64::INFINITY);
    for &(n, r) in census.cumulative().steps() {
        let slack = c * (n as f64).powf(s) + 1.0 - r as f64;
        if slack < tightest.1 {
            tightest = (n, slack);
        }
    }
    Ok(RnBoundReport {
        holds: tightest.1 >= 0.0,
        tightest_n: tightest.0,
        tightest_slack: tightest.1,
    })
}

/// Checks `R_n(A_k) ≤ 2·R_{2n}(S_k)` and `R_n(S_k) ≤ 2·R_n(A_k)` for all `n`.
/// The left sides only jump at census degrees, so those are the `n` checked.
pub fn index_inequality_check(k: usize) -> Result<bool> {
    let sym = sym_degree_census(k)?;
    let alt = alt_degree_census(k)?;
    let (rs, ra) = (sym.cumulative(), alt.cumulative());
    let first = alt
        .entries()
        .keys()
        .all(|&n| ra.at(n) <= 2 * rs.at(n.saturating_mul(2)));
    let second = sym.entries().keys().all(|&n| rs.at(n) <= 2 * ra.at(n));
    Ok(first && second)
}

/// Outcome of the second wreath condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ZetaCondition {
    Checked {
        zeta: f64,
        threshold: f64,
        holds: bool,
    },
    NotVerifiable {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WreathReport {
    pub r: usize,
    /// `log|W_{r−1}|`.
    pub log_order: f64,
    /// `log|W_{r−1}| / log ℓ_r`, compared against `1/r`.
    pub order_ratio: f64,
    pub order_condition: bool,
    pub zeta_condition: ZetaCondition,
}

/// `log|W_j|` for `j = 0..ℓ.len()`, from `|W_0| = ℓ₀!/2` and
/// `|W_j| = (ℓ_j!/2)^{ℓ₀⋯ℓ_{j−1}}·|W_{j−1}|`.
pub fn wreath_log_orders(ell: &[u64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(ell.len());
    let mut log_l = 0f64;
    let mut acc = 0.0;
    for (j, &l) in ell.iter().enumerate() {
        let half = ln_factorial(l) - std::f64::consts::LN_2;
        acc += if j == 0 { half } else { log_l.exp() * half };
        log_l += (l as f64).ln();
        out.push(acc);
    }
    out
}

/// Exact `|W_{r−1}|^r < ℓ_r`; only reached when `|W_{r−1}|` is small.
fn order_condition_exact(ell: &[u64], r: usize) -> bool {
    let half = |l: u64| factorial(l as usize) / 2u32;
    let mut order = half(ell[0]);
    let mut lprod = BigUint::from(ell[0]);
    for &l in &ell[1..r] {
        let e = lprod.to_u32().expect("small exponent on the exact path");
        order *= num_traits::pow(half(l), e as usize);
        lprod *= l;
    }
    num_traits::pow(order, r) < BigUint::from(ell[r])
}

/// Checks `log|W_{r−1}| / log ℓ_r < 1/r` and `𝒵_{A_{ℓ_r}}(1/r) < 1 + 1/L_{r−1}`
/// with `L_{r−1} = ℓ₀⋯ℓ_{r−1}`. The zeta condition is evaluated only when
/// `ℓ_r ≤ 40`; otherwise it is reported as not verifiable.
pub fn wreath_conditions(ell: &[u64], r: usize) -> Result<WreathReport> {
    if r < 1 || ell.len() < r + 1 {
        return Err(Error::InvalidParameter(format!(
            "need r >= 1 and at least r + 1 = {} entries, got {}",
            r + 1,
            ell.len()
        )));
    }
    if ell.iter().any(|&l| l < 5) {
        return Err(Error::InvalidParameter(
            "every entry must be at least 5".into(),
        ));
    }
    let log_order = wreath_log_orders(&ell[..r])[r - 1];
    let log_lr = (ell[r] as f64).ln();
    let order_ratio = log_order / log_lr;
    // |W_{r-1}|^r < ℓ_r < 2^64 forces a small group, so the exact test is cheap
    let order_condition = if r as f64 * log_order > log_lr + 1.0 {
        false
    } else {
        order_condition_exact(ell, r)
    };
    let zeta_condition = if ell[r] as usize <= MAX_K {
        let zeta = alt_zeta(ell[r] as usize, 1.0 / r as f64)?;
        let log_l: f64 = ell[..r].iter().map(|&l| (l as f64).ln()).sum();
        let threshold = 1.0 + (-log_l).exp();
        ZetaCondition::Checked {
            zeta,
            threshold,
            holds: zeta < threshold,
        }
    } else {
        ZetaCondition::NotVerifiable {
            reason: format!(
                "not verifiable at desk scale: l_r = {} exceeds {MAX_K}",
                ell[r]
            ),
        }
    };
    Ok(WreathReport {
        r,
        log_order,
        order_ratio,
        order_condition,
        zeta_condition,
    })
}
