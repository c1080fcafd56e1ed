//! The representation zeta function of `SL₂(𝒪)` for a local ring of
//! integers `𝒪` with odd residue field `𝔽_q`.
//!
//! The closed form is a finite sum over the representations of level one
//! plus a geometric part
//!
//! ```text
//! [4q·((q²−1)/2)^{-s} + (q²−1)/2·(q²−q)^{-s} + (q−1)²/2·(q²+q)^{-s}] / (1 − q^{1−s})
//! ```
//!
//! Expanding `1/(1 − q^{1−s}) = Σ_{j≥2} q^{(j−2)(1−s)}` reads the geometric
//! part level by level: at level `j ≥ 2` each seed `(d, c)` contributes `c·q^{j−2}`
//! representations of degree `d·q^{j−2}`. That expansion reproduces the
//! group order `q^{3k−2}(q²−1)` of `SL₂(𝒪/πᵏ)` as `Σ mult·deg²`, and the
//! class counts agree with the brute-force oracle in [`crate::finquot`].

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::census::DegreeCensus;
use crate::error::{Error, Result};
use crate::primes::prime_power;

/// One `(degree, multiplicity)` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub degree: u128,
    pub multiplicity: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactorSL2 {
    q: u64,
    finite_terms: Vec<Term>,
    geometric_seeds: [Term; 3],
}

/// Rejects even and non-prime-power residue field sizes.
pub(crate) fn check_residue_field(q: u64) -> Result<()> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenResidueField(q));
    }
    if q < 3 || prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

impl LocalFactorSL2 {
    pub fn new(q: u64) -> Result<Self> {
        check_residue_field(q)?;
        let q = q as u128;
        let t = |degree, multiplicity| Term {
            degree,
            multiplicity,
        };
        Ok(LocalFactorSL2 {
            q: q as u64,
            finite_terms: vec![
                t(1, 1),
                t(q, 1),
                t(q + 1, (q - 3) / 2),
                t(q.div_ceil(2), 2),
                t(q - 1, (q - 1) / 2),
                t((q - 1) / 2, 2),
            ],
            geometric_seeds: [
                t((q * q - 1) / 2, 4 * q),
                t(q * q - q, (q * q - 1) / 2),
                t(q * q + q, (q - 1) * (q - 1) / 2),
            ],
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The six level-one terms, including those with multiplicity zero.
    pub fn finite_terms(&self) -> &[Term] {
        &self.finite_terms
    }

    pub fn geometric_seeds(&self) -> &[Term; 3] {
        &self.geometric_seeds
    }

    /// Closed-form value at real `s > 1`.
    pub fn evaluate(&self, s: f64) -> Result<f64> {
        if s.is_nan() || s <= 1.0 {
            return Err(Error::ExponentOutOfRange { s, range: "s > 1" });
        }
        let pow = |t: &Term| t.multiplicity as f64 * (t.degree as f64).powf(-s);
        let finite: f64 = self.finite_terms.iter().map(pow).sum();
        let seeds: f64 = self.geometric_seeds.iter().map(pow).sum();
        let ratio = (self.q as f64).powf(1.0 - s);
        Ok(finite + seeds / (1.0 - ratio))
    }

    /// Census of `SL₂(𝒪/πᵏ)`: the level-one block plus scaled seeds for
    /// every level `2..=k`.
    pub fn census(&self, level: u32) -> Result<DegreeCensus> {
        if level < 1 {
            return Err(Error::InvalidParameter("level must be at least 1".into()));
        }
        let q = self.q as u128;
        let scale_max = q.checked_pow(level.saturating_sub(2)).ok_or_else(|| {
            Error::InvalidParameter(format!("level {level} overflows for q = {q}"))
        })?;
        let cap = if level >= 2 {
            (q * q + q).checked_mul(scale_max).ok_or_else(|| {
                Error::InvalidParameter(format!("level {level} overflows for q = {q}"))
            })?
        } else {
            q + 1
        };
        let mut c = DegreeCensus::new(cap);
        for t in &self.finite_terms {
            c.add(t.degree, t.multiplicity as u64);
        }
        for j in 2..=level {
            let scale = q.pow(j - 2);
            for t in &self.geometric_seeds {
                c.add(t.degree * scale, (t.multiplicity * scale) as u64);
            }
        }
        Ok(c)
    }

    /// Predicted number of irreducibles at level `≤ k`:
    /// `(q+4) + Σ_{j=2}^{k} q^{j−1}(q+3)`.
    pub fn class_count(&self, level: u32) -> u128 {
        let q = self.q as u128;
        (q + 4) + (2..=level).map(|j| q.pow(j - 1) * (q + 3)).sum::<u128>()
    }

    /// `|SL₂(𝒪/πᵏ)| = q^{3k−2}(q²−1)`.
    pub fn group_order(&self, level: u32) -> u128 {
        let q = self.q as u128;
        q.pow(3 * level - 2) * (q * q - 1)
    }
}

/// Closed-form `Z_{SL₂(𝒪)}(s)` for residue field size `q`.
pub fn sl2_local_zeta(q: u64, s: f64) -> Result<f64> {
    LocalFactorSL2::new(q)?.evaluate(s)
}

pub fn sl2_degree_census(q: u64, level: u32) -> Result<DegreeCensus> {
    LocalFactorSL2::new(q)?.census(level)
}

/// Abscissa `2/d` of `SL₁(D)` for a division algebra of degree `d` in
/// characteristic zero; a reference constant only.
pub fn sl1_division_abscissa(d: u64) -> Result<BigRational> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "division algebra degree must be at least 2, got {d}"
        )));
    }
    Ok(BigRational::new(BigInt::from(2), BigInt::from(d)))
}
