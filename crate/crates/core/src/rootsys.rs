//! Irreducible root systems, the Weyl dimension formula and Coxeter data.
//!
//! A [`RootSystem`] stores its positive coroots as rows of non-negative
//! integers in the simple-coroot basis. For a dominant weight
//! `λ = Σ aᵢ ϖᵢ` the pairing `α∨(λ)` is then the dot product of the row
//! with `a`, and `α∨(ρ)` is the row sum. The dimension of the irreducible
//! representation with highest weight `λ` is
//!
//! ```text
//! dim V_λ = Π_{α > 0} α∨(λ + ρ) / α∨(ρ)
//! ```
//!
//! which is evaluated exactly.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan-Killing series letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub(crate) fn valid_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }

    /// Number of positive roots from the classical dimension table.
    pub fn positive_root_count(self, rank: usize) -> usize {
        let r = rank;
        match self {
            Series::A => r * (r + 1) / 2,
            Series::B | Series::C => r * r,
            Series::D => r * (r - 1),
            Series::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Coxeter number from the classical table.
    pub fn coxeter_number(self, rank: usize) -> u32 {
        let r = rank as u32;
        match self {
            Series::A => r + 1,
            Series::B | Series::C => 2 * r,
            Series::D => 2 * r - 2,
            Series::E => match r {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Series::F => 12,
            Series::G => 6,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An irreducible reduced root system, stored through its positive coroots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    /// Row `j` holds the simple-coroot coordinates of the `j`-th positive coroot.
    coroots: Vec<Vec<u32>>,
    /// `rho_values[j] = α_j∨(ρ)`, the row sums of `coroots`.
    rho_values: Vec<u64>,
    coxeter: u32,
    /// `Π_j α_j∨(ρ)`.
    denominator: BigUint,
    denominator_small: Option<u128>,
}

/// Highest weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight(pub Vec<u64>);

impl DominantWeight {
    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for DominantWeight {
    fn from(v: Vec<u64>) -> Self {
        DominantWeight(v)
    }
}

/// Cartan matrix with `C[i][j] = ⟨αᵢ, αⱼ∨⟩`, Bourbaki labelling.
fn cartan_matrix(series: Series, r: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C => {
            for i in 0..r - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        Series::E => {
            // 1-3-4-5-...-r with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for i in 2..r - 1 {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }
    match series {
        // alpha_r short
        Series::B => c[r - 2][r - 1] = -2,
        // alpha_r long
        Series::C => c[r - 1][r - 2] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Series::F => c[1][2] = -2,
        // alpha_1 short, alpha_2 long
        Series::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Positive roots of the root system with Cartan matrix `cartan`, in the
/// simple-root basis, generated by root-string closure in order of height.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..r {
                // <beta, alpha_i^vee>
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                // p = how far the alpha_i-string extends below beta
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !known.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        for v in &layer {
            known.insert(v.clone());
        }
        roots.extend(layer.iter().cloned());
    }
    roots
}

/// Builds the irreducible root system of the given type.
///
/// ```
/// use repzeta::rootsys::{build_root_system, Series};
/// let e8 = build_root_system(Series::E, 8).unwrap();
/// assert_eq!(e8.positive_root_count(), 120);
/// assert_eq!(e8.coxeter_number(), 30);
/// ```
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    if !series.valid_rank(rank) {
        return Err(Error::InvalidRootSystem {
            series: series.letter(),
            rank,
        });
    }
    let cartan = cartan_matrix(series, rank);
    // Coroots form the dual root system, whose Cartan matrix is the transpose.
    let dual: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| cartan[j][i]).collect())
        .collect();
    let coroots: Vec<Vec<u32>> = positive_roots(&dual)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as u32).collect())
        .collect();
    let rho_values: Vec<u64> = coroots
        .iter()
        .map(|row| row.iter().map(|&x| x as u64).sum())
        .collect();
    let denominator = rho_values
        .iter()
        .fold(BigUint::one(), |acc, &c| acc * BigUint::from(c));
    let denominator_small = denominator.to_u128();
    let rs = RootSystem {
        series,
        rank,
        coroots,
        rho_values,
        coxeter: series.coxeter_number(rank),
        denominator,
        denominator_small,
    };
    let kappa = rs.positive_root_count();
    if kappa != series.positive_root_count(rank) {
        return Err(Error::Invariant(format!(
            "{series}{rank}: closure produced {kappa} positive coroots, table says {}",
            series.positive_root_count(rank)
        )));
    }
    if 2 * kappa != rank * rs.coxeter as usize {
        return Err(Error::Invariant(format!(
            "{series}{rank}: 2κ = {} but r·h = {}",
            2 * kappa,
            rank * rs.coxeter as usize
        )));
    }
    Ok(rs)
}

impl RootSystem {
    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// κ = |Φ⁺|.
    pub fn positive_root_count(&self) -> usize {
        self.coroots.len()
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter
    }

    pub fn coroot_matrix(&self) -> &[Vec<u32>] {
        &self.coroots
    }

    pub fn rho_values(&self) -> &[u64] {
        &self.rho_values
    }

    /// `dim G = r + 2κ`.
    pub fn group_dimension(&self) -> usize {
        self.rank + 2 * self.positive_root_count()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    fn check_weight(&self, weight: &DominantWeight) -> Result<()> {
        if weight.0.len() != self.rank {
            return Err(Error::WeightRankMismatch {
                expected: self.rank,
                got: weight.0.len(),
            });
        }
        Ok(())
    }

    /// The κ values `α∨(λ + ρ)`.
    pub fn shifted_pairings(&self, weight: &DominantWeight) -> Result<Vec<u64>> {
        self.check_weight(weight)?;
        Ok(self.pairings_unchecked(&weight.0))
    }

    fn pairings_unchecked(&self, a: &[u64]) -> Vec<u64> {
        self.coroots
            .iter()
            .zip(&self.rho_values)
            .map(|(row, &c)| row.iter().zip(a).map(|(&b, &x)| b as u64 * x).sum::<u64>() + c)
            .collect()
    }

    /// Dimension as `u128` when the numerator product fits, `None` otherwise.
    pub(crate) fn weyl_dim_small(&self, a: &[u64]) -> Option<u128> {
        let den = self.denominator_small?;
        let mut num: u128 = 1;
        for (row, &c) in self.coroots.iter().zip(&self.rho_values) {
            let v = row.iter().zip(a).map(|(&b, &x)| b as u64 * x).sum::<u64>() + c;
            num = num.checked_mul(v as u128)?;
        }
        debug_assert_eq!(num % den, 0);
        Some(num / den)
    }

    pub(crate) fn weyl_dim_big(&self, a: &[u64]) -> BigUint {
        let num = self
            .pairings_unchecked(a)
            .into_iter()
            .fold(BigUint::one(), |acc, v| acc * BigUint::from(v));
        debug_assert!((&num % &self.denominator) == BigUint::from(0u32));
        num / &self.denominator
    }
}

/// Dimension of the irreducible representation with highest weight `weight`.
///
/// ```
/// use repzeta::rootsys::{build_root_system, weyl_dim, DominantWeight, Series};
/// let a2 = build_root_system(Series::A, 2).unwrap();
/// assert_eq!(weyl_dim(&a2, &DominantWeight(vec![1, 1])).unwrap(), 8u32.into());
/// ```
pub fn weyl_dim(rs: &RootSystem, weight: &DominantWeight) -> Result<BigUint> {
    rs.check_weight(weight)?;
    Ok(match rs.weyl_dim_small(&weight.0) {
        Some(d) => BigUint::from(d),
        None => rs.weyl_dim_big(&weight.0),
    })
}

/// `r/κ`, which always equals `2/h`.
pub fn abscissa_rk(rs: &RootSystem) -> BigRational {
    BigRational::new(
        (rs.rank() as u64).into(),
        (rs.positive_root_count() as u64).into(),
    )
}

/// Row-reduced basis of a rational span of integer vectors; used only for
/// membership tests, so fraction-free elimination over `i128` is enough.
#[derive(Debug, Default)]
struct Span {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Span {
    fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot] != 0 {
                let (a, b) = (row[*pivot], v[*pivot]);
                for (x, y) in v.iter_mut().zip(row) {
                    *x = *x * a - y * b;
                }
                let g = v.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: &[i128]) {
        let red = self.reduce(v);
        if let Some(p) = red.iter().position(|&x| x != 0) {
            self.rows.push((p, red));
        }
    }

    fn contains(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One step of the chain `Ψ₁(λ) ⊆ Ψ₂(λ) ⊆ …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiStep {
    pub threshold: u32,
    /// `|Ψⱼ(λ)⁺|`.
    pub positive_count: usize,
}

/// `Ψⱼ(λ) = Φ ∩ Span{α : α∨(λ+ρ) < eʲ}` for `j = 1, 2, …` up to the first
/// `j` with `Ψⱼ = Φ`.
pub fn psi_chain(rs: &RootSystem, weight: &DominantWeight) -> Result<Vec<PsiStep>> {
    let values = rs.shifted_pairings(weight)?;
    let logs: Vec<f64> = values.iter().map(|&v| (v as f64).ln()).collect();
    let vectors: Vec<Vec<i128>> = rs
        .coroots
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let kappa = rs.positive_root_count();
    let mut chain = Vec::new();
    let mut j = 1u32;
    loop {
        let mut span = Span::default();
        for (v, &l) in vectors.iter().zip(&logs) {
            if l < j as f64 {
                span.insert(v);
            }
        }
        let count = vectors.iter().filter(|v| span.contains(v)).count();
        chain.push(PsiStep {
            threshold: j,
            positive_count: count,
        });
        if count == kappa {
            return Ok(chain);
        }
        j += 1;
    }
}

/// `log dim V_λ − Σⱼ (κ − |Ψⱼ(λ)⁺|)`; bounded independently of `λ`.
pub fn psi_gap(rs: &RootSystem, weight: &DominantWeight) -> Result<f64> {
    let chain = psi_chain(rs, weight)?;
    let kappa = rs.positive_root_count();
    let steps: usize = chain.iter().map(|s| kappa - s.positive_count).sum();
    let log_dim: f64 = rs
        .shifted_pairings(weight)?
        .iter()
        .zip(&rs.rho_values)
        .map(|(&v, &c)| (v as f64).ln() - (c as f64).ln())
        .sum();
    Ok(log_dim - steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn rs(s: Series, r: usize) -> RootSystem {
        build_root_system(s, r).unwrap()
    }

    fn dim(rs: &RootSystem, a: &[u64]) -> u128 {
        weyl_dim(rs, &DominantWeight(a.to_vec()))
            .unwrap()
            .to_u128()
            .unwrap()
    }

    #[test]
    fn a1_is_single_root() {
        let a1 = rs(Series::A, 1);
        assert_eq!(a1.positive_root_count(), 1);
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(a1.coroot_matrix(), &[vec![1]]);
        assert_eq!(a1.rho_values(), &[1]);
    }

    #[test]
    fn a2_coroots() {
        let a2 = rs(Series::A, 2);
        let rows: BTreeSet<Vec<u32>> = a2.coroot_matrix().iter().cloned().collect();
        let expected: BTreeSet<Vec<u32>> =
            [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
        assert_eq!(rows, expected);
        let mut c = a2.rho_values().to_vec();
        c.sort();
        assert_eq!(c, vec![1, 1, 2]);
        // (dim G - r)/2
        assert_eq!(a2.positive_root_count(), (8 - 2) / 2);
    }

    #[test]
    fn kappa_table_and_coxeter_identity() {
        let mut all = vec![];
        for r in 1..=8 {
            all.push((Series::A, r));
        }
        for r in 2..=7 {
            all.push((Series::B, r));
            all.push((Series::C, r));
        }
        for r in 3..=7 {
            all.push((Series::D, r));
        }
        all.extend([
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
            (Series::F, 4),
            (Series::G, 2),
        ]);
        for (s, r) in all {
            let sys = rs(s, r);
            assert_eq!(
                sys.positive_root_count(),
                s.positive_root_count(r),
                "{s}{r}"
            );
            assert_eq!(
                abscissa_rk(&sys) * BigRational::from_integer(sys.coxeter_number().into()),
                BigRational::from_integer(2.into())
            );
            assert!(sys.rho_values().iter().all(|&c| c >= 1));
            assert!(sys
                .coroot_matrix()
                .iter()
                .all(|row| row.iter().any(|&x| x > 0)));
        }
    }

    #[test]
    fn e8_constants() {
        let e8 = rs(Series::E, 8);
        assert_eq!(e8.positive_root_count(), 120);
        assert_eq!(e8.coxeter_number(), 30);
        assert_eq!(abscissa_rk(&e8), BigRational::new(1.into(), 15.into()));
        assert_eq!(e8.group_dimension(), 248);
    }

    #[test]
    fn invalid_types_are_rejected() {
        for (s, r) in [
            (Series::A, 0),
            (Series::B, 1),
            (Series::D, 2),
            (Series::E, 5),
            (Series::E, 9),
            (Series::F, 3),
            (Series::G, 3),
        ] {
            let err = build_root_system(s, r).unwrap_err();
            assert!(matches!(err, Error::InvalidRootSystem { .. }));
            assert!(err.to_string().contains("allowed"));
        }
    }

    #[test]
    fn known_small_representations() {
        // A1 gives every dimension once
        let a1 = rs(Series::A, 1);
        for n in 0..20 {
            assert_eq!(dim(&a1, &[n]), n as u128 + 1);
        }
        assert_eq!(dim(&rs(Series::A, 2), &[1, 1]), 8);
        let b3 = rs(Series::B, 3);
        assert_eq!(dim(&b3, &[1, 0, 0]), 7);
        assert_eq!(dim(&b3, &[0, 0, 1]), 8);
        assert_eq!(dim(&b3, &[0, 1, 0]), 21);
        let c3 = rs(Series::C, 3);
        assert_eq!(dim(&c3, &[1, 0, 0]), 6);
        assert_eq!(dim(&c3, &[0, 1, 0]), 14);
        assert_eq!(dim(&c3, &[2, 0, 0]), 21);
        assert_eq!(dim(&rs(Series::D, 4), &[1, 0, 0, 0]), 8);
        assert_eq!(dim(&rs(Series::D, 4), &[0, 1, 0, 0]), 28);
        let g2 = rs(Series::G, 2);
        assert_eq!(dim(&g2, &[1, 0]), 7);
        assert_eq!(dim(&g2, &[0, 1]), 14);
        let f4 = rs(Series::F, 4);
        assert_eq!(dim(&f4, &[0, 0, 0, 1]), 26);
        assert_eq!(dim(&f4, &[1, 0, 0, 0]), 52);
        assert_eq!(dim(&rs(Series::E, 6), &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(dim(&rs(Series::E, 6), &[0, 1, 0, 0, 0, 0]), 78);
        let e7 = rs(Series::E, 7);
        assert_eq!(dim(&e7, &[0, 0, 0, 0, 0, 0, 1]), 56);
        assert_eq!(dim(&e7, &[1, 0, 0, 0, 0, 0, 0]), 133);
        let e8 = rs(Series::E, 8);
        assert_eq!(dim(&e8, &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(dim(&e8, &[1, 0, 0, 0, 0, 0, 0, 0]), 3875);
    }

    #[test]
    fn a2_matches_closed_form() {
        let a2 = rs(Series::A, 2);
        for a in 0..30u64 {
            for b in 0..30u64 {
                let closed = (a + 1) * (b + 1) * (a + b + 2) / 2;
                assert_eq!(dim(&a2, &[a, b]), closed as u128);
            }
        }
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        let e8 = rs(Series::E, 8);
        let w = [3u64, 0, 1, 0, 2, 0, 0, 1];
        let big = e8.weyl_dim_big(&w);
        assert!(!big.is_zero());
        let b3 = rs(Series::B, 3);
        let w = [5u64, 2, 7];
        assert_eq!(
            BigUint::from(b3.weyl_dim_small(&w).unwrap()),
            b3.weyl_dim_big(&w)
        );
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let a2 = rs(Series::A, 2);
        assert!(matches!(
            weyl_dim(&a2, &DominantWeight(vec![1])),
            Err(Error::WeightRankMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn psi_chain_examples() {
        let a1 = rs(Series::A, 1);
        assert_eq!(
            psi_chain(&a1, &DominantWeight(vec![0])).unwrap(),
            vec![PsiStep {
                threshold: 1,
                positive_count: 1
            }]
        );
        let a2 = rs(Series::A, 2);
        assert_eq!(
            psi_chain(&a2, &DominantWeight(vec![0, 0])).unwrap(),
            vec![PsiStep {
                threshold: 1,
                positive_count: 3
            }]
        );
        // pairings (21, 1, 22): only the second simple coroot is small until e^4 > 22
        let chain = psi_chain(&a2, &DominantWeight(vec![20, 0])).unwrap();
        let sizes: Vec<(u32, usize)> = chain
            .iter()
            .map(|s| (s.threshold, s.positive_count))
            .collect();
        assert_eq!(sizes, vec![(1, 1), (2, 1), (3, 1), (4, 3)]);
    }

    #[test]
    fn psi_span_closure_pulls_in_roots() {
        // two small simple coroots force the long coroot into the span
        let a2 = rs(Series::A, 2);
        let chain = psi_chain(&a2, &DominantWeight(vec![1, 1])).unwrap();
        // pairings (2, 2, 4): all < e^2, and 2 < e already spans everything
        assert_eq!(chain[0].positive_count, 3);
    }
}
