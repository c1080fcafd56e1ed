//! Brute-force oracle: SL₂ over the finite quotient rings `ℤ/pᵏ` and
//! `𝔽ₚ[t]/(tᵏ)`, enumerated completely, with conjugacy classes counted by
//! orbit search.
//!
//! Ring elements are residues in `0..pᵏ`. For the characteristic-`p` ring
//! the base-`p` digits of a residue are the coefficients of `1, t, …, t^{k−1}`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::prime_power;

/// Default element budget for [`build_group`].
pub const DEFAULT_GROUP_BUDGET: u64 = 200_000;
/// Groups up to this order conjugate by every element; larger ones by
/// generator closure.
pub const FULL_CONJUGATION_LIMIT: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `ℤ/pᵏ`
    Char0,
    /// `𝔽ₚ[t]/(tᵏ)`
    CharP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientRing {
    flavor: Flavor,
    p: u32,
    k: u32,
    size: u32,
}

impl QuotientRing {
    pub fn new(flavor: Flavor, p: u32, k: u32) -> Result<Self> {
        if p.is_multiple_of(2) || prime_power(p as u64) != Some((p as u64, 1)) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let size = (p as u64)
            .checked_pow(k)
            .filter(|&s| s < (1 << 31))
            .ok_or_else(|| {
                Error::InvalidParameter(format!("{p}^{k} does not fit the residue encoding"))
            })?;
        Ok(QuotientRing {
            flavor,
            p,
            k,
            size: size as u32,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, `pᵏ`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Residue field size; `p` for both flavours.
    pub fn residue_field_size(&self) -> u32 {
        self.p
    }

    /// `|SL₂| = p^{3(k−1)}·p(p²−1)`.
    pub fn sl2_order(&self) -> u64 {
        let p = self.p as u64;
        p.pow(3 * (self.k - 1)) * p * (p * p - 1)
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = x;
        for _ in 0..self.k {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn encode_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self.flavor {
            Flavor::Char0 => ((a as u64 + b as u64) % self.size as u64) as u32,
            Flavor::CharP => {
                let (x, y) = (self.digits(a), self.digits(b));
                let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
                self.encode_digits(&s)
            }
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self.flavor {
            Flavor::Char0 => (self.size - a) % self.size,
            Flavor::CharP => {
                let s: Vec<u32> = self
                    .digits(a)
                    .iter()
                    .map(|&u| (self.p - u) % self.p)
                    .collect();
                self.encode_digits(&s)
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.flavor {
            Flavor::Char0 => ((a as u64 * b as u64) % self.size as u64) as u32,
            Flavor::CharP => {
                let (x, y) = (self.digits(a), self.digits(b));
                let k = self.k as usize;
                let mut out = vec![0u64; k];
                for i in 0..k {
                    for j in 0..k - i {
                        out[i + j] += x[i] as u64 * y[j] as u64;
                    }
                }
                let d: Vec<u32> = out.iter().map(|&c| (c % self.p as u64) as u32).collect();
                self.encode_digits(&d)
            }
        }
    }
}

/// Precomputed ring arithmetic, so group operations are table lookups.
#[derive(Debug, Clone)]
struct RingTables {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

impl RingTables {
    fn new(ring: &QuotientRing) -> Self {
        let n = ring.size as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ring.add(a as u32, b as u32);
                mul[a * n + b] = ring.mul(a as u32, b as u32);
            }
        }
        let neg = (0..n as u32).map(|a| ring.neg(a)).collect();
        RingTables { n, add, mul, neg }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` as residues; lexicographic order on
/// `(a, b, c, d)` is the canonical order.
pub type Mat = [u32; 4];

fn mat_mul(t: &RingTables, x: &Mat, y: &Mat) -> Mat {
    [
        t.add(t.mul(x[0], y[0]), t.mul(x[1], y[2])),
        t.add(t.mul(x[0], y[1]), t.mul(x[1], y[3])),
        t.add(t.mul(x[2], y[0]), t.mul(x[3], y[2])),
        t.add(t.mul(x[2], y[1]), t.mul(x[3], y[3])),
    ]
}

/// Inverse of a determinant-one matrix.
fn mat_inv(t: &RingTables, x: &Mat) -> Mat {
    [x[3], t.neg[x[1] as usize], t.neg[x[2] as usize], x[0]]
}

#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    ring: QuotientRing,
    tables: RingTables,
    elements: Vec<Mat>,
    generators: Vec<Mat>,
}

/// Enumerates `SL₂(ring)` by breadth-first closure from the elementary
/// matrices, with the default element budget. Over `𝔽ₚ[t]/(tᵏ)` the entries
/// `1` only reach `SL₂(𝔽ₚ)`, so the elementary matrices with entry `t` join
/// the generating set.
pub fn build_group(ring: QuotientRing) -> Result<FiniteMatrixGroup> {
    build_group_with_budget(ring, DEFAULT_GROUP_BUDGET)
}

pub fn build_group_with_budget(ring: QuotientRing, budget: u64) -> Result<FiniteMatrixGroup> {
    let predicted = ring.sl2_order();
    if predicted > budget {
        return Err(Error::GroupTooLarge { predicted, budget });
    }
    let tables = RingTables::new(&ring);
    let mut generators: Vec<Mat> = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    if ring.flavor == Flavor::CharP && ring.k > 1 {
        let t = ring.p;
        generators.extend([[1, t, 0, 1], [1, 0, t, 1]]);
    }
    let identity: Mat = [1, 0, 0, 1];
    let mut seen: HashSet<Mat> = HashSet::with_capacity(predicted as usize);
    let mut elements = Vec::with_capacity(predicted as usize);
    let mut queue = VecDeque::from([identity]);
    seen.insert(identity);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = mat_mul(&tables, &x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
        elements.push(x);
    }
    if elements.len() as u64 != predicted {
        return Err(Error::Invariant(format!(
            "closure of the elementary matrices has {} elements, expected {predicted}",
            elements.len()
        )));
    }
    Ok(FiniteMatrixGroup {
        ring,
        tables,
        elements,
        generators,
    })
}

/// Conjugacy class with its lexicographically least member as representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: Mat,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCensus {
    /// Sorted by representative.
    pub classes: Vec<ConjugacyClass>,
}

impl ClassCensus {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// Multiset of class sizes, `size ↦ how many classes`.
    pub fn size_multiset(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.size).or_insert(0) += 1;
        }
        m
    }

    /// CSV with header `a,b,c,d,size`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["a", "b", "c", "d", "size"])?;
        for c in &self.classes {
            let r = c.representative;
            wr.write_record([
                r[0].to_string(),
                r[1].to_string(),
                r[2].to_string(),
                r[3].to_string(),
                c.size.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

impl FiniteMatrixGroup {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn multiply(&self, x: &Mat, y: &Mat) -> Mat {
        mat_mul(&self.tables, x, y)
    }

    pub fn inverse(&self, x: &Mat) -> Mat {
        mat_inv(&self.tables, x)
    }

    pub fn determinant(&self, x: &Mat) -> u32 {
        let t = &self.tables;
        t.add(t.mul(x[0], x[3]), t.neg[t.mul(x[1], x[2]) as usize])
    }

    /// Same group with its element list replaced by a permutation of it;
    /// used to check that class counting does not depend on ordering.
    pub fn with_element_order(&self, elements: Vec<Mat>) -> Result<Self> {
        let a: HashSet<&Mat> = self.elements.iter().collect();
        let b: HashSet<&Mat> = elements.iter().collect();
        if a != b || elements.len() != self.elements.len() {
            return Err(Error::InvalidParameter(
                "not a permutation of the group".into(),
            ));
        }
        Ok(FiniteMatrixGroup {
            elements,
            ..self.clone()
        })
    }
}

/// Partitions the group into conjugacy classes.
pub fn conjugacy_classes(g: &FiniteMatrixGroup) -> ClassCensus {
    if g.order() <= FULL_CONJUGATION_LIMIT {
        classes_by_full_conjugation(g)
    } else {
        classes_by_generator_closure(g)
    }
}

pub(crate) fn classes_by_full_conjugation(g: &FiniteMatrixGroup) -> ClassCensus {
    let conjugators: Vec<(Mat, Mat)> = g.elements.iter().map(|x| (*x, g.inverse(x))).collect();
    let mut visited: HashSet<Mat> = HashSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for x in &g.elements {
        if visited.contains(x) {
            continue;
        }
        let mut orbit: HashSet<Mat> = HashSet::new();
        for (h, h_inv) in &conjugators {
            orbit.insert(g.multiply(&g.multiply(h, x), h_inv));
        }
        let representative = *orbit.iter().min().unwrap();
        classes.push(ConjugacyClass {
            representative,
            size: orbit.len() as u64,
        });
        visited.extend(orbit);
    }
    classes.sort();
    ClassCensus { classes }
}

/// Conjugation orbits closed under the generators. Conjugation by a
/// product is a composition of generator conjugations and each generator
/// has finite order, so the closure is the full class.
pub(crate) fn classes_by_generator_closure(g: &FiniteMatrixGroup) -> ClassCensus {
    let gens: Vec<(Mat, Mat)> = g.generators.iter().map(|s| (*s, g.inverse(s))).collect();
    let mut visited: HashSet<Mat> = HashSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for x in &g.elements {
        if visited.contains(x) {
            continue;
        }
        visited.insert(*x);
        let mut queue = VecDeque::from([*x]);
        let mut representative = *x;
        let mut size = 0u64;
        while let Some(y) = queue.pop_front() {
            size += 1;
            representative = representative.min(y);
            for (s, s_inv) in &gens {
                let z = g.multiply(&g.multiply(s, &y), s_inv);
                if visited.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        classes.push(ConjugacyClass {
            representative,
            size,
        });
    }
    classes.sort();
    ClassCensus { classes }
}

/// Number of conjugacy classes of `SL₂(ring)` for each `(flavor, p, k)`.
pub fn class_count(flavor: Flavor, p: u32, k: u32) -> Result<usize> {
    let g = build_group(QuotientRing::new(flavor, p, k)?)?;
    Ok(conjugacy_classes(&g).count())
}

/// `log_q(count(k)) / k` for each available `k`, in increasing `k`; the last
/// entry is the working estimate of the growth exponent of class numbers.
pub fn gamma_estimate(counts: &BTreeMap<u32, u64>, q: u64) -> Result<Vec<f64>> {
    if counts.is_empty() {
        return Err(Error::InsufficientData("no class counts given".into()));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must be at least 2"
        )));
    }
    let lq = (q as f64).ln();
    counts
        .iter()
        .map(|(&k, &c)| {
            if k == 0 || c == 0 {
                Err(Error::InvalidParameter(format!(
                    "bad class count {c} at level {k}"
                )))
            } else {
                Ok((c as f64).ln() / lq / k as f64)
            }
        })
        .collect()
}

/// Class counts as a map `k ↦ count`, e.g. for [`gamma_estimate`].
pub fn class_counts(
    flavor: Flavor,
    p: u32,
    levels: impl IntoIterator<Item = u32>,
) -> Result<BTreeMap<u32, u64>> {
    let mut m = BTreeMap::new();
    for k in levels {
        m.insert(k, class_count(flavor, p, k)? as u64);
    }
    Ok(m)
}

/// Hash map from element to index, for callers that need random access.
pub fn index_elements(g: &FiniteMatrixGroup) -> HashMap<Mat, usize> {
    g.elements
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect()
}
