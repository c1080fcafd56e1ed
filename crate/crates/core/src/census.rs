//! Degree censuses: the multiset `n ↦ r_n` of irreducible degrees, complete
//! up to a cap, with cumulative counts `R_n`.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeCensus {
    entries: BTreeMap<u128, u64>,
    cap: u128,
}

/// One row of the exported census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub degree: u128,
    pub multiplicity: u64,
    pub cumulative: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDocument {
    pub cap: u128,
    pub total: u64,
    pub entries: Vec<CensusRow>,
}

impl DegreeCensus {
    /// Empty census complete up to `cap`.
    pub fn new(cap: u128) -> Self {
        DegreeCensus {
            entries: BTreeMap::new(),
            cap,
        }
    }

    /// Census of a finite list of degrees; complete up to its largest degree.
    pub fn from_degrees<I: IntoIterator<Item = u128>>(degrees: I) -> Self {
        let mut c = DegreeCensus::new(0);
        for d in degrees {
            c.cap = c.cap.max(d);
            c.add(d, 1);
        }
        c
    }

    /// Adds `mult` copies of `degree`. Zero multiplicities are ignored.
    pub fn add(&mut self, degree: u128, mult: u64) {
        assert!(degree >= 1, "degrees are positive");
        assert!(degree <= self.cap, "degree {degree} above cap {}", self.cap);
        if mult > 0 {
            *self.entries.entry(degree).or_insert(0) += mult;
        }
    }

    /// Associative, order-independent merge. The result is complete up to
    /// the smaller of the two caps, so entries above it are dropped.
    pub fn merge(&self, other: &DegreeCensus) -> DegreeCensus {
        let cap = self.cap.min(other.cap);
        let mut out = DegreeCensus::new(cap);
        for (&d, &m) in self.entries.iter().chain(other.entries.iter()) {
            if d <= cap {
                out.add(d, m);
            }
        }
        out
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn entries(&self) -> &BTreeMap<u128, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, degree: u128) -> u64 {
        self.entries.get(&degree).copied().unwrap_or(0)
    }

    /// `Σ r_n`, the number of irreducible representations in the census.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn max_degree(&self) -> Option<u128> {
        self.entries.keys().next_back().copied()
    }

    /// `Σ r_n n²`, exact.
    pub fn sum_of_squares(&self) -> BigUint {
        self.entries.iter().fold(BigUint::zero(), |acc, (&d, &m)| {
            let d = BigUint::from(d);
            acc + &d * &d * BigUint::from(m)
        })
    }

    pub fn cumulative(&self) -> Cumulative {
        let mut acc = 0u64;
        let steps = self
            .entries
            .iter()
            .map(|(&d, &m)| {
                acc += m;
                (d, acc)
            })
            .collect();
        Cumulative { steps }
    }

    pub fn rows(&self) -> Vec<CensusRow> {
        let mut acc = 0;
        self.entries
            .iter()
            .map(|(&degree, &multiplicity)| {
                acc += multiplicity;
                CensusRow {
                    degree,
                    multiplicity,
                    cumulative: acc,
                }
            })
            .collect()
    }

    pub fn to_document(&self) -> CensusDocument {
        CensusDocument {
            cap: self.cap,
            total: self.total(),
            entries: self.rows(),
        }
    }

    pub fn from_document(doc: &CensusDocument) -> Result<Self> {
        let mut c = DegreeCensus::new(doc.cap);
        let mut acc = 0;
        for row in &doc.entries {
            if row.degree == 0 || row.degree > doc.cap || row.multiplicity == 0 {
                return Err(Error::InvalidParameter(format!(
                    "census row {row:?} violates 1 <= degree <= cap, multiplicity >= 1"
                )));
            }
            acc += row.multiplicity;
            if acc != row.cumulative {
                return Err(Error::InvalidParameter(format!(
                    "census row for degree {} has cumulative {} but running total is {acc}",
                    row.degree, row.cumulative
                )));
            }
            c.add(row.degree, row.multiplicity);
        }
        Ok(c)
    }

    /// CSV with header `degree,multiplicity,cumulative`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["degree", "multiplicity", "cumulative"])?;
        for row in self.rows() {
            wr.write_record([
                row.degree.to_string(),
                row.multiplicity.to_string(),
                row.cumulative.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(r: R, cap: u128) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut entries = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<u128> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("bad census CSV record {rec:?}"))
                    })
            };
            entries.push(CensusRow {
                degree: parse(0)?,
                multiplicity: parse(1)? as u64,
                cumulative: parse(2)? as u64,
            });
        }
        let total = entries.last().map_or(0, |r| r.cumulative);
        DegreeCensus::from_document(&CensusDocument {
            cap,
            total,
            entries,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CensusDocument = serde_json::from_str(s)?;
        DegreeCensus::from_document(&doc)
    }
}

/// Step function `n ↦ R_n`.
#[derive(Debug, Clone)]
pub struct Cumulative {
    steps: Vec<(u128, u64)>,
}

impl Cumulative {
    /// `R_n = Σ_{d ≤ n} r_d`.
    pub fn at(&self, n: u128) -> u64 {
        let idx = self.steps.partition_point(|&(d, _)| d <= n);
        if idx == 0 {
            0
        } else {
            self.steps[idx - 1].1
        }
    }

    /// `(degree, R_degree)` at every jump.
    pub fn steps(&self) -> &[(u128, u64)] {
        &self.steps
    }
}

/// `Σ r_n n^{-s}` over the census, in ascending degree order.
pub fn zeta_partial(census: &DegreeCensus, s: f64) -> f64 {
    census
        .entries
        .iter()
        .map(|(&d, &m)| m as f64 * (d as f64).powf(-s))
        .sum()
}

/// `Σ r_n n^{-s}` as an exact rational, for integer `s ≥ 0`.
pub fn zeta_partial_exact(census: &DegreeCensus, s: u32) -> BigRational {
    census
        .entries
        .iter()
        .fold(BigRational::zero(), |acc, (&d, &m)| {
            let den = num_traits::pow(BigInt::from(d), s as usize);
            acc + BigRational::new(BigInt::from(m), den)
        })
}

/// `R_n` for one `n`; convenience for callers holding only the census.
pub fn cumulative_at(census: &DegreeCensus, n: u128) -> u64 {
    census.entries.range(..=n).map(|(_, &m)| m).sum()
}

/// `f64` view of an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_term_sum() {
        let c = DegreeCensus::from_degrees([1, 2, 3]);
        assert!((zeta_partial(&c, 2.0) - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-15);
        assert_eq!(
            zeta_partial_exact(&c, 2),
            BigRational::new(49.into(), 36.into())
        );
        assert_eq!(c.total(), 3);
        assert_eq!(c.sum_of_squares(), BigUint::from(14u32));
    }

    #[test]
    fn cumulative_is_a_step_function() {
        let c = DegreeCensus::from_degrees([1, 3, 3, 6, 6, 8, 10, 10]);
        let cum = c.cumulative();
        let expect = [0, 1, 1, 3, 3, 3, 5, 5, 6, 6, 8, 8, 8];
        for (n, &r) in expect.iter().enumerate() {
            assert_eq!(cum.at(n as u128), r, "R_{n}");
            assert_eq!(cumulative_at(&c, n as u128), r);
        }
    }

    #[test]
    fn csv_has_fixed_header() {
        let c = DegreeCensus::from_degrees([1, 3, 3]);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "degree,multiplicity,cumulative\n1,1,1\n3,2,3\n"
        );
    }

    #[test]
    fn malformed_document_is_rejected() {
        let doc = CensusDocument {
            cap: 5,
            total: 2,
            entries: vec![CensusRow {
                degree: 1,
                multiplicity: 1,
                cumulative: 2,
            }],
        };
        assert!(DegreeCensus::from_document(&doc).is_err());
        let doc = CensusDocument {
            cap: 5,
            total: 1,
            entries: vec![CensusRow {
                degree: 7,
                multiplicity: 1,
                cumulative: 1,
            }],
        };
        assert!(DegreeCensus::from_document(&doc).is_err());
    }

    fn arb_census() -> impl Strategy<Value = DegreeCensus> {
        prop::collection::vec((1u128..500, 1u64..20), 0..40).prop_map(|rows| {
            let mut c = DegreeCensus::new(500);
            for (d, m) in rows {
                c.add(d, m);
            }
            c
        })
    }

    proptest! {
        #[test]
        fn csv_and_json_round_trip(c in arb_census()) {
            let mut buf = Vec::new();
            c.write_csv(&mut buf).unwrap();
            prop_assert_eq!(&DegreeCensus::read_csv(&buf[..], c.cap()).unwrap(), &c);
            prop_assert_eq!(&DegreeCensus::from_json(&c.to_json().unwrap()).unwrap(), &c);
        }

        #[test]
        fn merge_is_associative_and_commutative(a in arb_census(), b in arb_census(), c in arb_census()) {
            prop_assert_eq!(a.merge(&b), b.merge(&a));
            prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
        }
    }
}
