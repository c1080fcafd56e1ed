//! Lower bounds for abscissae of compact open subgroups of `p`-adic groups,
//! and an exact audit of the isotropic case analysis down to `1/15`.
//!
//! Everything here is an exact rational. The classical case formulas are
//! evaluated as written; the matrix families behind them are not built.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::census::rational_to_f64;
use crate::error::{Error, Result};
use crate::rootsys::{abscissa_rk, RootSystem, Series};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `2γ/(δ−γ)`: abscissa bound from a class-growth exponent `γ` and the
/// dimension `δ`.
pub fn rho_lower_conjclasses(gamma: f64, delta: f64) -> Result<f64> {
    if !(gamma >= 0.0 && gamma < delta) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= gamma < delta, got gamma = {gamma}, delta = {delta}"
        )));
    }
    Ok(2.0 * gamma / (delta - gamma))
}

pub fn rho_lower_conjclasses_exact(
    gamma: &BigRational,
    delta: &BigRational,
) -> Result<BigRational> {
    if gamma.is_negative() || gamma >= delta {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= gamma < delta, got gamma = {gamma}, delta = {delta}"
        )));
    }
    Ok(gamma * BigInt::from(2) / (delta - gamma))
}

/// `r/κ` of the absolute root system.
pub fn rho_lower_torus(rs: &RootSystem) -> BigRational {
    abscissa_rk(rs)
}

fn torus_of(series: Series, rank: usize) -> BigRational {
    q(rank as i64, series.positive_root_count(rank) as i64)
}

/// `⅓(⌊(m+1)/2⌋·⌊m/2⌋·d² − md + 1)`, the class-growth bound for open
/// subgroups of `SLₘ(D)` with `deg D = d`.
pub fn slm_gamma_bound(m: u64, d: u64) -> Result<BigRational> {
    if m < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 2, d >= 1, got m = {m}, d = {d}"
        )));
    }
    let (m, d) = (m as i64, d as i64);
    Ok(q((m + 1) / 2 * (m / 2) * d * d - m * d + 1, 3))
}

/// Classical isotropic forms, up to isogeny, with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum IsotropicCase {
    /// `SLₘ(D)`, `deg D = d`.
    A {
        m: u64,
        d: u64,
    },
    B {
        x: u64,
    },
    C {
        x: u64,
    },
    D {
        x: u64,
    },
    E {
        x: u64,
    },
    F {
        x: u64,
    },
}

impl IsotropicCase {
    pub fn label(&self) -> char {
        match self {
            IsotropicCase::A { .. } => 'a',
            IsotropicCase::B { .. } => 'b',
            IsotropicCase::C { .. } => 'c',
            IsotropicCase::D { .. } => 'd',
            IsotropicCase::E { .. } => 'e',
            IsotropicCase::F { .. } => 'f',
        }
    }

    pub fn params(&self) -> String {
        match *self {
            IsotropicCase::A { m, d } => format!("m={m},d={d}"),
            IsotropicCase::B { x }
            | IsotropicCase::C { x }
            | IsotropicCase::D { x }
            | IsotropicCase::E { x }
            | IsotropicCase::F { x } => format!("x={x}"),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            IsotropicCase::A { m, d } => m >= 2 && d >= 1,
            IsotropicCase::B { x }
            | IsotropicCase::C { x }
            | IsotropicCase::D { x }
            | IsotropicCase::E { x }
            | IsotropicCase::F { x } => x >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "case ({}) out of range: {}",
                self.label(),
                self.params()
            )))
        }
    }

    /// Absolute root systems at the boundary parameters. Degenerate ranks
    /// use their isomorphic type (`D₃ = A₃`, `C₁ = A₁`).
    pub fn absolute_root_systems(&self) -> Result<Vec<(Series, usize)>> {
        self.validate()?;
        let fix = |s: Series, r: usize| match (s, r) {
            (Series::D, 3) => (Series::A, 3),
            (Series::C, 1) | (Series::B, 1) => (Series::A, 1),
            other => other,
        };
        Ok(match *self {
            IsotropicCase::A { m, d } => vec![(Series::A, (m * d - 1) as usize)],
            IsotropicCase::B { x } => vec![(Series::A, (2 * x + 1) as usize)],
            IsotropicCase::C { x } => vec![
                fix(Series::D, (x + 2) as usize),
                fix(Series::B, (x + 1) as usize),
            ],
            IsotropicCase::D { x } => vec![fix(Series::C, x as usize)],
            IsotropicCase::E { x } => vec![(Series::C, (2 * x + 1) as usize)],
            IsotropicCase::F { x } => vec![(Series::D, (2 * x + 3) as usize)],
        })
    }
}

/// The case formula as a lower bound for the abscissa. Case (a) composes
/// [`slm_gamma_bound`] with [`rho_lower_conjclasses_exact`] at
/// `δ = m²d² − 1`. The other cases may be non-positive for small `x`.
pub fn isotropic_case_bound(case: IsotropicCase) -> Result<BigRational> {
    case.validate()?;
    let r = match case {
        IsotropicCase::A { m, d } => {
            let gamma = slm_gamma_bound(m, d)?;
            let delta = BigRational::from_integer(BigInt::from(m * m * d * d - 1));
            if gamma.is_negative() {
                gamma
            } else {
                rho_lower_conjclasses_exact(&gamma, &delta)?
            }
        }
        IsotropicCase::B { x } => {
            let x = x as i64;
            q(2 * x * x - 4 * x, (2 * x + 2).pow(2) - 1 - (x * x - 2 * x))
        }
        IsotropicCase::C { x } => {
            let x = x as i64;
            q(
                2 * (x * x - 3 * x),
                (2 * x + 4) * (2 * x + 3) - (x * x - 3 * x),
            )
        }
        IsotropicCase::D { x } => {
            let x = x as i64;
            q(2 * (x * x - x), 2 * x * (2 * x + 1) - (x * x - x))
        }
        IsotropicCase::E { x } => {
            let x = x as i64;
            q(
                2 * (4 * x * x + 2 * x),
                (4 * x + 2) * (4 * x + 1) - 2 * (2 * x * x + x),
            )
        }
        IsotropicCase::F { x } => {
            let x = x as i64;
            q(
                2 * (4 * x * x - 2 * x),
                (4 * x + 6) * (4 * x + 5) - 2 * (2 * x * x - x),
            )
        }
    };
    Ok(r)
}

/// `(2x² − 6x)/(3x² + 17x + 12)`, below every case (b)–(f) bound.
pub fn unified_bound(x: u64) -> BigRational {
    let x = x as i64;
    q(2 * x * x - 6 * x, 3 * x * x + 17 * x + 12)
}

/// One audited parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub case: String,
    pub params: String,
    /// Absolute root system whose torus bound is used.
    pub root_system: String,
    pub coxeter_number: u32,
    pub case_bound: Option<String>,
    pub torus_bound: String,
    pub bound: String,
    pub bound_value: f64,
    #[serde(skip)]
    exact: BigRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub x_max: u64,
    pub md_max: u64,
    pub rows: Vec<AuditRow>,
    pub global_min: String,
    pub global_min_value: f64,
    /// Rows attaining the minimum.
    pub argmin: Vec<String>,
    /// Coxeter numbers of the argmin rows.
    pub argmin_coxeter: Vec<u32>,
    pub passes: bool,
}

impl AuditReport {
    pub fn global_min_exact(&self) -> BigRational {
        self.rows
            .iter()
            .map(|r| r.exact.clone())
            .min()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Fixed-width table, one line per row, then a summary.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<5} {:<12} {:<8} {:>4} {:>22} {:>10} {:>22}",
            "case", "params", "system", "h", "case bound", "torus", "bound"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<5} {:<12} {:<8} {:>4} {:>22} {:>10} {:>22}",
                r.case,
                r.params,
                r.root_system,
                r.coxeter_number,
                r.case_bound.as_deref().unwrap_or("-"),
                r.torus_bound,
                r.bound
            );
        }
        let _ = writeln!(
            s,
            "global min: {} ({:.11e})",
            self.global_min, self.global_min_value
        );
        let _ = writeln!(s, "attained at: {}", self.argmin.join(", "));
        let _ = writeln!(
            s,
            "global min ≥ 1/15: {}",
            if self.passes { "PASS" } else { "FAIL" }
        );
        s
    }
}

fn system_name(s: Series, r: usize) -> String {
    format!("{}{}", s.letter(), r)
}

fn make_row(
    case: String,
    params: String,
    case_bound: Option<BigRational>,
    systems: &[(Series, usize)],
) -> AuditRow {
    // the weakest candidate system is the safe choice
    let (series, rank) = *systems
        .iter()
        .min_by(|a, b| torus_of(a.0, a.1).cmp(&torus_of(b.0, b.1)))
        .expect("at least one system");
    let torus = torus_of(series, rank);
    let best = match &case_bound {
        Some(c) if *c > torus => c.clone(),
        _ => torus.clone(),
    };
    AuditRow {
        case,
        params,
        root_system: system_name(series, rank),
        coxeter_number: series.coxeter_number(rank),
        case_bound: case_bound.map(|c| c.to_string()),
        torus_bound: torus.to_string(),
        bound: best.to_string(),
        bound_value: rational_to_f64(&best),
        exact: best,
    }
}

const EXCEPTIONAL: [(Series, usize); 5] = [
    (Series::G, 2),
    (Series::F, 4),
    (Series::E, 6),
    (Series::E, 7),
    (Series::E, 8),
];

/// Audits every classical case up to the caps plus the exceptional types.
/// Each row takes the larger of the case formula and the torus bound `r/κ`;
/// a row below `1/15` fails the audit.
pub fn isotropic_audit(x_max: u64, md_max: u64) -> Result<AuditReport> {
    if x_max < 5 || md_max < 6 {
        return Err(Error::InvalidParameter(format!(
            "need x_max >= 5 and md_max >= 6, got {x_max} and {md_max}"
        )));
    }
    let mut rows = Vec::new();
    for m in 2..=md_max {
        for d in 1..=md_max / m {
            let case = IsotropicCase::A { m, d };
            rows.push(make_row(
                "a".into(),
                case.params(),
                Some(isotropic_case_bound(case)?),
                &case.absolute_root_systems()?,
            ));
        }
    }
    for x in 1..=x_max {
        for case in [
            IsotropicCase::B { x },
            IsotropicCase::C { x },
            IsotropicCase::D { x },
            IsotropicCase::E { x },
            IsotropicCase::F { x },
        ] {
            rows.push(make_row(
                case.label().to_string(),
                case.params(),
                Some(isotropic_case_bound(case)?),
                &case.absolute_root_systems()?,
            ));
        }
    }
    for (s, r) in EXCEPTIONAL {
        rows.push(make_row("exc".into(), system_name(s, r), None, &[(s, r)]));
    }

    let threshold = q(1, 15);
    if let Some(bad) = rows.iter().find(|r| r.exact < threshold) {
        return Err(Error::AuditFailure {
            label: format!("({}) {} via {}", bad.case, bad.params, bad.root_system),
            bound: bad.bound.clone(),
        });
    }
    let min = rows.iter().map(|r| r.exact.clone()).min().expect("rows");
    let argmin_rows: Vec<&AuditRow> = rows.iter().filter(|r| r.exact == min).collect();
    Ok(AuditReport {
        x_max,
        md_max,
        global_min: min.to_string(),
        global_min_value: rational_to_f64(&min),
        argmin: argmin_rows
            .iter()
            .map(|r| format!("({}) {}", r.case, r.params))
            .collect(),
        argmin_coxeter: argmin_rows.iter().map(|r| r.coxeter_number).collect(),
        passes: min >= threshold,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    #[test]
    fn conjclass_transform() {
        assert_eq!(rho_lower_conjclasses(1.0, 3.0).unwrap(), 1.0);
        assert_eq!(rho_lower_conjclasses(0.0, 3.0).unwrap(), 0.0);
        assert!(rho_lower_conjclasses(3.0, 3.0).is_err());
        assert!(rho_lower_conjclasses(-0.5, 3.0).is_err());
        let g = slm_gamma_bound(6, 1).unwrap();
        let v = rho_lower_conjclasses_exact(&g, &q(35, 1)).unwrap();
        assert_eq!(v, q(8, 101));
        assert!((rational_to_f64(&v) - 0.0792).abs() < 1e-4);
    }

    #[test]
    fn torus_values() {
        let t = |s, r| rho_lower_torus(&build_root_system(s, r).unwrap());
        assert_eq!(t(Series::A, 1), q(1, 1));
        assert_eq!(t(Series::C, 2), q(1, 2));
        assert_eq!(t(Series::E, 8), q(1, 15));
    }

    #[test]
    fn slm_gamma_examples() {
        assert_eq!(slm_gamma_bound(6, 1).unwrap(), q(4, 3));
        assert_eq!(slm_gamma_bound(2, 1).unwrap(), q(0, 1));
        assert_eq!(slm_gamma_bound(3, 2).unwrap(), q(1, 1));
        assert!(slm_gamma_bound(1, 1).is_err());
    }

    #[test]
    fn case_examples() {
        assert_eq!(
            isotropic_case_bound(IsotropicCase::D { x: 5 }).unwrap(),
            q(4, 9)
        );
        assert_eq!(unified_bound(5), q(5, 43));
        assert_eq!(
            isotropic_case_bound(IsotropicCase::A { m: 6, d: 1 }).unwrap(),
            q(8, 101)
        );
        assert!(isotropic_case_bound(IsotropicCase::B { x: 0 }).is_err());
        assert!(isotropic_case_bound(IsotropicCase::A { m: 1, d: 3 }).is_err());
    }

    #[test]
    fn case_c_is_the_unified_bound() {
        for x in 1..200 {
            assert_eq!(
                isotropic_case_bound(IsotropicCase::C { x }).unwrap(),
                unified_bound(x)
            );
        }
    }

    #[test]
    fn every_case_dominates_the_unified_bound() {
        for x in 1..200 {
            for case in [
                IsotropicCase::B { x },
                IsotropicCase::D { x },
                IsotropicCase::E { x },
                IsotropicCase::F { x },
            ] {
                assert!(
                    isotropic_case_bound(case).unwrap() >= unified_bound(x),
                    "{case:?}"
                );
            }
        }
    }

    #[test]
    fn degenerate_ranks_are_renamed() {
        assert_eq!(
            IsotropicCase::C { x: 1 }.absolute_root_systems().unwrap(),
            vec![(Series::A, 3), (Series::B, 2)]
        );
        assert_eq!(
            IsotropicCase::D { x: 1 }.absolute_root_systems().unwrap(),
            vec![(Series::A, 1)]
        );
        for x in 1..60 {
            for case in [
                IsotropicCase::B { x },
                IsotropicCase::C { x },
                IsotropicCase::D { x },
                IsotropicCase::E { x },
                IsotropicCase::F { x },
            ] {
                for (s, r) in case.absolute_root_systems().unwrap() {
                    assert!(s.valid_rank(r), "{case:?} -> {s}{r}");
                }
            }
        }
    }

    #[test]
    fn torus_shortcut_matches_built_systems() {
        for (s, r) in [
            (Series::A, 5),
            (Series::B, 4),
            (Series::C, 3),
            (Series::D, 5),
            (Series::E, 7),
        ] {
            assert_eq!(
                torus_of(s, r),
                rho_lower_torus(&build_root_system(s, r).unwrap())
            );
        }
    }

    #[test]
    fn exceptional_minimum_is_e8() {
        let vals: Vec<BigRational> = EXCEPTIONAL.iter().map(|&(s, r)| torus_of(s, r)).collect();
        assert_eq!(vals, vec![q(1, 3), q(1, 6), q(1, 6), q(1, 9), q(1, 15)]);
    }

    #[test]
    fn small_audit() {
        let rep = isotropic_audit(5, 6).unwrap();
        assert_eq!(rep.global_min_exact(), q(1, 15));
        assert_eq!(rep.argmin_coxeter, vec![30]);
        assert!(rep.passes);
        assert!(rep.to_table().contains("global min ≥ 1/15: PASS"));
        assert!(isotropic_audit(4, 6).is_err());
    }
}
