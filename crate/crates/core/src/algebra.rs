//! Catalog of the eight symmetric pairs handled by the crate.
//!
//! Each row fixes the restricted root multiplicity `a`, the complex dimension
//! `d` of `K/L₁`, the coordinates `ρ = (ρ₁, ρ₂, ρ₃, ρ₄)` of the half sum of
//! compact positive roots in the strongly orthogonal basis, and
//! `ρ_g = 1 + d`. `so(4, d)` is a one-parameter family with `d ≥ 4`.
//!
//! Not every pair is of equal rank (`e6(6)` with `K = Sp(4)` is not), so
//! nothing here assumes it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of a catalog row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraId {
    E6_2,
    E7M5,
    E8M24,
    F4_4,
    E6_6,
    E7_7,
    E8_8,
    So4d(i64),
}

impl AlgebraId {
    /// The seven fixed rows, in table order.
    pub const NAMED: [AlgebraId; 7] = [
        AlgebraId::E6_2,
        AlgebraId::E7M5,
        AlgebraId::E8M24,
        AlgebraId::F4_4,
        AlgebraId::E6_6,
        AlgebraId::E7_7,
        AlgebraId::E8_8,
    ];
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::E6_2 => f.write_str("e6_2"),
            AlgebraId::E7M5 => f.write_str("e7_m5"),
            AlgebraId::E8M24 => f.write_str("e8_m24"),
            AlgebraId::F4_4 => f.write_str("f4_4"),
            AlgebraId::E6_6 => f.write_str("e6_6"),
            AlgebraId::E7_7 => f.write_str("e7_7"),
            AlgebraId::E8_8 => f.write_str("e8_8"),
            AlgebraId::So4d(d) => write!(f, "so4d({d})"),
        }
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    /// Accepts the fixed names and `so4d(d)`, `so4d:d`, `so4d_d` or `so4dd`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let id = match s.as_str() {
            "e6_2" => AlgebraId::E6_2,
            "e7_m5" => AlgebraId::E7M5,
            "e8_m24" => AlgebraId::E8M24,
            "f4_4" => AlgebraId::F4_4,
            "e6_6" => AlgebraId::E6_6,
            "e7_7" => AlgebraId::E7_7,
            "e8_8" => AlgebraId::E8_8,
            other => {
                let rest = other
                    .strip_prefix("so4d")
                    .ok_or_else(|| Error::NotInCatalog(s.clone()))?;
                let rest = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| rest.strip_prefix(':'))
                    .or_else(|| rest.strip_prefix('_'))
                    .unwrap_or(rest);
                let d: i64 = rest
                    .parse()
                    .map_err(|_| Error::NotInCatalog(s.clone()))?;
                AlgebraId::So4d(d)
            }
        };
        Ok(id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    QuaternionicGeneric,
    QuaternionicSO4d,
    SplitExceptional,
}

/// The dominance pattern a K-type highest weight must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `μ₁ ≥ |q|`, `μ₂ ≥ μ₃ ≥ μ₄ ≥ |q|`.
    Quaternionic,
    /// `μ₁ ≥ |q|`, `μ₂ ≥ |q|`, `μ₃ ≥ μ₄ ≥ |q|` (`so(4, d)`, `d > 4`).
    So4d,
    /// `μ_j ≥ |q|` for all `j` (`so(4, 4)`).
    So44,
    /// `μ₁ ≥ μ₂ ≥ μ₃ ≥ μ₄ ≥ |q|`.
    Split,
}

/// One catalog row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraData {
    pub id: AlgebraId,
    pub case_tag: CaseTag,
    pub a: i64,
    pub d: i64,
    pub rho: [i64; 4],
    pub rho_g: i64,
}

impl AlgebraData {
    pub fn name(&self) -> String {
        self.id.to_string()
    }

    pub fn rho_sum(&self) -> i64 {
        self.rho.iter().sum()
    }

    pub fn max_rho(&self) -> i64 {
        self.rho.iter().copied().max().unwrap_or(0)
    }

    pub fn dominance(&self) -> Dominance {
        match (self.case_tag, self.id) {
            (CaseTag::QuaternionicGeneric, _) => Dominance::Quaternionic,
            (CaseTag::SplitExceptional, _) => Dominance::Split,
            (CaseTag::QuaternionicSO4d, AlgebraId::So4d(4)) => Dominance::So44,
            (CaseTag::QuaternionicSO4d, _) => Dominance::So4d,
        }
    }

    /// Algebras carrying the conformally invariant operator Ω:
    /// `e6(2)`, `e7(-5)`, `e8(-24)` and `so(4, d)` with `d` even.
    pub fn has_omega(&self) -> bool {
        match self.id {
            AlgebraId::E6_2 | AlgebraId::E7M5 | AlgebraId::E8M24 => true,
            AlgebraId::So4d(d) => d % 2 == 0,
            _ => false,
        }
    }
}

impl fmt::Display for AlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.id.fmt(f)
    }
}

fn quaternionic(id: AlgebraId, a: i64, d: i64) -> AlgebraData {
    AlgebraData {
        id,
        case_tag: CaseTag::QuaternionicGeneric,
        a,
        d,
        rho: [1, 1 + 2 * a, 1 + a, 1],
        rho_g: 1 + d,
    }
}

fn split(id: AlgebraId, a: i64, d: i64) -> AlgebraData {
    AlgebraData {
        id,
        case_tag: CaseTag::SplitExceptional,
        a,
        d,
        rho: [1 + 3 * a, 1 + 2 * a, 1 + a, 1],
        rho_g: 1 + d,
    }
}

/// Catalog row for `id`. `(a, d)` are the tabulated values; `ρ` follows the
/// case-specific formula, and the consistency `d = Σρ_j` is checked by
/// [`validate_catalog`], not assumed.
pub fn lookup(id: AlgebraId) -> Result<AlgebraData> {
    let data = match id {
        AlgebraId::E6_2 => quaternionic(id, 2, 10),
        AlgebraId::E7M5 => quaternionic(id, 4, 16),
        AlgebraId::E8M24 => quaternionic(id, 8, 28),
        AlgebraId::F4_4 => quaternionic(id, 1, 7),
        AlgebraId::E6_6 => split(id, 1, 10),
        AlgebraId::E7_7 => split(id, 2, 16),
        AlgebraId::E8_8 => split(id, 4, 28),
        AlgebraId::So4d(d) => {
            if d < 4 {
                return Err(Error::InvalidParameter(format!(
                    "so4d requires d >= 4, got {d}"
                )));
            }
            AlgebraData {
                id,
                case_tag: CaseTag::QuaternionicSO4d,
                a: d - 4,
                d,
                rho: [1, 1, d - 3, 1],
                rho_g: 1 + d,
            }
        }
    };
    Ok(data)
}

/// Parse and look up in one step.
pub fn lookup_name(name: &str) -> Result<AlgebraData> {
    lookup(name.parse()?)
}

/// The seven fixed rows.
pub fn named_catalog() -> Vec<AlgebraData> {
    AlgebraId::NAMED
        .iter()
        .map(|&id| lookup(id).expect("named rows are valid"))
        .collect()
}

/// The seven fixed rows followed by `so(4, d)` for `d` in `so4d_range`.
pub fn catalog_with_so4d(so4d_range: std::ops::RangeInclusive<i64>) -> Vec<AlgebraData> {
    let mut rows = named_catalog();
    rows.extend(
        so4d_range.map(|d| lookup(AlgebraId::So4d(d)).expect("d >= 4 checked by caller")),
    );
    rows
}

/// One identity checked by [`validate_catalog`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCheck {
    pub algebra: String,
    pub rho: [i64; 4],
    pub rho_sum: i64,
    pub d: i64,
    pub rho_g: i64,
    pub dimension_identity: bool,
    pub rho_g_identity: bool,
    pub shape_identity: bool,
}

impl CatalogCheck {
    pub fn ok(&self) -> bool {
        self.dimension_identity && self.rho_g_identity && self.shape_identity
    }
}

/// Check `d = Σρ_j`, `ρ_g = 1 + d` and the case shape (`ρ₁ = ρ₄ = 1` for the
/// quaternionic rows; strictly decreasing with common difference `a` for the
/// split rows) on the named rows and `so(4, d)`, `d = 4..=40`.
pub fn validate_catalog() -> Vec<CatalogCheck> {
    catalog_with_so4d(4..=40)
        .into_iter()
        .map(|alg| {
            let rho_sum = alg.rho_sum();
            let [r1, r2, r3, r4] = alg.rho;
            let shape_identity = match alg.case_tag {
                CaseTag::QuaternionicGeneric | CaseTag::QuaternionicSO4d => r1 == 1 && r4 == 1,
                CaseTag::SplitExceptional => {
                    r4 == 1 && r3 - r4 == alg.a && r2 - r3 == alg.a && r1 - r2 == alg.a && alg.a > 0
                }
            };
            CatalogCheck {
                algebra: alg.name(),
                rho: alg.rho,
                rho_sum,
                d: alg.d,
                rho_g: alg.rho_g,
                dimension_identity: rho_sum == alg.d,
                rho_g_identity: alg.rho_g - 1 - rho_sum == 0,
                shape_identity,
            }
        })
        .collect()
}
