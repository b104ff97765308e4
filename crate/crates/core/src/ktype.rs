//! K-type parameters `(μ; l, p)` and the lattice they live on.
//!
//! `μ = (μ₁, μ₂, μ₃, μ₄)` is the highest weight `½ Σ μ_j β_j`; `l` and `p`
//! are the exponents of the left and right `L₁`-characters. A pair `(μ, q)`
//! is admissible when `μ` satisfies the case-dependent dominance pattern
//! with `|q|` as the floor and all `μ_j ≡ q (mod 2)`. A triple is admissible
//! when both `(μ, l)` and `(μ, p)` are.
//!
//! Three families are tracked:
//! * `Raw`: all of `L²(K/L₀)`, any sign of `p`;
//! * `Even`: the `w₀`-symmetrised functions, `p ≥ 0`;
//! * `Odd`: the `w₀`-antisymmetrised functions, `p > 0` (they vanish at `p = 0`).
//!
//! Canonical order is lexicographic on `(Σμ_j, μ₁, μ₂, μ₃, μ₄, l, p)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, Dominance};
use crate::error::{Error, Result};
use crate::exec::Execution;

pub type Weight = [i64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Raw,
    Even,
    Odd,
}

impl Family {
    /// Whether `p` is in the family's range (ignoring admissibility).
    pub fn allows_p(self, p: i64) -> bool {
        match self {
            Family::Raw => true,
            Family::Even => p >= 0,
            Family::Odd => p > 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Raw => "raw",
            Family::Even => "even",
            Family::Odd => "odd",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "raw" => Ok(Family::Raw),
            "even" => Ok(Family::Even),
            "odd" => Ok(Family::Odd),
            other => Err(Error::Parse(format!(
                "unknown family {other:?}; expected even, odd or raw"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KType {
    pub mu: Weight,
    pub l: i64,
    pub p: i64,
    pub family: Family,
}

impl KType {
    pub fn new(mu: Weight, l: i64, p: i64, family: Family) -> Self {
        KType { mu, l, p, family }
    }

    /// `μ₁ + μ₂ + μ₃ + μ₄`.
    pub fn degree(&self) -> i64 {
        degree(&self.mu)
    }

    fn sort_key(&self) -> (i64, Weight, i64, i64, Family) {
        (self.degree(), self.mu, self.l, self.p, self.family)
    }

    pub fn is_admissible(&self, alg: &AlgebraData) -> bool {
        self.family.allows_p(self.p)
            && is_admissible(alg, &self.mu, self.l)
            && is_admissible(alg, &self.mu, self.p)
    }
}

impl Ord for KType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for KType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.mu;
        write!(f, "({a},{b},{c},{d};{},{})", self.l, self.p)
    }
}

pub fn degree(mu: &Weight) -> i64 {
    mu.iter().sum()
}

/// Largest `|q|` for which `(μ, q)` can be admissible, or `None` when the
/// dominance chain or the common parity of `μ` already fails.
///
/// When this returns `Some(m)`, the admissible `q` are exactly
/// `q ≡ m (mod 2)`, `|q| ≤ m`.
pub fn dominance_bound(alg: &AlgebraData, mu: &Weight) -> Option<i64> {
    let [m1, m2, m3, m4] = *mu;
    let parity = m1.rem_euclid(2);
    if mu.iter().any(|m| m.rem_euclid(2) != parity) {
        return None;
    }
    let floor = match alg.dominance() {
        Dominance::Quaternionic => {
            if !(m2 >= m3 && m3 >= m4) {
                return None;
            }
            m1.min(m4)
        }
        Dominance::So4d => {
            if m3 < m4 {
                return None;
            }
            m1.min(m2).min(m4)
        }
        Dominance::So44 => m1.min(m2).min(m3).min(m4),
        Dominance::Split => {
            if !(m1 >= m2 && m2 >= m3 && m3 >= m4) {
                return None;
            }
            m4
        }
    };
    (floor >= 0).then_some(floor)
}

/// Admissibility of `(μ; q)` for the algebra's case.
pub fn is_admissible(alg: &AlgebraData, mu: &Weight, q: i64) -> bool {
    match dominance_bound(alg, mu) {
        Some(m) => q.abs() <= m && (q - m).rem_euclid(2) == 0,
        None => false,
    }
}

/// The `p` values of `family` with `(μ; p)` admissible, ascending.
pub fn p_values(alg: &AlgebraData, mu: &Weight, family: Family) -> Vec<i64> {
    match dominance_bound(alg, mu) {
        Some(m) => (-m..=m)
            .step_by(2)
            .filter(|&p| family.allows_p(p))
            .collect(),
        None => Vec::new(),
    }
}

/// All `l` with `(μ; l)` admissible, ascending.
pub fn l_values(alg: &AlgebraData, mu: &Weight) -> Vec<i64> {
    p_values(alg, mu, Family::Raw)
}

/// Number of `p` in the family's range with `(μ; p)` admissible.
pub fn p_multiplicity(alg: &AlgebraData, mu: &Weight, family: Family) -> i64 {
    match dominance_bound(alg, mu) {
        None => 0,
        Some(m) => match family {
            Family::Raw => m + 1,
            Family::Even => m / 2 + 1,
            Family::Odd => (m + 1) / 2,
        },
    }
}

/// All nonnegative weights of total degree `≤ max_degree`, in canonical order.
pub fn weights_up_to(max_degree: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for deg in 0..=max_degree.max(-1) {
        for m1 in 0..=deg {
            for m2 in 0..=deg - m1 {
                for m3 in 0..=deg - m1 - m2 {
                    out.push([m1, m2, m3, deg - m1 - m2 - m3]);
                }
            }
        }
    }
    out
}

/// Weights whose coordinates share one parity, degree `≤ max_degree`, in
/// canonical order. Only these can be admissible.
fn uniform_parity_weights(max_degree: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for r in 0..2 {
        let budget = (max_degree - 4 * r).div_euclid(2);
        for k1 in 0..=budget {
            for k2 in 0..=budget - k1 {
                for k3 in 0..=budget - k1 - k2 {
                    for k4 in 0..=budget - k1 - k2 - k3 {
                        out.push([r + 2 * k1, r + 2 * k2, r + 2 * k3, r + 2 * k4]);
                    }
                }
            }
        }
    }
    out.sort_by_key(|mu| (degree(mu), *mu));
    out
}

/// Admissible weights (some admissible `p` in `family`) of degree `≤ max_degree`,
/// in canonical order.
pub fn admissible_weights(alg: &AlgebraData, max_degree: i64, family: Family) -> Vec<Weight> {
    uniform_parity_weights(max_degree)
        .into_iter()
        .filter(|mu| p_multiplicity(alg, mu, family) > 0)
        .collect()
}

/// Every admissible K-type of `family` with `Σμ_j ≤ max_degree`, in canonical order.
pub fn enumerate(alg: &AlgebraData, max_degree: i64, family: Family) -> Vec<KType> {
    enumerate_with(Execution::default(), alg, max_degree, family)
}

pub fn enumerate_with(
    exec: Execution,
    alg: &AlgebraData,
    max_degree: i64,
    family: Family,
) -> Vec<KType> {
    let weights = admissible_weights(alg, max_degree, family);
    exec.flat_map(&weights, |mu| ktypes_at(alg, mu, family))
}

/// Admissible K-types of `family` with highest weight `μ`, ordered by `(l, p)`.
pub fn ktypes_at(alg: &AlgebraData, mu: &Weight, family: Family) -> Vec<KType> {
    let ps = p_values(alg, mu, family);
    if ps.is_empty() {
        return Vec::new();
    }
    let ls = l_values(alg, mu);
    let mut out = Vec::with_capacity(ls.len() * ps.len());
    for &l in &ls {
        for &p in &ps {
            out.push(KType::new(*mu, l, p, family));
        }
    }
    out
}
