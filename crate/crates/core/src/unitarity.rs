//! Complementary-series bound from the sign pattern of transition factors.
//!
//! For an edge `e` and its reverse, the invariant Hermitian form can be
//! positive only if the two linear functions
//!
//! ```text
//! L₁ = ν + Σ(μ_j+ρ_j)σ_j − Σρ_j − 2pδ₂
//! L₂ = −(ν − Σ(μ_j+σ_j+ρ_j)σ_j − Σρ_j + 2(p+δ₂)δ₂)
//! ```
//!
//! have the same sign. Writing `ν = ρ_g + ν̃` and `t = 1 + Σ(μ_j+ρ_j)σ_j − 2pδ₂`
//! gives `L₁ = t + ν̃` and `L₂ = t − ν̃`, so the pair has the same sign iff
//! `|ν̃| < |t|`, and the bound is the minimum of `|t|` over all edges.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, AlgebraId};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::exec::Execution;
use crate::ktype::{self, Family, KType, Weight};
use crate::transition::{self, all_sigmas, Edge, Shift};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignPair {
    SameSign,
    OppositeSign,
    Degenerate,
}

/// `(L₁, L₂)` at `ν` for the edge, each evaluated from its own formula.
pub fn linear_pair(alg: &AlgebraData, nu: &Rational, e: &Edge) -> (Rational, Rational) {
    let mu = &e.source.mu;
    let s = &e.shift;
    let p = e.source.p;
    let rho_sum = alg.rho_sum();
    let forward: i64 = (0..4).map(|j| (mu[j] + alg.rho[j]) * s.sigma[j]).sum();
    let l1 = nu + (forward - rho_sum - 2 * p * s.delta2);
    let backward: i64 = (0..4)
        .map(|j| (mu[j] + s.sigma[j] + alg.rho[j]) * s.sigma[j])
        .sum();
    let l2 = -(nu + (-backward - rho_sum + 2 * (p + s.delta2) * s.delta2));
    (l1, l2)
}

pub fn sign_pair(alg: &AlgebraData, nu: &Rational, e: &Edge) -> SignPair {
    let (l1, l2) = linear_pair(alg, nu, e);
    match l1.signum() * l2.signum() {
        0 => SignPair::Degenerate,
        1 => SignPair::SameSign,
        _ => SignPair::OppositeSign,
    }
}

/// `t = 1 + Σ(μ_j+ρ_j)σ_j − 2pδ₂ = ρ_g + c`.
pub fn shifted_constant(alg: &AlgebraData, mu: &Weight, p: i64, shift: &Shift) -> i64 {
    alg.rho_g + transition::affine_constant(alg, mu, p, shift)
}

/// Minimising edge of the complementary-series scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub edge: Edge,
    /// Signed `t`; its absolute value is the minimum.
    pub t: i64,
    /// The `ν` at which this edge's factor vanishes, `ρ_g − t`.
    pub zero_at_nu: Rational,
}

/// One `ν̃` sample of the Odd-family sign check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub nu_tilde: Rational,
    pub nu: Rational,
    pub witness_sign: SignPair,
    /// A Degenerate or OppositeSign edge exists at this `ν`.
    pub mismatch_found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompSeriesReport {
    pub algebra: String,
    pub family: Family,
    pub search_degree: i64,
    pub rho_g: i64,
    /// Minimum of `|t|` over the scanned edges.
    pub minimum: i64,
    /// `ν̃₀`; `None` means no complementary series.
    pub bound: Option<i64>,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// Odd family only: the sign check on a grid of `ν̃ ∈ (−1, 1)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign_grid: Option<Vec<GridPoint>>,
}

/// The tabulated complementary-series bound (`Some(None)` = "none"), or
/// `None` where nothing is stated (the `Raw` family).
pub fn stated_bound(alg: &AlgebraData, family: Family) -> Option<Option<i64>> {
    match family {
        Family::Raw => None,
        Family::Odd => Some(None),
        Family::Even => Some(match alg.id {
            AlgebraId::E6_2
            | AlgebraId::E7M5
            | AlgebraId::E7_7
            | AlgebraId::E8M24
            | AlgebraId::E8_8 => Some(1),
            AlgebraId::F4_4 | AlgebraId::E6_6 => None,
            AlgebraId::So4d(d) => (d % 2 == 0).then_some(1),
        }),
    }
}

/// Default scan depth `8(1 + max ρ_j)`.
pub fn default_search_degree(alg: &AlgebraData) -> i64 {
    8 * (1 + alg.max_rho())
}

type ScanKey = (i64, i64, Weight, i64, usize);

fn scan_weight(
    alg: &AlgebraData,
    family: Family,
    mu: &Weight,
    sigmas: &[[i64; 4]],
) -> Option<(ScanKey, i64)> {
    let mut best: Option<(ScanKey, i64)> = None;
    for p in ktype::p_values(alg, mu, family) {
        for (si, sigma) in sigmas.iter().enumerate() {
            let target = [mu[0] + sigma[0], mu[1] + sigma[1], mu[2] + sigma[2], mu[3] + sigma[3]];
            for (di, delta2) in [1i64, -1].into_iter().enumerate() {
                let raw_p = p + delta2;
                if family == Family::Odd && raw_p == 0 {
                    continue;
                }
                if !ktype::is_admissible(alg, &target, raw_p) {
                    continue;
                }
                let shift = Shift::new(*sigma, delta2, delta2);
                let t = shifted_constant(alg, mu, p, &shift);
                let key = (t.abs(), ktype::degree(mu), *mu, p, 2 * si + di);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, t));
                }
            }
        }
    }
    best
}

/// Minimum of `|t|` over every admissible edge whose source has degree
/// `≤ search_degree`, with the canonical-first minimiser. `l` does not enter
/// `t`, so the witness uses `l = p`, `δ₁ = δ₂`, which always keeps `l`
/// admissible on both ends.
pub fn minimise_t(
    exec: Execution,
    alg: &AlgebraData,
    family: Family,
    search_degree: i64,
) -> Option<(i64, Witness)> {
    let weights = ktype::admissible_weights(alg, search_degree, family);
    let sigmas = all_sigmas();
    let (key, t) = exec.min_by_key(&weights, |mu| scan_weight(alg, family, mu, &sigmas))?;
    let (_, _, mu, p, idx) = key;
    let sigma = sigmas[idx / 2];
    let delta2 = if idx % 2 == 0 { 1 } else { -1 };
    let source = KType::new(mu, p, p, family);
    let shift = Shift::new(sigma, delta2, delta2);
    let (target, folded) =
        transition::shift_target(alg, &source, &shift).expect("scan only keeps admissible targets");
    let edge = Edge { source, shift, target, folded };
    let witness = Witness {
        edge,
        t,
        zero_at_nu: Rational::from_int(alg.rho_g - t),
    };
    Some((key.0, witness))
}

/// Sample points `ν̃ = k/4`, `k = −3..=3`, inside `(−1, 1)`.
pub fn odd_grid() -> Vec<Rational> {
    (-3..=3).map(|k| Rational::new(k, 4)).collect()
}

pub fn comp_series_bound(
    alg: &AlgebraData,
    family: Family,
    search_degree: Option<i64>,
) -> Result<CompSeriesReport> {
    comp_series_bound_with(Execution::default(), alg, family, search_degree)
}

/// Complementary-series bound `ν̃₀` for `family`.
///
/// For the `Odd` family the result is `None` ("sign mismatch") only when a
/// Degenerate or OppositeSign edge is exhibited at every point of
/// [`odd_grid`]. Since `SameSign ⟺ |ν̃| < |t|`, the minimising edge decides
/// each grid point exactly. Otherwise the affine minimum is returned.
pub fn comp_series_bound_with(
    exec: Execution,
    alg: &AlgebraData,
    family: Family,
    search_degree: Option<i64>,
) -> Result<CompSeriesReport> {
    let search_degree = search_degree.unwrap_or_else(|| default_search_degree(alg));
    if search_degree < 4 {
        return Err(Error::BoundTooSmall(search_degree));
    }
    let found = minimise_t(exec, alg, family, search_degree);
    let (minimum, witness) = match found {
        Some((m, w)) => (m, Some(w)),
        None => {
            return Err(Error::InvalidParameter(format!(
                "no admissible edge within degree {search_degree}"
            )))
        }
    };
    let mut report = CompSeriesReport {
        algebra: alg.name(),
        family,
        search_degree,
        rho_g: alg.rho_g,
        minimum,
        bound: (minimum > 0).then_some(minimum),
        witness,
        reason: None,
        sign_grid: None,
    };
    if family == Family::Odd {
        let w = report.witness.as_ref().expect("set above");
        let grid: Vec<GridPoint> = odd_grid()
            .into_iter()
            .map(|nu_tilde| {
                let nu = &nu_tilde + alg.rho_g;
                let witness_sign = sign_pair(alg, &nu, &w.edge);
                GridPoint {
                    mismatch_found: witness_sign != SignPair::SameSign,
                    nu_tilde,
                    nu,
                    witness_sign,
                }
            })
            .collect();
        if grid.iter().all(|g| g.mismatch_found) {
            report.bound = None;
            report.reason = Some("sign mismatch".into());
        } else {
            report.reason = Some(
                "no Degenerate/OppositeSign edge near rho_g; affine minimum reported".into(),
            );
        }
        report.sign_grid = Some(grid);
    } else if report.bound.is_none() {
        report.reason = Some("degenerate edge at the unitary point".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lookup, lookup_name};
    use crate::transition::edges_from;

    #[test]
    fn sign_pair_on_unitary_axis() {
        let alg = lookup(AlgebraId::E7_7).unwrap();
        let src = KType::new([0; 4], 0, 0, Family::Even);
        let e = edges_from(&alg, &src)
            .unwrap()
            .into_iter()
            .find(|e| e.shift.delta2 == 1)
            .unwrap();
        let nu = Rational::from_int(17);
        let (l1, l2) = linear_pair(&alg, &nu, &e);
        assert_eq!((l1, l2), (Rational::from_int(17), Rational::from_int(17)));
        assert_eq!(sign_pair(&alg, &nu, &e), SignPair::SameSign);
    }

    #[test]
    fn degenerate_when_first_function_vanishes() {
        let alg = lookup(AlgebraId::E6_2).unwrap();
        let src = KType::new([1, 1, 1, 1], 1, 1, Family::Raw);
        for e in edges_from(&alg, &src).unwrap() {
            let c = transition::affine_factor(&alg, &e).c;
            assert_eq!(sign_pair(&alg, &Rational::from_int(-c), &e), SignPair::Degenerate);
        }
    }

    #[test]
    fn second_function_is_the_reverse_factor() {
        for alg in crate::algebra::catalog_with_so4d(4..=6) {
            let nu = Rational::new(7, 3);
            for k in ktype::enumerate(&alg, 5, Family::Even) {
                for e in edges_from(&alg, &k).unwrap() {
                    let (l1, l2) = linear_pair(&alg, &nu, &e);
                    let c = transition::affine_factor(&alg, &e).c;
                    let c_rev = transition::affine_factor(&alg, &e.reverse()).c;
                    assert_eq!(l1, &nu + c);
                    assert_eq!(l2, -(&nu + c_rev));
                }
            }
        }
    }

    #[test]
    fn e6_6_has_no_opposite_sign_edge_at_half() {
        // |t| is odd for e6_6, so nothing changes sign at ν̃ = 1/2.
        let alg = lookup(AlgebraId::E6_6).unwrap();
        let nu = Rational::new(23, 2);
        let mut any = false;
        for k in ktype::enumerate(&alg, 8, Family::Even) {
            for e in edges_from(&alg, &k).unwrap() {
                any |= sign_pair(&alg, &nu, &e) != SignPair::SameSign;
            }
        }
        assert!(!any);
    }

    #[test]
    fn bounds_for_named_rows() {
        let cases = [
            ("e7_7", Some(1)),
            ("f4_4", None),
            ("so4d(7)", None),
            ("so4d(8)", Some(1)),
            ("e6_2", Some(1)),
        ];
        for (name, want) in cases {
            let alg = lookup_name(name).unwrap();
            let r = comp_series_bound(&alg, Family::Even, Some(24)).unwrap();
            assert_eq!(r.bound, want, "{name}");
        }
    }

    #[test]
    fn witness_is_consistent() {
        let alg = lookup(AlgebraId::E8M24).unwrap();
        let r = comp_series_bound(&alg, Family::Even, None).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.t.abs(), r.minimum);
        assert!(w.edge.source.is_admissible(&alg) && w.edge.target.is_admissible(&alg));
        let c = transition::affine_factor(&alg, &w.edge).c;
        assert_eq!(alg.rho_g + c, w.t);
        assert!(r.search_degree == 8 * 18);
    }

    #[test]
    fn too_small_search_degree() {
        let alg = lookup(AlgebraId::E7_7).unwrap();
        assert_eq!(
            comp_series_bound(&alg, Family::Even, Some(3)),
            Err(Error::BoundTooSmall(3))
        );
    }

    #[test]
    fn odd_family_with_zero_minimum_is_none() {
        let alg = lookup(AlgebraId::So4d(7)).unwrap();
        let r = comp_series_bound(&alg, Family::Odd, Some(16)).unwrap();
        assert_eq!(r.bound, None);
        assert_eq!(r.reason.as_deref(), Some("sign mismatch"));
        assert!(r.sign_grid.unwrap().iter().all(|g| g.mismatch_found));
    }

    #[test]
    fn odd_family_with_even_d_reports_minimum() {
        let alg = lookup(AlgebraId::E7_7).unwrap();
        let r = comp_series_bound(&alg, Family::Odd, Some(16)).unwrap();
        assert_eq!(r.minimum, 1);
        assert_eq!(r.bound, Some(1));
        let grid = r.sign_grid.unwrap();
        assert!(!grid[3].mismatch_found);
        assert_eq!(grid[3].nu, Rational::from_int(17));
    }

    #[test]
    fn witness_decides_the_grid_exactly() {
        // Brute-force every edge at every grid point for a small depth.
        for name in ["e7_7", "so4d(5)", "f4_4"] {
            let alg = lookup_name(name).unwrap();
            let r = comp_series_bound(&alg, Family::Odd, Some(10)).unwrap();
            let edges: Vec<Edge> = ktype::enumerate(&alg, 10, Family::Odd)
                .iter()
                .flat_map(|k| edges_from(&alg, k).unwrap())
                .collect();
            for g in r.sign_grid.unwrap() {
                let brute = edges
                    .iter()
                    .any(|e| sign_pair(&alg, &g.nu, e) != SignPair::SameSign);
                assert_eq!(brute, g.mismatch_found, "{name} {}", g.nu_tilde);
            }
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        for alg in crate::algebra::catalog_with_so4d(4..=6) {
            let a = comp_series_bound_with(Execution::Sequential, &alg, Family::Even, Some(20));
            let b = comp_series_bound_with(Execution::Parallel, &alg, Family::Even, Some(20));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn stated_values() {
        assert_eq!(stated_bound(&lookup_name("e6_6").unwrap(), Family::Even), Some(None));
        assert_eq!(stated_bound(&lookup_name("so4d(10)").unwrap(), Family::Even), Some(Some(1)));
        assert_eq!(stated_bound(&lookup_name("e7_7").unwrap(), Family::Odd), Some(None));
        assert_eq!(stated_bound(&lookup_name("e7_7").unwrap(), Family::Raw), None);
    }
}
