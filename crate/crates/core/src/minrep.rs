//! The kernel of Ω at `ν = a + 2` and the K-type line `(a+n, n, n, n)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, Dominance};
use crate::casimir::{kernel_equation_lhs, minrep_nu, omega_eigenvalue};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ktype::{self, Family, KType, Weight};
use crate::transition::{self, all_sigmas};

/// `n` with `μ = (a+n, n, n, n)`, if any.
pub fn line_index(alg: &AlgebraData, mu: &Weight) -> Option<i64> {
    let n = mu[1];
    (n >= 0 && *mu == [alg.a + n, n, n, n]).then_some(n)
}

pub fn line_weight(alg: &AlgebraData, n: i64) -> Weight {
    [alg.a + n, n, n, n]
}

fn in_kernel(alg: &AlgebraData, mu: &Weight, nu: &Rational) -> bool {
    omega_eigenvalue(alg, mu, nu).is_ok_and(|v| v.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelEntry {
    pub mu: Weight,
    /// Number of Even-family `p` at `μ`.
    pub p_multiplicity: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub line_n: Option<i64>,
    /// The count `[n/2]` quoted for the line, next to the enumerated one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stated_count: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub algebra: String,
    pub nu: Rational,
    pub max_degree: i64,
    pub entries: Vec<KernelEntry>,
    /// Kernel weights not of the form `(a+n, n, n, n)`.
    pub off_line: Vec<Weight>,
}

/// Admissible `μ` of degree `≤ max_degree` with `Ω = 0` at `ν = a + 2`.
pub fn omega_kernel(alg: &AlgebraData, max_degree: i64) -> Result<KernelReport> {
    if !alg.has_omega() {
        return Err(Error::OmegaNotDefined(alg.name()));
    }
    let nu = minrep_nu(alg);
    let entries: Vec<KernelEntry> = ktype::admissible_weights(alg, max_degree, Family::Even)
        .into_iter()
        .filter(|mu| in_kernel(alg, mu, &nu))
        .map(|mu| {
            let line_n = line_index(alg, &mu);
            KernelEntry {
                mu,
                p_multiplicity: ktype::p_multiplicity(alg, &mu, Family::Even),
                line_n,
                stated_count: line_n.map(|n| n / 2),
            }
        })
        .collect();
    let off_line = entries
        .iter()
        .filter(|e| e.line_n.is_none())
        .map(|e| e.mu)
        .collect();
    Ok(KernelReport {
        algebra: alg.name(),
        nu,
        max_degree,
        entries,
        off_line,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The line is asserted to be the closure.
    Asserted,
    /// The true kernel and closure are reported without asserting the line.
    Report,
}

pub fn mode(alg: &AlgebraData) -> Mode {
    match alg.dominance() {
        Dominance::Quaternionic | Dominance::So44 => Mode::Asserted,
        _ => Mode::Report,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    pub n: i64,
    pub mu: Weight,
    pub in_closure: bool,
    /// Distinct `p` reached at this `μ`: the multiplicity of the K-type.
    pub closure_p_values: Vec<i64>,
    pub closure_multiplicity: i64,
    /// Number of `(l, p)` pairs reached.
    pub closure_lp_count: i64,
    pub kernel_p_multiplicity: i64,
    pub stated_count: i64,
    /// The kernel has more than one `p` here, so the closure is a proper
    /// subspace if it is multiplicity-one.
    pub proper_inclusion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineResidual {
    pub n: i64,
    /// Printed kernel equation evaluated at `(a+n, n, n, n)`.
    pub kernel_equation: i64,
    /// Ω at `ν = a + 2` on the same weight.
    pub omega: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstStep {
    /// Kernel weights among the admissible `μ + σ` from the seed.
    pub kernel_targets: Vec<Weight>,
    pub only_next_on_line: bool,
    /// Affine constant toward `(a−1, 1, 1, 1)`, when that weight is admissible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub down_constant: Option<i64>,
    /// The factor toward `(a−1, 1, 1, 1)` vanishes at `ν = a + 2` (vacuous if not admissible).
    pub down_factor_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionViolation {
    pub n: i64,
    pub mu: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinrepReport {
    pub algebra: String,
    pub mode: Mode,
    pub nu: Rational,
    pub max_n: i64,
    pub seed: KType,
    /// Distinct weights in the closure, canonical order.
    pub inventory: Vec<Weight>,
    pub closure_size: usize,
    pub inventory_matches_line: bool,
    pub multiplicity_one: bool,
    pub line: Vec<LineEntry>,
    pub first_step: FirstStep,
    /// Kernel weights next to a line node that leave the line.
    pub induction_violations: Vec<InductionViolation>,
    pub residuals: Vec<LineResidual>,
    pub notes: Vec<String>,
}

/// Residuals of the line `(a+n, n, n, n)`, `n = 0..=max_n`, in both forms.
pub fn line_residuals(alg: &AlgebraData, max_n: i64) -> Result<Vec<LineResidual>> {
    let nu = minrep_nu(alg);
    (0..=max_n)
        .map(|n| {
            let mu = line_weight(alg, n);
            Ok(LineResidual {
                n,
                kernel_equation: kernel_equation_lhs(alg, &mu)?,
                omega: omega_eigenvalue(alg, &mu, &nu)?,
            })
        })
        .collect()
}

/// Admissible `μ + σ` (for some `q`) that lie in the kernel.
fn kernel_neighbours(alg: &AlgebraData, mu: &Weight, nu: &Rational) -> Vec<Weight> {
    let mut out: Vec<Weight> = all_sigmas()
        .into_iter()
        .map(|s| [mu[0] + s[0], mu[1] + s[1], mu[2] + s[2], mu[3] + s[3]])
        .filter(|t| ktype::dominance_bound(alg, t).is_some() && in_kernel(alg, t, nu))
        .collect();
    out.sort_by_key(|m| (ktype::degree(m), *m));
    out.dedup();
    out
}

/// Cyclic closure of `(a, 0, 0, 0; 0, 0)` at `ν = a + 2` along nonzero edges
/// whose target lies in the kernel of Ω, for `n ≤ max_n`.
pub fn minrep_ktypes(alg: &AlgebraData, max_n: i64) -> Result<MinrepReport> {
    if !alg.has_omega() {
        return Err(Error::OmegaNotDefined(alg.name()));
    }
    if max_n < 0 {
        return Err(Error::InvalidParameter(format!("max_n must be nonnegative, got {max_n}")));
    }
    let nu = minrep_nu(alg);
    let a = alg.a;
    let cap = a + 4 * max_n;
    let seed = KType::new([a, 0, 0, 0], 0, 0, Family::Even);

    let mut closure: BTreeSet<KType> = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(k) = queue.pop_front() {
        for e in transition::edges_from(alg, &k)? {
            let t = e.target;
            if t.degree() > cap || closure.contains(&t) {
                continue;
            }
            if transition::affine_factor(alg, &e).at(&nu).is_zero() || !in_kernel(alg, &t.mu, &nu) {
                continue;
            }
            closure.insert(t);
            queue.push_back(t);
        }
    }

    let mut by_mu: BTreeMap<(i64, Weight), Vec<KType>> = BTreeMap::new();
    for k in &closure {
        by_mu.entry((k.degree(), k.mu)).or_default().push(*k);
    }
    let inventory: Vec<Weight> = by_mu.keys().map(|(_, m)| *m).collect();
    let expected: Vec<Weight> = (0..=max_n).map(|n| line_weight(alg, n)).collect();

    let line: Vec<LineEntry> = (0..=max_n)
        .map(|n| {
            let mu = line_weight(alg, n);
            let ks = by_mu.get(&(ktype::degree(&mu), mu)).cloned().unwrap_or_default();
            let ps: BTreeSet<i64> = ks.iter().map(|k| k.p).collect();
            let kernel_p = ktype::p_multiplicity(alg, &mu, Family::Even);
            LineEntry {
                n,
                mu,
                in_closure: !ks.is_empty(),
                closure_multiplicity: ps.len() as i64,
                closure_p_values: ps.into_iter().collect(),
                closure_lp_count: ks.len() as i64,
                kernel_p_multiplicity: kernel_p,
                stated_count: n / 2,
                proper_inclusion: kernel_p > 1,
            }
        })
        .collect();

    let kernel_targets = kernel_neighbours(alg, &seed.mu, &nu);
    let down = [a - 1, 1, 1, 1];
    let down_constant = ktype::dominance_bound(alg, &down).map(|_| {
        transition::affine_constant(alg, &seed.mu, 0, &transition::Shift::new([-1, 1, 1, 1], 1, 1))
    });
    let first_step = FirstStep {
        only_next_on_line: kernel_targets == vec![line_weight(alg, 1)],
        kernel_targets,
        down_factor_vanishes: down_constant.is_none_or(|c| nu.half_shifted(c).is_zero()),
        down_constant,
    };

    let mut induction_violations = Vec::new();
    for mu in &inventory {
        let Some(n) = line_index(alg, mu) else { continue };
        for t in kernel_neighbours(alg, mu, &nu) {
            let ok = line_index(alg, &t).is_some_and(|m| m == n + 1 || m + 1 == n);
            if !ok {
                induction_violations.push(InductionViolation { n, mu: t });
            }
        }
    }

    let residuals = line_residuals(alg, max_n)?;
    let mode = mode(alg);
    let multiplicity_one = line
        .iter()
        .filter(|e| e.in_closure)
        .all(|e| e.closure_multiplicity == 1);
    let mut notes = Vec::new();
    if mode == Mode::Report {
        notes.push(format!(
            "(a+n,n,n,n) is not in the kernel: the kernel equation gives -4an = {} at n = 1 \
             and Omega at nu = a+2 gives -2a(a+2)-4an",
            -4 * a
        ));
    }
    let wide: Vec<String> = line
        .iter()
        .filter(|e| e.closure_multiplicity > 1)
        .map(|e| format!("n={}: {}", e.n, e.closure_multiplicity))
        .collect();
    if !wide.is_empty() {
        notes.push(format!(
            "closure reaches more than one p on the line ({})",
            wide.join(", ")
        ));
    }
    notes.push("kernel p-multiplicity on the line is floor(n/2)+1; the quoted count is [n/2]".into());

    Ok(MinrepReport {
        algebra: alg.name(),
        mode,
        nu,
        max_n,
        seed,
        inventory_matches_line: inventory == expected,
        closure_size: closure.len(),
        inventory,
        multiplicity_one,
        line,
        first_step,
        induction_violations,
        residuals,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lookup, lookup_name, AlgebraId};

    #[test]
    fn e6_2_kernel_contains_line() {
        let alg = lookup(AlgebraId::E6_2).unwrap();
        let k = omega_kernel(&alg, 30).unwrap();
        for n in 0..=7 {
            assert!(k.entries.iter().any(|e| e.mu == [2 + n, n, n, n]), "n = {n}");
        }
        let e = k.entries.iter().find(|e| e.mu == [6, 4, 4, 4]).unwrap();
        assert_eq!(e.p_multiplicity, 3);
        assert_eq!(e.stated_count, Some(2));
    }

    #[test]
    fn so44_kernel_contains_diagonal() {
        let alg = lookup(AlgebraId::So4d(4)).unwrap();
        let k = omega_kernel(&alg, 12).unwrap();
        for n in 0..=3 {
            assert!(k.entries.iter().any(|e| e.mu == [n; 4]));
        }
    }

    #[test]
    fn kernel_entries_solve_the_equation() {
        for name in ["e6_2", "e7_m5", "so4d(6)"] {
            let alg = lookup_name(name).unwrap();
            for e in omega_kernel(&alg, 20).unwrap().entries {
                assert!(omega_eigenvalue(&alg, &e.mu, &minrep_nu(&alg)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn scope() {
        for name in ["f4_4", "e7_7", "so4d(7)"] {
            let alg = lookup_name(name).unwrap();
            assert!(matches!(omega_kernel(&alg, 4), Err(Error::OmegaNotDefined(_))));
            assert!(matches!(minrep_ktypes(&alg, 2), Err(Error::OmegaNotDefined(_))));
        }
    }

    #[test]
    fn e6_2_inventory() {
        let alg = lookup(AlgebraId::E6_2).unwrap();
        let r = minrep_ktypes(&alg, 6).unwrap();
        assert_eq!(r.mode, Mode::Asserted);
        assert_eq!(r.inventory.first(), Some(&[2, 0, 0, 0]));
        assert_eq!(r.inventory.last(), Some(&[8, 6, 6, 6]));
        assert!(r.inventory_matches_line);
        assert!(r.first_step.only_next_on_line);
        assert_eq!(r.first_step.down_constant, Some(-4));
        assert!(r.first_step.down_factor_vanishes);
        assert!(r.induction_violations.is_empty());
        let n4 = &r.line[4];
        assert_eq!(n4.kernel_p_multiplicity, 3);
        assert!(n4.proper_inclusion);
    }

    #[test]
    fn closure_p_content_on_the_line() {
        let alg = lookup(AlgebraId::E7M5).unwrap();
        let r = minrep_ktypes(&alg, 5).unwrap();
        for e in &r.line {
            let want: Vec<i64> = (0..=e.n).filter(|p| (p - e.n) % 2 == 0).collect();
            assert_eq!(e.closure_p_values, want);
            assert_eq!(e.closure_multiplicity, e.n / 2 + 1);
        }
    }

    #[test]
    fn so44_seed_only() {
        let alg = lookup(AlgebraId::So4d(4)).unwrap();
        let r = minrep_ktypes(&alg, 0).unwrap();
        assert_eq!(r.inventory, vec![[0; 4]]);
        assert_eq!(r.nu, Rational::from_int(2));
        assert!(r.inventory_matches_line);
    }

    #[test]
    fn so4d_report_mode() {
        let alg = lookup(AlgebraId::So4d(8)).unwrap();
        let r = minrep_ktypes(&alg, 3).unwrap();
        assert_eq!(r.mode, Mode::Report);
        assert!(!r.notes.is_empty());
        for res in &r.residuals {
            assert_eq!(res.kernel_equation, -4 * alg.a * res.n);
        }
    }

    #[test]
    fn line_identity_for_fifty_steps() {
        for id in [AlgebraId::E6_2, AlgebraId::E7M5, AlgebraId::E8M24, AlgebraId::So4d(4)] {
            let alg = lookup(id).unwrap();
            for r in line_residuals(&alg, 50).unwrap() {
                assert_eq!(r.kernel_equation, 0);
                assert!(r.omega.is_zero());
            }
        }
    }
}
