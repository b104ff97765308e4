//! Reducibility points and closed invariant subsets of the transition graph.

use std::collections::{BTreeSet, VecDeque};
use std::ops::RangeInclusive;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, AlgebraId};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::exec::Execution;
use crate::ktype::{self, Family, KType};
use crate::transition::{self, all_shifts, build_graph_with, TransitionGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Parity of the reducibility points `ν̃` in the stated table.
pub fn stated_parity(alg: &AlgebraData) -> Parity {
    match alg.id {
        AlgebraId::E6_2
        | AlgebraId::E7M5
        | AlgebraId::E7_7
        | AlgebraId::E8M24
        | AlgebraId::E8_8 => Parity::Odd,
        AlgebraId::F4_4 | AlgebraId::E6_6 => Parity::Even,
        AlgebraId::So4d(d) => {
            if d % 2 == 0 {
                Parity::Odd
            } else {
                Parity::Even
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub algebra: String,
    pub family: Family,
    pub range: (i64, i64),
    pub max_degree: i64,
    /// `ν̃` in range at which some edge factor vanishes, ascending.
    pub candidates: Vec<i64>,
    pub stated_parity: Parity,
    /// Every candidate has `stated_parity`.
    pub parity_matches: bool,
    /// Candidates of the other parity.
    pub off_parity: Vec<i64>,
}

/// All values `t = ρ_g + c` over edges out of K-types of degree `≤ max_degree`.
pub fn vanishing_offsets(
    exec: Execution,
    alg: &AlgebraData,
    family: Family,
    max_degree: i64,
) -> BTreeSet<i64> {
    let nodes = ktype::enumerate_with(exec, alg, max_degree, family);
    exec.flat_map(&nodes, |k| {
        let set: BTreeSet<i64> = transition::edges_from(alg, k)
            .expect("enumerated K-types are admissible")
            .iter()
            .map(|e| alg.rho_g + transition::affine_factor(alg, e).c)
            .collect();
        set.into_iter().collect()
    })
    .into_iter()
    .collect()
}

pub fn reducibility_points(
    alg: &AlgebraData,
    family: Family,
    range: RangeInclusive<i64>,
    max_degree: i64,
) -> ReducibilityReport {
    reducibility_points_with(Execution::default(), alg, family, range, max_degree)
}

/// `ν̃` is a candidate iff `½(ρ_g + ν̃ + c) = 0` for some edge, i.e. `−ν̃` is
/// one of the [`vanishing_offsets`].
pub fn reducibility_points_with(
    exec: Execution,
    alg: &AlgebraData,
    family: Family,
    range: RangeInclusive<i64>,
    max_degree: i64,
) -> ReducibilityReport {
    let offsets = vanishing_offsets(exec, alg, family, max_degree);
    let candidates: Vec<i64> = range.clone().filter(|v| offsets.contains(&-v)).collect();
    let parity = stated_parity(alg);
    let off_parity: Vec<i64> = candidates
        .iter()
        .copied()
        .filter(|&v| Parity::of(v) != parity)
        .collect();
    ReducibilityReport {
        algebra: alg.name(),
        family,
        range: (*range.start(), *range.end()),
        max_degree,
        candidates,
        stated_parity: parity,
        parity_matches: off_parity.is_empty(),
        off_parity,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// Reachable nodes in canonical order.
    pub nodes: Vec<KType>,
    /// Some node of the closure has a nonzero edge leaving the truncation.
    pub touches_boundary: bool,
    pub certified_closed: bool,
}

/// Nodes reachable from `seeds` along edges with nonzero factor.
pub fn invariant_closure(g: &TransitionGraph, seeds: &[KType]) -> Result<ClosureReport> {
    let mut seen = vec![false; g.nodes.len()];
    let mut queue = VecDeque::new();
    for s in seeds {
        let i = g.node_index(s).ok_or_else(|| Error::UnknownNode(s.to_string()))?;
        if !seen[i] {
            seen[i] = true;
            queue.push_back(i);
        }
    }
    let mut touches_boundary = false;
    while let Some(i) = queue.pop_front() {
        for e in g.outgoing(i).iter().filter(|e| !e.blocked) {
            match e.target {
                None => touches_boundary = true,
                Some(t) if !seen[t] => {
                    seen[t] = true;
                    queue.push_back(t);
                }
                Some(_) => {}
            }
        }
    }
    let nodes = (0..g.nodes.len())
        .filter(|&i| seen[i])
        .map(|i| g.nodes[i])
        .collect();
    Ok(ClosureReport {
        nodes,
        touches_boundary,
        certified_closed: !touches_boundary,
    })
}

/// Exhaustive check that no shift leads out of `nodes` with a nonzero
/// factor at `nu`. Recomputes every factor from the 64 shifts.
pub fn verify_closed(alg: &AlgebraData, nu: &Rational, nodes: &[KType]) -> bool {
    let set: BTreeSet<KType> = nodes.iter().copied().collect();
    nodes.iter().all(|k| {
        all_shifts().iter().all(|s| match transition::shift_target(alg, k, s) {
            None => true,
            Some((t, _)) => {
                set.contains(&t) || (nu + transition::affine_constant(alg, &k.mu, k.p, s)).is_zero()
            }
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleReport {
    pub algebra: String,
    pub nu: Rational,
    pub family: Family,
    pub max_degree: i64,
    /// Minimal certified-closed subsets, each in canonical order, listed by
    /// their first node.
    pub subsets: Vec<Vec<KType>>,
    /// `ν` is one of the points `−4m` (Even, `m ≥ 0`) or `−2m` (Odd, `m ≥ 1`).
    pub theorem_point: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

/// Whether a finite-dimensional submodule is asserted at `nu` for `family`.
pub fn is_theorem_point(nu: &Rational, family: Family) -> bool {
    let Some(n) = nu.to_i64() else {
        return false;
    };
    match family {
        Family::Even => n <= 0 && n % 4 == 0,
        Family::Odd => n <= -2 && n % 2 == 0,
        Family::Raw => false,
    }
}

/// Minimal closed subsets of the truncated graph: the bottom strongly
/// connected components of the nonzero-edge graph that have no nonzero
/// boundary edge. Boundary factors are computed from the 64 shifts, so a
/// certified subset stays certified when `max_degree` grows.
pub fn finite_submodules_in(g: &TransitionGraph) -> Vec<Vec<KType>> {
    let mut dg: DiGraph<(), ()> = DiGraph::with_capacity(g.nodes.len(), g.edges.len());
    let ids: Vec<_> = g.nodes.iter().map(|_| dg.add_node(())).collect();
    let mut leaks = vec![false; g.nodes.len()];
    for e in g.edges.iter().filter(|e| !e.blocked) {
        match e.target {
            Some(t) => {
                dg.add_edge(ids[e.source], ids[t], ());
            }
            None => leaks[e.source] = true,
        }
    }
    let mut component = vec![0usize; g.nodes.len()];
    let sccs = tarjan_scc(&dg);
    for (ci, scc) in sccs.iter().enumerate() {
        for n in scc {
            component[n.index()] = ci;
        }
    }
    let mut out: Vec<Vec<KType>> = sccs
        .iter()
        .enumerate()
        .filter(|(ci, scc)| {
            scc.iter().all(|n| {
                !leaks[n.index()]
                    && dg
                        .neighbors(*n)
                        .all(|m| component[m.index()] == *ci)
            })
        })
        .map(|(_, scc)| {
            let mut nodes: Vec<KType> = scc.iter().map(|n| g.nodes[n.index()]).collect();
            nodes.sort();
            nodes
        })
        .collect();
    out.sort();
    out
}

pub fn finite_submodules(
    alg: &AlgebraData,
    nu: &Rational,
    family: Family,
    max_degree: i64,
) -> SubmoduleReport {
    finite_submodules_with(Execution::default(), alg, nu, family, max_degree)
}

pub fn finite_submodules_with(
    exec: Execution,
    alg: &AlgebraData,
    nu: &Rational,
    family: Family,
    max_degree: i64,
) -> SubmoduleReport {
    let g = build_graph_with(exec, alg, nu, max_degree, family);
    let subsets = finite_submodules_in(&g);
    let theorem_point = is_theorem_point(nu, family);
    let label = (!theorem_point && !subsets.is_empty()).then(|| "beyond stated theorem".to_string());
    SubmoduleReport {
        algebra: alg.name(),
        nu: nu.clone(),
        family,
        max_degree,
        subsets,
        theorem_point,
        label,
    }
}
