//! Transition coefficients of `π_ν(E)` between K-types.
//!
//! `E` moves `(μ; l, p)` to `(μ+σ; l+δ₁, p+δ₂)` for `σ ∈ {±1}⁴`,
//! `δ₁, δ₂ ∈ {±1}`. The coefficient is
//!
//! ```text
//! A = ½(ν + c) · C,   c = Σ_j (μ_j + ρ_j) σ_j − Σ_j ρ_j − 2 p δ₂,
//! ```
//!
//! where `C > 0` depends only on `|l|, |l+δ₁|, |p|, |p+δ₂|` and is never
//! evaluated: vanishing and sign questions only see the affine part.
//! Targets that are not admissible do not appear.
//!
//! In the `Even` and `Odd` families a target with `p + δ₂ < 0` is the
//! `w₀`-image of the one with `|p + δ₂|` (same `l`), so it is folded onto that
//! node. `c` depends on `p δ₂` only, so folding does not change it. In the
//! `Odd` family targets with `p + δ₂ = 0` vanish.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::exec::Execution;
use crate::ktype::{self, Family, KType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shift {
    pub sigma: [i64; 4],
    pub delta1: i64,
    pub delta2: i64,
}

impl Shift {
    pub fn new(sigma: [i64; 4], delta1: i64, delta2: i64) -> Self {
        Shift { sigma, delta1, delta2 }
    }

    pub fn negated(&self) -> Shift {
        Shift {
            sigma: self.sigma.map(|s| -s),
            delta1: -self.delta1,
            delta2: -self.delta2,
        }
    }

    pub fn is_all_up(&self) -> bool {
        self.sigma == [1; 4]
    }
}

const SIGNS: [i64; 2] = [1, -1];

/// The 64 shifts in canonical order (`+1` before `-1`, `σ₁` slowest, `δ₂` fastest).
pub fn all_shifts() -> Vec<Shift> {
    let mut out = Vec::with_capacity(64);
    for s1 in SIGNS {
        for s2 in SIGNS {
            for s3 in SIGNS {
                for s4 in SIGNS {
                    for d1 in SIGNS {
                        for d2 in SIGNS {
                            out.push(Shift::new([s1, s2, s3, s4], d1, d2));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The 16 `σ` patterns in canonical order.
pub fn all_sigmas() -> Vec<[i64; 4]> {
    all_shifts()
        .into_iter()
        .filter(|s| s.delta1 == 1 && s.delta2 == 1)
        .map(|s| s.sigma)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: KType,
    pub shift: Shift,
    pub target: KType,
    /// The unfolded target had `p < 0` and was mapped to `|p|`.
    pub folded: bool,
}

impl Edge {
    /// `p` of the target before folding.
    pub fn raw_target_p(&self) -> i64 {
        self.source.p + self.shift.delta2
    }

    /// The edge from `target` back to `source`. Under folding the reverse of
    /// `p → -|p'|` is taken from `|p'|` with `δ₂` kept, which leaves every
    /// `p δ₂` product, and therefore the affine constant, unchanged.
    pub fn reverse(&self) -> Edge {
        let neg = self.shift.negated();
        let shift = if self.folded {
            Shift { delta2: self.shift.delta2, ..neg }
        } else {
            neg
        };
        Edge {
            source: self.target,
            shift,
            target: self.source,
            folded: false,
        }
    }
}

/// `Σ_j (μ_j + ρ_j) σ_j − Σ_j ρ_j − 2 p δ₂` for a source `(μ, p)`.
pub fn affine_constant(alg: &AlgebraData, mu: &ktype::Weight, p: i64, shift: &Shift) -> i64 {
    let lead: i64 = (0..4)
        .map(|j| (mu[j] + alg.rho[j]) * shift.sigma[j])
        .sum();
    lead - alg.rho_sum() - 2 * p * shift.delta2
}

/// The ν-affine part `ν ↦ ½(ν + c)` of a transition coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineFactor {
    pub c: i64,
    /// The suppressed c-function coefficient is strictly positive on
    /// admissible targets.
    pub positivity_flag: bool,
}

impl AffineFactor {
    pub fn at(&self, nu: &Rational) -> Rational {
        nu.half_shifted(self.c)
    }

    /// The integer `ν` at which the factor vanishes.
    pub fn zero_at(&self) -> i64 {
        -self.c
    }
}

pub fn affine_factor(alg: &AlgebraData, e: &Edge) -> AffineFactor {
    AffineFactor {
        c: affine_constant(alg, &e.source.mu, e.source.p, &e.shift),
        positivity_flag: true,
    }
}

/// Target of `shift` applied to `k` under the family rules, or `None` when
/// it is not admissible or vanishes.
pub fn shift_target(alg: &AlgebraData, k: &KType, shift: &Shift) -> Option<(KType, bool)> {
    let mu = [
        k.mu[0] + shift.sigma[0],
        k.mu[1] + shift.sigma[1],
        k.mu[2] + shift.sigma[2],
        k.mu[3] + shift.sigma[3],
    ];
    let l = k.l + shift.delta1;
    let raw_p = k.p + shift.delta2;
    let (p, folded) = match k.family {
        Family::Raw => (raw_p, false),
        Family::Even => (raw_p.abs(), raw_p < 0),
        Family::Odd => {
            if raw_p == 0 {
                return None;
            }
            (raw_p.abs(), raw_p < 0)
        }
    };
    let target = KType::new(mu, l, p, k.family);
    target.is_admissible(alg).then_some((target, folded))
}

/// All edges out of `k`, in canonical shift order.
pub fn edges_from(alg: &AlgebraData, k: &KType) -> Result<Vec<Edge>> {
    if !k.is_admissible(alg) {
        return Err(Error::InvalidKType(k.to_string(), alg.name()));
    }
    Ok(all_shifts()
        .into_iter()
        .filter_map(|shift| {
            shift_target(alg, k, &shift).map(|(target, folded)| Edge {
                source: *k,
                shift,
                target,
                folded,
            })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    /// `None` for a boundary edge whose target lies beyond `max_degree`.
    pub target: Option<usize>,
    pub edge: Edge,
    pub c: i64,
    pub factor: Rational,
    pub blocked: bool,
}

impl GraphEdge {
    pub fn is_boundary(&self) -> bool {
        self.target.is_none()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphData {
    algebra: String,
    nu: Rational,
    family: Family,
    max_degree: i64,
    nodes: Vec<KType>,
    edges: Vec<GraphEdge>,
}

/// Directed graph of transitions at a fixed `ν`, truncated at `max_degree`.
///
/// Edges are grouped by source in node order and, within a source, in
/// canonical shift order. Edges leaving the truncation are kept as
/// boundary edges so that closedness questions can see them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "GraphData", into = "GraphData")]
pub struct TransitionGraph {
    pub algebra: String,
    pub nu: Rational,
    pub family: Family,
    pub max_degree: i64,
    pub nodes: Vec<KType>,
    pub edges: Vec<GraphEdge>,
    index: HashMap<KType, usize>,
    offsets: Vec<usize>,
}

impl From<GraphData> for TransitionGraph {
    fn from(g: GraphData) -> Self {
        TransitionGraph::assemble(g.algebra, g.nu, g.family, g.max_degree, g.nodes, g.edges)
    }
}

impl From<TransitionGraph> for GraphData {
    fn from(g: TransitionGraph) -> Self {
        GraphData {
            algebra: g.algebra,
            nu: g.nu,
            family: g.family,
            max_degree: g.max_degree,
            nodes: g.nodes,
            edges: g.edges,
        }
    }
}

impl TransitionGraph {
    fn assemble(
        algebra: String,
        nu: Rational,
        family: Family,
        max_degree: i64,
        nodes: Vec<KType>,
        edges: Vec<GraphEdge>,
    ) -> Self {
        let index = nodes.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut offsets = vec![0; nodes.len() + 1];
        for e in &edges {
            offsets[e.source + 1] += 1;
        }
        for i in 0..nodes.len() {
            offsets[i + 1] += offsets[i];
        }
        TransitionGraph {
            algebra,
            nu,
            family,
            max_degree,
            nodes,
            edges,
            index,
            offsets,
        }
    }

    pub fn node_index(&self, k: &KType) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Edges leaving node `i`, internal and boundary.
    pub fn outgoing(&self, i: usize) -> &[GraphEdge] {
        &self.edges[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| !e.is_boundary())
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.iter().filter(|e| e.is_boundary())
    }

    /// Index of the graph edge reversing `self.edges[i]`, when both ends are nodes.
    pub fn reverse_of(&self, i: usize) -> Option<usize> {
        let e = &self.edges[i];
        let t = e.target?;
        let rev = e.edge.reverse();
        let start = self.offsets[t];
        self.outgoing(t)
            .iter()
            .position(|g| g.edge.shift == rev.shift && g.edge.target == rev.target)
            .map(|k| start + k)
    }

    /// Graphviz rendering. Blocked (zero-factor) edges are red and dashed,
    /// boundary targets are dotted boxes, and every edge carries its exact factor.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph transition {{");
        let _ = writeln!(
            out,
            "  label=\"{} {} nu={} max_degree={}\";",
            self.algebra, self.family, self.nu, self.max_degree
        );
        let _ = writeln!(out, "  node [shape=ellipse];");
        for (i, k) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{k}\"];");
        }
        let mut boundary_ids: HashMap<KType, usize> = HashMap::new();
        for e in self.boundary_edges() {
            let next = boundary_ids.len();
            boundary_ids.entry(e.edge.target).or_insert(next);
        }
        let mut boundary: Vec<(&KType, &usize)> = boundary_ids.iter().collect();
        boundary.sort_by_key(|(_, id)| **id);
        for (k, id) in boundary {
            let _ = writeln!(out, "  b{id} [label=\"{k}\", shape=box, style=dotted];");
        }
        for e in &self.edges {
            let to = match e.target {
                Some(t) => format!("n{t}"),
                None => format!("b{}", boundary_ids[&e.edge.target]),
            };
            let s = e.edge.shift;
            let style = if e.blocked {
                ", color=red, style=dashed"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  n{} -> {to} [label=\"{}\", tooltip=\"sigma={:?} delta=({},{})\"{style}];",
                e.source, e.factor, s.sigma, s.delta1, s.delta2
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_graph(
    alg: &AlgebraData,
    nu: &Rational,
    max_degree: i64,
    family: Family,
) -> TransitionGraph {
    build_graph_with(Execution::default(), alg, nu, max_degree, family)
}

pub fn build_graph_with(
    exec: Execution,
    alg: &AlgebraData,
    nu: &Rational,
    max_degree: i64,
    family: Family,
) -> TransitionGraph {
    let nodes = ktype::enumerate_with(exec, alg, max_degree, family);
    let per_node: Vec<Vec<(Edge, i64, Rational)>> = exec.map(&nodes, |k| {
        edges_from(alg, k)
            .expect("enumerated K-types are admissible")
            .into_iter()
            .map(|e| {
                let f = affine_factor(alg, &e);
                let value = f.at(nu);
                (e, f.c, value)
            })
            .collect()
    });
    let index: HashMap<KType, usize> = nodes.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut edges = Vec::new();
    for (source, list) in per_node.into_iter().enumerate() {
        for (edge, c, factor) in list {
            let target = index.get(&edge.target).copied();
            debug_assert!(target.is_some() || edge.target.degree() > max_degree);
            let blocked = factor.is_zero();
            edges.push(GraphEdge {
                source,
                target,
                edge,
                c,
                factor,
                blocked,
            });
        }
    }
    TransitionGraph::assemble(alg.name(), nu.clone(), family, max_degree, nodes, edges)
}
