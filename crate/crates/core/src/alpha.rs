//! Analysis of a graph against one cohomology class α.
//!
//! Sign convention, used by every module downstream: a potential `p` is
//! feasible when `p(u) <= p(v) + α(W)` on every edge `u -> v` with winding
//! `W`. Lifted to the cover as `F(v, n) = p(v) + α(n)`, this says F never
//! decreases along an edge. Feasible potentials exist exactly when no cycle
//! has negative α-weight, which is the quasi-Lyapunov test for −α. An edge is
//! tight when equality holds.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::digraph::Digraph;
use crate::homology::{CohomologyClass, WindingVector};
use crate::mcm::{min_cycle_mean, CycleMean};
use crate::rational::Rational;
use crate::recurrence::{chain_decomposition, is_chain_recurrent, number_chains};
use crate::scc::tarjan;
use crate::shortest::{feasibility, Feasibility, IntGraph};

pub fn alpha_weight(weight: &WindingVector, alpha: &CohomologyClass) -> i64 {
    alpha.pair(weight)
}

/// The graph with each edge weighted by its α-weight; edge indices are preserved.
pub fn alpha_graph(g: &Digraph, alpha: &CohomologyClass) -> IntGraph {
    let w = g.weights();
    IntGraph::from_digraph(g, |e| alpha.pair(&w[e]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaError {
    /// Some cycle has negative α-weight; carries one such cycle.
    NotQuasiLyapunov { cycle: Vec<usize> },
    Acyclic,
    DimensionMismatch { graph: usize, alpha: usize },
}

impl fmt::Display for AlphaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaError::NotQuasiLyapunov { cycle } => write!(
                f,
                "not quasi-Lyapunov: a cycle of {} edges has negative alpha-weight",
                cycle.len()
            ),
            AlphaError::Acyclic => write!(f, "graph has no cycle"),
            AlphaError::DimensionMismatch { graph, alpha } => {
                write!(f, "class of dimension {alpha} used on a {graph}-dimensional graph")
            }
        }
    }
}

/// Everything the sections engine needs about one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaAnalysis {
    pub alpha: CohomologyClass,
    pub quasi_lyapunov_minus_alpha: bool,
    /// A negative cycle (edge indices) when the test fails.
    pub negative_cycle: Option<Vec<usize>>,
    /// Feasible potentials, present when the test passes.
    pub potentials: Option<Vec<i64>>,
    /// Sorted vertices on zero-weight cycles.
    pub alpha_recurrent: Vec<u32>,
    pub chain_of: Vec<Option<u32>>,
    /// α-chains as sorted vertex lists, numbered by smallest vertex.
    pub chains: Vec<Vec<u32>>,
}

impl AlphaAnalysis {
    pub fn compute(g: &Digraph, alpha: &CohomologyClass) -> AlphaAnalysis {
        let ag = alpha_graph(g, alpha);
        match feasibility(&ag) {
            Feasibility::NegativeCycle(cycle) => AlphaAnalysis {
                alpha: *alpha,
                quasi_lyapunov_minus_alpha: false,
                negative_cycle: Some(cycle),
                potentials: None,
                alpha_recurrent: Vec::new(),
                chain_of: alloc::vec![None; g.vertex_count()],
                chains: Vec::new(),
            },
            Feasibility::Distances(dist) => {
                let p: Vec<i64> = dist.iter().map(|d| -d).collect();
                let tight = |e: usize| p[ag.sources[e] as usize] == p[ag.targets[e] as usize] + ag.weights[e];
                let comps = tarjan(&ag.offsets, &ag.targets, tight);
                let (chain_of, chains, _) = number_chains(&comps);
                let alpha_recurrent = (0..g.vertex_count() as u32).filter(|&v| chain_of[v as usize].is_some()).collect();
                AlphaAnalysis {
                    alpha: *alpha,
                    quasi_lyapunov_minus_alpha: true,
                    negative_cycle: None,
                    potentials: Some(p),
                    alpha_recurrent,
                    chain_of,
                    chains,
                }
            }
        }
    }

    pub fn is_tight(&self, g: &Digraph, edge: usize) -> bool {
        match &self.potentials {
            Some(p) => {
                let e = g.edge(edge);
                p[e.source as usize] == p[e.target as usize] + self.alpha.pair(&e.weight)
            }
            None => false,
        }
    }

    /// The potentials, or the negative-cycle error.
    pub fn require_potentials(&self) -> Result<&[i64], AlphaError> {
        self.potentials.as_deref().ok_or_else(|| AlphaError::NotQuasiLyapunov {
            cycle: self.negative_cycle.clone().unwrap_or_default(),
        })
    }
}

/// No cycle of negative α-weight.
pub fn is_quasi_lyapunov_neg(g: &Digraph, alpha: &CohomologyClass) -> bool {
    matches!(feasibility(&alpha_graph(g, alpha)), Feasibility::Distances(_))
}

/// α-recurrent vertices and the α-chain of each vertex.
pub fn alpha_recurrent(g: &Digraph, alpha: &CohomologyClass) -> Result<(Vec<u32>, Vec<Option<u32>>), AlphaError> {
    let a = AlphaAnalysis::compute(g, alpha);
    if let Some(cycle) = a.negative_cycle {
        return Err(AlphaError::NotQuasiLyapunov { cycle });
    }
    Ok((a.alpha_recurrent, a.chain_of))
}

/// Minimum over cycles of α-weight per edge, with a cycle attaining it.
pub fn direction_support_cycle(g: &Digraph, alpha: &CohomologyClass) -> Result<CycleMean, AlphaError> {
    min_cycle_mean(&alpha_graph(g, alpha)).ok_or(AlphaError::Acyclic)
}

pub fn direction_support(g: &Digraph, alpha: &CohomologyClass) -> Result<Rational, AlphaError> {
    direction_support_cycle(g, alpha).map(|c| c.value)
}

/// Why a class does or does not carry partial cross-sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExistenceReason {
    /// α ≠ 0 and no cycle has negative α-weight.
    NoNegativeCycle,
    /// α ≠ 0 and this cycle (edge indices) has negative α-weight.
    NegativeCycle { cycle: Vec<usize>, weight: i64 },
    /// α = 0 and the graph is not chain recurrent.
    NotChainRecurrent { chains: usize },
    /// α = 0 and the graph is one recurrent chain.
    ChainRecurrent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Existence {
    pub nonempty: bool,
    pub reason: ExistenceReason,
}

impl Existence {
    pub fn describe(&self) -> String {
        use alloc::format;
        match &self.reason {
            ExistenceReason::NoNegativeCycle => {
                String::from("-alpha is quasi-Lyapunov: no cycle has negative alpha-weight")
            }
            ExistenceReason::NegativeCycle { cycle, weight } => format!(
                "negative alpha-cycle witness: {} edges of total alpha-weight {}",
                cycle.len(),
                weight
            ),
            ExistenceReason::NotChainRecurrent { chains } => {
                format!("zero class on a graph that is not chain recurrent ({chains} chains)")
            }
            ExistenceReason::ChainRecurrent => String::from("zero class on a chain-recurrent graph"),
        }
    }
}

pub fn existence(g: &Digraph, alpha: &CohomologyClass) -> Existence {
    if alpha.is_zero() {
        if is_chain_recurrent(g) {
            Existence { nonempty: false, reason: ExistenceReason::ChainRecurrent }
        } else {
            let chains = chain_decomposition(g).chains.len();
            Existence { nonempty: true, reason: ExistenceReason::NotChainRecurrent { chains } }
        }
    } else {
        existence_from(g, &AlphaAnalysis::compute(g, alpha))
    }
}

/// Existence for a nonzero class from an analysis already computed.
pub fn existence_from(g: &Digraph, a: &AlphaAnalysis) -> Existence {
    if a.alpha.is_zero() {
        return existence(g, &a.alpha);
    }
    match &a.negative_cycle {
        None => Existence { nonempty: true, reason: ExistenceReason::NoNegativeCycle },
        Some(cycle) => {
            let weight = cycle.iter().map(|&e| a.alpha.pair(&g.weights()[e])).sum();
            Existence { nonempty: false, reason: ExistenceReason::NegativeCycle { cycle: cycle.clone(), weight } }
        }
    }
}

/// Quasi-Lyapunov with an empty α-recurrent set: every cycle is strictly α-positive.
pub fn fried_positive(g: &Digraph, alpha: &CohomologyClass) -> bool {
    let a = AlphaAnalysis::compute(g, alpha);
    a.quasi_lyapunov_minus_alpha && a.alpha_recurrent.is_empty()
}

/// A closed walk of negative α-weight through `vertex`, using at most `max_len` edges.
///
/// Layered relaxation: the minimum weight of walks of exactly k edges from
/// `vertex`, for k up to `max_len`; the first k that returns below zero wins.
pub fn negative_walk_through(g: &Digraph, alpha: &CohomologyClass, vertex: u32, max_len: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let w: Vec<i64> = g.weights().iter().map(|x| alpha.pair(x)).collect();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<Option<i64>> = alloc::vec![None; n];
    cur[vertex as usize] = Some(0);
    for _ in 0..max_len {
        let mut next: Vec<Option<i64>> = alloc::vec![None; n];
        let mut via = alloc::vec![usize::MAX; n];
        for u in 0..n {
            let Some(du) = cur[u] else { continue };
            for e in g.out_edges(u as u32) {
                let cand = du + w[e.index];
                let t = e.target as usize;
                if next[t].is_none_or(|old| cand < old) {
                    next[t] = Some(cand);
                    via[t] = e.index;
                }
            }
        }
        layers.push(via);
        if next[vertex as usize].is_some_and(|d| d < 0) {
            let mut walk = Vec::with_capacity(layers.len());
            let mut v = vertex as usize;
            for layer in layers.iter().rev() {
                let e = layer[v];
                walk.push(e);
                v = g.sources()[e] as usize;
            }
            walk.reverse();
            return Some(walk);
        }
        cur = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> WindingVector {
        WindingVector::new(&[a, b])
    }

    fn class(a: i64, b: i64) -> CohomologyClass {
        CohomologyClass::new(&[a, b]).unwrap()
    }

    /// Two vertices each with a (0,1) loop, joined by zero edges both ways, plus a (1,-1) shortcut.
    fn toy() -> Digraph {
        Digraph::from_edges(3, [(0, 0, w(0, 1)), (0, 1, w(0, 0)), (1, 0, w(0, 0)), (1, 2, w(1, -1)), (2, 1, w(0, 0))])
    }

    #[test]
    fn weights_and_potentials() {
        let g = toy();
        let a = AlphaAnalysis::compute(&g, &class(1, 0));
        assert!(a.quasi_lyapunov_minus_alpha);
        let p = a.potentials.as_ref().unwrap();
        for e in g.edges() {
            assert!(p[e.source as usize] <= p[e.target as usize] + class(1, 0).pair(&e.weight));
        }
        assert_eq!(a.alpha_recurrent, alloc::vec![0, 1]);
        assert_eq!(a.chains, alloc::vec![alloc::vec![0, 1]]);
        assert!(a.is_tight(&g, 1));
        assert!(!a.is_tight(&g, 3));
    }

    #[test]
    fn negative_cycle_detected() {
        let g = toy();
        let a = AlphaAnalysis::compute(&g, &class(0, 1));
        assert!(!a.quasi_lyapunov_minus_alpha);
        let cycle = a.negative_cycle.clone().unwrap();
        assert!(g.is_closed_walk(&cycle));
        assert!(class(0, 1).pair(&g.path_weight(&cycle)) < 0);
        assert!(matches!(alpha_recurrent(&g, &class(0, 1)), Err(AlphaError::NotQuasiLyapunov { .. })));
        let ex = existence(&g, &class(0, 1));
        assert!(!ex.nonempty);
        let walk = negative_walk_through(&g, &class(0, 1), 0, 8).unwrap();
        assert!(g.is_closed_walk(&walk) && g.sources()[walk[0]] == 0);
    }

    #[test]
    fn support_values() {
        let g = toy();
        assert_eq!(direction_support(&g, &class(0, 1)).unwrap(), Rational::new(-1, 2));
        assert_eq!(direction_support(&g, &class(1, 0)).unwrap(), Rational::integer(0));
        let dag = Digraph::from_edges(2, [(0, 1, w(1, 1))]);
        assert_eq!(direction_support(&dag, &class(1, 0)), Err(AlphaError::Acyclic));
    }

    #[test]
    fn zero_class_existence() {
        let g = toy();
        assert!(!existence(&g, &class(0, 0)).nonempty);
        let g2 = Digraph::from_edges(2, [(0, 0, w(0, 1)), (0, 1, w(0, 0)), (1, 1, w(0, 1))]);
        let ex = existence(&g2, &class(0, 0));
        assert!(ex.nonempty);
        assert_eq!(ex.reason, ExistenceReason::NotChainRecurrent { chains: 2 });
        assert!(fried_positive(&g2, &class(0, 1)));
        assert!(!fried_positive(&g2, &class(1, 0)));
    }
}
