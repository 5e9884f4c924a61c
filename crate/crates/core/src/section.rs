//! Potentials for a labeling, level-set cuts, and the way back.
//!
//! A section potential `Q` is an integer per vertex with
//! `Q(u) <= Q(v) + α(W)` on every edge `u -> v` of winding `W`, equal to the
//! chain label (offset by the α-potential) on every α-chain. Its section at a
//! level `t` is the set of lifted points where the lifted potential crosses
//! `t + Z`; edge `u -> v` is crossed `Q(v) + α(W) - Q(u)` times, always
//! positively.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::alpha::AlphaAnalysis;
use crate::digraph::Digraph;
use crate::grid::Grid;
use crate::homology::CohomologyClass;
use crate::labeling::Labeling;
use crate::polyline::{trace_polylines, Polyline};
use crate::shortest::{feasibility, Feasibility, IntGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionError {
    NotQuasiLyapunov,
    ChainCountMismatch { labels: usize, chains: usize },
    ClassMismatch,
    /// The labeling violates the order; `witness` is a vertex path along which it fails.
    InfeasibleLabeling { witness: Vec<u32> },
    LevelOnChainValue,
    NegativeCrossing { edge: usize, crossings: i64 },
    /// Crossing counts are not the differences of a potential of this class.
    InconsistentCrossings { edge: usize },
    MeetsRecurrentSet { chain: usize },
    Disconnected { chain: usize },
}

impl fmt::Display for SectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionError::NotQuasiLyapunov => f.write_str("-alpha is not quasi-Lyapunov"),
            SectionError::ChainCountMismatch { labels, chains } => {
                write!(f, "{labels} labels for {chains} chains")
            }
            SectionError::ClassMismatch => f.write_str("section and analysis have different classes"),
            SectionError::InfeasibleLabeling { witness } => {
                write!(f, "infeasible labeling, witness path through {} vertices", witness.len())
            }
            SectionError::LevelOnChainValue => f.write_str("level coincides with chain values"),
            SectionError::NegativeCrossing { edge, crossings } => {
                write!(f, "edge {edge} crossed negatively ({crossings})")
            }
            SectionError::InconsistentCrossings { edge } => write!(f, "crossings inconsistent at edge {edge}"),
            SectionError::MeetsRecurrentSet { chain } => write!(f, "section meets alpha-chain {chain}"),
            SectionError::Disconnected { chain } => write!(f, "chain {chain} is not connected to chain 0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPotential {
    pub values: Vec<i64>,
    pub n_alpha: u64,
    pub labeling: Labeling,
    /// Edges touching an α-chain were all made tight, so the section avoids the chains.
    pub collar: bool,
}

fn chain_values(analysis: &AlphaAnalysis, p: &[i64], labeling: &Labeling) -> Vec<Option<i64>> {
    let mut fixed = alloc::vec![None; p.len()];
    for (i, chain) in analysis.chains.iter().enumerate() {
        let r = chain[0] as usize;
        for &u in chain {
            fixed[u as usize] = Some(labeling.labels[i] + p[u as usize] - p[r]);
        }
    }
    fixed
}

/// Difference constraints `x[a] - x[b] <= c` as edges `b -> a`; variable `n` is the anchor.
fn constraint_edges(g: &Digraph, alpha: &CohomologyClass, fixed: &[Option<i64>], chain_of: &[Option<u32>], collar: bool) -> Vec<(u32, u32, i64)> {
    let n = g.vertex_count() as u32;
    let mut edges = Vec::with_capacity(g.edge_count() * 2 + 2 * n as usize);
    for e in g.edges() {
        let w = alpha.pair(&e.weight);
        edges.push((e.target, e.source, w));
        let (cu, cv) = (chain_of[e.source as usize], chain_of[e.target as usize]);
        if collar && (cu.is_some() || cv.is_some()) && cu != cv {
            edges.push((e.source, e.target, -w));
        }
    }
    for (u, f) in fixed.iter().enumerate() {
        if let Some(f) = *f {
            edges.push((n, u as u32, f));
            edges.push((u as u32, n, -f));
        }
    }
    edges
}

pub fn synthesize_potential(g: &Digraph, analysis: &AlphaAnalysis, labeling: &Labeling) -> Result<SectionPotential, SectionError> {
    let p = analysis.potentials.as_ref().ok_or(SectionError::NotQuasiLyapunov)?;
    if labeling.labels.len() != analysis.chains.len() {
        return Err(SectionError::ChainCountMismatch { labels: labeling.labels.len(), chains: analysis.chains.len() });
    }
    let n = g.vertex_count();
    let fixed = chain_values(analysis, p, labeling);
    let mut witness = Vec::new();
    for collar in [true, false] {
        let edges = constraint_edges(g, &analysis.alpha, &fixed, &analysis.chain_of, collar);
        let (cg, order) = IntGraph::from_edges(n + 1, &edges);
        match feasibility(&cg) {
            Feasibility::Distances(x) => {
                let z = x[n];
                let values = x[..n].iter().map(|v| v - z).collect();
                return Ok(SectionPotential { values, n_alpha: analysis.alpha.n_alpha(), labeling: labeling.clone(), collar });
            }
            Feasibility::NegativeCycle(cycle) => {
                witness = cycle
                    .iter()
                    .map(|&e| edges[order[e]].1)
                    .filter(|&v| (v as usize) < n)
                    .collect();
            }
        }
    }
    Err(SectionError::InfeasibleLabeling { witness })
}

/// Levels are `level + Z`; any level that is not an integer works, and the
/// half-integer nearest the middle of the largest gap between chain labels
/// modulo `n_α` is the default.
pub fn default_level(labeling: &Labeling) -> f64 {
    let period = labeling.n_alpha.max(1) as i64;
    let mut residues: Vec<i64> = labeling.labels.iter().map(|l| l.rem_euclid(period)).collect();
    residues.sort_unstable();
    residues.dedup();
    if residues.is_empty() {
        return 0.5;
    }
    let mut best = (0i64, 0i64);
    for (i, &r) in residues.iter().enumerate() {
        let next = residues.get(i + 1).copied().unwrap_or(residues[0] + period);
        if next - r > best.1 {
            best = (r, next - r);
        }
    }
    (best.0 + (best.1 - 1) / 2) as f64 + 0.5
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutEdge {
    pub edge: usize,
    pub source: u32,
    pub target: u32,
    /// Number of sheets crossing the edge, all with positive orientation.
    pub crossings: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossSection {
    pub alpha: CohomologyClass,
    pub level: f64,
    pub labeling: Labeling,
    pub cut_edges: Vec<CutEdge>,
    /// Every cycle is crossed as often as its α-weight.
    pub class_verified: bool,
    /// Cut edges with an α-recurrent endpoint.
    pub recurrent_contacts: usize,
    /// Dual-grid curves, for two-dimensional grids only.
    pub polylines: Vec<Polyline>,
}

impl CrossSection {
    pub fn crossings(&self, edge_count: usize) -> Vec<i64> {
        let mut c = alloc::vec![0i64; edge_count];
        for cut in &self.cut_edges {
            c[cut.edge] = cut.crossings as i64;
        }
        c
    }
}

pub fn extract_section(
    g: &Digraph,
    analysis: &AlphaAnalysis,
    potential: &SectionPotential,
    level: f64,
    grid: Option<&Grid>,
) -> Result<CrossSection, SectionError> {
    if !level.is_finite() || level == libm::floor(level) {
        return Err(SectionError::LevelOnChainValue);
    }
    let q = &potential.values;
    let alpha = &analysis.alpha;
    let mut cut_edges = Vec::new();
    let mut recurrent_contacts = 0;
    for e in g.edges() {
        let c = q[e.target as usize] + alpha.pair(&e.weight) - q[e.source as usize];
        if c < 0 {
            return Err(SectionError::NegativeCrossing { edge: e.index, crossings: c });
        }
        if c > 0 {
            if analysis.chain_of[e.source as usize].is_some() || analysis.chain_of[e.target as usize].is_some() {
                recurrent_contacts += 1;
            }
            cut_edges.push(CutEdge { edge: e.index, source: e.source, target: e.target, crossings: c as u64 });
        }
    }
    let mut section = CrossSection {
        alpha: *alpha,
        level,
        labeling: potential.labeling.clone(),
        cut_edges,
        class_verified: false,
        recurrent_contacts,
        polylines: Vec::new(),
    };
    section.class_verified = integrate_crossings(g, alpha, &section.crossings(g.edge_count())).is_ok();
    if let Some(grid) = grid {
        if grid.dim() == 2 && grid.cell_count() == g.vertex_count() {
            section.polylines = trace_polylines(grid, q, alpha);
        }
    }
    Ok(section)
}

/// Recovers a potential from crossing counts, one free constant per weakly
/// connected component; `None` marks vertices not reached.
fn integrate_crossings(g: &Digraph, alpha: &CohomologyClass, crossings: &[i64]) -> Result<Vec<Option<i64>>, SectionError> {
    let n = g.vertex_count();
    let (in_offsets, in_edges) = g.in_edge_lists();
    let step = |e: usize| crossings[e] - alpha.pair(&g.weights()[e]);
    let mut h: Vec<Option<i64>> = alloc::vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if h[root].is_some() {
            continue;
        }
        h[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let hu = h[u].unwrap_or(0);
            let forward = g.out_edges(u as u32).map(|e| (e.index, e.target as usize, hu + step(e.index)));
            let backward = in_edges[in_offsets[u]..in_offsets[u + 1]]
                .iter()
                .map(|&e| (e, g.sources()[e] as usize, hu - step(e)));
            for (e, v, value) in forward.chain(backward).collect::<Vec<_>>() {
                match h[v] {
                    None => {
                        h[v] = Some(value);
                        queue.push_back(v);
                    }
                    Some(old) if old != value => return Err(SectionError::InconsistentCrossings { edge: e }),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(h)
}

/// Chain labels read off a section by integrating its crossings.
pub fn section_to_labeling(g: &Digraph, analysis: &AlphaAnalysis, section: &CrossSection) -> Result<Labeling, SectionError> {
    if section.alpha != analysis.alpha {
        return Err(SectionError::ClassMismatch);
    }
    let p = analysis.potentials.as_ref().ok_or(SectionError::NotQuasiLyapunov)?;
    let crossings = section.crossings(g.edge_count());
    if let Some(e) = section.cut_edges.iter().find(|c| c.edge >= g.edge_count()) {
        return Err(SectionError::InconsistentCrossings { edge: e.edge });
    }
    let h = integrate_crossings(g, &analysis.alpha, &crossings)?;
    // Reached vertices share the root of chain 0's component only if they are connected to it.
    let component = weak_components(g);
    let mut labels = Vec::with_capacity(analysis.chains.len());
    for (i, chain) in analysis.chains.iter().enumerate() {
        let r = chain[0] as usize;
        if component[r] != component[analysis.chains[0][0] as usize] {
            return Err(SectionError::Disconnected { chain: i });
        }
        let offset = h[r].unwrap_or(0) - p[r];
        if chain.iter().any(|&u| h[u as usize].unwrap_or(0) - p[u as usize] != offset) {
            return Err(SectionError::MeetsRecurrentSet { chain: i });
        }
        labels.push(h[r].unwrap_or(0));
    }
    Ok(Labeling::new(labels, analysis.alpha.n_alpha()))
}

fn weak_components(g: &Digraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for e in g.edges() {
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    (0..n as u32).map(|v| find(&mut parent, v)).collect()
}
