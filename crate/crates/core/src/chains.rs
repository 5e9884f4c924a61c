//! The α-chain graph: α-recurrence chains with their lifted shift matrix.
//!
//! `shifts[i][j]` is the least deck translation `k` such that the lift of
//! chain `i` reaches `k` copies of chain `j`, in units of the primitive class.
//! The α-weight of that cheapest path is `n_α · shifts[i][j]`, and a labeling
//! `g` is feasible when `g[i] - g[j] <= n_α · shifts[i][j]` for every reachable
//! pair.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::alpha::{alpha_graph, AlphaAnalysis};
use crate::digraph::Digraph;
use crate::grid::Grid;
use crate::homology::CohomologyClass;
use crate::shortest::dijkstra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shift {
    Finite(i64),
    Unreachable,
}

impl Shift {
    pub fn finite(self) -> Option<i64> {
        match self {
            Shift::Finite(v) => Some(v),
            Shift::Unreachable => None,
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Finite(v) => write!(f, "{v}"),
            Shift::Unreachable => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInfo {
    /// Smallest vertex of the chain.
    pub representative: u32,
    pub vertices: Vec<u32>,
}

/// One refinement level of the same flow and class.
#[derive(Clone, Copy, Debug)]
pub struct Level<'a> {
    pub graph: &'a Digraph,
    pub grid: &'a Grid,
    pub analysis: &'a AlphaAnalysis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainGraphError {
    NoLevels,
    NotQuasiLyapunov { level: usize },
    ClassMismatch { level: usize },
    /// Chains at `level` cannot be matched one-to-one with the base chains.
    AmbiguousMatch { level: usize, detail: String },
}

impl fmt::Display for ChainGraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainGraphError::NoLevels => f.write_str("no refinement levels given"),
            ChainGraphError::NotQuasiLyapunov { level } => {
                write!(f, "level {level}: -alpha is not quasi-Lyapunov")
            }
            ChainGraphError::ClassMismatch { level } => write!(f, "level {level} analyses a different class"),
            ChainGraphError::AmbiguousMatch { level, detail } => {
                write!(f, "level {level}: ambiguous chain matching: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaChainGraph {
    pub alpha: CohomologyClass,
    pub n_alpha: u64,
    /// Chains of the base (coarsest) level.
    pub chains: Vec<ChainInfo>,
    /// Base-level shifts, `shifts[i][i] == Finite(0)`.
    pub shifts: Vec<Vec<Shift>>,
    /// Shifts per level, indexed like the base chains.
    pub level_shifts: Vec<Vec<Vec<Shift>>>,
    pub divergent: Vec<Vec<bool>>,
    pub reachable: Vec<Vec<bool>>,
}

impl AlphaChainGraph {
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Upper bound on `g[i] - g[j]` in α-weight units, `None` when unconstrained.
    pub fn constraint(&self, i: usize, j: usize) -> Option<i64> {
        self.shifts[i][j].finite().map(|a| a * self.n_alpha as i64)
    }

    /// Every pair reachable both ways with no divergent shift.
    pub fn is_transitive(&self) -> bool {
        let k = self.chains.len();
        (0..k).all(|i| (0..k).all(|j| i == j || (self.reachable[i][j] && !self.divergent[i][j])))
    }

    /// The first pair that breaks transitivity, divergent pairs reported first.
    pub fn obstruction(&self) -> Option<(usize, usize, bool)> {
        let k = self.chains.len();
        let pairs = || (0..k).flat_map(move |i| (0..k).map(move |j| (i, j))).filter(|(i, j)| i != j);
        pairs()
            .find(|&(i, j)| self.divergent[i][j])
            .map(|(i, j)| (i, j, true))
            .or_else(|| pairs().find(|&(i, j)| !self.reachable[i][j]).map(|(i, j)| (i, j, false)))
    }
}

/// Chain graph from a single graph.
pub fn chain_graph(g: &Digraph, analysis: &AlphaAnalysis) -> Result<AlphaChainGraph, ChainGraphError> {
    let grid = Grid::new(&[g.vertex_count().max(1), 1]).map_err(|_| ChainGraphError::NoLevels)?;
    build_chain_graph(&[Level { graph: g, grid: &grid, analysis }])
}

/// Shift matrix between the given representatives, in deck units.
pub fn shift_matrix(g: &Digraph, analysis: &AlphaAnalysis, reps: &[u32]) -> Option<Vec<Vec<Shift>>> {
    let p = analysis.potentials.as_ref()?;
    let ag = alpha_graph(g, &analysis.alpha);
    let dist: Vec<i64> = p.iter().map(|x| -x).collect();
    let n = analysis.alpha.n_alpha() as i64;
    Some(
        reps.iter()
            .map(|&r| {
                let d = dijkstra(&ag, &dist, r);
                reps.iter()
                    .map(|&s| match d[s as usize] {
                        Some(w) if n == 0 => {
                            debug_assert_eq!(w, 0);
                            Shift::Finite(0)
                        }
                        Some(w) => {
                            debug_assert_eq!(w % n, 0);
                            Shift::Finite(w / n)
                        }
                        None => Shift::Unreachable,
                    })
                    .collect()
            })
            .collect(),
    )
}

/// For each base chain, the matching chain at a finer level, by largest cell overlap.
pub fn match_chains(
    base_grid: &Grid,
    base: &[Vec<u32>],
    fine_grid: &Grid,
    fine: &[Vec<u32>],
    level: usize,
) -> Result<Vec<usize>, ChainGraphError> {
    let ambiguous = |detail: String| ChainGraphError::AmbiguousMatch { level, detail };
    let mut owner = alloc::vec![u32::MAX; base_grid.cell_count()];
    for (i, chain) in base.iter().enumerate() {
        for &v in chain {
            owner[v as usize] = i as u32;
        }
    }
    let mut overlap = alloc::vec![alloc::vec![0usize; fine.len()]; base.len()];
    for (f, chain) in fine.iter().enumerate() {
        for &v in chain {
            let c = base_grid
                .coarse_cell(fine_grid, v as usize)
                .ok_or_else(|| ambiguous(String::from("grids are not nested")))?;
            if owner[c] != u32::MAX {
                overlap[owner[c] as usize][f] += 1;
            }
        }
    }
    let mut out = Vec::with_capacity(base.len());
    let mut taken = alloc::vec![false; fine.len()];
    for (i, row) in overlap.iter().enumerate() {
        let best = row.iter().copied().max().unwrap_or(0);
        if best == 0 {
            return Err(ambiguous(alloc::format!("chain {i} has no counterpart")));
        }
        let winners: Vec<usize> = (0..row.len()).filter(|&f| row[f] == best).collect();
        if winners.len() > 1 {
            return Err(ambiguous(alloc::format!("chain {i} overlaps {} chains equally", winners.len())));
        }
        let f = winners[0];
        if taken[f] {
            return Err(ambiguous(alloc::format!("chain {i} shares its counterpart with another chain")));
        }
        taken[f] = true;
        out.push(f);
    }
    Ok(out)
}

/// Chain graph over a refinement sequence, coarsest first.
pub fn build_chain_graph(levels: &[Level<'_>]) -> Result<AlphaChainGraph, ChainGraphError> {
    let base = levels.first().ok_or(ChainGraphError::NoLevels)?;
    let alpha = base.analysis.alpha;
    let mut level_shifts = Vec::with_capacity(levels.len());
    for (l, level) in levels.iter().enumerate() {
        if level.analysis.alpha != alpha {
            return Err(ChainGraphError::ClassMismatch { level: l });
        }
        let chains = &level.analysis.chains;
        let order: Vec<usize> = if l == 0 {
            (0..chains.len()).collect()
        } else {
            match_chains(base.grid, &base.analysis.chains, level.grid, chains, l)?
        };
        let reps: Vec<u32> = order.iter().map(|&c| chains[c][0]).collect();
        let shifts = shift_matrix(level.graph, level.analysis, &reps)
            .ok_or(ChainGraphError::NotQuasiLyapunov { level: l })?;
        level_shifts.push(shifts);
    }
    let k = base.analysis.chains.len();
    let shifts = level_shifts[0].clone();
    let reachable: Vec<Vec<bool>> = shifts.iter().map(|row| row.iter().map(|s| s.finite().is_some()).collect()).collect();
    let mut divergent = alloc::vec![alloc::vec![false; k]; k];
    if levels.len() >= 2 {
        for i in 0..k {
            for j in 0..k {
                if i == j || !reachable[i][j] {
                    continue;
                }
                divergent[i][j] = level_shifts.windows(2).all(|w| match (w[0][i][j], w[1][i][j]) {
                    (Shift::Finite(a), Shift::Finite(b)) => b > a,
                    (Shift::Finite(_), Shift::Unreachable) => true,
                    _ => false,
                });
            }
        }
    }
    let chains = base
        .analysis
        .chains
        .iter()
        .map(|c| ChainInfo { representative: c[0], vertices: c.clone() })
        .collect();
    Ok(AlphaChainGraph { alpha, n_alpha: alpha.n_alpha(), chains, shifts, level_shifts, divergent, reachable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::WindingVector;

    fn w(a: i64, b: i64) -> WindingVector {
        WindingVector::new(&[a, b])
    }

    /// Three chains (self-loops of weight zero) joined by weighted edges.
    fn three_chains() -> Digraph {
        Digraph::from_edges(
            5,
            [
                (0, 0, w(1, 0)),
                (1, 1, w(1, 0)),
                (2, 2, w(1, 0)),
                (0, 3, w(0, 1)),
                (3, 1, w(0, 1)),
                (1, 4, w(0, 0)),
                (4, 2, w(0, 1)),
                (2, 0, w(0, 1)),
                (0, 2, w(0, 4)),
            ],
        )
    }

    #[test]
    fn shifts_match_floyd_warshall() {
        let g = three_chains();
        let alpha = CohomologyClass::new(&[0, 1]).unwrap();
        let a = AlphaAnalysis::compute(&g, &alpha);
        let cg = chain_graph(&g, &a).unwrap();
        assert_eq!(cg.chain_count(), 3);
        let n = g.vertex_count();
        let mut fw = alloc::vec![alloc::vec![None; n]; n];
        for (v, row) in fw.iter_mut().enumerate() {
            row[v] = Some(0i64);
        }
        for e in g.edges() {
            let wt = alpha.pair(&e.weight);
            let cell = &mut fw[e.source as usize][e.target as usize];
            *cell = Some(cell.map_or(wt, |c: i64| c.min(wt)));
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (fw[i][k], fw[k][j]) {
                        fw[i][j] = Some(fw[i][j].map_or(a + b, |c| c.min(a + b)));
                    }
                }
            }
        }
        for (i, ci) in cg.chains.iter().enumerate() {
            for (j, cj) in cg.chains.iter().enumerate() {
                let expect = fw[ci.representative as usize][cj.representative as usize];
                assert_eq!(cg.shifts[i][j].finite(), expect);
            }
        }
        assert_eq!(cg.shifts[0][2], Shift::Finite(3));
        assert!(cg.is_transitive());
    }

    #[test]
    fn shifts_are_in_deck_units() {
        let g = three_chains();
        let a = AlphaAnalysis::compute(&g, &CohomologyClass::new(&[0, 2]).unwrap());
        let cg = chain_graph(&g, &a).unwrap();
        assert_eq!(cg.n_alpha, 2);
        assert_eq!(cg.shifts[0][2], Shift::Finite(3));
        assert_eq!(cg.constraint(0, 2), Some(6));
    }

    #[test]
    fn one_way_pair_is_not_transitive() {
        let g = Digraph::from_edges(2, [(0, 0, w(1, 0)), (1, 1, w(1, 0)), (0, 1, w(0, 2))]);
        let a = AlphaAnalysis::compute(&g, &CohomologyClass::new(&[0, 1]).unwrap());
        let cg = chain_graph(&g, &a).unwrap();
        assert_eq!(cg.shifts[1][0], Shift::Unreachable);
        assert!(!cg.is_transitive());
        assert_eq!(cg.obstruction(), Some((1, 0, false)));
    }

    #[test]
    fn divergence_across_levels() {
        // Two chains whose connecting cost grows with the level.
        let make = |cost: i64| {
            Digraph::from_edges(
                4,
                [(0, 0, w(1, 0)), (3, 3, w(1, 0)), (0, 1, w(0, cost)), (1, 3, w(0, 0)), (3, 2, w(0, cost)), (2, 0, w(0, 0))],
            )
        };
        let alpha = CohomologyClass::new(&[0, 1]).unwrap();
        let grid = Grid::new(&[4, 1]).unwrap();
        let graphs = [make(1), make(2), make(3)];
        let analyses: Vec<AlphaAnalysis> = graphs.iter().map(|g| AlphaAnalysis::compute(g, &alpha)).collect();
        let levels: Vec<Level> =
            graphs.iter().zip(&analyses).map(|(graph, analysis)| Level { graph, grid: &grid, analysis }).collect();
        let cg = build_chain_graph(&levels).unwrap();
        assert!(cg.divergent[0][1] && cg.divergent[1][0]);
        assert_eq!(cg.level_shifts.len(), 3);
        assert!(!cg.is_transitive());
        assert_eq!(cg.obstruction(), Some((0, 1, true)));
        let flat = build_chain_graph(&levels[..1]).unwrap();
        assert!(flat.is_transitive());
    }

    #[test]
    fn matching_reports_ties() {
        let coarse = Grid::new(&[2, 1]).unwrap();
        let fine = Grid::new(&[4, 1]).unwrap();
        let base = alloc::vec![alloc::vec![0u32], alloc::vec![1u32]];
        assert_eq!(match_chains(&coarse, &base, &fine, &[alloc::vec![2, 3], alloc::vec![0]], 1).unwrap(), alloc::vec![1, 0]);
        let tie = match_chains(&coarse, &base[..1], &fine, &[alloc::vec![0], alloc::vec![1]], 1);
        assert!(matches!(tie, Err(ChainGraphError::AmbiguousMatch { .. })));
        let missing = match_chains(&coarse, &base, &fine, &[alloc::vec![0]], 1);
        assert!(matches!(missing, Err(ChainGraphError::AmbiguousMatch { .. })));
    }
}
