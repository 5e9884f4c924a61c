//! Recurrent set, recurrence chains, their order, and a discrete Lyapunov function.

use alloc::vec::Vec;

use crate::digraph::Digraph;
use crate::scc::{tarjan, Components};

/// Recurrence chains of a graph and the reachability order between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub chain_of: Vec<Option<u32>>,
    /// Sorted vertex lists; chains are numbered by their smallest vertex.
    pub chains: Vec<Vec<u32>>,
    /// Pairs `(a, b)` with `a != b` such that chain `a` reaches chain `b`, sorted.
    pub order: Vec<(u32, u32)>,
    pub non_recurrent: Vec<u32>,
}

impl ChainDecomposition {
    pub fn precedes(&self, a: u32, b: u32) -> bool {
        self.order.binary_search(&(a, b)).is_ok()
    }
}

fn components(g: &Digraph) -> Components {
    tarjan(g.offsets(), g.targets(), |_| true)
}

/// Vertices lying on a directed cycle, self-loops included.
pub fn recurrent_set(g: &Digraph) -> Vec<u32> {
    let c = components(g);
    (0..g.vertex_count() as u32).filter(|&v| c.cyclic[c.component[v as usize] as usize]).collect()
}

/// Groups cyclic components by smallest vertex and renumbers them in that order.
pub(crate) fn number_chains(c: &Components) -> (Vec<Option<u32>>, Vec<Vec<u32>>, Vec<Option<u32>>) {
    let mut first: Vec<Option<u32>> = alloc::vec![None; c.count];
    for (v, &comp) in c.component.iter().enumerate() {
        if c.cyclic[comp as usize] && first[comp as usize].is_none() {
            first[comp as usize] = Some(v as u32);
        }
    }
    let mut cyclic: Vec<(u32, usize)> = first
        .iter()
        .enumerate()
        .filter_map(|(comp, f)| f.map(|v| (v, comp)))
        .collect();
    cyclic.sort_unstable();
    let mut chain_of_comp = alloc::vec![None; c.count];
    for (id, &(_, comp)) in cyclic.iter().enumerate() {
        chain_of_comp[comp] = Some(id as u32);
    }
    let mut chains = alloc::vec![Vec::new(); cyclic.len()];
    let mut chain_of = alloc::vec![None; c.component.len()];
    for (v, &comp) in c.component.iter().enumerate() {
        if let Some(id) = chain_of_comp[comp as usize] {
            chains[id as usize].push(v as u32);
            chain_of[v] = Some(id);
        }
    }
    (chain_of, chains, chain_of_comp)
}

pub fn chain_decomposition(g: &Digraph) -> ChainDecomposition {
    let c = components(g);
    let (chain_of, chains, chain_of_comp) = number_chains(&c);
    let k = chains.len();
    let words = k.div_ceil(64).max(1);
    let mut reach = alloc::vec![0u64; c.count * words];
    // Component ids are a reverse topological order, so successors are finished first.
    let mut by_comp: Vec<Vec<u32>> = alloc::vec![Vec::new(); c.count];
    for v in 0..g.vertex_count() {
        by_comp[c.component[v] as usize].push(v as u32);
    }
    for comp in 0..c.count {
        for &v in &by_comp[comp] {
            for e in g.out_edges(v) {
                let d = c.component[e.target as usize] as usize;
                if d == comp {
                    continue;
                }
                for w in 0..words {
                    let bits = reach[d * words + w];
                    reach[comp * words + w] |= bits;
                }
                if let Some(id) = chain_of_comp[d] {
                    reach[comp * words + id as usize / 64] |= 1u64 << (id % 64);
                }
            }
        }
    }
    let mut order = Vec::new();
    for (comp, id) in chain_of_comp.iter().enumerate() {
        if let Some(a) = id {
            for b in 0..k {
                if b as u32 != *a && reach[comp * words + b / 64] >> (b % 64) & 1 == 1 {
                    order.push((*a, b as u32));
                }
            }
        }
    }
    order.sort_unstable();
    let non_recurrent = (0..g.vertex_count() as u32).filter(|&v| chain_of[v as usize].is_none()).collect();
    ChainDecomposition { chain_of, chains, order, non_recurrent }
}

/// Every vertex recurrent and all of them in one chain.
pub fn is_chain_recurrent(g: &Digraph) -> bool {
    let c = components(g);
    c.count == 1 && c.cyclic[0]
}

/// Constant on each strongly connected component and strictly decreasing
/// along every edge between components.
///
/// The value of a component is the length of the longest path from it to a
/// sink of the condensation, plus a fraction below one that separates
/// components of equal length.
pub fn lyapunov_potential(g: &Digraph) -> Vec<f64> {
    let c = components(g);
    let mut longest = alloc::vec![0u64; c.count];
    let mut by_comp: Vec<Vec<u32>> = alloc::vec![Vec::new(); c.count];
    for v in 0..g.vertex_count() {
        by_comp[c.component[v] as usize].push(v as u32);
    }
    for comp in 0..c.count {
        let mut best = 0;
        for &v in &by_comp[comp] {
            for e in g.out_edges(v) {
                let d = c.component[e.target as usize] as usize;
                if d != comp {
                    best = best.max(longest[d] + 1);
                }
            }
        }
        longest[comp] = best;
    }
    let scale = c.count.max(1) as f64;
    (0..g.vertex_count())
        .map(|v| {
            let comp = c.component[v] as usize;
            longest[comp] as f64 + comp as f64 / scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::WindingVector;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Digraph {
        Digraph::from_edges(n, edges.iter().map(|&(a, b)| (a, b, WindingVector::ZERO)))
    }

    #[test]
    fn repeller_attractor_toy() {
        // 0 <-> 1 repeller, 2 transient, 3 <-> 4 attractor, 5 self-loop attractor.
        let g = graph(6, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 3), (2, 5), (5, 5)]);
        assert_eq!(recurrent_set(&g), alloc::vec![0, 1, 3, 4, 5]);
        let d = chain_decomposition(&g);
        assert_eq!(d.chains, alloc::vec![alloc::vec![0, 1], alloc::vec![3, 4], alloc::vec![5]]);
        assert_eq!(d.order, alloc::vec![(0, 1), (0, 2)]);
        assert_eq!(d.non_recurrent, alloc::vec![2]);
        assert!(d.precedes(0, 2) && !d.precedes(1, 2));
        assert!(!is_chain_recurrent(&g));
        let l = lyapunov_potential(&g);
        assert_eq!(l[0], l[1]);
        assert!(l[1] > l[2] && l[2] > l[3] && l[2] > l[5]);
        assert_ne!(l[3], l[5]);
    }

    #[test]
    fn single_cycle() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(is_chain_recurrent(&g));
        let l = lyapunov_potential(&g);
        assert!(l.iter().all(|x| *x == l[0]));
        assert!(!is_chain_recurrent(&graph(1, &[])));
        assert!(is_chain_recurrent(&graph(1, &[(0, 0)])));
    }

    #[test]
    fn dag_strictly_decreasing() {
        let g = graph(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 4)]);
        assert!(recurrent_set(&g).is_empty());
        let l = lyapunov_potential(&g);
        for e in g.edges() {
            assert!(l[e.source as usize] > l[e.target as usize]);
        }
    }
}
