//! Compressed sparse directed multigraph with winding-vector weights.

use alloc::vec::Vec;

use crate::homology::WindingVector;

/// Directed graph in CSR form. Parallel edges are allowed when their windings differ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    offsets: Vec<usize>,
    sources: Vec<u32>,
    targets: Vec<u32>,
    weights: Vec<WindingVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeRef {
    pub index: usize,
    pub source: u32,
    pub target: u32,
    pub weight: WindingVector,
}

impl Digraph {
    /// Builds from an unordered edge list; exact duplicates are merged.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Digraph
    where
        I: IntoIterator<Item = (u32, u32, WindingVector)>,
    {
        let mut list: Vec<(u32, u32, WindingVector)> = edges.into_iter().collect();
        list.sort_unstable();
        list.dedup();
        let mut offsets = alloc::vec![0usize; vertex_count + 1];
        for (s, _, _) in &list {
            assert!((*s as usize) < vertex_count, "edge source out of range");
            offsets[*s as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let mut sources = Vec::with_capacity(list.len());
        let mut targets = Vec::with_capacity(list.len());
        let mut weights = Vec::with_capacity(list.len());
        for (s, t, w) in list {
            assert!((t as usize) < vertex_count, "edge target out of range");
            sources.push(s);
            targets.push(t);
            weights.push(w);
        }
        Digraph { offsets, sources, targets, weights }
    }

    /// Builds from per-vertex rows of `(target, weight)`; rows are sorted and deduplicated.
    pub fn from_rows(mut rows: Vec<Vec<(u32, WindingVector)>>) -> Digraph {
        let n = rows.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let total: usize = rows.iter().map(|r| r.len()).sum();
        let mut sources = Vec::with_capacity(total);
        let mut targets = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for (s, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            for (t, w) in row.iter() {
                assert!((*t as usize) < n, "edge target out of range");
                sources.push(s as u32);
                targets.push(*t);
                weights.push(*w);
            }
            offsets.push(targets.len());
        }
        Digraph { offsets, sources, targets, weights }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn sources(&self) -> &[u32] {
        &self.sources
    }

    pub fn weights(&self) -> &[WindingVector] {
        &self.weights
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn edge(&self, index: usize) -> EdgeRef {
        EdgeRef {
            index,
            source: self.sources[index],
            target: self.targets[index],
            weight: self.weights[index],
        }
    }

    pub fn out_edges(&self, v: u32) -> impl Iterator<Item = EdgeRef> + '_ {
        (self.offsets[v as usize]..self.offsets[v as usize + 1]).map(move |i| self.edge(i))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edge_count()).map(move |i| self.edge(i))
    }

    /// For every vertex, the indices of edges entering it.
    pub fn in_edge_lists(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.vertex_count();
        let mut offsets = alloc::vec![0usize; n + 1];
        for &t in &self.targets {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut list = alloc::vec![0usize; self.edge_count()];
        for (e, &t) in self.targets.iter().enumerate() {
            list[fill[t as usize]] = e;
            fill[t as usize] += 1;
        }
        (offsets, list)
    }

    /// Total winding of a sequence of edge indices.
    pub fn path_weight(&self, edges: &[usize]) -> WindingVector {
        edges.iter().map(|&e| self.weights[e]).sum()
    }

    /// True when consecutive edges chain head to tail, and the last returns to the first.
    pub fn is_closed_walk(&self, edges: &[usize]) -> bool {
        if edges.is_empty() {
            return false;
        }
        edges.windows(2).all(|w| self.targets[w[0]] == self.sources[w[1]])
            && self.targets[*edges.last().unwrap()] == self.sources[edges[0]]
    }
}
