//! Integer-weighted shortest paths: queue-based Bellman-Ford with negative-cycle
//! extraction, and Dijkstra over reduced costs.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::digraph::Digraph;

const NONE: usize = usize::MAX;

/// CSR graph with scalar integer weights. Edge indices match the graph it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntGraph {
    pub offsets: Vec<usize>,
    pub sources: Vec<u32>,
    pub targets: Vec<u32>,
    pub weights: Vec<i64>,
}

impl IntGraph {
    pub fn from_digraph<F: Fn(usize) -> i64>(g: &Digraph, weight: F) -> IntGraph {
        IntGraph {
            offsets: g.offsets().to_vec(),
            sources: g.sources().to_vec(),
            targets: g.targets().to_vec(),
            weights: (0..g.edge_count()).map(weight).collect(),
        }
    }

    /// Builds from an unordered edge list; the returned permutation maps new edge index to list position.
    pub fn from_edges(n: usize, edges: &[(u32, u32, i64)]) -> (IntGraph, Vec<usize>) {
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| (edges[i].0, edges[i].1, edges[i].2, i));
        let mut offsets = alloc::vec![0usize; n + 1];
        for (s, _, _) in edges {
            offsets[*s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let g = IntGraph {
            offsets,
            sources: order.iter().map(|&i| edges[i].0).collect(),
            targets: order.iter().map(|&i| edges[i].1).collect(),
            weights: order.iter().map(|&i| edges[i].2).collect(),
        };
        (g, order)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }
}

/// Outcome of a feasibility search from a virtual source joined to every vertex by a zero edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Distances `d` with `d(v) <= d(u) + w` on every edge, all `<= 0`.
    Distances(Vec<i64>),
    /// Edge indices of a negative cycle, in walk order.
    NegativeCycle(Vec<usize>),
}

/// Queue-based Bellman-Ford. The predecessor graph is scanned for a cycle
/// after every `n` relaxations; such a cycle always has negative weight.
pub fn feasibility(g: &IntGraph) -> Feasibility {
    let n = g.vertex_count();
    let mut dist = alloc::vec![0i64; n];
    let mut pred = alloc::vec![NONE; n];
    let mut queued = alloc::vec![true; n];
    let mut queue: VecDeque<u32> = (0..n as u32).collect();
    let mut relaxations = 0usize;
    let period = n.max(1);
    while let Some(u) = queue.pop_front() {
        let u = u as usize;
        queued[u] = false;
        let du = dist[u];
        for e in g.offsets[u]..g.offsets[u + 1] {
            let v = g.targets[e] as usize;
            let nd = du + g.weights[e];
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = e;
                relaxations += 1;
                if relaxations.is_multiple_of(period) {
                    if let Some(cycle) = predecessor_cycle(g, &pred) {
                        return Feasibility::NegativeCycle(cycle);
                    }
                }
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v as u32);
                }
            }
        }
        if let Some(cycle) = self_negative(g, u) {
            return Feasibility::NegativeCycle(cycle);
        }
    }
    Feasibility::Distances(dist)
}

fn self_negative(g: &IntGraph, u: usize) -> Option<Vec<usize>> {
    (g.offsets[u]..g.offsets[u + 1])
        .find(|&e| g.targets[e] as usize == u && g.weights[e] < 0)
        .map(|e| alloc::vec![e])
}

fn predecessor_cycle(g: &IntGraph, pred: &[usize]) -> Option<Vec<usize>> {
    let n = pred.len();
    let mut mark = alloc::vec![0u32; n];
    for start in 0..n {
        if mark[start] != 0 {
            continue;
        }
        let stamp = start as u32 + 1;
        let mut v = start;
        loop {
            if mark[v] == stamp {
                let mut cycle = Vec::new();
                let mut w = v;
                loop {
                    let e = pred[w];
                    cycle.push(e);
                    w = g.sources[e] as usize;
                    if w == v {
                        break;
                    }
                }
                cycle.reverse();
                return Some(cycle);
            }
            if mark[v] != 0 {
                break;
            }
            mark[v] = stamp;
            if pred[v] == NONE {
                break;
            }
            v = g.sources[pred[v]] as usize;
        }
    }
    None
}

/// Single-source shortest distances using nonnegative reduced costs
/// `w + d(u) - d(v)` from feasible distances `d`. Returns true distances.
pub fn dijkstra(g: &IntGraph, feasible: &[i64], source: u32) -> Vec<Option<i64>> {
    let n = g.vertex_count();
    let mut reduced: Vec<Option<i64>> = alloc::vec![None; n];
    let mut heap = BinaryHeap::new();
    reduced[source as usize] = Some(0);
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        let u = u as usize;
        if reduced[u] != Some(d) {
            continue;
        }
        for e in g.offsets[u]..g.offsets[u + 1] {
            let v = g.targets[e] as usize;
            let rc = g.weights[e] + feasible[u] - feasible[v];
            debug_assert!(rc >= 0, "reduced cost must be nonnegative");
            let nd = d + rc;
            if reduced[v].is_none_or(|old| nd < old) {
                reduced[v] = Some(nd);
                heap.push(Reverse((nd, v as u32)));
            }
        }
    }
    let s = feasible[source as usize];
    reduced.iter().enumerate().map(|(v, r)| r.map(|x| x - s + feasible[v])).collect()
}

/// Shortest path edge list from `source` to `target` under feasible distances, if reachable.
pub fn shortest_path(g: &IntGraph, feasible: &[i64], source: u32, target: u32) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut reduced: Vec<Option<i64>> = alloc::vec![None; n];
    let mut pred = alloc::vec![NONE; n];
    let mut heap = BinaryHeap::new();
    reduced[source as usize] = Some(0);
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        let u = u as usize;
        if reduced[u] != Some(d) {
            continue;
        }
        if u == target as usize {
            break;
        }
        for e in g.offsets[u]..g.offsets[u + 1] {
            let v = g.targets[e] as usize;
            let nd = d + g.weights[e] + feasible[u] - feasible[v];
            if reduced[v].is_none_or(|old| nd < old) {
                reduced[v] = Some(nd);
                pred[v] = e;
                heap.push(Reverse((nd, v as u32)));
            }
        }
    }
    reduced[target as usize]?;
    let mut path = Vec::new();
    let mut v = target as usize;
    while v != source as usize {
        let e = pred[v];
        path.push(e);
        v = g.sources[e] as usize;
    }
    path.reverse();
    Some(path)
}
