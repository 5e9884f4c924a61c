//! Minimum cycle mean: Howard policy iteration in exact arithmetic, plus
//! Karp's dynamic program for small graphs.

use alloc::vec::Vec;

use crate::rational::Rational;
use crate::scc::tarjan;
use crate::shortest::IntGraph;

/// A cycle attaining the minimum mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMean {
    pub value: Rational,
    /// Edge indices of the graph, in walk order.
    pub cycle: Vec<usize>,
}

struct Local {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<i64>,
    global_edge: Vec<usize>,
}

/// Minimum over all cycles of weight / length, or `None` for an acyclic graph.
pub fn min_cycle_mean(g: &IntGraph) -> Option<CycleMean> {
    let comps = tarjan(&g.offsets, &g.targets, |_| true);
    let members = comps.members();
    let mut local_index = alloc::vec![usize::MAX; g.vertex_count()];
    let mut best: Option<CycleMean> = None;
    for (c, verts) in members.iter().enumerate() {
        if !comps.cyclic[c] {
            continue;
        }
        for (i, &v) in verts.iter().enumerate() {
            local_index[v as usize] = i;
        }
        let mut local = Local { offsets: alloc::vec![0], targets: Vec::new(), weights: Vec::new(), global_edge: Vec::new() };
        for &v in verts {
            let v = v as usize;
            for e in g.offsets[v]..g.offsets[v + 1] {
                let t = g.targets[e] as usize;
                if comps.component[t] as usize == c {
                    local.targets.push(local_index[t]);
                    local.weights.push(g.weights[e]);
                    local.global_edge.push(e);
                }
            }
            local.offsets.push(local.targets.len());
        }
        let (value, cycle) = howard(&local);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CycleMean { value, cycle: cycle.iter().map(|&e| local.global_edge[e]).collect() });
        }
    }
    best
}

/// Policy iteration on a strongly connected graph where every vertex has an out-edge.
fn howard(g: &Local) -> (Rational, Vec<usize>) {
    let m = g.offsets.len() - 1;
    let mut policy: Vec<usize> = (0..m)
        .map(|v| (g.offsets[v]..g.offsets[v + 1]).min_by_key(|&e| g.weights[e]).expect("vertex without out-edge"))
        .collect();
    let mut eta = alloc::vec![Rational::integer(0); m];
    let mut bias = alloc::vec![0i64; m];
    let mut state = alloc::vec![0u8; m];
    let mut path = Vec::new();
    let mut cycle = Vec::new();
    loop {
        state.iter_mut().for_each(|s| *s = 0);
        for s in 0..m {
            if state[s] != 0 {
                continue;
            }
            path.clear();
            let mut v = s;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = g.targets[policy[v]];
            }
            if state[v] == 1 {
                cycle.clear();
                let mut total = 0i64;
                let mut u = v;
                loop {
                    cycle.push(u);
                    total += g.weights[policy[u]];
                    u = g.targets[policy[u]];
                    if u == v {
                        break;
                    }
                }
                let mean = Rational::new(total, cycle.len() as i64);
                let (p, q) = (mean.numer(), mean.denom());
                bias[v] = 0;
                eta[v] = mean;
                state[v] = 2;
                for &u in cycle.iter().skip(1).rev() {
                    let next = g.targets[policy[u]];
                    bias[u] = g.weights[policy[u]] * q - p + bias[next];
                    eta[u] = mean;
                    state[u] = 2;
                }
            }
            for &u in path.iter().rev() {
                if state[u] == 2 {
                    continue;
                }
                let next = g.targets[policy[u]];
                let mean = eta[next];
                eta[u] = mean;
                bias[u] = g.weights[policy[u]] * mean.denom() - mean.numer() + bias[next];
                state[u] = 2;
            }
        }

        let mut changed = false;
        for v in 0..m {
            let mut best = eta[v];
            let mut choice = None;
            for e in g.offsets[v]..g.offsets[v + 1] {
                let u = g.targets[e];
                if eta[u] < best {
                    best = eta[u];
                    choice = Some(e);
                }
            }
            if let Some(e) = choice {
                policy[v] = e;
                changed = true;
            }
        }
        if changed {
            continue;
        }
        for v in 0..m {
            let (p, q) = (eta[v].numer(), eta[v].denom());
            let mut best = bias[v];
            let mut choice = None;
            for e in g.offsets[v]..g.offsets[v + 1] {
                let u = g.targets[e];
                if eta[u] != eta[v] {
                    continue;
                }
                let val = g.weights[e] * q - p + bias[u];
                if val < best {
                    best = val;
                    choice = Some(e);
                }
            }
            if let Some(e) = choice {
                policy[v] = e;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let start = (0..m).min_by(|&a, &b| eta[a].cmp(&eta[b]).then(a.cmp(&b))).expect("empty component");
    let mut v = start;
    for _ in 0..m {
        v = g.targets[policy[v]];
    }
    let anchor = v;
    let mut edges = Vec::new();
    loop {
        edges.push(policy[v]);
        v = g.targets[policy[v]];
        if v == anchor {
            break;
        }
    }
    (eta[start], edges)
}

/// Karp's algorithm. Uses `O(n^2)` memory, so it is meant for small graphs.
pub fn karp_min_cycle_mean(g: &IntGraph) -> Option<Rational> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let mut table: Vec<Vec<Option<i64>>> = alloc::vec![alloc::vec![None; n]; n + 1];
    table[0].iter_mut().for_each(|x| *x = Some(0));
    for k in 1..=n {
        for u in 0..n {
            let Some(du) = table[k - 1][u] else { continue };
            for e in g.offsets[u]..g.offsets[u + 1] {
                let v = g.targets[e] as usize;
                let cand = du + g.weights[e];
                if table[k][v].is_none_or(|old| cand < old) {
                    table[k][v] = Some(cand);
                }
            }
        }
    }
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let Some(dn) = table[n][v] else { continue };
        let mut worst: Option<Rational> = None;
        for (k, row) in table.iter().enumerate().take(n) {
            if let Some(dk) = row[v] {
                let r = Rational::new(dn - dk, (n - k) as i64);
                if worst.is_none_or(|w| r > w) {
                    worst = Some(r);
                }
            }
        }
        if let Some(w) = worst {
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
    }
    best
}
