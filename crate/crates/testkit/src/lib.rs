//! Brute-force oracles and random instances for testing the xsect crates.
//!
//! Everything here works on plain edge lists and enumerates explicitly, so it
//! shares no code with the algorithms it checks. Only use it on small graphs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Winding = [i64; 2];

/// A small directed multigraph with planar winding weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, Winding)>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pair(alpha: Winding, w: Winding) -> i64 {
    alpha[0] * w[0] + alpha[1] * w[1]
}

fn random_winding<R: Rng>(rng: &mut R) -> Winding {
    [rng.gen_range(-2..=2), rng.gen_range(-2..=2)]
}

/// A nonzero covector with entries in `-2..=2`.
pub fn random_alpha<R: Rng>(rng: &mut R) -> Winding {
    loop {
        let a = random_winding(rng);
        if a != [0, 0] {
            return a;
        }
    }
}

/// Up to `max_n` vertices, sparse, unconstrained weights.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> RawGraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(n..=2 * n + 2);
    let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), random_winding(rng))).collect();
    RawGraph { n, edges }
}

/// A graph on which no cycle has negative α-weight, with many zero cycles.
///
/// Vertices get hidden heights `h`; an edge `u -> v` gets a winding whose
/// α-weight is `h(u) - h(v)` plus a small slack, usually zero.
pub fn planted_graph<R: Rng>(rng: &mut R, alpha: Winding, max_n: usize) -> RawGraph {
    let n = rng.gen_range(2..=max_n);
    let h: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let m = rng.gen_range(n..=2 * n + 2);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let slack = if rng.gen_bool(0.6) { 0 } else { rng.gen_range(1..=2) };
        let want = h[u] - h[v] + slack;
        for _ in 0..200 {
            let w = random_winding(rng);
            if pair(alpha, w) == want {
                edges.push((u, v, w));
                break;
            }
        }
    }
    RawGraph { n, edges }
}

/// Every simple cycle as a list of edge indices, starting at its smallest vertex.
pub fn simple_cycles(g: &RawGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut adj = vec![Vec::new(); g.n];
    for (i, &(u, v, _)) in g.edges.iter().enumerate() {
        adj[u].push((v, i));
    }
    fn walk(
        adj: &[Vec<(usize, usize)>],
        start: usize,
        at: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(v, e) in &adj[at] {
            if v == start {
                path.push(e);
                out.push(path.clone());
                path.pop();
            } else if v > start && !on_path[v] {
                on_path[v] = true;
                path.push(e);
                walk(adj, start, v, on_path, path, out);
                path.pop();
                on_path[v] = false;
            }
        }
    }
    let mut on_path = vec![false; g.n];
    for s in 0..g.n {
        on_path[s] = true;
        walk(&adj, s, s, &mut on_path, &mut Vec::new(), &mut out);
        on_path[s] = false;
    }
    out
}

fn cycle_weight(g: &RawGraph, alpha: Winding, cycle: &[usize]) -> i64 {
    cycle.iter().map(|&e| pair(alpha, g.edges[e].2)).sum()
}

/// No simple cycle has negative α-weight.
pub fn brute_quasi_lyapunov(g: &RawGraph, alpha: Winding) -> bool {
    simple_cycles(g).iter().all(|c| cycle_weight(g, alpha, c) >= 0)
}

/// Groups of vertices joined by zero-weight simple cycles, sorted, for a graph without negative cycles.
pub fn brute_alpha_chains(g: &RawGraph, alpha: Winding) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.n).collect();
    let mut on_zero = vec![false; g.n];
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for c in simple_cycles(g) {
        if cycle_weight(g, alpha, &c) != 0 {
            continue;
        }
        let first = g.edges[c[0]].0;
        for &e in &c {
            let u = g.edges[e].0;
            on_zero[u] = true;
            let (a, b) = (find(&mut parent, first), find(&mut parent, u));
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; g.n];
    for v in 0..g.n {
        if !on_zero[v] {
            continue;
        }
        let r = find(&mut parent, v);
        if root_index[r] == usize::MAX {
            root_index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_index[r]].push(v);
    }
    groups
}

pub fn brute_alpha_recurrent(g: &RawGraph, alpha: Winding) -> Vec<usize> {
    let mut v: Vec<usize> = brute_alpha_chains(g, alpha).into_iter().flatten().collect();
    v.sort_unstable();
    v
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Minimum of α-weight over length across simple cycles, as a reduced `(numerator, denominator)`.
pub fn brute_min_cycle_mean(g: &RawGraph, alpha: Winding) -> Option<(i64, i64)> {
    simple_cycles(g)
        .iter()
        .map(|c| (cycle_weight(g, alpha, c), c.len() as i64))
        .min_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)))
        .map(|(p, q)| {
            let d = gcd(p, q).max(1);
            (p / d, q / d)
        })
}

/// Least α-weight over simple paths from `s` to `t`; the empty path when `s == t`.
pub fn brute_shortest(g: &RawGraph, alpha: Winding, s: usize, t: usize) -> Option<i64> {
    if s == t {
        return Some(0);
    }
    fn walk(g: &RawGraph, alpha: Winding, at: usize, t: usize, acc: i64, seen: &mut [bool], best: &mut Option<i64>) {
        for &(u, v, w) in &g.edges {
            if u != at || seen[v] {
                continue;
            }
            let d = acc + pair(alpha, w);
            if v == t {
                *best = Some(best.map_or(d, |b| b.min(d)));
                continue;
            }
            seen[v] = true;
            walk(g, alpha, v, t, d, seen, best);
            seen[v] = false;
        }
    }
    let mut seen = vec![false; g.n];
    seen[s] = true;
    let mut best = None;
    walk(g, alpha, s, t, 0, &mut seen, &mut best);
    best
}

/// All-pairs least weights; `None` for unreachable pairs. Assumes no negative cycle.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<Option<i64>>> {
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(u, v, w) in edges {
        d[u][v] = Some(d[u][v].map_or(w, |x: i64| x.min(w)));
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|x| a + b < x) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Labelings with `g[0] = 0` and every other label in `[-window, window]` satisfying
/// `g[i] - g[j] <= bound(i, j)` whenever a bound is given, counted one by one.
pub fn brute_labeling_count<F: Fn(usize, usize) -> Option<i64>>(k: usize, window: i64, bound: F) -> u64 {
    if k == 0 {
        return 1;
    }
    let width = (2 * window + 1) as u64;
    let total = width.pow(k as u32 - 1);
    let mut count = 0;
    let mut labels = vec![0i64; k];
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut().skip(1) {
            *l = (c % width) as i64 - window;
            c /= width;
        }
        let ok = (0..k).all(|i| (0..k).all(|j| bound(i, j).is_none_or(|b| labels[i] - labels[j] <= b)));
        if ok {
            count += 1;
        }
    }
    count
}
