//! Iterative Tarjan strongly connected components over CSR adjacency.

use alloc::vec::Vec;

const UNSEEN: u32 = u32::MAX;

/// Components of a (possibly edge-filtered) graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component id per vertex. Ids follow Tarjan completion order, so every
    /// edge between distinct components goes from a larger id to a smaller one.
    pub component: Vec<u32>,
    pub count: usize,
    /// Whether the component carries a cycle: two or more vertices, or a kept self-loop.
    pub cyclic: Vec<bool>,
}

impl Components {
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = alloc::vec![Vec::new(); self.count];
        for (v, &c) in self.component.iter().enumerate() {
            out[c as usize].push(v as u32);
        }
        out
    }
}

/// Tarjan's algorithm without recursion; `keep(e)` selects the edges considered.
pub fn tarjan<F: Fn(usize) -> bool>(offsets: &[usize], targets: &[u32], keep: F) -> Components {
    let n = offsets.len().saturating_sub(1);
    let mut index = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0u32; n];
    let mut on_stack = alloc::vec![false; n];
    let mut component = alloc::vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut calls: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut count = 0u32;
    let mut sizes: Vec<u32> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        calls.push((root as u32, offsets[root]));
        while let Some(top) = calls.last_mut() {
            let vu = top.0 as usize;
            if top.1 < offsets[vu + 1] {
                let e = top.1;
                top.1 += 1;
                if !keep(e) {
                    continue;
                }
                let w = targets[e] as usize;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    calls.push((w as u32, offsets[w]));
                } else if on_stack[w] {
                    low[vu] = low[vu].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    let p = parent as usize;
                    low[p] = low[p].min(low[vu]);
                }
                if low[vu] == index[vu] {
                    let mut size = 0;
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow") as usize;
                        on_stack[w] = false;
                        component[w] = count;
                        size += 1;
                        if w == vu {
                            break;
                        }
                    }
                    sizes.push(size);
                    count += 1;
                }
            }
        }
    }

    let mut cyclic: Vec<bool> = sizes.iter().map(|&s| s > 1).collect();
    for v in 0..n {
        for e in offsets[v]..offsets[v + 1] {
            if targets[e] as usize == v && keep(e) {
                cyclic[component[v] as usize] = true;
            }
        }
    }
    Components { component, count: count as usize, cyclic }
}
