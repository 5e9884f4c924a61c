//! Chain labelings, their feasibility, cardinality and enumeration.

use alloc::vec::Vec;
use core::fmt;

use crate::chains::AlphaChainGraph;

/// One integer label per α-chain, in α-weight units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    pub labels: Vec<i64>,
    pub n_alpha: u64,
}

impl Labeling {
    pub fn new(labels: Vec<i64>, n_alpha: u64) -> Labeling {
        Labeling { labels, n_alpha }.normalized()
    }

    /// Shifted so chain 0 has label 0.
    pub fn normalized(mut self) -> Labeling {
        if let Some(&first) = self.labels.first() {
            self.labels.iter_mut().for_each(|l| *l -= first);
        }
        self
    }

    pub fn is_constant(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingError {
    ChainCountMismatch { left: usize, right: usize },
    /// `labels[i] - labels[j]` exceeds the allowed bound.
    Violation { i: usize, j: usize, difference: i64, bound: i64 },
    WindowRequired,
    LimitExceeded { limit: usize },
    /// The zero class on a chain-recurrent graph has no sections.
    EmptyExistence,
}

impl fmt::Display for LabelingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingError::ChainCountMismatch { left, right } => {
                write!(f, "labelings over {left} and {right} chains")
            }
            LabelingError::Violation { i, j, difference, bound } => {
                write!(f, "label({i}) - label({j}) = {difference} exceeds {bound}")
            }
            LabelingError::WindowRequired => f.write_str("infinite family: a window is required"),
            LabelingError::LimitExceeded { limit } => write!(f, "more than {limit} labelings"),
            LabelingError::EmptyExistence => f.write_str("no partial cross-section exists"),
        }
    }
}

/// Equal up to an additive constant.
pub fn labelings_equal(a: &Labeling, b: &Labeling) -> Result<bool, LabelingError> {
    if a.labels.len() != b.labels.len() {
        return Err(LabelingError::ChainCountMismatch { left: a.labels.len(), right: b.labels.len() });
    }
    let offset = a.labels.first().zip(b.labels.first()).map_or(0, |(x, y)| x - y);
    Ok(a.labels.iter().zip(&b.labels).all(|(x, y)| x - y == offset))
}

pub fn check_feasible(cg: &AlphaChainGraph, l: &Labeling) -> Result<(), LabelingError> {
    let k = cg.chain_count();
    if l.labels.len() != k {
        return Err(LabelingError::ChainCountMismatch { left: l.labels.len(), right: k });
    }
    for i in 0..k {
        for j in 0..k {
            if let Some(bound) = cg.constraint(i, j) {
                let difference = l.labels[i] - l.labels[j];
                if difference > bound {
                    return Err(LabelingError::Violation { i, j, difference, bound });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteReason {
    /// The shift between two chains grows without bound under refinement.
    Divergent { from: usize, to: usize },
    /// One chain cannot reach another.
    Unreachable { from: usize, to: usize },
    /// The zero class never has finitely many classes.
    ZeroClass,
}

impl fmt::Display for InfiniteReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteReason::Divergent { from, to } => write!(f, "divergent shift from chain {from} to chain {to}"),
            InfiniteReason::Unreachable { from, to } => write!(f, "chain {from} does not reach chain {to}"),
            InfiniteReason::ZeroClass => f.write_str("zero class on a graph that is not chain recurrent"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Empty,
    Singleton,
    Finite(u64),
    CountablyInfinite(InfiniteReason),
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Empty => f.write_str("empty"),
            Cardinality::Singleton => f.write_str("singleton"),
            Cardinality::Finite(n) => write!(f, "finite({n})"),
            Cardinality::CountablyInfinite(r) => write!(f, "countably infinite: {r}"),
        }
    }
}

/// Labels of chain `m` allowed by the box and by the chains already assigned.
fn range_for(cg: &AlphaChainGraph, assigned: &[i64], m: usize, lo: i64, hi: i64) -> (i64, i64) {
    let (mut lo, mut hi) = (lo, hi);
    for (j, &gj) in assigned.iter().enumerate() {
        if let Some(c) = cg.constraint(m, j) {
            hi = hi.min(gj + c);
        }
        if let Some(c) = cg.constraint(j, m) {
            lo = lo.max(gj - c);
        }
    }
    (lo, hi)
}

/// Per-chain label box: the interval forced by chain 0 when both directions are
/// constrained, otherwise `[-window, window]`.
fn label_box(cg: &AlphaChainGraph, window: Option<i64>) -> Result<Vec<(i64, i64)>, LabelingError> {
    (0..cg.chain_count())
        .map(|m| {
            if m == 0 {
                return Ok((0, 0));
            }
            let (mut lo, mut hi) = match window {
                Some(w) => (-w, w),
                None => (i64::MIN, i64::MAX),
            };
            if let Some(c) = cg.constraint(0, m) {
                lo = lo.max(-c);
            }
            if let Some(c) = cg.constraint(m, 0) {
                hi = hi.min(c);
            }
            if lo == i64::MIN || hi == i64::MAX {
                return Err(LabelingError::WindowRequired);
            }
            Ok((lo, hi))
        })
        .collect()
}

fn search<F: FnMut(&[i64]) -> bool>(cg: &AlphaChainGraph, bounds: &[(i64, i64)], assigned: &mut Vec<i64>, visit: &mut F) -> bool {
    let m = assigned.len();
    if m == bounds.len() {
        return visit(assigned);
    }
    let (lo, hi) = range_for(cg, assigned, m, bounds[m].0, bounds[m].1);
    let mut g = lo;
    while g <= hi {
        assigned.push(g);
        let go_on = search(cg, bounds, assigned, visit);
        assigned.pop();
        if !go_on {
            return false;
        }
        g += 1;
    }
    true
}

/// Visits feasible labelings inside the box in lexicographic order until `visit` returns false.
fn for_each_labeling<F: FnMut(&[i64]) -> bool>(cg: &AlphaChainGraph, bounds: &[(i64, i64)], mut visit: F) {
    if bounds.is_empty() {
        visit(&[]);
        return;
    }
    let mut assigned = Vec::with_capacity(bounds.len());
    search(cg, bounds, &mut assigned, &mut visit);
}

/// Number of feasible labelings of a transitive chain graph, or `None` past `limit`.
pub fn count_labelings(cg: &AlphaChainGraph, limit: u64) -> Result<Option<u64>, LabelingError> {
    let bounds = label_box(cg, None)?;
    let mut count = 0u64;
    let mut over = false;
    for_each_labeling(cg, &bounds, |_| {
        count += 1;
        over = count > limit;
        !over
    });
    Ok(if over { None } else { Some(count) })
}

pub const DEFAULT_COUNT_LIMIT: u64 = 10_000_000;

/// Cardinality of the set of section classes, for a case whose existence is settled.
pub fn classify_cardinality(cg: &AlphaChainGraph, chain_recurrent: bool) -> Result<Cardinality, LabelingError> {
    if cg.alpha.is_zero() {
        if chain_recurrent {
            return Err(LabelingError::EmptyExistence);
        }
        return Ok(Cardinality::CountablyInfinite(InfiniteReason::ZeroClass));
    }
    if cg.chain_count() <= 1 {
        return Ok(Cardinality::Singleton);
    }
    if let Some((from, to, divergent)) = cg.obstruction() {
        let reason = if divergent {
            InfiniteReason::Divergent { from, to }
        } else {
            InfiniteReason::Unreachable { from, to }
        };
        return Ok(Cardinality::CountablyInfinite(reason));
    }
    match count_labelings(cg, DEFAULT_COUNT_LIMIT)? {
        Some(n) => Ok(Cardinality::Finite(n)),
        None => Err(LabelingError::LimitExceeded { limit: DEFAULT_COUNT_LIMIT as usize }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub labelings: Vec<Labeling>,
    /// Every feasible labeling is listed.
    pub complete: bool,
    /// The family is infinite and was cut to the window.
    pub truncated: bool,
}

/// Feasible labelings, normalized and in lexicographic order.
///
/// A transitive chain graph is enumerated completely and `window` is ignored.
/// Otherwise the window bounds every label. For the zero class the constant
/// labeling is left out, since it gives no section.
pub fn enumerate_labelings(cg: &AlphaChainGraph, window: Option<i64>, limit: usize) -> Result<Enumeration, LabelingError> {
    let transitive = !cg.alpha.is_zero() && cg.is_transitive();
    let bounds = if transitive {
        label_box(cg, None)?
    } else {
        label_box(cg, Some(window.ok_or(LabelingError::WindowRequired)?))?
    };
    let mut labelings = Vec::new();
    let mut over = false;
    let skip_constant = cg.alpha.is_zero();
    for_each_labeling(cg, &bounds, |labels| {
        if skip_constant && labels.windows(2).all(|w| w[0] == w[1]) {
            return true;
        }
        if labelings.len() == limit {
            over = true;
            return false;
        }
        labelings.push(Labeling { labels: labels.to_vec(), n_alpha: cg.n_alpha });
        true
    });
    if over {
        return Err(LabelingError::LimitExceeded { limit });
    }
    Ok(Enumeration { labelings, complete: transitive, truncated: !transitive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Shift;
    use crate::homology::CohomologyClass;

    fn toy(alpha: &[i64], shifts: Vec<Vec<Option<i64>>>) -> AlphaChainGraph {
        let k = shifts.len();
        let alpha = CohomologyClass::new(alpha).unwrap();
        let shifts: Vec<Vec<Shift>> =
            shifts.iter().map(|r| r.iter().map(|s| s.map_or(Shift::Unreachable, Shift::Finite)).collect()).collect();
        AlphaChainGraph {
            alpha,
            n_alpha: alpha.n_alpha(),
            chains: (0..k as u32).map(|v| crate::chains::ChainInfo { representative: v, vertices: alloc::vec![v] }).collect(),
            reachable: shifts.iter().map(|r| r.iter().map(|s| *s != Shift::Unreachable).collect()).collect(),
            level_shifts: alloc::vec![shifts.clone()],
            shifts,
            divergent: alloc::vec![alloc::vec![false; k]; k],
        }
    }

    #[test]
    fn equality_up_to_constant() {
        let l = |v: &[i64]| Labeling { labels: v.to_vec(), n_alpha: 1 };
        assert!(labelings_equal(&l(&[0, 1, 2]), &l(&[5, 6, 7])).unwrap());
        assert!(!labelings_equal(&l(&[0, 1, 2]), &l(&[0, 2, 2])).unwrap());
        assert!(labelings_equal(&l(&[0]), &l(&[0, 1])).is_err());
        assert_eq!(Labeling::new(alloc::vec![3, 5], 1).labels, alloc::vec![0, 2]);
    }

    #[test]
    fn single_chain_is_singleton() {
        let cg = toy(&[0, 1], alloc::vec![alloc::vec![Some(0)]]);
        assert_eq!(classify_cardinality(&cg, false), Ok(Cardinality::Singleton));
        let e = enumerate_labelings(&cg, None, 10).unwrap();
        assert_eq!(e.labelings, alloc::vec![Labeling { labels: alloc::vec![0], n_alpha: 1 }]);
        assert!(e.complete);
    }

    #[test]
    fn two_chains_unit_shifts_give_three() {
        let cg = toy(&[0, 1], alloc::vec![alloc::vec![Some(0), Some(1)], alloc::vec![Some(1), Some(0)]]);
        assert_eq!(classify_cardinality(&cg, false), Ok(Cardinality::Finite(3)));
        let e = enumerate_labelings(&cg, None, 10).unwrap();
        let diffs: Vec<i64> = e.labelings.iter().map(|l| l.labels[1]).collect();
        assert_eq!(diffs, alloc::vec![-1, 0, 1]);
        assert!(check_feasible(&cg, &Labeling { labels: alloc::vec![0, 2], n_alpha: 1 }).is_err());
    }

    #[test]
    fn scaled_class_widens_the_interval() {
        let cg = toy(&[0, 2], alloc::vec![alloc::vec![Some(0), Some(1)], alloc::vec![Some(1), Some(0)]]);
        assert_eq!(classify_cardinality(&cg, false), Ok(Cardinality::Finite(5)));
    }

    #[test]
    fn unreachable_pair_needs_window() {
        let cg = toy(&[0, 1], alloc::vec![alloc::vec![Some(0), Some(2)], alloc::vec![None, Some(0)]]);
        assert_eq!(
            classify_cardinality(&cg, false),
            Ok(Cardinality::CountablyInfinite(InfiniteReason::Unreachable { from: 1, to: 0 }))
        );
        assert_eq!(enumerate_labelings(&cg, None, 10), Err(LabelingError::WindowRequired));
        let e = enumerate_labelings(&cg, Some(5), 100).unwrap();
        assert!(e.truncated && !e.complete);
        assert_eq!(e.labelings.len(), 8);
        assert!(e.labelings.iter().all(|l| l.labels[1] >= -2));
    }

    #[test]
    fn divergent_pair_with_window() {
        let mut cg = toy(&[0, 1], alloc::vec![alloc::vec![Some(0), Some(40)], alloc::vec![Some(40), Some(0)]]);
        cg.divergent[0][1] = true;
        cg.divergent[1][0] = true;
        assert!(matches!(classify_cardinality(&cg, false), Ok(Cardinality::CountablyInfinite(InfiniteReason::Divergent { .. }))));
        assert_eq!(enumerate_labelings(&cg, Some(5), 100).unwrap().labelings.len(), 11);
        assert_eq!(enumerate_labelings(&cg, Some(5), 4), Err(LabelingError::LimitExceeded { limit: 4 }));
    }

    #[test]
    fn zero_class() {
        let mut cg = toy(&[1, 0], alloc::vec![alloc::vec![Some(0), Some(0)], alloc::vec![None, Some(0)]]);
        cg.alpha = CohomologyClass::zero(2).unwrap();
        cg.n_alpha = 0;
        assert_eq!(classify_cardinality(&cg, true), Err(LabelingError::EmptyExistence));
        assert_eq!(classify_cardinality(&cg, false), Ok(Cardinality::CountablyInfinite(InfiniteReason::ZeroClass)));
        let e = enumerate_labelings(&cg, Some(2), 100).unwrap();
        // label(0) <= label(1), constant labeling dropped.
        assert_eq!(e.labelings.len(), 2);
    }
}
