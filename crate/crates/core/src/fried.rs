//! Adding sections of two classes at the level of labelings.
//!
//! A labeling of α fixes the section potential on every α-chain. Chains of
//! α₁ + α₂ lie inside chains of both classes, so each of them receives the
//! sum of the two potentials at its representative.

use alloc::vec::Vec;
use core::fmt;

use crate::alpha::AlphaAnalysis;
use crate::chains::AlphaChainGraph;
use crate::labeling::{check_feasible, labelings_equal, Labeling, LabelingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FriedError {
    NotQuasiLyapunov,
    ZeroSum,
    ClassMismatch,
    ChainCountMismatch,
    /// A chain of the sum is not inside a chain of one summand.
    NotContained { chain: usize },
    Infeasible(LabelingError),
}

impl fmt::Display for FriedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FriedError::NotQuasiLyapunov => f.write_str("a summand is not quasi-Lyapunov"),
            FriedError::ZeroSum => f.write_str("the classes sum to zero"),
            FriedError::ClassMismatch => f.write_str("the sum analysis is not for the sum class"),
            FriedError::ChainCountMismatch => f.write_str("labeling does not match its chains"),
            FriedError::NotContained { chain } => write!(f, "sum chain {chain} is not inside the summand chains"),
            FriedError::Infeasible(e) => write!(f, "sum labeling infeasible: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriedSum {
    pub labeling: Labeling,
    /// For each chain of the sum, the chain of each summand containing it.
    pub restriction: Vec<(u32, u32)>,
}

/// Potential value at `v` fixed by labeling `l`, with the containing chain.
fn chain_value(a: &AlphaAnalysis, l: &Labeling, v: u32) -> Option<(u32, i64)> {
    let p = a.potentials.as_ref()?;
    let c = a.chain_of[v as usize]?;
    let r = a.chains[c as usize][0] as usize;
    Some((c, l.labels[c as usize] + p[v as usize] - p[r]))
}

pub fn fried_sum(
    a1: &AlphaAnalysis,
    l1: &Labeling,
    a2: &AlphaAnalysis,
    l2: &Labeling,
    sum: &AlphaAnalysis,
    sum_chains: &AlphaChainGraph,
) -> Result<FriedSum, FriedError> {
    if !(a1.quasi_lyapunov_minus_alpha && a2.quasi_lyapunov_minus_alpha && sum.quasi_lyapunov_minus_alpha) {
        return Err(FriedError::NotQuasiLyapunov);
    }
    let total = a1.alpha.checked_add(&a2.alpha).map_err(|_| FriedError::ClassMismatch)?;
    if total.is_zero() {
        return Err(FriedError::ZeroSum);
    }
    if total != sum.alpha || sum_chains.alpha != total {
        return Err(FriedError::ClassMismatch);
    }
    if l1.labels.len() != a1.chains.len() || l2.labels.len() != a2.chains.len() {
        return Err(FriedError::ChainCountMismatch);
    }
    let mut labels = Vec::with_capacity(sum.chains.len());
    let mut restriction = Vec::with_capacity(sum.chains.len());
    for (s, chain) in sum.chains.iter().enumerate() {
        let r = chain[0];
        let (c1, q1) = chain_value(a1, l1, r).ok_or(FriedError::NotContained { chain: s })?;
        let (c2, q2) = chain_value(a2, l2, r).ok_or(FriedError::NotContained { chain: s })?;
        labels.push(q1 + q2);
        restriction.push((c1, c2));
    }
    let labeling = Labeling::new(labels, total.n_alpha());
    check_feasible(sum_chains, &labeling).map_err(FriedError::Infeasible)?;
    Ok(FriedSum { labeling, restriction })
}

/// Two labelings of the first class, not equal up to a constant, whose sums
/// with `l2` coincide.
pub fn non_injectivity_witness(
    a1: &AlphaAnalysis,
    candidates: &[Labeling],
    a2: &AlphaAnalysis,
    l2: &Labeling,
    sum: &AlphaAnalysis,
    sum_chains: &AlphaChainGraph,
) -> Result<Option<(Labeling, Labeling, Labeling)>, FriedError> {
    let mut seen: Vec<(Labeling, Labeling)> = Vec::new();
    for l1 in candidates {
        let s = fried_sum(a1, l1, a2, l2, sum, sum_chains)?.labeling;
        for (prev, prev_sum) in &seen {
            if prev_sum == &s && !labelings_equal(prev, l1).unwrap_or(false) {
                return Ok(Some((prev.clone(), l1.clone(), s)));
            }
        }
        seen.push((l1.clone(), s));
    }
    Ok(None)
}
