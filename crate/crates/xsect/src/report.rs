//! The JSON report, schema `xsect.report/1`.
//!
//! Field order is fixed by these declarations and every list is produced in a
//! deterministic order, so one configuration always yields the same bytes.
//! Shift matrices use `null` for unreachable pairs.

use serde::Serialize;

pub const SCHEMA: &str = "xsect.report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub commands: Vec<&'static str>,
    pub flow: FlowInfo,
    pub graph: GraphInfo,
    pub notes: Vec<String>,
    pub alphas: Vec<AlphaReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fan: Vec<Support>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fried_sum: Option<FriedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceDetails>,
}

impl Report {
    /// Any per-class or summation precondition failure.
    pub fn has_failures(&self) -> bool {
        self.alphas.iter().any(|a| a.error.is_some()) || self.fried_sum.as_ref().is_some_and(|f| f.error.is_some())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowInfo {
    pub name: String,
    /// `builtin`, `sampled` or `graph`.
    pub source: &'static str,
    pub dim: usize,
    pub params: Vec<(String, f64)>,
    pub reversed: bool,
    pub translate: Vec<f64>,
    pub fingerprint: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub resolution: Vec<usize>,
    pub cells: usize,
    pub edges: usize,
    pub time: f64,
    pub epsilon: f64,
    pub samples_per_cell: usize,
    pub steps: usize,
    pub chain_recurrent: bool,
    pub recurrence_chains: usize,
    pub recurrent_cells: usize,
    pub non_recurrent_cells: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceDetails {
    pub chains: Vec<Vec<u32>>,
    /// Pairs `(a, b)`: chain `a` reaches chain `b`.
    pub order: Vec<(u32, u32)>,
    pub lyapunov: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Cells visited, the first repeated at the end for a cycle.
    pub cells: Vec<u32>,
    pub winding: Vec<i64>,
    pub alpha_weight: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExistenceReport {
    pub nonempty: bool,
    /// `quasi-lyapunov`, `negative-cycle`, `not-chain-recurrent` or `chain-recurrent`.
    pub criterion: &'static str,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Support {
    pub alpha: Vec<i64>,
    /// Least α-weight per edge over cycles, as `p/q`.
    pub per_edge: String,
    /// The same divided by T.
    pub per_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainGraphReport {
    /// Resolution of each level used, base first.
    pub levels: Vec<Vec<usize>>,
    /// α-chain count found at each level; extra fine chains are not matched.
    pub chains_per_level: Vec<usize>,
    pub representatives: Vec<u32>,
    pub sizes: Vec<usize>,
    /// Base-level shifts in units of the primitive class.
    pub shifts: Vec<Vec<Option<i64>>>,
    pub level_shifts: Vec<Vec<Vec<Option<i64>>>>,
    pub divergent: Vec<(usize, usize)>,
    pub transitive: bool,
    /// Why finer levels were dropped, when they could not be matched.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement_dropped: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CardinalityReport {
    /// `empty`, `singleton`, `finite` or `countably_infinite`.
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelingsReport {
    pub window: i64,
    pub complete: bool,
    pub truncated: bool,
    pub count: usize,
    pub items: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolylineReport {
    pub level: i64,
    pub class: Vec<i64>,
    pub closed: bool,
    pub vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub labeling: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub cut_edges: usize,
    pub total_crossings: u64,
    pub negative_crossings: usize,
    pub recurrent_contacts: usize,
    pub class_verified: bool,
    /// All chain-adjacent edges are tight in the synthesized potential.
    pub collar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_labeling: Option<Vec<i64>>,
    pub round_trip: bool,
    pub polylines: Vec<PolylineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

impl SectionReport {
    pub fn failed(labeling: Vec<i64>, error: String, witness: Option<Witness>) -> SectionReport {
        SectionReport {
            labeling,
            level: None,
            error: Some(error),
            witness,
            cut_edges: 0,
            total_crossings: 0,
            negative_crossings: 0,
            recurrent_contacts: 0,
            class_verified: false,
            collar: false,
            recovered_labeling: None,
            round_trip: false,
            polylines: Vec::new(),
            svg: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaDetails {
    pub alpha_recurrent: Vec<u32>,
    pub chains: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potentials: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AlphaReport {
    pub alpha: Vec<i64>,
    pub n_alpha: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub existence: Option<ExistenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fried_positive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_recurrent_cells: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_chains: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Support>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub support_trend: Vec<Support>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_graph: Option<ChainGraphReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<CardinalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelings: Option<LabelingsReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<AlphaDetails>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumPair {
    pub first: Vec<i64>,
    pub second: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<Vec<i64>>,
    /// Why the sum is not a feasible labeling of the summed class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infeasible: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonInjective {
    pub first: Vec<i64>,
    pub other_first: Vec<i64>,
    pub second: Vec<i64>,
    pub sum: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FriedReport {
    pub alphas: [Vec<i64>; 2],
    pub sum_alpha: Vec<i64>,
    pub sum_n_alpha: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// For each chain of the sum, the containing chain of each summand.
    pub restriction: Vec<(u32, u32)>,
    pub pairs: Vec<SumPair>,
    pub feasible_pairs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_injective: Option<NonInjective>,
}
