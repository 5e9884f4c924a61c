//! The (ε, T) transition graph: one time-T flow segment followed by one ε-jump per edge.

use alloc::vec::Vec;
use core::fmt;

use crate::digraph::Digraph;
use crate::flow::{FlowError, FlowSpec};
use crate::grid::{Grid, GridError};
use crate::homology::{WindingVector, MAX_DIM};

pub const DEFAULT_STEPS: usize = 32;

/// Default cap on the number of cells a build may create.
pub const DEFAULT_CELL_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BuildParams {
    pub t: f64,
    pub epsilon: f64,
    /// Samples per axis inside each cell, placed at the centers of a regular
    /// sub-grid; 1 means the cell center only.
    pub samples_per_cell: usize,
    pub steps: usize,
}

impl BuildParams {
    /// Epsilon equal to the cell diameter, one sample, default step count.
    pub fn for_grid(grid: &Grid, t: f64) -> BuildParams {
        BuildParams { t, epsilon: grid.cell_diameter(), samples_per_cell: 1, steps: DEFAULT_STEPS }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BuildError {
    Flow(FlowError),
    Grid(GridError),
    DimensionMismatch { flow: usize, grid: usize },
    /// Jumps of size 1/2 or more cannot be closed unambiguously.
    EpsilonTooLarge { epsilon: f64 },
    /// Smaller jumps than a cell would break shadowing.
    EpsilonBelowDiameter { epsilon: f64, diameter: f64 },
    InvalidTime(f64),
    NoSamples,
    NoSteps,
    IntegrationTooCoarse { error: f64, bound: f64 },
    CellCap { cells: usize, cap: usize },
    RefineFactor(usize),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Flow(e) => write!(f, "{e}"),
            BuildError::Grid(e) => write!(f, "{e}"),
            BuildError::DimensionMismatch { flow, grid } => {
                write!(f, "flow is {flow}-dimensional but the grid is {grid}-dimensional")
            }
            BuildError::EpsilonTooLarge { epsilon } => {
                write!(f, "epsilon = {epsilon} must be below 1/2 for jumps to close unambiguously")
            }
            BuildError::EpsilonBelowDiameter { epsilon, diameter } => {
                write!(f, "epsilon = {epsilon} is below the cell diameter {diameter}")
            }
            BuildError::InvalidTime(t) => write!(f, "T must be positive and finite (got {t})"),
            BuildError::NoSamples => write!(f, "samples_per_cell must be at least 1"),
            BuildError::NoSteps => write!(f, "integration steps must be at least 1"),
            BuildError::IntegrationTooCoarse { error, bound } => write!(
                f,
                "estimated integration error {error:.3e} exceeds epsilon/2 = {bound:.3e}; raise the step count"
            ),
            BuildError::CellCap { cells, cap } => {
                write!(f, "{cells} cells exceed the resource cap of {cap}")
            }
            BuildError::RefineFactor(k) => write!(f, "refinement factor must be at least 2 (got {k})"),
        }
    }
}

impl From<FlowError> for BuildError {
    fn from(e: FlowError) -> Self {
        BuildError::Flow(e)
    }
}

impl From<GridError> for BuildError {
    fn from(e: GridError) -> Self {
        BuildError::Grid(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionGraph {
    pub grid: Grid,
    pub params: BuildParams,
    pub flow_fingerprint: u64,
    pub graph: Digraph,
}

/// Checks build parameters against the grid and flow.
pub fn validate(spec: &FlowSpec, grid: &Grid, params: &BuildParams) -> Result<(), BuildError> {
    if spec.dim() != grid.dim() {
        return Err(BuildError::DimensionMismatch { flow: spec.dim(), grid: grid.dim() });
    }
    if !(params.t > 0.0) || !params.t.is_finite() {
        return Err(BuildError::InvalidTime(params.t));
    }
    if params.samples_per_cell == 0 {
        return Err(BuildError::NoSamples);
    }
    if params.steps == 0 {
        return Err(BuildError::NoSteps);
    }
    if !(params.epsilon < 0.5) {
        return Err(BuildError::EpsilonTooLarge { epsilon: params.epsilon });
    }
    let diameter = grid.cell_diameter();
    if params.epsilon < diameter * (1.0 - 1e-12) {
        return Err(BuildError::EpsilonBelowDiameter { epsilon: params.epsilon, diameter });
    }
    Ok(())
}

/// Sample points of a cell, in the base copy of the cover.
pub fn cell_samples(grid: &Grid, cell: usize, samples: usize) -> Vec<[f64; MAX_DIM]> {
    let dim = grid.dim();
    let c = grid.coords(cell);
    let total = samples.pow(dim as u32);
    let mut out = Vec::with_capacity(total);
    for m in 0..total {
        let mut rest = m;
        let mut p = [0.0; MAX_DIM];
        for a in 0..dim {
            let k = rest % samples;
            rest /= samples;
            p[a] = (c[a] as f64 + (k as f64 + 0.5) / samples as f64) * grid.cell_size(a);
        }
        out.push(p);
    }
    out
}

/// Targets of one source cell with their windings, sorted and deduplicated.
///
/// Every lift of a cell within epsilon of a sample's lifted endpoint gives an
/// edge; the winding is the deck translation of that lift, so it is an exact
/// integer and needs no rounding.
pub fn cell_transitions(
    spec: &FlowSpec,
    grid: &Grid,
    params: &BuildParams,
    cell: usize,
) -> Result<Vec<(u32, WindingVector)>, BuildError> {
    let dim = grid.dim();
    let eps = params.epsilon;
    let mut row = Vec::new();
    for s in cell_samples(grid, cell, params.samples_per_cell) {
        let tr = spec.integrate(&s[..dim], params.t, params.steps)?;
        let mut e = [0.0; MAX_DIM];
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        for a in 0..dim {
            e[a] = s[a] + tr.lift[a];
            let n = grid.resolution()[a] as f64;
            lo[a] = libm::floor((e[a] - eps) * n) as i64;
            hi[a] = libm::floor((e[a] + eps) * n) as i64;
        }
        let mut k = lo;
        'cells: loop {
            let mut d2 = 0.0;
            for a in 0..dim {
                let h = grid.cell_size(a);
                let left = k[a] as f64 * h;
                let right = left + h;
                let d = if e[a] < left {
                    left - e[a]
                } else if e[a] > right {
                    e[a] - right
                } else {
                    0.0
                };
                d2 += d * d;
            }
            if d2 <= eps * eps {
                let mut w = [0i64; MAX_DIM];
                for a in 0..dim {
                    w[a] = k[a].div_euclid(grid.resolution()[a] as i64);
                }
                row.push((grid.index_wrapped(&k[..dim]) as u32, WindingVector(w)));
            }
            for a in 0..dim {
                if k[a] < hi[a] {
                    k[a] += 1;
                    continue 'cells;
                }
                k[a] = lo[a];
            }
            break;
        }
    }
    row.sort_unstable();
    row.dedup();
    Ok(row)
}

/// Largest lift discrepancy between `steps` and `2 * steps` over a spread of cell centers.
pub fn integration_error(spec: &FlowSpec, grid: &Grid, params: &BuildParams) -> Result<f64, BuildError> {
    let n = grid.cell_count();
    let stride = (n / 97).max(1);
    let dim = grid.dim();
    let mut worst: f64 = 0.0;
    let mut cell = 0;
    while cell < n {
        let c = grid.center(cell);
        let a = spec.integrate(&c[..dim], params.t, params.steps)?;
        let b = spec.integrate(&c[..dim], params.t, params.steps * 2)?;
        let d: f64 = (0..dim).map(|i| (a.lift[i] - b.lift[i]) * (a.lift[i] - b.lift[i])).sum();
        worst = worst.max(libm::sqrt(d));
        cell += stride;
    }
    Ok(worst)
}

/// Validation plus the integration accuracy check shared by every builder.
pub fn prepare(spec: &FlowSpec, grid: &Grid, params: &BuildParams, cap: usize) -> Result<(), BuildError> {
    validate(spec, grid, params)?;
    if grid.cell_count() > cap {
        return Err(BuildError::CellCap { cells: grid.cell_count(), cap });
    }
    let error = integration_error(spec, grid, params)?;
    if error > params.epsilon / 2.0 {
        return Err(BuildError::IntegrationTooCoarse { error, bound: params.epsilon / 2.0 });
    }
    Ok(())
}

/// Wraps precomputed rows (one per cell, in cell order) into a graph.
pub fn assemble(spec: &FlowSpec, grid: Grid, params: BuildParams, rows: Vec<Vec<(u32, WindingVector)>>) -> TransitionGraph {
    TransitionGraph { grid, params, flow_fingerprint: spec.fingerprint(), graph: Digraph::from_rows(rows) }
}

pub fn build(spec: &FlowSpec, grid: &Grid, params: &BuildParams) -> Result<TransitionGraph, BuildError> {
    build_capped(spec, grid, params, DEFAULT_CELL_CAP)
}

pub fn build_capped(spec: &FlowSpec, grid: &Grid, params: &BuildParams, cap: usize) -> Result<TransitionGraph, BuildError> {
    prepare(spec, grid, params, cap)?;
    let rows = (0..grid.cell_count())
        .map(|c| cell_transitions(spec, grid, params, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(spec, *grid, *params, rows))
}

/// Grid and parameters of the refinement by `factor`: epsilon becomes the new cell diameter.
pub fn refined_inputs(grid: &Grid, params: &BuildParams, factor: usize, cap: usize) -> Result<(Grid, BuildParams), BuildError> {
    if factor < 2 {
        return Err(BuildError::RefineFactor(factor));
    }
    let fine = grid.refined(factor)?;
    if fine.cell_count() > cap {
        return Err(BuildError::CellCap { cells: fine.cell_count(), cap });
    }
    let p = BuildParams { epsilon: fine.cell_diameter(), ..*params };
    Ok((fine, p))
}

pub fn refine(spec: &FlowSpec, g: &TransitionGraph, factor: usize, cap: usize) -> Result<TransitionGraph, BuildError> {
    let (grid, params) = refined_inputs(&g.grid, &g.params, factor, cap)?;
    build_capped(spec, &grid, &params, cap)
}
