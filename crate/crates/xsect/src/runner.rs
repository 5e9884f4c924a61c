//! Executes a run configuration and assembles the report.
//!
//! The base graph is built once; refined levels are built on first use and
//! shared by every class. Classes are analyzed on the rayon pool and the
//! report is assembled in configuration order.

use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use xsect_core::alpha::{alpha_graph, direction_support, existence_from, ExistenceReason};
use xsect_core::chains::{build_chain_graph, ChainGraphError, Level};
use xsect_core::fried::{fried_sum, non_injectivity_witness, FriedError};
use xsect_core::labeling::{check_feasible, classify_cardinality, enumerate_labelings, labelings_equal, LabelingError};
use xsect_core::recurrence::{chain_decomposition, is_chain_recurrent, lyapunov_potential, ChainDecomposition};
use xsect_core::section::{default_level, extract_section, section_to_labeling, synthesize_potential};
use xsect_core::shortest::shortest_path;
use xsect_core::transition::{assemble, cell_transitions, prepare, refined_inputs, BuildError, BuildParams};
use xsect_core::{
    AlphaAnalysis, AlphaChainGraph, Cardinality, CohomologyClass, Digraph, FlowSpec, Grid, Labeling, Shift, TransitionGraph,
};

use crate::catalog;
use crate::config::{Command, RunConfig, Source};
use crate::error::Error;
use crate::interchange::{self, GraphFile};
use crate::report::*;
use crate::svg;

/// Builds a transition graph with source cells spread over the rayon pool.
pub fn build_graph(spec: &FlowSpec, grid: &Grid, params: &BuildParams, cap: usize) -> Result<TransitionGraph, BuildError> {
    prepare(spec, grid, params, cap)?;
    let rows = (0..grid.cell_count())
        .into_par_iter()
        .map(|c| cell_transitions(spec, grid, params, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(spec, *grid, *params, rows))
}

/// The base graph with its lazily built refinements.
pub struct Graphs {
    pub spec: Option<FlowSpec>,
    pub base: TransitionGraph,
    /// The base grid describes the vertices, so sections can be drawn.
    pub has_grid: bool,
    pub dim: usize,
    cap: usize,
    finer: Vec<OnceLock<Result<TransitionGraph, String>>>,
}

impl Graphs {
    pub fn new(cfg: &RunConfig) -> Result<Graphs, Error> {
        match &cfg.source {
            Source::Flow(spec) => {
                let base = build_graph(spec, &cfg.grid, &cfg.params, cfg.cell_cap)?;
                let finer = (1..cfg.refine).map(|_| OnceLock::new()).collect();
                Ok(Graphs { spec: Some(spec.clone()), dim: spec.dim(), base, has_grid: true, cap: cfg.cell_cap, finer })
            }
            Source::Graph(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                let file = interchange::read(&text)?;
                let n = file.graph.vertex_count();
                let has_grid = file.grid.is_some();
                let grid = match file.grid {
                    Some(g) => g,
                    None => Grid::new(&[n.max(1), 1]).map_err(|e| Error::Config(e.to_string()))?,
                };
                let params = BuildParams {
                    t: file.time.unwrap_or(1.0),
                    epsilon: file.epsilon.unwrap_or(f64::NAN),
                    samples_per_cell: 1,
                    steps: 0,
                };
                let base = TransitionGraph { grid, params, flow_fingerprint: file.flow.unwrap_or(0), graph: file.graph };
                Ok(Graphs { spec: None, dim: file.dim, base, has_grid, cap: cfg.cell_cap, finer: Vec::new() })
            }
        }
    }

    /// Levels available, the base included.
    pub fn level_count(&self) -> usize {
        1 + self.finer.len()
    }

    /// Level `k`, the base refined by `2^k`.
    pub fn level(&self, k: usize) -> Result<&TransitionGraph, Error> {
        if k == 0 {
            return Ok(&self.base);
        }
        let spec = self.spec.as_ref().ok_or_else(|| Error::Precondition("imported graphs cannot be refined".into()))?;
        let built = self.finer[k - 1].get_or_init(|| {
            refined_inputs(&self.base.grid, &self.base.params, 1 << k, self.cap)
                .and_then(|(grid, params)| build_graph(spec, &grid, &params, self.cap))
                .map_err(|e| match e {
                    BuildError::CellCap { .. } => format!("resource: {e}"),
                    _ => e.to_string(),
                })
        });
        built.as_ref().map_err(|e| match e.strip_prefix("resource: ") {
            Some(rest) => Error::Resource(rest.to_string()),
            None => Error::Precondition(e.clone()),
        })
    }
}

fn shift_row(row: &[Shift]) -> Vec<Option<i64>> {
    row.iter().map(|s| s.finite()).collect()
}

fn support(g: &Digraph, alpha: &CohomologyClass, t: f64, resolution: Option<Vec<usize>>) -> Option<Support> {
    direction_support(g, alpha).ok().map(|v| Support {
        alpha: alpha.covector().to_vec(),
        per_edge: format!("{}/{}", v.numer(), v.denom()),
        per_time: v.to_f64() / t,
        resolution,
    })
}

/// Cells along a list of edges, closing with the last target.
fn walk_cells(g: &Digraph, edges: &[usize]) -> Vec<u32> {
    let mut cells: Vec<u32> = edges.iter().map(|&e| g.sources()[e]).collect();
    if let Some(&last) = edges.last() {
        cells.push(g.targets()[last]);
    }
    cells
}

fn witness(g: &Digraph, alpha: &CohomologyClass, dim: usize, edges: &[usize]) -> Witness {
    let w = g.path_weight(edges);
    Witness { cells: walk_cells(g, edges), winding: w.components(dim).to_vec(), alpha_weight: alpha.pair(&w) }
}

/// Cheapest path between the representatives of a violated pair.
fn violation_witness(g: &Digraph, a: &AlphaAnalysis, cg: &AlphaChainGraph, dim: usize, i: usize, j: usize) -> Option<Witness> {
    let p = a.potentials.as_ref()?;
    let dist: Vec<i64> = p.iter().map(|x| -x).collect();
    let ag = alpha_graph(g, &a.alpha);
    let path = shortest_path(&ag, &dist, cg.chains[i].representative, cg.chains[j].representative)?;
    Some(witness(g, &a.alpha, dim, &path))
}

fn cardinality_report(c: &Cardinality) -> CardinalityReport {
    match c {
        Cardinality::Empty => CardinalityReport { kind: "empty", count: Some(0), reason: None },
        Cardinality::Singleton => CardinalityReport { kind: "singleton", count: Some(1), reason: None },
        Cardinality::Finite(n) => CardinalityReport { kind: "finite", count: Some(*n), reason: None },
        Cardinality::CountablyInfinite(r) => {
            CardinalityReport { kind: "countably_infinite", count: None, reason: Some(r.to_string()) }
        }
    }
}

fn file_stem(flow: &str, alpha: &CohomologyClass, labels: &[i64]) -> String {
    let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_");
    let safe: String = flow.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("{safe}__a{}__l{}", join(alpha.covector()), join(labels))
}

/// Chain graph with the resolution and chain count of each level used, and
/// the reason finer levels were dropped, if they were.
pub type ChainGraphBuild = (AlphaChainGraph, Vec<Vec<usize>>, Vec<usize>, Option<String>);

/// Chain graph for one class over the configured refinement levels. Finer
/// levels are used only for a nonzero class with two or more chains.
pub fn chain_graph_for(graphs: &Graphs, a: &AlphaAnalysis) -> Result<ChainGraphBuild, Error> {
    let levels = if a.chains.len() >= 2 && !a.alpha.is_zero() && graphs.spec.is_some() {
        graphs.level_count()
    } else {
        1
    };
    let mut used_graphs = vec![&graphs.base];
    for k in 1..levels {
        used_graphs.push(graphs.level(k)?);
    }
    let graphs = used_graphs;
    let mut analyses = vec![a.clone()];
    analyses.extend(graphs[1..].par_iter().map(|tg| AlphaAnalysis::compute(&tg.graph, &a.alpha)).collect::<Vec<_>>());
    let list: Vec<Level> =
        graphs.iter().zip(&analyses).map(|(tg, an)| Level { graph: &tg.graph, grid: &tg.grid, analysis: an }).collect();
    // Fine chains that split or merge base chains cannot carry shifts; the
    // base level alone still gives a valid chain graph.
    let (cg, used, dropped) = match build_chain_graph(&list) {
        Ok(cg) => (cg, list.len(), None),
        Err(e @ ChainGraphError::AmbiguousMatch { .. }) => {
            let cg = build_chain_graph(&list[..1]).map_err(|e| Error::Precondition(format!("chain graph: {e}")))?;
            (cg, 1, Some(e.to_string()))
        }
        Err(e) => return Err(Error::Precondition(format!("chain graph: {e}"))),
    };
    let resolutions = graphs[..used].iter().map(|tg| tg.grid.resolution().to_vec()).collect();
    let counts = analyses.iter().map(|an| an.chains.len()).collect();
    Ok((cg, resolutions, counts, dropped))
}

struct Run<'a> {
    cfg: &'a RunConfig,
    graphs: &'a Graphs,
    chain_recurrent: bool,
}

impl Run<'_> {
    fn g(&self) -> &Digraph {
        &self.graphs.base.graph
    }

    fn section(&self, a: &AlphaAnalysis, cg: &AlphaChainGraph, l: &Labeling, level: Option<f64>) -> SectionReport {
        let g = self.g();
        let labels = l.labels.clone();
        if let Err(e) = check_feasible(cg, l) {
            let w = match e {
                LabelingError::Violation { i, j, .. } => violation_witness(g, a, cg, self.graphs.dim, i, j),
                _ => None,
            };
            return SectionReport::failed(labels, format!("infeasible labeling: {e}"), w);
        }
        let pot = match synthesize_potential(g, a, l) {
            Ok(p) => p,
            Err(e) => return SectionReport::failed(labels, format!("synthesis: {e}"), None),
        };
        let t = level.unwrap_or_else(|| default_level(l));
        let grid = self.graphs.has_grid.then_some(&self.graphs.base.grid);
        let s = match extract_section(g, a, &pot, t, grid) {
            Ok(s) => s,
            Err(e) => return SectionReport::failed(labels, format!("extraction: {e}"), None),
        };
        let recovered = section_to_labeling(g, a, &s).ok();
        let round_trip = recovered.as_ref().is_some_and(|r| labelings_equal(r, l).unwrap_or(false));
        let svg_path = match (&self.cfg.output.svg_dir, grid) {
            (Some(dir), Some(grid)) if grid.dim() == 2 => {
                let path = dir.join(format!("{}.svg", file_stem(&self.cfg.flow_name, &a.alpha, &labels)));
                let title = format!("{} alpha={:?} labeling={} level={}", self.cfg.flow_name, a.alpha.covector(), l, t);
                std::fs::create_dir_all(dir)
                    .and_then(|_| std::fs::write(&path, svg::render(grid, &a.alpha_recurrent, &s.polylines, &title)))
                    .ok()
                    .map(|_| path.display().to_string())
            }
            _ => None,
        };
        SectionReport {
            labeling: labels,
            level: Some(t),
            error: None,
            witness: None,
            cut_edges: s.cut_edges.len(),
            total_crossings: s.cut_edges.iter().map(|c| c.crossings).sum(),
            negative_crossings: s.crossings(g.edge_count()).iter().filter(|&&c| c < 0).count(),
            recurrent_contacts: s.recurrent_contacts,
            class_verified: s.class_verified,
            collar: pot.collar,
            recovered_labeling: recovered.map(|r| r.labels),
            round_trip,
            polylines: s
                .polylines
                .iter()
                .map(|p| PolylineReport { level: p.level, class: p.class().to_vec(), closed: p.closed, vertices: p.points.len() })
                .collect(),
            svg: svg_path,
        }
    }

    fn alpha(&self, alpha: &CohomologyClass) -> AlphaReport {
        let mut r = AlphaReport { alpha: alpha.covector().to_vec(), n_alpha: alpha.n_alpha(), ..Default::default() };
        if alpha.dim() != self.graphs.dim {
            r.error = Some(format!("class has {} components, the graph {}", alpha.dim(), self.graphs.dim));
            return r;
        }
        if let Err(e) = self.fill(alpha, &mut r) {
            r.error = Some(e.to_string());
        }
        r
    }

    fn fill(&self, alpha: &CohomologyClass, r: &mut AlphaReport) -> Result<(), Error> {
        let cfg = self.cfg;
        let g = self.g();
        let has = |c: Command| cfg.commands.contains(&c);
        let a = AlphaAnalysis::compute(g, alpha);
        let ex = existence_from(g, &a);
        let (criterion, w) = match &ex.reason {
            ExistenceReason::NoNegativeCycle => ("quasi-lyapunov", None),
            ExistenceReason::NegativeCycle { cycle, .. } => ("negative-cycle", Some(witness(g, alpha, self.graphs.dim, cycle))),
            ExistenceReason::NotChainRecurrent { .. } => ("not-chain-recurrent", None),
            ExistenceReason::ChainRecurrent => ("chain-recurrent", None),
        };
        r.existence = Some(ExistenceReport { nonempty: ex.nonempty, criterion, reason: ex.describe(), witness: w });
        r.fried_positive = Some(a.quasi_lyapunov_minus_alpha && a.alpha_recurrent.is_empty());
        if a.quasi_lyapunov_minus_alpha {
            r.alpha_recurrent_cells = Some(a.alpha_recurrent.len());
            r.alpha_chains = Some(a.chains.len());
        }
        let t = self.graphs.base.params.t;
        r.support = support(g, alpha, t, None);
        if (has(Command::Directions) || cfg.trend_flagged) && self.graphs.spec.is_some() && cfg.refine > 1 {
            r.support_trend = (0..self.graphs.level_count())
                .map(|k| self.graphs.level(k))
                .collect::<Result<Vec<_>, _>>()?
                .par_iter()
                .filter_map(|tg| support(&tg.graph, alpha, t, Some(tg.grid.resolution().to_vec())))
                .collect();
        }
        if cfg.output.details {
            r.details = Some(AlphaDetails {
                alpha_recurrent: a.alpha_recurrent.clone(),
                chains: a.chains.clone(),
                potentials: a.potentials.clone(),
            });
        }
        if !ex.nonempty {
            r.cardinality = Some(cardinality_report(&Cardinality::Empty));
            if has(Command::Extract) {
                return Err(Error::Precondition("no partial cross-section exists for this class".into()));
            }
            return Ok(());
        }
        if !(has(Command::Analyze) || has(Command::Sections) || has(Command::Extract)) {
            return Ok(());
        }
        let (cg, levels, counts, dropped) = chain_graph_for(self.graphs, &a)?;
        r.chain_graph = Some(ChainGraphReport {
            levels,
            chains_per_level: counts,
            representatives: cg.chains.iter().map(|c| c.representative).collect(),
            sizes: cg.chains.iter().map(|c| c.vertices.len()).collect(),
            shifts: cg.shifts.iter().map(|row| shift_row(row)).collect(),
            level_shifts: cg.level_shifts.iter().map(|m| m.iter().map(|row| shift_row(row)).collect()).collect(),
            divergent: (0..cg.chain_count())
                .flat_map(|i| (0..cg.chain_count()).map(move |j| (i, j)))
                .filter(|&(i, j)| cg.divergent[i][j])
                .collect(),
            transitive: cg.is_transitive(),
            refinement_dropped: dropped,
        });
        let card = classify_cardinality(&cg, self.chain_recurrent).map_err(|e| Error::Precondition(e.to_string()))?;
        r.cardinality = Some(cardinality_report(&card));
        let listing = enumerate_labelings(&cg, Some(cfg.window), cfg.limit);
        r.labelings = Some(match &listing {
            Ok(e) => LabelingsReport {
                window: cfg.window,
                complete: e.complete,
                truncated: e.truncated,
                count: e.labelings.len(),
                items: e.labelings.iter().map(|l| l.labels.clone()).collect(),
                error: None,
            },
            Err(e) => LabelingsReport {
                window: cfg.window,
                complete: false,
                truncated: true,
                count: 0,
                items: Vec::new(),
                error: Some(e.to_string()),
            },
        });
        if alpha.is_zero() {
            return Ok(());
        }
        let mut wanted: Vec<Labeling> = Vec::new();
        if has(Command::Sections) {
            if let Ok(e) = &listing {
                wanted.extend(e.labelings.iter().take(cfg.max_sections).cloned());
            }
        }
        if has(Command::Extract) {
            if cfg.labelings.is_empty() {
                if cg.chain_count() > 1 {
                    return Err(Error::Precondition(format!("extract needs a labeling of {} chains", cg.chain_count())));
                }
                wanted.push(Labeling::new(vec![0; cg.chain_count()], cg.n_alpha));
            }
            for l in &cfg.labelings {
                if l.len() != cg.chain_count() {
                    return Err(Error::Precondition(format!(
                        "labeling {l:?} has {} labels for {} chains",
                        l.len(),
                        cg.chain_count()
                    )));
                }
                wanted.push(Labeling::new(l.clone(), cg.n_alpha));
            }
        }
        r.sections = wanted.par_iter().map(|l| self.section(&a, &cg, l, cfg.level)).collect();
        if has(Command::Extract) {
            if let Some(e) = r.sections.iter().find_map(|s| s.error.clone()) {
                return Err(Error::Precondition(e));
            }
        }
        Ok(())
    }

    fn fried(&self) -> FriedReport {
        let cfg = self.cfg;
        let (a1, a2) = (cfg.alphas[0], cfg.alphas[1]);
        let mut report = FriedReport {
            alphas: [a1.covector().to_vec(), a2.covector().to_vec()],
            sum_alpha: Vec::new(),
            sum_n_alpha: 0,
            error: None,
            restriction: Vec::new(),
            pairs: Vec::new(),
            feasible_pairs: 0,
            non_injective: None,
        };
        if let Err(e) = self.fill_fried(a1, a2, &mut report) {
            report.error = Some(e.to_string());
        }
        report
    }

    fn fill_fried(&self, a1: CohomologyClass, a2: CohomologyClass, report: &mut FriedReport) -> Result<(), Error> {
        let cfg = self.cfg;
        let g = self.g();
        let sum = a1.checked_add(&a2).map_err(|e| Error::Config(e.to_string()))?;
        report.sum_alpha = sum.covector().to_vec();
        report.sum_n_alpha = sum.n_alpha();
        let an1 = AlphaAnalysis::compute(g, &a1);
        let an2 = AlphaAnalysis::compute(g, &a2);
        let ans = AlphaAnalysis::compute(g, &sum);
        let pre = |e: FriedError| Error::Precondition(format!("fried sum: {e}"));
        if !(an1.quasi_lyapunov_minus_alpha && an2.quasi_lyapunov_minus_alpha && ans.quasi_lyapunov_minus_alpha) {
            return Err(pre(FriedError::NotQuasiLyapunov));
        }
        if sum.is_zero() {
            return Err(pre(FriedError::ZeroSum));
        }
        let (cg1, ..) = chain_graph_for(self.graphs, &an1)?;
        let (cg2, ..) = chain_graph_for(self.graphs, &an2)?;
        let (cgs, ..) = chain_graph_for(self.graphs, &ans)?;
        let family = |cg: &AlphaChainGraph| -> Result<Vec<Labeling>, Error> {
            enumerate_labelings(cg, Some(cfg.window), cfg.limit)
                .map(|e| e.labelings)
                .map_err(|e| Error::Precondition(format!("fried sum: {e}")))
        };
        let (first, second) = if cfg.labelings.len() == 2 {
            (vec![Labeling::new(cfg.labelings[0].clone(), a1.n_alpha())], vec![Labeling::new(cfg.labelings[1].clone(), a2.n_alpha())])
        } else {
            (family(&cg1)?, family(&cg2)?)
        };
        for l in &second {
            let mut row = Vec::new();
            for f in &first {
                let pair = match fried_sum(&an1, f, &an2, l, &ans, &cgs) {
                    Ok(s) => {
                        report.restriction = s.restriction;
                        SumPair { first: f.labels.clone(), second: l.labels.clone(), sum: Some(s.labeling.labels), infeasible: None }
                    }
                    Err(FriedError::Infeasible(e)) => {
                        SumPair { first: f.labels.clone(), second: l.labels.clone(), sum: None, infeasible: Some(e.to_string()) }
                    }
                    Err(e) => return Err(pre(e)),
                };
                row.push(pair);
            }
            report.pairs.extend(row);
            if report.non_injective.is_none() {
                let feasible: Vec<Labeling> = first.iter().filter(|f| fried_sum(&an1, f, &an2, l, &ans, &cgs).is_ok()).cloned().collect();
                if let Some((x, y, s)) = non_injectivity_witness(&an1, &feasible, &an2, l, &ans, &cgs).map_err(pre)? {
                    report.non_injective =
                        Some(NonInjective { first: x.labels, other_first: y.labels, second: l.labels.clone(), sum: s.labels });
                }
            }
        }
        report.feasible_pairs = report.pairs.iter().filter(|p| p.sum.is_some()).count();
        Ok(())
    }
}

/// Covectors spread around the sphere: `n` directions in the plane, or the twelve
/// icosahedral vertices in space.
pub fn direction_fan(dim: usize, n: usize) -> Vec<CohomologyClass> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    if dim == 2 {
        for k in 0..n {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let v = [(12.0 * th.cos()).round() as i64, (12.0 * th.sin()).round() as i64];
            let d = xsect_core::homology::gcd(v[0].unsigned_abs(), v[1].unsigned_abs()).max(1) as i64;
            out.push(vec![v[0] / d, v[1] / d]);
        }
    } else {
        for (a, b) in [(8i64, 13i64), (8, -13), (-8, 13), (-8, -13)] {
            out.push(vec![0, a, b]);
            out.push(vec![a, b, 0]);
            out.push(vec![b, 0, a]);
        }
    }
    let mut seen = Vec::new();
    out.retain(|v| {
        let fresh = !seen.contains(v);
        seen.push(v.clone());
        fresh
    });
    out.iter().filter_map(|v| CohomologyClass::new(v).ok()).collect()
}

fn flow_info(cfg: &RunConfig, graphs: &Graphs) -> FlowInfo {
    let (source, params, reversed, translate) = match &graphs.spec {
        Some(spec) if spec.sampled_field().is_some() => ("sampled", Vec::new(), spec.is_reversed(), spec.shift().to_vec()),
        Some(spec) => (
            "builtin",
            spec.params().iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            spec.is_reversed(),
            spec.shift().to_vec(),
        ),
        None => ("graph", Vec::new(), false, Vec::new()),
    };
    FlowInfo {
        name: cfg.flow_name.clone(),
        source,
        dim: graphs.dim,
        params,
        reversed,
        translate,
        fingerprint: format!("{:016x}", graphs.base.flow_fingerprint),
        locus: graphs.spec.as_ref().and_then(|_| catalog::fixture(&cfg.flow_name)).map(|f| f.locus),
    }
}

fn graph_info(graphs: &Graphs, d: &ChainDecomposition, chain_recurrent: bool) -> GraphInfo {
    let tg = &graphs.base;
    GraphInfo {
        resolution: tg.grid.resolution().to_vec(),
        cells: tg.graph.vertex_count(),
        edges: tg.graph.edge_count(),
        time: tg.params.t,
        epsilon: tg.params.epsilon,
        samples_per_cell: tg.params.samples_per_cell,
        steps: tg.params.steps,
        chain_recurrent,
        recurrence_chains: d.chains.len(),
        recurrent_cells: tg.graph.vertex_count() - d.non_recurrent.len(),
        non_recurrent_cells: d.non_recurrent.len(),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Runs every configured command. Per-class failures are recorded in the
/// report; only failures that prevent any analysis are returned as errors.
pub fn run(cfg: &RunConfig) -> Result<Report, Error> {
    let graphs = Graphs::new(cfg)?;
    run_on(cfg, &graphs)
}

pub fn run_on(cfg: &RunConfig, graphs: &Graphs) -> Result<Report, Error> {
    if let Some(path) = &cfg.output.emit_graph {
        let mut file = GraphFile::from_transition(&graphs.base);
        file.dim = graphs.dim;
        if !graphs.has_grid {
            file.grid = None;
        }
        write_file(path, &interchange::write(&file))?;
    }
    if cfg.commands.contains(&Command::FriedSum) && cfg.alphas.len() != 2 {
        return Err(Error::Config(format!("fried-sum needs exactly two classes, got {}", cfg.alphas.len())));
    }
    let g = &graphs.base.graph;
    let decomposition = chain_decomposition(g);
    let chain_recurrent = is_chain_recurrent(g);
    let ctx = Run { cfg, graphs, chain_recurrent };
    let alphas: Vec<AlphaReport> = cfg.alphas.par_iter().map(|a| ctx.alpha(a)).collect();
    let fan = if cfg.commands.contains(&Command::Directions) && cfg.fan > 0 {
        direction_fan(graphs.dim, cfg.fan).par_iter().filter_map(|a| support(g, a, graphs.base.params.t, None)).collect()
    } else {
        Vec::new()
    };
    let fried_sum = cfg.commands.contains(&Command::FriedSum).then(|| ctx.fried());
    let mut notes = Vec::new();
    if cfg.trend_flagged {
        notes.push(format!(
            "{}: verdicts hold at this epsilon only; the support trend over refinements stands in for the limit",
            cfg.flow_name
        ));
    }
    if graphs.spec.is_none() && cfg.refine > 1 {
        notes.push("imported graph: refinement unavailable, chain graphs use one level".into());
    }
    if alphas.iter().any(|a| a.chain_graph.as_ref().is_some_and(|c| !c.divergent.is_empty())) {
        notes.push("divergent shifts grow at every refinement level and are read as missing edges of the quotient graph".into());
    }
    let recurrence = cfg.output.details.then(|| RecurrenceDetails {
        chains: decomposition.chains.clone(),
        order: decomposition.order.clone(),
        lyapunov: lyapunov_potential(g),
    });
    let report = Report {
        schema: SCHEMA,
        commands: cfg.commands.iter().map(|c| c.name()).collect(),
        flow: flow_info(cfg, graphs),
        graph: graph_info(graphs, &decomposition, chain_recurrent),
        notes,
        alphas,
        fan,
        fried_sum,
        recurrence,
    };
    if let Some(path) = &cfg.output.report {
        write_file(path, &report.to_json())?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FileConfig;

    fn config(text: &str) -> RunConfig {
        FileConfig::parse(text).unwrap().resolve().unwrap()
    }

    #[test]
    fn vertical_flow_has_a_global_section() {
        let cfg = config(
            "[flow]\nbuiltin = \"constant\"\n[grid]\nresolution = [8, 8]\n[analysis]\nalphas = [[0, 1], [0, -1]]\ncommands = [\"analyze\", \"extract\"]\n",
        );
        let r = run(&cfg).unwrap();
        let up = &r.alphas[0];
        assert!(up.error.is_none());
        assert_eq!(up.cardinality.as_ref().unwrap().kind, "singleton");
        assert_eq!(up.sections.len(), 1);
        assert!(up.sections[0].round_trip);
        assert_eq!(up.sections[0].polylines.len(), 1);
        assert_eq!(up.sections[0].polylines[0].class, vec![0, 1]);
        let down = &r.alphas[1];
        assert_eq!(down.existence.as_ref().unwrap().criterion, "negative-cycle");
        assert!(down.error.is_some());
        assert!(r.has_failures());
    }

    #[test]
    fn fan_covectors_are_primitive_and_distinct() {
        let fan = direction_fan(2, 8);
        assert_eq!(fan.len(), 8);
        assert!(fan.iter().all(|a| a.n_alpha() == 1));
        assert_eq!(direction_fan(3, 0).len(), 12);
    }
}
