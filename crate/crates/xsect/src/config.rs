//! Run configuration: a TOML file with `[flow]`, `[grid]`, `[analysis]` and
//! `[output]` tables, overridden field by field from the command line.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use xsect_core::flow::SampledField;
use xsect_core::transition::{BuildParams, DEFAULT_CELL_CAP, DEFAULT_STEPS};
use xsect_core::{CohomologyClass, FlowSpec, Grid};

use crate::catalog;
use crate::error::Error;

/// Environment variable holding the cell cap for every build.
pub const CELL_CAP_VAR: &str = "XSECT_MAX_CELLS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Directions,
    Sections,
    Extract,
    FriedSum,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Directions => "directions",
            Command::Sections => "sections",
            Command::Extract => "extract",
            Command::FriedSum => "fried-sum",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledTable {
    pub resolution: Vec<usize>,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowTable {
    pub builtin: Option<String>,
    #[serde(default)]
    pub params: toml::Table,
    pub sampled: Option<SampledTable>,
    /// A graph in the interchange format, analyzed as is.
    pub graph: Option<PathBuf>,
    #[serde(default)]
    pub reverse: bool,
    pub translate: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EpsilonSetting {
    Value(f64),
    Keyword(String),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridTable {
    pub resolution: Option<Vec<usize>>,
    pub time: Option<f64>,
    pub epsilon: Option<EpsilonSetting>,
    pub samples_per_cell: Option<usize>,
    pub steps: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisTable {
    pub alphas: Option<Vec<Vec<i64>>>,
    pub commands: Option<Vec<Command>>,
    pub refine: Option<usize>,
    pub window: Option<i64>,
    pub limit: Option<usize>,
    pub level: Option<f64>,
    pub labelings: Option<Vec<Vec<i64>>>,
    pub max_sections: Option<usize>,
    pub fan: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputTable {
    pub report: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
    pub emit_graph: Option<PathBuf>,
    #[serde(default)]
    pub details: bool,
}

/// The file form, every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub flow: FlowTable,
    #[serde(default)]
    pub grid: GridTable,
    #[serde(default)]
    pub analysis: AnalysisTable,
    #[serde(default)]
    pub output: OutputTable,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, Error> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<FileConfig, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        FileConfig::parse(&text)
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Flow(FlowSpec),
    Graph(PathBuf),
}

#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub report: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
    pub emit_graph: Option<PathBuf>,
    pub details: bool,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Source,
    /// Builtin name, `sampled`, or the imported file name.
    pub flow_name: String,
    pub grid: Grid,
    pub params: BuildParams,
    /// Number of levels, the base included; each level halves the cell size.
    pub refine: usize,
    pub alphas: Vec<CohomologyClass>,
    pub commands: Vec<Command>,
    pub window: i64,
    pub limit: usize,
    pub level: Option<f64>,
    pub labelings: Vec<Vec<i64>>,
    pub max_sections: usize,
    /// Directions in the support fan; 0 analyzes only the given classes.
    pub fan: usize,
    pub cell_cap: usize,
    pub trend_flagged: bool,
    pub output: Outputs,
}

pub const DEFAULT_REFINE: usize = 3;
pub const DEFAULT_WINDOW: i64 = 3;
pub const DEFAULT_LIMIT: usize = 1000;
pub const DEFAULT_MAX_SECTIONS: usize = 16;

pub fn parse_covector(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad integer vector `{text}`"))))
        .collect()
}

fn class(components: &[i64], dim: usize) -> Result<CohomologyClass, Error> {
    if components.len() != dim {
        return Err(Error::Config(format!("class {components:?} has {} components, the flow has {dim}", components.len())));
    }
    CohomologyClass::new(components).map_err(|e| Error::Config(format!("class {components:?}: {e}")))
}

fn cell_cap() -> Result<usize, Error> {
    match std::env::var(CELL_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Config(format!("{CELL_CAP_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_CELL_CAP),
    }
}

fn params_list(table: &toml::Table) -> Result<Vec<(String, f64)>, Error> {
    table
        .iter()
        .map(|(k, v)| {
            let x = match v {
                toml::Value::Float(f) => *f,
                toml::Value::Integer(i) => *i as f64,
                _ => return Err(Error::Config(format!("flow parameter `{k}` must be a number"))),
            };
            Ok((k.clone(), x))
        })
        .collect()
}

impl FileConfig {
    /// Resolves defaults (from the fixture catalog where one applies) and validates.
    pub fn resolve(&self) -> Result<RunConfig, Error> {
        let f = &self.flow;
        let given = [f.builtin.is_some(), f.sampled.is_some(), f.graph.is_some()].iter().filter(|&&b| b).count();
        if given != 1 {
            return Err(Error::Config("give exactly one of flow.builtin, flow.sampled, flow.graph".into()));
        }
        let fixture = f.builtin.as_deref().and_then(catalog::fixture);
        let (source, flow_name, dim) = if let Some(name) = &f.builtin {
            let params = params_list(&f.params)?;
            let borrowed: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let spec = FlowSpec::builtin(name, &borrowed).map_err(|e| Error::Config(e.to_string()))?;
            let dim = spec.dim();
            (Source::Flow(spec), name.clone(), dim)
        } else if let Some(s) = &f.sampled {
            let field = SampledField::new(&s.resolution, s.values.clone()).map_err(|e| Error::Config(e.to_string()))?;
            let spec = FlowSpec::sampled(field);
            let dim = spec.dim();
            (Source::Flow(spec), "sampled".to_string(), dim)
        } else {
            let path = f.graph.clone().unwrap_or_default();
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (Source::Graph(path), name, 0)
        };
        let source = match source {
            Source::Flow(mut spec) => {
                if let Some(t) = &f.translate {
                    if t.len() != spec.dim() {
                        return Err(Error::Config("flow.translate needs one offset per axis".into()));
                    }
                    spec = spec.translated(t);
                }
                if f.reverse {
                    spec = spec.reversed();
                }
                Source::Flow(spec)
            }
            other => other,
        };
        let g = &self.grid;
        let resolution = match (&g.resolution, fixture) {
            (Some(r), _) if r.len() == 1 && dim > 1 => vec![r[0]; dim],
            (Some(r), _) => r.clone(),
            (None, Some(fx)) => vec![fx.resolution; fx.dim],
            (None, None) => vec![32; dim.max(2)],
        };
        let grid = Grid::new(&resolution).map_err(|e| Error::Config(format!("grid: {e}")))?;
        if dim != 0 && grid.dim() != dim {
            return Err(Error::Config(format!("grid has {} axes, the flow {dim}", grid.dim())));
        }
        let time = g.time.or(fixture.map(|fx| fx.time)).unwrap_or(1.0);
        let epsilon = match &g.epsilon {
            None => grid.cell_diameter(),
            Some(EpsilonSetting::Value(e)) => *e,
            Some(EpsilonSetting::Keyword(k)) if k == "auto" => grid.cell_diameter(),
            Some(EpsilonSetting::Keyword(k)) => return Err(Error::Config(format!("epsilon must be a number or \"auto\", got `{k}`"))),
        };
        let params = BuildParams {
            t: time,
            epsilon,
            samples_per_cell: g.samples_per_cell.unwrap_or(1),
            steps: g.steps.unwrap_or(DEFAULT_STEPS),
        };
        let a = &self.analysis;
        let dim_for_alpha = if dim == 0 { None } else { Some(dim) };
        let raw_alphas: Vec<Vec<i64>> = match (&a.alphas, fixture) {
            (Some(v), _) => v.clone(),
            (None, Some(fx)) => fx.alphas.iter().map(|x| x.to_vec()).collect(),
            (None, None) => Vec::new(),
        };
        let alphas = raw_alphas
            .iter()
            .map(|v| match dim_for_alpha {
                Some(d) => class(v, d),
                None => CohomologyClass::new(v).map_err(|e| Error::Config(format!("class {v:?}: {e}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let commands = a.commands.clone().unwrap_or_else(|| vec![Command::Analyze]);
        if commands.is_empty() {
            return Err(Error::Config("at least one command is required".into()));
        }
        let refine = a.refine.or(fixture.map(|fx| fx.refine)).unwrap_or(DEFAULT_REFINE);
        if refine == 0 {
            return Err(Error::Config("refine counts levels and must be at least 1".into()));
        }
        let window = a.window.unwrap_or(DEFAULT_WINDOW);
        if window < 0 {
            return Err(Error::Config("window must be non-negative".into()));
        }
        if let Some(t) = a.level {
            if !t.is_finite() || t == t.floor() {
                return Err(Error::Config("level must be a finite non-integer".into()));
            }
        }
        Ok(RunConfig {
            source,
            flow_name,
            grid,
            params,
            refine,
            alphas,
            commands,
            window,
            limit: a.limit.unwrap_or(DEFAULT_LIMIT),
            level: a.level,
            labelings: a.labelings.clone().unwrap_or_default(),
            max_sections: a.max_sections.unwrap_or(DEFAULT_MAX_SECTIONS),
            fan: a.fan.unwrap_or(0),
            cell_cap: cell_cap()?,
            trend_flagged: fixture.is_some_and(|fx| fx.trend_flagged),
            output: Outputs {
                report: self.output.report.clone(),
                svg_dir: self.output.svg_dir.clone(),
                emit_graph: self.output.emit_graph.clone(),
                details: self.output.details,
            },
        })
    }
}
