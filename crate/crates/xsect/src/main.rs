use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use xsect::catalog::FIXTURES;
use xsect::config::{parse_covector, Command, EpsilonSetting, FileConfig};
use xsect::{run, Error};

#[derive(Parser)]
#[command(name = "xsect", version, about = "Classify cross-sections of flows on flat tori")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Existence, chain graph, cardinality and labelings for each class.
    Analyze(Opts),
    /// Direction support per class and over a fan of directions.
    Directions(Opts),
    /// Extract a section for each of the first windowed labelings.
    Sections(Opts),
    /// Extract the sections for the given labelings.
    Extract(Opts),
    /// Add labelings of two classes.
    FriedSum(Opts),
    /// Run the commands listed in the configuration file.
    Run(Opts),
    /// List the built-in example flows.
    Examples,
}

#[derive(Args, Default)]
struct Opts {
    /// TOML configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in flow name.
    #[arg(long)]
    flow: Option<String>,
    /// Transition graph in the interchange format, used instead of a flow.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Flow parameter as name=value.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Cells per axis, one value or one per axis separated by commas.
    #[arg(long)]
    grid: Option<String>,
    /// Flow time per transition.
    #[arg(long)]
    time: Option<f64>,
    /// Jump radius, a number or "auto".
    #[arg(long)]
    epsilon: Option<String>,
    /// Sample points per cell and axis.
    #[arg(long)]
    samples: Option<usize>,
    /// Integration steps per transition.
    #[arg(long)]
    steps: Option<usize>,
    /// Number of refinement levels for chain graphs and trends.
    #[arg(long)]
    refine: Option<usize>,
    /// Cohomology class as comma-separated integers; repeatable.
    #[arg(long = "alpha", value_name = "A,B[,C]", allow_hyphen_values = true)]
    alphas: Vec<String>,
    /// Label window for enumeration.
    #[arg(long)]
    window: Option<i64>,
    /// Maximum number of labelings to enumerate.
    #[arg(long)]
    limit: Option<usize>,
    /// Level set of the section potential, a non-integer.
    #[arg(long, allow_hyphen_values = true)]
    level: Option<f64>,
    /// Labeling as comma-separated integers; repeatable.
    #[arg(long = "labeling", value_name = "G1,G2,...", allow_hyphen_values = true)]
    labelings: Vec<String>,
    /// Maximum number of sections rendered by `sections`.
    #[arg(long)]
    max_sections: Option<usize>,
    /// Number of fan directions for `directions`.
    #[arg(long)]
    fan: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for SVG renderings of sections.
    #[arg(long)]
    svg_dir: Option<PathBuf>,
    /// Write the base transition graph here.
    #[arg(long)]
    emit_graph: Option<PathBuf>,
    /// Include per-cell details in the report.
    #[arg(long)]
    details: bool,
}

fn list(text: &str) -> Result<Vec<i64>, Error> {
    parse_covector(text)
}

fn file_config(opts: &Opts, command: Option<Command>) -> Result<FileConfig, Error> {
    let mut c = match &opts.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(name) = &opts.flow {
        c.flow.builtin = Some(name.clone());
        c.flow.graph = None;
        c.flow.sampled = None;
    }
    if let Some(path) = &opts.graph {
        c.flow.graph = Some(path.clone());
        c.flow.builtin = None;
        c.flow.sampled = None;
    }
    for p in &opts.params {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::Config(format!("parameter `{p}` is not name=value")))?;
        let x: f64 = v.trim().parse().map_err(|_| Error::Config(format!("parameter `{k}` needs a number")))?;
        c.flow.params.insert(k.trim().to_string(), toml::Value::Float(x));
    }
    if let Some(g) = &opts.grid {
        let r = list(g)?;
        if r.iter().any(|&x| x <= 0) {
            return Err(Error::Config("grid resolution must be positive".into()));
        }
        c.grid.resolution = Some(r.into_iter().map(|x| x as usize).collect());
    }
    if let Some(t) = opts.time {
        c.grid.time = Some(t);
    }
    if let Some(e) = &opts.epsilon {
        c.grid.epsilon = Some(match e.parse::<f64>() {
            Ok(x) => EpsilonSetting::Value(x),
            Err(_) => EpsilonSetting::Keyword(e.clone()),
        });
    }
    if opts.samples.is_some() {
        c.grid.samples_per_cell = opts.samples;
    }
    if opts.steps.is_some() {
        c.grid.steps = opts.steps;
    }
    let a = &mut c.analysis;
    if opts.refine.is_some() {
        a.refine = opts.refine;
    }
    if !opts.alphas.is_empty() {
        a.alphas = Some(opts.alphas.iter().map(|s| list(s)).collect::<Result<_, _>>()?);
    }
    if opts.window.is_some() {
        a.window = opts.window;
    }
    if opts.limit.is_some() {
        a.limit = opts.limit;
    }
    if opts.level.is_some() {
        a.level = opts.level;
    }
    if !opts.labelings.is_empty() {
        a.labelings = Some(opts.labelings.iter().map(|s| list(s)).collect::<Result<_, _>>()?);
    }
    if opts.max_sections.is_some() {
        a.max_sections = opts.max_sections;
    }
    if opts.fan.is_some() {
        a.fan = opts.fan;
    }
    if let Some(cmd) = command {
        a.commands = Some(vec![cmd]);
        if cmd == Command::Directions && a.fan.is_none() {
            a.fan = Some(16);
        }
    }
    let o = &mut c.output;
    if opts.out.is_some() {
        o.report = opts.out.clone();
    }
    if opts.svg_dir.is_some() {
        o.svg_dir = opts.svg_dir.clone();
    }
    if opts.emit_graph.is_some() {
        o.emit_graph = opts.emit_graph.clone();
    }
    o.details |= opts.details;
    Ok(c)
}

fn execute(opts: &Opts, command: Option<Command>) -> Result<bool, Error> {
    let cfg = file_config(opts, command)?.resolve()?;
    let report = run(&cfg)?;
    if cfg.output.report.is_none() {
        print!("{}", report.to_json());
    }
    Ok(report.has_failures())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, command) = match &cli.command {
        Cmd::Analyze(o) => (o, Some(Command::Analyze)),
        Cmd::Directions(o) => (o, Some(Command::Directions)),
        Cmd::Sections(o) => (o, Some(Command::Sections)),
        Cmd::Extract(o) => (o, Some(Command::Extract)),
        Cmd::FriedSum(o) => (o, Some(Command::FriedSum)),
        Cmd::Run(o) => (o, None),
        Cmd::Examples => {
            for f in FIXTURES {
                println!("{:<16} {:<12} {}", f.name, f.locus, f.summary);
            }
            return ExitCode::SUCCESS;
        }
    };
    match execute(opts, command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(e) => {
            eprintln!("xsect: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
