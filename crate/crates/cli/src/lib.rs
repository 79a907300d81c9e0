//! The `cfc` command line tool.
//!
//! Exit codes: 0 success or property holds, 1 property violated (witness
//! on stdout), 2 usage or input error, 3 a solver cap refused the instance.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfchroma::experiments::{run_plan_with_jobs, ExperimentPlan};
use cfchroma::graph::VertexSet;
use cfchroma::io::{
    read_coloring_str, read_family_str, read_graph_str, write_coloring_json, write_edge_format, write_graph_json,
    write_weighted_json, FamilyJson,
};
use cfchroma::models::{sample_gnp, sample_layered, GnpSpec, LayeredSpec, DEFAULT_BASE};
use cfchroma::solvers::{
    algorithm_cfc, domination_coloring, exact_cf_chromatic, exact_cf_prime, exact_chromatic, exact_domination,
    greedy_proper, CfcParams, TailThreshold, DEFAULT_BIG_K, THEORY_BIG_K,
};
use cfchroma::theory::theory_bounds;
use cfchroma::verify::{
    conflict_free_violations, is_conflict_free, is_cover_family, is_k_universal, is_kf_spoiling, CfVerdict,
    CoverVerdict, NeighborhoodMode, SpoilSpec, SpoilingVerdict, UniversalVerdict,
};
use cfchroma::{Error, Graph, SCHEMA_VERSION};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "cfc", version, about = "Conflict-free colouring toolkit")]
pub struct Cli {
    /// Print key: value lines instead of JSON
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random graph
    Gen(GenArgs),
    /// Colour a graph
    Color(ColorArgs),
    /// Check that a colouring is conflict-free
    Verify(VerifyArgs),
    /// Exact invariants of a small graph
    Exact(ExactArgs),
    /// Decide (k, f)-spoiling
    Spoil(SpoilArgs),
    /// Decide k-universality
    Universal(UniversalArgs),
    /// Check a covering family
    Cover(CoverArgs),
    /// Closed-form bounds for G(n, p)
    Theory(TheoryArgs),
    /// Run an experiment described by a JSON config
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Gnp,
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Edge,
    Json,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Edge probability (gnp)
    #[arg(long, required_if_eq("model", "gnp"))]
    pub p: Option<f64>,
    /// Weight base (layered)
    #[arg(long, default_value_t = DEFAULT_BASE)]
    pub base: f64,
    #[arg(long)]
    pub seed: u64,
    /// Output format; layered graphs need json
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    /// Write the graph here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorAlgo {
    Exact,
    Cfc,
    Domination,
    GreedyProper,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long, value_enum)]
    pub algo: ColorAlgo,
    #[arg(long)]
    pub graph: PathBuf,
    /// Model edge probability (cfc)
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Loop constant K (cfc)
    #[arg(long)]
    pub bigk: Option<f64>,
    /// Use K = 100 instead of the desk-scale default
    #[arg(long, conflicts_with = "bigk")]
    pub paper_constants: bool,
    /// Halting size: lnln, loglog2 or const:C
    #[arg(long, default_value = "lnln")]
    pub tail: String,
    /// Write the colouring here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include the round-by-round trace (cfc)
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
    /// The filler colour may not serve as a unique colour
    #[arg(long)]
    pub respect_filler: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactWhat {
    Cf,
    Chi,
    Dom,
    Cfprime,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub what: ExactWhat,
    #[arg(long)]
    pub graph: PathBuf,
    /// Only decide whether the domination number is at most this (dom)
    #[arg(long)]
    pub size_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpoilArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub f: usize,
    /// Report only the verdict
    #[arg(long, conflicts_with = "witness")]
    pub decide: bool,
    /// Report an unspoiled family when there is one (default)
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct UniversalArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub family: PathBuf,
    /// Use closed neighbourhoods instead of open ones
    #[arg(long)]
    pub closed: bool,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Exit 0 even when some trials were refused by a solver cap
    #[arg(long)]
    pub allow_refusals: bool,
}

/// What a subcommand wants printed and the exit code.
pub struct Output {
    pub code: u8,
    pub body: Option<Value>,
    pub raw: Option<String>,
}

impl Output {
    fn ok(body: Value) -> Self {
        Output { code: 0, body: Some(body), raw: None }
    }

    fn verdict(holds: bool, body: Value) -> Self {
        Output { code: if holds { 0 } else { 1 }, body: Some(body), raw: None }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult = Result<Output, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(read_graph_str(&read_text(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA_VERSION));
    }
    v
}

pub fn execute(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Color(a) => color(a),
        Command::Verify(a) => verify(a),
        Command::Exact(a) => exact(a),
        Command::Spoil(a) => spoil(a),
        Command::Universal(a) => universal(a),
        Command::Cover(a) => cover(a),
        Command::Theory(a) => theory(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn gen(a: &GenArgs) -> CliResult {
    let (text, g) = match a.model {
        Model::Gnp => {
            let g = sample_gnp(&GnpSpec::new(a.n, a.p.expect("required by clap"), a.seed)?)?;
            let text = match a.format {
                GraphFormat::Edge => write_edge_format(&g),
                GraphFormat::Json => write_graph_json(&g),
            };
            (text, g)
        }
        Model::Layered => {
            if a.format == GraphFormat::Edge {
                return usage("layered graphs carry layer labels; use --format json");
            }
            let wg = sample_layered(&LayeredSpec::new(a.n, a.base, a.seed)?)?;
            (write_weighted_json(&wg), wg.graph().clone())
        }
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Output::ok(json!({"n": g.n(), "m": g.edge_count(), "out": path.display().to_string()})))
        }
        None => Ok(Output { code: 0, body: None, raw: Some(text) }),
    }
}

fn color(a: &ColorArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let mut extra = serde_json::Map::new();
    let coloring = match a.algo {
        ColorAlgo::Exact => exact_cf_chromatic(&g)?.1,
        ColorAlgo::GreedyProper => greedy_proper(&g),
        ColorAlgo::Domination => {
            let d = exact_domination(&g, None)?;
            let s = VertexSet::from_members(g.n(), d.witness.expect("uncapped search returns a witness"))?;
            extra.insert("dominatingSet".into(), json!(s.to_vec()));
            domination_coloring(&g, &s)?
        }
        ColorAlgo::Cfc => {
            let Some(p) = a.p else { return usage("--algo cfc needs --p") };
            let big_k = if a.paper_constants { THEORY_BIG_K } else { a.bigk.unwrap_or(DEFAULT_BIG_K) };
            let params = CfcParams { p, delta: a.delta, big_k, tail: TailThreshold::parse(&a.tail)? };
            let (c, trace) = algorithm_cfc(&g, &params)?;
            extra.insert("colorsUsed".into(), json!(trace.colors_used));
            extra.insert("params".into(), serde_json::to_value(params).map_err(Error::from)?);
            if a.trace {
                extra.insert("trace".into(), serde_json::to_value(&trace).map_err(Error::from)?);
            }
            c
        }
    };
    let respect_filler = a.algo == ColorAlgo::Cfc;
    if !is_conflict_free(&g, &coloring, respect_filler)?.is_ok() {
        return Err(Error::Internal("produced colouring failed verification".into()).into());
    }
    let mut body = json!({
        "algo": format!("{:?}", a.algo).to_lowercase(),
        "n": g.n(),
        "distinctColors": coloring.distinct_colors(),
    });
    let obj = body.as_object_mut().unwrap();
    obj.extend(extra);
    match &a.out {
        Some(path) => {
            write_file(path, &write_coloring_json(&coloring))?;
            obj.insert("out".into(), json!(path.display().to_string()));
        }
        None => {
            obj.insert("colors".into(), json!(coloring.colors()));
            obj.insert("filler".into(), json!(coloring.filler()));
        }
    }
    Ok(Output::ok(body))
}

fn verify(a: &VerifyArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let c = read_coloring_str(&read_text(&a.coloring)?)?;
    match is_conflict_free(&g, &c, a.respect_filler)? {
        CfVerdict::Ok => Ok(Output::verdict(true, json!({"verdict": "ok"}))),
        CfVerdict::Violation { vertex, explanation } => {
            let all = conflict_free_violations(&g, &c, a.respect_filler)?;
            Ok(Output::verdict(
                false,
                json!({"verdict": "violation", "vertex": vertex, "explanation": explanation, "violators": all}),
            ))
        }
    }
}

fn exact(a: &ExactArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    if a.size_cap.is_some() && a.what != ExactWhat::Dom {
        return usage("--size-cap only applies to --what dom");
    }
    let body = match a.what {
        ExactWhat::Cf => {
            let (r, c) = exact_cf_chromatic(&g)?;
            json!({"what": "cf", "value": r, "witness": c.colors()})
        }
        ExactWhat::Chi => json!({"what": "chi", "value": exact_chromatic(&g)?}),
        ExactWhat::Dom => {
            let d = exact_domination(&g, a.size_cap)?;
            json!({"what": "dom", "value": d.value, "exceedsCap": d.exceeds_cap, "witness": d.witness})
        }
        ExactWhat::Cfprime => {
            let (k, fam) = exact_cf_prime(&g)?;
            json!({"what": "cfprime", "value": k, "witness": FamilyJson::from_family(&fam).sets})
        }
    };
    Ok(Output::ok(body))
}

fn spoil(a: &SpoilArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    match is_kf_spoiling(&g, SpoilSpec::new(a.k, a.f)?)? {
        SpoilingVerdict::Spoiling => Ok(Output::verdict(true, json!({"verdict": "spoiling", "k": a.k, "f": a.f}))),
        SpoilingVerdict::Unspoiled(fam) => {
            let mut body = json!({"verdict": "unspoiled", "k": a.k, "f": a.f});
            if !a.decide {
                body["family"] = json!(FamilyJson::from_family(&fam).sets);
            }
            Ok(Output::verdict(false, body))
        }
    }
}

fn universal(a: &UniversalArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    match is_k_universal(&g, a.k)? {
        UniversalVerdict::Universal => Ok(Output::verdict(true, json!({"verdict": "universal", "k": a.k}))),
        UniversalVerdict::Missing { a: set, b } => Ok(Output::verdict(
            false,
            json!({"verdict": "missing", "k": a.k, "a": set.to_vec(), "b": b.to_vec()}),
        )),
    }
}

fn cover(a: &CoverArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let fam = read_family_str(&read_text(&a.family)?, g.n())?;
    let mode = if a.closed { NeighborhoodMode::Closed } else { NeighborhoodMode::Open };
    match is_cover_family(&g, &fam, mode)? {
        CoverVerdict::Ok => Ok(Output::verdict(true, json!({"verdict": "ok"}))),
        CoverVerdict::Uncovered { vertex } => {
            Ok(Output::verdict(false, json!({"verdict": "uncovered", "vertex": vertex})))
        }
    }
}

fn theory(a: &TheoryArgs) -> CliResult {
    let report = theory_bounds(a.n, a.p, a.eps)?;
    Ok(Output::ok(serde_json::to_value(report).map_err(Error::from)?))
}

fn experiment(a: &ExperimentArgs) -> CliResult {
    if a.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let plan: ExperimentPlan = serde_json::from_str(&read_text(&a.config)?).map_err(Error::from)?;
    let out = run_plan_with_jobs(&plan, a.jobs)?;
    write_file(&a.out, &out.to_json()?)?;
    if let Some(csv) = &a.csv {
        write_file(csv, &out.to_csv())?;
    }
    let refusals = out.refusals();
    let passed = out.passed();
    let code = if refusals > 0 && !a.allow_refusals {
        3
    } else if !passed {
        1
    } else {
        0
    };
    Ok(Output {
        code,
        body: Some(json!({"out": a.out.display().to_string(), "refusals": refusals, "passed": passed})),
        raw: None,
    })
}

fn render_human(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

/// Parses `argv`, runs the subcommand and prints its output.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Some(raw) = out.raw {
                print!("{raw}");
            }
            if let Some(body) = out.body {
                let body = with_schema(body);
                if cli.human {
                    print!("{}", render_human(&body));
                } else {
                    println!("{}", serde_json::to_string_pretty(&body).expect("JSON values serialise"));
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("cfc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
