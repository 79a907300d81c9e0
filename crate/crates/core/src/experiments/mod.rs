//! Seeded Monte Carlo campaigns over random graphs.
//!
//! A campaign runs one algorithm on `trials` samples at every point of a
//! model grid. Trial `t` of grid point `i` draws its graph from seed
//! `trial_seed(master_seed, i * trials + t)`, so results do not depend on
//! the order or the number of threads the trials run on.

mod checks;

pub use checks::{
    cf_ratio_experiment, domination_concentration_experiment, small_domination_check, unique_hit_check, spoiling_experiment,
    threecond_check, CfRatioRow, CfRatioTable, DominationConcentration, SmallDominationReport, UniqueHitReport, SpoilingReport,
    ThreecondOptions, ThreecondReport,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::models::{sample_gnp, sample_layered, GnpSpec, LayeredSpec, DEFAULT_BASE};
use crate::rng::trial_seed;
use crate::solvers::{
    algorithm_cfc, domination_coloring, exact_cf_chromatic, exact_cf_prime, exact_chromatic, exact_domination,
    greedy_dominating_set, greedy_proper, CfcParams, TailThreshold, DEFAULT_BIG_K,
};
use crate::verify::{is_conflict_free, is_dominating, is_kf_spoiling, Coloring, SpoilSpec};
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum ModelGrid {
    Gnp { ns: Vec<usize>, ps: Vec<f64> },
    Layered {
        ns: Vec<usize>,
        #[serde(default = "default_base")]
        base: f64,
    },
}

fn default_base() -> f64 {
    DEFAULT_BASE
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridPoint {
    pub n: usize,
    /// edge probability (`G(n, p)`) or weight base (layered)
    pub param: f64,
}

impl ModelGrid {
    pub fn points(&self) -> Vec<GridPoint> {
        match self {
            ModelGrid::Gnp { ns, ps } => ns
                .iter()
                .flat_map(|&n| ps.iter().map(move |&p| GridPoint { n, param: p }))
                .collect(),
            ModelGrid::Layered { ns, base } => ns.iter().map(|&n| GridPoint { n, param: *base }).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let pts = self.points();
        if pts.is_empty() {
            return invalid("model grid has no points");
        }
        for pt in pts {
            match self {
                ModelGrid::Gnp { .. } => GnpSpec::new(pt.n, pt.param, 0).map(drop)?,
                ModelGrid::Layered { .. } => LayeredSpec::new(pt.n, pt.param, 0).map(drop)?,
            }
        }
        Ok(())
    }

    fn sample(&self, pt: GridPoint, seed: u64) -> Result<Graph> {
        match self {
            ModelGrid::Gnp { .. } => sample_gnp(&GnpSpec::new(pt.n, pt.param, seed)?),
            ModelGrid::Layered { .. } => Ok(sample_layered(&LayeredSpec::new(pt.n, pt.param, seed)?)?.graph().clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    ExactCf,
    ExactChi,
    ExactDom,
    /// decide `D <= sizeCap`, recording `sizeCap + 1` above it
    DominationWithCap,
    Cfc,
    GreedyProper,
    DominationColoring,
    Spoiling,
    CfPrime,
}

/// Options for [`Algo::Cfc`]. `p` defaults to the grid point's edge
/// probability and is required for the layered model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CfcOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_big_k")]
    pub big_k: f64,
    #[serde(default)]
    pub tail: TailThreshold,
}

fn default_delta() -> f64 {
    0.1
}

fn default_big_k() -> f64 {
    DEFAULT_BIG_K
}

impl Default for CfcOptions {
    fn default() -> Self {
        CfcOptions { p: None, delta: default_delta(), big_k: DEFAULT_BIG_K, tail: TailThreshold::LnLn }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "camelCase", deny_unknown_fields)]
pub enum AssertionSpec {
    /// No trial may be refused by a solver cap.
    NoRefusals,
    /// At each grid point, the share of completed trials whose `measure`
    /// lies in `values` is at least `atLeast`.
    #[serde(rename_all = "camelCase")]
    FractionIn { measure: String, values: Vec<f64>, at_least: f64 },
    /// At each grid point, the mean of `measure` lies in `[lo, hi]`.
    MeanBetween { measure: String, lo: f64, hi: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelGrid,
    pub algo: Algo,
    /// trials per grid point
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<AssertionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cfc: Option<CfcOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spoil: Option<SpoilSpec>,
}

impl ExperimentConfig {
    pub fn new(model: ModelGrid, algo: Algo, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig { model, algo, trials, master_seed, assertions: Vec::new(), cfc: None, size_cap: None, spoil: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        self.model.validate()?;
        match self.algo {
            Algo::DominationWithCap if self.size_cap.is_none() => {
                invalid("algo domination-with-cap needs sizeCap")
            }
            Algo::Spoiling => match self.spoil {
                Some(s) => SpoilSpec::new(s.k, s.f).map(drop),
                None => invalid("algo spoiling needs spoil {k, f}"),
            },
            Algo::Cfc => {
                let opts = self.cfc.unwrap_or_default();
                for pt in self.model.points() {
                    self.cfc_params(pt, &opts)?.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn cfc_params(&self, pt: GridPoint, opts: &CfcOptions) -> Result<CfcParams> {
        let p = match (opts.p, &self.model) {
            (Some(p), _) => p,
            (None, ModelGrid::Gnp { .. }) => pt.param,
            (None, ModelGrid::Layered { .. }) => return invalid("algo cfc on the layered model needs cfc.p"),
        };
        Ok(CfcParams { p, delta: opts.delta, big_k: opts.big_k, tail: opts.tail })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "camelCase")]
pub enum TrialStatus {
    Ok,
    /// a solver cap refused the instance
    Refused(String),
    /// the quantity does not exist for this graph
    Infeasible(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    pub point: usize,
    pub n: usize,
    pub param: f64,
    pub trial: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub status: TrialStatus,
    pub values: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasureSummary {
    pub count: usize,
    pub mean: f64,
    /// sample standard deviation (0 for a single value)
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
}

impl MeasureSummary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let count = sorted.len();
        let mean = sorted.iter().sum::<f64>() / count as f64;
        let var = if count > 1 {
            sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        Some(MeasureSummary {
            count,
            mean,
            stddev: var.sqrt(),
            min: sorted[0],
            max: sorted[count - 1],
            q25: quantile(&sorted, 0.25),
            median: quantile(&sorted, 0.5),
            q75: quantile(&sorted, 0.75),
        })
    }

    pub fn stderr(&self) -> f64 {
        self.stddev / (self.count as f64).sqrt()
    }
}

/// Linear interpolation between order statistics.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointSummary {
    pub point: usize,
    pub n: usize,
    pub param: f64,
    pub completed: usize,
    pub refused: usize,
    pub infeasible: usize,
    pub measures: BTreeMap<String, MeasureSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AssertionOutcome {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentResult {
    pub schema: String,
    pub config: ExperimentConfig,
    pub per_trial: Vec<TrialRecord>,
    pub summary: Vec<PointSummary>,
    pub assertion_outcomes: Vec<AssertionOutcome>,
}

impl ExperimentResult {
    pub fn refusals(&self) -> usize {
        self.summary.iter().map(|s| s.refused).sum()
    }

    pub fn all_assertions_pass(&self) -> bool {
        self.assertion_outcomes.iter().all(|a| a.passed)
    }

    /// Values of `measure` at grid point `point`, in trial order.
    pub fn values(&self, point: usize, measure: &str) -> Vec<f64> {
        self.per_trial
            .iter()
            .filter(|r| r.point == point)
            .filter_map(|r| r.values.get(measure).copied())
            .collect()
    }
}

/// Runs the campaign on the global rayon pool.
pub fn run_campaign(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let points = cfg.model.points();
    let jobs: Vec<(usize, usize)> = (0..points.len()).flat_map(|i| (0..cfg.trials).map(move |t| (i, t))).collect();
    let per_trial = jobs
        .par_iter()
        .map(|&(i, t)| run_trial(cfg, i, points[i], t))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&points, &per_trial);
    let assertion_outcomes = evaluate_assertions(&cfg.assertions, &summary, &per_trial);
    Ok(ExperimentResult {
        schema: SCHEMA_VERSION.to_string(),
        config: cfg.clone(),
        per_trial,
        summary,
        assertion_outcomes,
    })
}

/// Runs the campaign on a dedicated pool of `jobs` threads.
pub fn run_campaign_with_jobs(cfg: &ExperimentConfig, jobs: usize) -> Result<ExperimentResult> {
    with_jobs(jobs, || run_campaign(cfg))
}

pub(crate) fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(f)
}

fn run_trial(cfg: &ExperimentConfig, point: usize, pt: GridPoint, trial: usize) -> Result<TrialRecord> {
    let seed = trial_seed(cfg.master_seed, (point * cfg.trials + trial) as u64);
    let g = cfg.model.sample(pt, seed)?;
    let mut values = BTreeMap::new();
    let status = match measure(cfg, pt, &g, &mut values) {
        Ok(()) => TrialStatus::Ok,
        Err(Error::CapExceeded { what, estimate, cap }) => {
            values.clear();
            TrialStatus::Refused(format!("{what}: estimated cost {estimate} exceeds cap {cap}"))
        }
        Err(Error::Infeasible(msg)) => {
            values.clear();
            TrialStatus::Infeasible(msg)
        }
        Err(e) => return Err(e),
    };
    Ok(TrialRecord { point, n: pt.n, param: pt.param, trial, seed, status, values })
}

fn require_cf(g: &Graph, c: &Coloring, respect_filler: bool, what: &str) -> Result<()> {
    let verdict = is_conflict_free(g, c, respect_filler)?;
    if verdict.is_ok() {
        Ok(())
    } else {
        Err(Error::Internal(format!("{what} produced a colouring that is not conflict-free: {verdict:?}")))
    }
}

fn measure(cfg: &ExperimentConfig, pt: GridPoint, g: &Graph, out: &mut BTreeMap<String, f64>) -> Result<()> {
    let mut put = |k: &str, v: f64| {
        out.insert(k.to_string(), v);
    };
    match cfg.algo {
        Algo::ExactCf => {
            let (r, c) = exact_cf_chromatic(g)?;
            require_cf(g, &c, false, "exact conflict-free solver")?;
            put("chiCf", r as f64);
        }
        Algo::ExactChi => put("chi", exact_chromatic(g)? as f64),
        Algo::ExactDom | Algo::DominationWithCap => {
            let cap = if cfg.algo == Algo::ExactDom { None } else { cfg.size_cap };
            let d = exact_domination(g, cap)?;
            if let Some(w) = &d.witness {
                let s = VertexSet::from_members(g.n(), w.iter().copied())?;
                if !is_dominating(g, &s)? {
                    return Err(Error::Internal("domination witness does not dominate".into()));
                }
            }
            put("domination", d.value as f64);
            put("exceedsCap", f64::from(u8::from(d.exceeds_cap)));
        }
        Algo::Cfc => {
            let params = cfg.cfc_params(pt, &cfg.cfc.unwrap_or_default())?;
            let (c, trace) = algorithm_cfc(g, &params)?;
            require_cf(g, &c, true, "algorithm CFC")?;
            put("colorsUsed", trace.colors_used as f64);
            put("distinctColors", trace.distinct_colors as f64);
            put("rounds", trace.rounds.len() as f64);
            put("tailDegeneracy", trace.tail_degeneracy as f64);
            put("tailVertices", trace.tail_vertices as f64);
            put("fillerUsed", f64::from(u8::from(trace.filler_used)));
        }
        Algo::GreedyProper => {
            let c = greedy_proper(g);
            require_cf(g, &c, false, "greedy proper colouring")?;
            put("colors", c.distinct_colors() as f64);
        }
        Algo::DominationColoring => {
            let s = greedy_dominating_set(g);
            let c = domination_coloring(g, &s)?;
            require_cf(g, &c, false, "dominating-set colouring")?;
            put("dominatingSet", s.len() as f64);
            put("colors", c.distinct_colors() as f64);
        }
        Algo::Spoiling => {
            let spec = cfg.spoil.expect("validated");
            let spoiling = is_kf_spoiling(g, spec)?.is_spoiling();
            put("spoiling", f64::from(u8::from(spoiling)));
            if spoiling {
                let (r, c) = exact_cf_chromatic(g)?;
                require_cf(g, &c, false, "exact conflict-free solver")?;
                if r <= spec.k {
                    return Err(Error::Internal(format!(
                        "graph is ({}, {})-spoiling but has a conflict-free {r}-colouring",
                        spec.k, spec.f
                    )));
                }
                put("chiCf", r as f64);
            }
        }
        Algo::CfPrime => put("chiCfPrime", exact_cf_prime(g)?.0 as f64),
    }
    Ok(())
}

fn summarize(points: &[GridPoint], records: &[TrialRecord]) -> Vec<PointSummary> {
    points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let recs: Vec<&TrialRecord> = records.iter().filter(|r| r.point == i).collect();
            let names: BTreeSet<&String> = recs.iter().flat_map(|r| r.values.keys()).collect();
            let measures = names
                .into_iter()
                .filter_map(|name| {
                    let vals: Vec<f64> = recs.iter().filter_map(|r| r.values.get(name).copied()).collect();
                    MeasureSummary::of(&vals).map(|s| (name.clone(), s))
                })
                .collect();
            let count = |f: fn(&TrialStatus) -> bool| recs.iter().filter(|r| f(&r.status)).count();
            PointSummary {
                point: i,
                n: pt.n,
                param: pt.param,
                completed: count(|s| matches!(s, TrialStatus::Ok)),
                refused: count(|s| matches!(s, TrialStatus::Refused(_))),
                infeasible: count(|s| matches!(s, TrialStatus::Infeasible(_))),
                measures,
            }
        })
        .collect()
}

fn evaluate_assertions(specs: &[AssertionSpec], summary: &[PointSummary], records: &[TrialRecord]) -> Vec<AssertionOutcome> {
    let mut out = Vec::new();
    for spec in specs {
        match spec {
            AssertionSpec::NoRefusals => {
                let refused: usize = summary.iter().map(|s| s.refused).sum();
                out.push(AssertionOutcome { check: "noRefusals".into(), point: None, passed: refused == 0, observed: Some(refused as f64) });
            }
            AssertionSpec::FractionIn { measure, values, at_least } => {
                for s in summary {
                    let vals: Vec<f64> = records
                        .iter()
                        .filter(|r| r.point == s.point)
                        .filter_map(|r| r.values.get(measure).copied())
                        .collect();
                    let hits = vals.iter().filter(|v| values.contains(v)).count();
                    let frac = if vals.is_empty() { 0.0 } else { hits as f64 / vals.len() as f64 };
                    out.push(AssertionOutcome {
                        check: format!("fractionIn:{measure}"),
                        point: Some(s.point),
                        passed: !vals.is_empty() && frac >= *at_least,
                        observed: Some(frac),
                    });
                }
            }
            AssertionSpec::MeanBetween { measure, lo, hi } => {
                for s in summary {
                    let mean = s.measures.get(measure).map(|m| m.mean);
                    out.push(AssertionOutcome {
                        check: format!("meanBetween:{measure}"),
                        point: Some(s.point),
                        passed: mean.is_some_and(|m| *lo <= m && m <= *hi),
                        observed: mean,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Serialises a campaign result. JSON is pretty-printed with a trailing
/// newline; CSV has one row per trial with columns
/// `point,n,param,trial,seed,status` followed by every measure name in
/// sorted order (empty cells where a trial did not record the measure).
pub fn emit_report(res: &ExperimentResult, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(res),
        ReportFormat::Csv => Ok(trials_csv(&res.per_trial)),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn trials_csv(records: &[TrialRecord]) -> String {
    let names: BTreeSet<&String> = records.iter().flat_map(|r| r.values.keys()).collect();
    let mut out = String::from("point,n,param,trial,seed,status");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for r in records {
        let status = match r.status {
            TrialStatus::Ok => "ok",
            TrialStatus::Refused(_) => "refused",
            TrialStatus::Infeasible(_) => "infeasible",
        };
        write!(out, "{},{},{},{},{},{}", r.point, r.n, r.param, r.trial, r.seed, status).unwrap();
        for name in &names {
            out.push(',');
            if let Some(v) = r.values.get(*name) {
                write!(out, "{v}").unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// Every experiment the runner understands, as read from a config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "camelCase", deny_unknown_fields)]
pub enum ExperimentPlan {
    Campaign(ExperimentConfig),
    #[serde(rename_all = "camelCase")]
    CfRatio {
        ns: Vec<usize>,
        p: f64,
        trials: usize,
        master_seed: u64,
        #[serde(default)]
        eps: f64,
        #[serde(default)]
        cfc: CfcOptions,
    },
    #[serde(rename_all = "camelCase")]
    DominationConcentration { n: usize, p: f64, trials: usize, master_seed: u64 },
    #[serde(rename_all = "camelCase")]
    Spoiling { n: usize, p: f64, k: usize, f: usize, trials: usize, master_seed: u64 },
    #[serde(rename_all = "camelCase")]
    Threecond {
        layered: LayeredSpec,
        probes: usize,
        #[serde(default)]
        options: ThreecondOptions,
    },
    #[serde(rename_all = "camelCase")]
    SmallDomination { ell: usize, p: f64, trials: usize, master_seed: u64 },
    #[serde(rename_all = "camelCase")]
    UniqueHit { ell: usize, p: f64, samples: usize, master_seed: u64 },
}

/// Output of [`run_plan`].
#[derive(Clone, Debug, PartialEq)]
pub enum PlanOutput {
    Campaign(ExperimentResult),
    CfRatio(CfRatioTable),
    DominationConcentration(DominationConcentration),
    Spoiling(SpoilingReport),
    Threecond(ThreecondReport),
    SmallDomination(SmallDominationReport),
    UniqueHit(UniqueHitReport),
}

impl PlanOutput {
    pub fn to_json(&self) -> Result<String> {
        match self {
            PlanOutput::Campaign(r) => to_json(r),
            PlanOutput::CfRatio(r) => to_json(r),
            PlanOutput::DominationConcentration(r) => to_json(r),
            PlanOutput::Spoiling(r) => to_json(r),
            PlanOutput::Threecond(r) => to_json(r),
            PlanOutput::SmallDomination(r) => to_json(r),
            PlanOutput::UniqueHit(r) => to_json(r),
        }
    }

    /// Tabular view for plotting.
    pub fn to_csv(&self) -> String {
        match self {
            PlanOutput::Campaign(r) => trials_csv(&r.per_trial),
            PlanOutput::CfRatio(t) => t.to_csv(),
            PlanOutput::DominationConcentration(d) => d.to_csv(),
            PlanOutput::Spoiling(s) => trials_csv(&s.campaign.per_trial),
            PlanOutput::Threecond(t) => t.to_csv(),
            PlanOutput::SmallDomination(l) => trials_csv(&l.campaign.per_trial),
            PlanOutput::UniqueHit(l) => l.to_csv(),
        }
    }

    /// Solver refusals recorded anywhere in the output.
    pub fn refusals(&self) -> usize {
        match self {
            PlanOutput::Campaign(r) => r.refusals(),
            PlanOutput::CfRatio(t) => t.campaign.refusals(),
            PlanOutput::DominationConcentration(d) => d.refused,
            PlanOutput::Spoiling(s) => s.refused,
            PlanOutput::SmallDomination(l) => l.campaign.refusals(),
            PlanOutput::Threecond(_) | PlanOutput::UniqueHit(_) => 0,
        }
    }

    /// Whether every pass/fail check carried by the output passed.
    pub fn passed(&self) -> bool {
        match self {
            PlanOutput::Campaign(r) => r.all_assertions_pass(),
            PlanOutput::CfRatio(t) => t.all_verified,
            PlanOutput::DominationConcentration(_) | PlanOutput::Spoiling(_) | PlanOutput::Threecond(_) => true,
            PlanOutput::SmallDomination(l) => l.passed,
            PlanOutput::UniqueHit(l) => l.passed,
        }
    }
}

pub fn run_plan(plan: &ExperimentPlan) -> Result<PlanOutput> {
    Ok(match plan {
        ExperimentPlan::Campaign(cfg) => PlanOutput::Campaign(run_campaign(cfg)?),
        ExperimentPlan::CfRatio { ns, p, trials, master_seed, eps, cfc } => {
            PlanOutput::CfRatio(cf_ratio_experiment(ns, *p, *trials, *master_seed, *eps, *cfc)?)
        }
        ExperimentPlan::DominationConcentration { n, p, trials, master_seed } => {
            PlanOutput::DominationConcentration(domination_concentration_experiment(*n, *p, *trials, *master_seed)?)
        }
        ExperimentPlan::Spoiling { n, p, k, f, trials, master_seed } => {
            PlanOutput::Spoiling(spoiling_experiment(*n, *p, SpoilSpec::new(*k, *f)?, *trials, *master_seed)?)
        }
        ExperimentPlan::Threecond { layered, probes, options } => {
            PlanOutput::Threecond(threecond_check(layered, *probes, options)?)
        }
        ExperimentPlan::SmallDomination { ell, p, trials, master_seed } => {
            PlanOutput::SmallDomination(small_domination_check(*ell, *p, *trials, *master_seed)?)
        }
        ExperimentPlan::UniqueHit { ell, p, samples, master_seed } => {
            PlanOutput::UniqueHit(unique_hit_check(*ell, *p, *samples, *master_seed)?)
        }
    })
}

pub fn run_plan_with_jobs(plan: &ExperimentPlan, jobs: usize) -> Result<PlanOutput> {
    with_jobs(jobs, || run_plan(plan))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gnp(ns: &[usize], ps: &[f64]) -> ModelGrid {
        ModelGrid::Gnp { ns: ns.to_vec(), ps: ps.to_vec() }
    }

    #[test]
    fn edgeless_domination_is_n() {
        let res = run_campaign(&ExperimentConfig::new(gnp(&[7], &[0.0]), Algo::ExactDom, 1, 3)).unwrap();
        assert_eq!(res.per_trial[0].values["domination"], 7.0);
    }

    #[test]
    fn complete_cf_is_two() {
        let res = run_campaign(&ExperimentConfig::new(gnp(&[2, 6], &[1.0]), Algo::ExactCf, 1, 3)).unwrap();
        assert_eq!(res.values(0, "chiCf"), vec![2.0]);
        assert_eq!(res.values(1, "chiCf"), vec![2.0]);
    }

    #[test]
    fn capped_domination_reports_distribution() {
        let mut cfg = ExperimentConfig::new(gnp(&[300], &[0.5]), Algo::DominationWithCap, 4, 11);
        cfg.size_cap = Some(5);
        let res = run_campaign(&cfg).unwrap();
        assert_eq!(res.per_trial.len(), 4);
        assert!(res.values(0, "domination").iter().all(|&d| (1.0..=6.0).contains(&d)));
    }

    #[test]
    fn refusals_are_recorded() {
        let res = run_campaign(&ExperimentConfig::new(gnp(&[20], &[0.5]), Algo::ExactCf, 2, 0)).unwrap();
        assert_eq!(res.refusals(), 2);
        assert!(res.per_trial.iter().all(|r| r.values.is_empty()));
        let mut cfg = ExperimentConfig::new(gnp(&[20], &[0.5]), Algo::ExactCf, 1, 0);
        cfg.assertions.push(AssertionSpec::NoRefusals);
        assert!(!run_campaign(&cfg).unwrap().all_assertions_pass());
    }

    #[test]
    fn invalid_configs() {
        assert!(run_campaign(&ExperimentConfig::new(gnp(&[5], &[0.5]), Algo::ExactCf, 0, 0)).is_err());
        assert!(run_campaign(&ExperimentConfig::new(gnp(&[5], &[1.5]), Algo::ExactCf, 1, 0)).is_err());
        assert!(run_campaign(&ExperimentConfig::new(gnp(&[5], &[0.5]), Algo::Spoiling, 1, 0)).is_err());
        let layered = ModelGrid::Layered { ns: vec![50], base: 0.99 };
        assert!(run_campaign(&ExperimentConfig::new(layered, Algo::Cfc, 1, 0)).is_err());
    }

    #[test]
    fn summary_statistics() {
        let s = MeasureSummary::of(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert_eq!(s.median, 2.5);
        assert_eq!(s.q25, 1.75);
        assert!((s.stddev - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(MeasureSummary::of(&[7.0]).unwrap().stddev, 0.0);
        assert!(MeasureSummary::of(&[]).is_none());
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(trials_csv(&[]), "point,n,param,trial,seed,status\n");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut cfg = ExperimentConfig::new(gnp(&[40, 80], &[0.1, 0.3]), Algo::Cfc, 3, 5);
        cfg.assertions.push(AssertionSpec::MeanBetween { measure: "colorsUsed".into(), lo: 0.0, hi: 100.0 });
        let res = run_campaign(&cfg).unwrap();
        let text = emit_report(&res, ReportFormat::Json).unwrap();
        let back: ExperimentResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, res);
        assert_eq!(emit_report(&back, ReportFormat::Json).unwrap(), text);
        for s in &back.summary {
            let vals = back.values(s.point, "colorsUsed");
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            assert!((mean - s.measures["colorsUsed"].mean).abs() <= 1e-12);
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let cfg = ExperimentConfig::new(gnp(&[60], &[0.2]), Algo::Cfc, 8, 9);
        let a = emit_report(&run_campaign_with_jobs(&cfg, 1).unwrap(), ReportFormat::Json).unwrap();
        let b = emit_report(&run_campaign_with_jobs(&cfg, 4).unwrap(), ReportFormat::Json).unwrap();
        assert_eq!(a, b);
    }
}
