use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run_campaign, Algo, CfcOptions, ExperimentConfig, ExperimentResult, ModelGrid, TrialStatus};
use crate::error::{invalid, Result};
use crate::graph::{
    greedy_independent_set, max_independent_set_size_with_cap, one_neighborhood, set_weight, VertexSet,
    DEFAULT_ALPHA_CAP,
};
use crate::models::{sample_gnp, sample_layered, GnpSpec, LayeredSpec};
use crate::rng::{domain, trial_seed, CounterRng};
use crate::theory::{cf_leading_term, class_size, domination_formula, mu};
use crate::verify::SpoilSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CfRatioRow {
    pub n: usize,
    pub completed: usize,
    pub mean_colors: f64,
    pub stderr_colors: f64,
    /// `ln(np) / -ln(1 - mu(p))`
    pub leading_term: f64,
    /// `(1 + eps)` times the leading term
    pub theory_upper: f64,
    /// mean colours over the leading term
    pub ratio: f64,
    pub ratio_stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CfRatioTable {
    pub p: f64,
    pub eps: f64,
    pub mu: f64,
    pub rows: Vec<CfRatioRow>,
    /// Each ratio is at most the previous one plus the combined standard
    /// error `sqrt(se_prev^2 + se_next^2)`.
    pub non_increasing: bool,
    /// Every trial finished and its colouring verified.
    pub all_verified: bool,
    pub campaign: ExperimentResult,
}

impl CfRatioTable {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("n,p,completed,mean_colors,stderr_colors,leading_term,theory_upper,ratio,ratio_stderr\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.n, self.p, r.completed, r.mean_colors, r.stderr_colors, r.leading_term, r.theory_upper, r.ratio,
                r.ratio_stderr
            )
            .unwrap();
        }
        out
    }
}

/// Colour counts of the greedy round algorithm on `G(n, p)` against the
/// leading term of the upper bound.
pub fn cf_ratio_experiment(
    ns: &[usize],
    p: f64,
    trials: usize,
    master_seed: u64,
    eps: f64,
    cfc: CfcOptions,
) -> Result<CfRatioTable> {
    if !(eps >= 0.0) {
        return invalid(format!("eps = {eps} must be non-negative"));
    }
    let mut cfg = ExperimentConfig::new(ModelGrid::Gnp { ns: ns.to_vec(), ps: vec![p] }, Algo::Cfc, trials, master_seed);
    cfg.cfc = Some(CfcOptions { p: None, ..cfc });
    let campaign = run_campaign(&cfg)?;
    let mut rows = Vec::new();
    for s in &campaign.summary {
        let lead = cf_leading_term(s.n, p)?;
        let m = s.measures.get("colorsUsed");
        let (mean, se) = m.map_or((f64::NAN, f64::NAN), |m| (m.mean, m.stderr()));
        rows.push(CfRatioRow {
            n: s.n,
            completed: s.completed,
            mean_colors: mean,
            stderr_colors: se,
            leading_term: lead,
            theory_upper: (1.0 + eps) * lead,
            ratio: mean / lead,
            ratio_stderr: se / lead,
        });
    }
    let non_increasing = rows
        .windows(2)
        .all(|w| w[1].ratio <= w[0].ratio + w[0].ratio_stderr.hypot(w[1].ratio_stderr));
    let all_verified = campaign.summary.iter().all(|s| s.completed == trials);
    Ok(CfRatioTable { p, eps, mu: mu(p)?, rows, non_increasing, all_verified, campaign })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DominationConcentration {
    pub n: usize,
    pub p: f64,
    pub formula: i64,
    pub size_cap: usize,
    pub target: [i64; 2],
    pub trials: usize,
    /// observed domination number -> trials (values above the cap are
    /// counted under `sizeCap + 1`)
    pub counts: BTreeMap<usize, usize>,
    pub refused: usize,
    pub fraction_in_target: f64,
    pub campaign: ExperimentResult,
}

impl DominationConcentration {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("domination,trials,in_target\n");
        for (&d, &c) in &self.counts {
            let hit = self.target.contains(&(d as i64));
            writeln!(out, "{d},{c},{hit}").unwrap();
        }
        out
    }
}

/// Domination numbers of `G(n, p)` decided up to the closed-form value
/// plus three.
pub fn domination_concentration_experiment(
    n: usize,
    p: f64,
    trials: usize,
    master_seed: u64,
) -> Result<DominationConcentration> {
    if !(0.5..1.0).contains(&p) {
        return invalid(format!("domination concentration needs 1/2 <= p < 1, got {p}"));
    }
    let formula = domination_formula(n, p)?;
    let size_cap = (formula + 3).max(0) as usize;
    let mut cfg =
        ExperimentConfig::new(ModelGrid::Gnp { ns: vec![n], ps: vec![p] }, Algo::DominationWithCap, trials, master_seed);
    cfg.size_cap = Some(size_cap);
    let campaign = run_campaign(&cfg)?;
    let mut counts = BTreeMap::new();
    for d in campaign.values(0, "domination") {
        *counts.entry(d as usize).or_insert(0) += 1;
    }
    let target = [formula, formula + 1];
    let completed: usize = counts.values().sum();
    let hits: usize = counts.iter().filter(|(&d, _)| target.contains(&(d as i64))).map(|(_, &c)| c).sum();
    Ok(DominationConcentration {
        n,
        p,
        formula,
        size_cap,
        target,
        trials,
        counts,
        refused: campaign.refusals(),
        fraction_in_target: if completed == 0 { 0.0 } else { hits as f64 / completed as f64 },
        campaign,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpoilingReport {
    pub n: usize,
    pub p: f64,
    pub k: usize,
    pub f: usize,
    pub trials: usize,
    pub spoiling: usize,
    pub not_spoiling: usize,
    pub refused: usize,
    /// share of decided trials that were spoiling
    pub frequency: f64,
    /// spoiling trials whose exact conflict-free number exceeded `k`
    pub cross_checked: usize,
    pub campaign: ExperimentResult,
}

/// Frequency of `(k, f)`-spoiling among samples of `G(n, p)`. Every
/// spoiling sample is cross-checked against the exact conflict-free
/// chromatic number; a sample with `chi_CF <= k` aborts with an error.
pub fn spoiling_experiment(n: usize, p: f64, spec: SpoilSpec, trials: usize, master_seed: u64) -> Result<SpoilingReport> {
    let mut cfg = ExperimentConfig::new(ModelGrid::Gnp { ns: vec![n], ps: vec![p] }, Algo::Spoiling, trials, master_seed);
    cfg.spoil = Some(spec);
    let campaign = run_campaign(&cfg)?;
    let flags = campaign.values(0, "spoiling");
    let spoiling = flags.iter().filter(|&&v| v == 1.0).count();
    let cross_checked = campaign.values(0, "chiCf").iter().filter(|&&r| r > spec.k as f64).count();
    Ok(SpoilingReport {
        n,
        p,
        k: spec.k,
        f: spec.f,
        trials,
        spoiling,
        not_spoiling: flags.len() - spoiling,
        refused: campaign.refusals(),
        frequency: if flags.is_empty() { 0.0 } else { spoiling as f64 / flags.len() as f64 },
        cross_checked,
        campaign,
    })
}

/// Thresholds for [`threecond_check`]; defaults are the asymptotic ones.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct ThreecondOptions {
    pub alpha_exponent: f64,
    pub heavy_exponent: f64,
    pub light_exponent: f64,
    pub r_constant: f64,
    pub r_override: Option<usize>,
    /// exact independence number only up to this many vertices
    pub alpha_exact_cap: usize,
}

impl Default for ThreecondOptions {
    fn default() -> Self {
        ThreecondOptions {
            alpha_exponent: 0.6,
            heavy_exponent: 0.6,
            light_exponent: 0.7,
            r_constant: 1e-5,
            r_override: None,
            alpha_exact_cap: DEFAULT_ALPHA_CAP,
        }
    }
}

impl ThreecondOptions {
    /// `floor(r_constant * ln(n)^2)` unless overridden.
    pub fn r_for(&self, n: usize) -> usize {
        self.r_override.unwrap_or_else(|| {
            let l = (n as f64).ln();
            (self.r_constant * l * l).floor().max(0.0) as usize
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ThreecondReport {
    pub n_used: usize,
    pub r_used: usize,
    pub layers: u32,
    pub alpha_observed: usize,
    /// false when `alphaObserved` is only a greedy lower bound
    pub alpha_exact: bool,
    pub alpha_threshold: f64,
    pub heavy_probes: usize,
    pub heavy_threshold: f64,
    pub heavy_max_one_neighborhood: usize,
    pub heavy_violations: usize,
    pub light_probes: usize,
    pub light_threshold: f64,
    pub light_union_max: usize,
    pub light_violations: usize,
}

impl ThreecondReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,r,layers,alpha,alpha_exact,alpha_threshold,heavy_probes,heavy_threshold,heavy_max,heavy_violations,light_probes,light_threshold,light_union_max,light_violations\n",
        );
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n_used,
            self.r_used,
            self.layers,
            self.alpha_observed,
            self.alpha_exact,
            self.alpha_threshold,
            self.heavy_probes,
            self.heavy_threshold,
            self.heavy_max_one_neighborhood,
            self.heavy_violations,
            self.light_probes,
            self.light_threshold,
            self.light_union_max,
            self.light_violations
        )
        .unwrap();
        out
    }
}

/// Samples one layered graph and reports its independence number, the
/// one-neighbourhoods of random heavy sets (weight above `sqrt n`), and the
/// one-neighbourhood coverage of random families of `r` disjoint light sets.
pub fn threecond_check(spec: &LayeredSpec, probes: usize, opts: &ThreecondOptions) -> Result<ThreecondReport> {
    let wg = sample_layered(spec)?;
    let g = wg.graph();
    let n = g.n();
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let r = opts.r_for(n);

    let (alpha_observed, alpha_exact) = if n <= opts.alpha_exact_cap {
        (max_independent_set_size_with_cap(g, opts.alpha_exact_cap)?, true)
    } else {
        (greedy_independent_set(g).len(), false)
    };

    let mut rng = CounterRng::new(spec.seed, domain::PROBES).stream();
    let mut order: Vec<usize> = (0..n).collect();

    let heavy_threshold = nf.powf(opts.heavy_exponent);
    let mut heavy_max = 0;
    let mut heavy_violations = 0;
    let mut heavy_probes = 0;
    for _ in 0..probes {
        order.shuffle(&mut rng);
        let mut s = VertexSet::new(n);
        let mut w = 0.0;
        for &v in &order {
            if w > sqrt_n {
                break;
            }
            s.insert(v);
            w += wg.weight(v);
        }
        if set_weight(&wg, &s)? <= sqrt_n {
            // the whole vertex set is light: no heavy sets exist
            break;
        }
        heavy_probes += 1;
        let one = one_neighborhood(g, &s)?.len();
        heavy_max = heavy_max.max(one);
        if one as f64 >= heavy_threshold {
            heavy_violations += 1;
        }
    }

    let light_threshold = nf - nf.powf(opts.light_exponent);
    let mut light_max = 0;
    let mut light_violations = 0;
    for _ in 0..probes {
        order.shuffle(&mut rng);
        let mut next = order.iter().copied().peekable();
        let mut covered = VertexSet::new(n);
        for _ in 0..r {
            let target = rng.random::<f64>() * sqrt_n;
            let mut s = VertexSet::new(n);
            let mut w = 0.0;
            while let Some(&v) = next.peek() {
                if w + wg.weight(v) > target {
                    break;
                }
                w += wg.weight(v);
                s.insert(v);
                next.next();
            }
            covered = covered.union(&one_neighborhood(g, &s)?);
        }
        light_max = light_max.max(covered.len());
        if covered.len() as f64 >= light_threshold {
            light_violations += 1;
        }
    }

    Ok(ThreecondReport {
        n_used: n,
        r_used: r,
        layers: wg.layer_count(),
        alpha_observed,
        alpha_exact,
        alpha_threshold: nf.powf(opts.alpha_exponent),
        heavy_probes,
        heavy_threshold,
        heavy_max_one_neighborhood: heavy_max,
        heavy_violations,
        light_probes: probes,
        light_threshold,
        light_union_max: light_max,
        light_violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SmallDominationReport {
    pub ell: usize,
    pub p: f64,
    pub m: usize,
    pub trials: usize,
    /// trials with domination number below `m`
    pub occurrences: usize,
    pub refused: usize,
    /// at most two occurrences and no refusals
    pub passed: bool,
    pub campaign: ExperimentResult,
}

/// Counts samples of `G(ell, p)` whose domination number is below
/// `m = floor(1/p)`.
pub fn small_domination_check(ell: usize, p: f64, trials: usize, master_seed: u64) -> Result<SmallDominationReport> {
    let m = class_size(p)?;
    if m == 0 {
        return invalid("p must be below 1");
    }
    let mut cfg =
        ExperimentConfig::new(ModelGrid::Gnp { ns: vec![ell], ps: vec![p] }, Algo::DominationWithCap, trials, master_seed);
    cfg.size_cap = Some(m - 1);
    let campaign = run_campaign(&cfg)?;
    let occurrences = campaign
        .per_trial
        .iter()
        .filter(|r| r.status == TrialStatus::Ok && r.values["exceedsCap"] == 0.0)
        .count();
    let refused = campaign.refusals();
    Ok(SmallDominationReport { ell, p, m, trials, occurrences, refused, passed: occurrences <= 2 && refused == 0, campaign })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UniqueHitReport {
    pub ell: usize,
    pub p: f64,
    pub m: usize,
    pub samples: usize,
    /// `|N^(1)(S)|` per sample
    pub sizes: Vec<usize>,
    pub mean: f64,
    /// `mu(p) (ell - m)`
    pub expected: f64,
    pub relative_error: f64,
    /// relative error at most 5%
    pub passed: bool,
}

impl UniqueHitReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample,one_neighborhood\n");
        for (i, s) in self.sizes.iter().enumerate() {
            writeln!(out, "{i},{s}").unwrap();
        }
        out
    }
}

/// Mean one-neighbourhood size of a uniformly random `m`-set in a fresh
/// sample of `G(ell, p)`, `m = floor(1/p)`, against `mu(p) (ell - m)`.
pub fn unique_hit_check(ell: usize, p: f64, samples: usize, master_seed: u64) -> Result<UniqueHitReport> {
    let m = class_size(p)?;
    if m > ell || samples == 0 {
        return invalid(format!("need m = {m} <= ell = {ell} and at least one sample"));
    }
    let sizes = (0..samples)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(master_seed, i as u64);
            let g = sample_gnp(&GnpSpec::new(ell, p, seed)?)?;
            let mut rng = CounterRng::new(seed, domain::PROBES).stream();
            let s = VertexSet::from_members(ell, index::sample(&mut rng, ell, m).into_iter())?;
            Ok(one_neighborhood(&g, &s)?.len())
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = sizes.iter().sum::<usize>() as f64 / samples as f64;
    let expected = mu(p)? * (ell - m) as f64;
    let relative_error = (mean - expected).abs() / expected;
    Ok(UniqueHitReport { ell, p, m, samples, sizes, mean, expected, relative_error, passed: relative_error <= 0.05 })
}
