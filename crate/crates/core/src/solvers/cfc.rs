//! Greedy round-based conflict-free colouring for random graphs.
//!
//! Each round picks an independent set `S_i` greedily (smallest remaining id
//! outside the closed neighbourhoods of the set so far, until the set has
//! `m = floor(1/p)` members or dominates the remaining graph), gives it a
//! fresh colour `i`, gives the filler colour 0 to the remaining vertices with
//! exactly one neighbour in `S_i`, and deletes both groups. Rounds stop once
//! at most `tail(n)` vertices remain or `p <= K / n_i`; what is left is
//! coloured properly with fresh colours along the reverse degeneracy order.
//!
//! Filler vertices are always resolved by the round that created them, so the
//! filler colour is never needed as a unique colour.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{degeneracy_coloring, Graph, VertexSet};
use crate::theory::class_size;
use crate::verify::Coloring;

pub const FILLER: u32 = 0;
/// `K` used when the caller does not pick one. Chosen so the main loop runs
/// at all for a few thousand vertices.
pub const DEFAULT_BIG_K: f64 = 5.0;
/// The `K > 100` demanded by the probabilistic analysis.
pub const THEORY_BIG_K: f64 = 100.0;

/// Halting size for the main loop, as a function of the original `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum TailThreshold {
    /// `ln ln n`
    #[default]
    LnLn,
    /// `log2 log2 n`
    LogLog2,
    Const(f64),
}

impl TailThreshold {
    pub fn eval(&self, n: usize) -> f64 {
        let x = n as f64;
        match *self {
            TailThreshold::LnLn => x.ln().ln(),
            TailThreshold::LogLog2 => x.log2().log2(),
            TailThreshold::Const(c) => c,
        }
    }

    /// Parses `lnln`, `loglog2` or `const:C`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lnln" => Ok(TailThreshold::LnLn),
            "loglog2" => Ok(TailThreshold::LogLog2),
            _ => match s.strip_prefix("const:").and_then(|c| c.parse::<f64>().ok()) {
                Some(c) if c.is_finite() => Ok(TailThreshold::Const(c)),
                _ => invalid(format!("unknown tail threshold `{s}` (expected lnln, loglog2 or const:C)")),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CfcParams {
    pub p: f64,
    /// Accuracy parameter. It only enters through `big_k`, which the caller
    /// picks; kept so traces record the full input.
    pub delta: f64,
    pub big_k: f64,
    #[serde(default)]
    pub tail: TailThreshold,
}

impl CfcParams {
    pub fn new(p: f64) -> Self {
        CfcParams { p, delta: 0.1, big_k: DEFAULT_BIG_K, tail: TailThreshold::LnLn }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return invalid(format!("p = {} must lie strictly between 0 and 1", self.p));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return invalid(format!("delta = {} must lie strictly between 0 and 1", self.delta));
        }
        if !(self.big_k > 0.0) {
            return invalid(format!("K = {} must be positive", self.big_k));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CfcRound {
    /// Colour given to the selected set.
    pub color: u32,
    pub selected: Vec<usize>,
    /// Vertices given the filler colour this round.
    pub cared: Vec<usize>,
    /// Vertices left after the round.
    pub remaining: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CfcTrace {
    pub rounds: Vec<CfcRound>,
    /// Degeneracy of the residual graph, or -1 when it is empty (then the
    /// tail uses no colours).
    pub tail_degeneracy: i64,
    pub tail_vertices: usize,
    pub filler_used: bool,
    /// Colours the algorithm commits to: one per round, `d + 1` for a
    /// nonempty tail, plus the filler when some vertex received it.
    pub colors_used: usize,
    /// Distinct colours that actually occur; first-fit may leave part of the
    /// tail palette unused, so this can be below `colors_used`.
    pub distinct_colors: usize,
}

impl CfcTrace {
    /// `rounds + tail_degeneracy + 1 (+1 if the filler was used)`.
    pub fn identity_count(&self) -> usize {
        (self.rounds.len() as i64 + self.tail_degeneracy + 1 + i64::from(self.filler_used)) as usize
    }
}

pub fn algorithm_cfc(g: &Graph, params: &CfcParams) -> Result<(Coloring, CfcTrace)> {
    params.validate()?;
    let n = g.n();
    let m = class_size(params.p)?;
    let tail_limit = params.tail.eval(n);

    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut color = vec![u32::MAX; n];
    let mut rounds = Vec::new();
    // scratch: neighbours in the current S_i, and "dominated by S_i"
    let mut hits = vec![0u32; n];
    let mut dominated = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();

    while remaining > 0 && remaining as f64 > tail_limit && params.p > params.big_k / remaining as f64 {
        let round_color = rounds.len() as u32 + 1;
        let mut selected = Vec::new();
        let mut cursor = 0;
        while selected.len() < m {
            while cursor < n && (!alive[cursor] || dominated[cursor]) {
                cursor += 1;
            }
            if cursor == n {
                break;
            }
            let v = cursor;
            selected.push(v);
            dominated[v] = true;
            touched.push(v);
            for u in g.neighbors(v) {
                if alive[u] {
                    hits[u] += 1;
                    dominated[u] = true;
                    touched.push(u);
                }
            }
        }
        for &v in &selected {
            color[v] = round_color;
        }
        let mut cared: Vec<usize> = touched
            .iter()
            .copied()
            .filter(|&u| hits[u] == 1 && color[u] != round_color)
            .collect();
        cared.sort_unstable();
        cared.dedup();
        for &u in &cared {
            color[u] = FILLER;
        }
        for &u in &touched {
            hits[u] = 0;
            dominated[u] = false;
        }
        touched.clear();
        for &v in selected.iter().chain(&cared) {
            alive[v] = false;
        }
        remaining -= selected.len() + cared.len();
        rounds.push(CfcRound { color: round_color, selected, cared, remaining });
    }

    let mut keep = VertexSet::new(n);
    for v in (0..n).filter(|&v| alive[v]) {
        keep.insert(v);
    }
    let (residual, old_id) = g.induced(&keep);
    let tail_base = rounds.len() as u32 + 1;
    let tail_degeneracy = if residual.n() == 0 {
        -1
    } else {
        let (deg, tail_colors) = degeneracy_coloring(&residual);
        for (i, &c) in tail_colors.iter().enumerate() {
            color[old_id[i]] = tail_base + c;
        }
        deg.degeneracy as i64
    };

    let filler_used = rounds.iter().any(|r| !r.cared.is_empty());
    let coloring = Coloring::with_filler(color, Some(FILLER));
    let mut trace = CfcTrace {
        rounds,
        tail_degeneracy,
        tail_vertices: residual.n(),
        filler_used,
        colors_used: 0,
        distinct_colors: coloring.distinct_colors(),
    };
    trace.colors_used = trace.identity_count();
    Ok((coloring, trace))
}
