//! Exact solvers for small graphs and the two constructive colourings.

mod cf_prime;
mod cfc;
mod chromatic;
mod domination;
mod exact_cf;

pub use cf_prime::{exact_cf_prime, exact_cf_prime_with_cap, DEFAULT_CF_PRIME_MAX_N};
pub use cfc::{
    algorithm_cfc, CfcParams, CfcRound, CfcTrace, TailThreshold, DEFAULT_BIG_K, FILLER, THEORY_BIG_K,
};
pub use chromatic::{exact_chromatic, exact_chromatic_with_cap, DEFAULT_CHI_MAX_N};
pub use domination::{
    domination_coloring, exact_domination, exact_domination_with_budget, greedy_dominating_set,
    Domination, DEFAULT_DOM_NODE_BUDGET,
};
pub use exact_cf::{exact_cf_chromatic, exact_cf_chromatic_with_cap, DEFAULT_CF_MAX_N};

use crate::graph::{degeneracy_coloring, Graph};
use crate::verify::Coloring;

/// Proper colouring with at most `degeneracy + 1` colours (first fit along
/// the reverse elimination order).
pub fn greedy_proper(g: &Graph) -> Coloring {
    Coloring::new(degeneracy_coloring(g).1)
}
