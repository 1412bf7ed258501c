//! Converse (lower) bounds on the optimal error probability.
//!
//! Every bound returns a [`BoundReport`] carrying the unclamped value and the
//! parameters at which it was attained, so callers can re-evaluate it.

mod ptp;
mod sw;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{solve, LpModel, LpSolution, Status};

pub use ptp::{
    alpha_sup_form, hypothesis_testing_bound, kv_tilted_improved, lossless_gamma_bound, meta_je, meta_lossless,
    meta_lossy, meta_lossy_z, meta_sid, np_alpha, palzer_timo, sid_classic, sid_improved, TiltedInfo,
};
pub use sw::{
    combine_feasible, embed_je_feasible, embed_sid_feasible, max_converse, meta_sw, meta_sw_eta,
    meta_sw_eta_family, mk_classic, mk_flows, mk_improved, sw_weights_objective, weights_point,
};

/// Largest LP (in variables) the converse evaluators hand to the dense solver.
pub const DENSE_LP_CAP: usize = 5_000;

/// Parameters at which a bound was attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// Scalar `t = exp(-beta)` of a threshold family; `0` marks the `t -> 0` limit.
    Threshold { t: f64 },
    /// Common cap `c` of a weight `min(P, c)`.
    Cap { c: f64 },
    /// Level `beta` of an information-density threshold; `-inf` keeps every symbol.
    Level { beta: f64 },
    /// Scale `u = exp(-gamma)` of a tilted weight.
    Scale { u: f64 },
    /// Weight over the source alphabet, row-major for joint sources.
    Weights { phi: Vec<f64> },
    /// Joint, first-given-second and second-given-first weights.
    SwWeights { phi_hat: Vec<f64>, phi_12: Vec<f64>, phi_21: Vec<f64> },
    /// Auxiliary output distribution; `vacuous` when the bound degenerates.
    TestDistribution { q: Vec<f64>, vacuous: bool },
    /// The winning member of a maximum over several bounds.
    Component { name: String, inner: Box<Witness> },
}

impl Witness {
    /// Short one-line rendering for text reports.
    pub fn summary(&self) -> String {
        fn list(v: &[f64]) -> String {
            let items: Vec<String> = v.iter().map(|x| crate::fmt_num(*x)).collect();
            format!("[{}]", items.join(","))
        }
        match self {
            Witness::None => "none".into(),
            Witness::Threshold { t } => format!("t={}", crate::fmt_num(*t)),
            Witness::Cap { c } => format!("cap={}", crate::fmt_num(*c)),
            Witness::Level { beta } => format!("beta={}", crate::fmt_num(*beta)),
            Witness::Scale { u } => format!("u={}", crate::fmt_num(*u)),
            Witness::Weights { phi } => format!("phi={}", list(phi)),
            Witness::SwWeights { phi_hat, phi_12, phi_21 } => {
                format!("phi_hat={};phi_12={};phi_21={}", list(phi_hat), list(phi_12), list(phi_21))
            }
            Witness::TestDistribution { q, vacuous } => {
                if *vacuous {
                    format!("q={};vacuous", list(q))
                } else {
                    format!("q={}", list(q))
                }
            }
            Witness::Component { name, inner } => format!("{}:{}", name, inner.summary()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub raw_value: f64,
    pub clamped_value: f64,
    pub witness: Witness,
    /// Which family of bounds the value belongs to.
    pub origin: &'static str,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, raw_value: f64, witness: Witness, origin: &'static str) -> Self {
        BoundReport { name: name.into(), raw_value, clamped_value: raw_value.max(0.0), witness, origin }
    }
}

/// Best of `(value, arg)` candidates; earlier entries win ties.
pub(crate) fn argmax<T: Copy>(cands: impl IntoIterator<Item = (f64, T)>) -> Option<(f64, T)> {
    let mut best: Option<(f64, T)> = None;
    for (v, a) in cands {
        match best {
            Some((bv, _)) if v <= bv => {}
            _ => best = Some((v, a)),
        }
    }
    best
}

pub(crate) fn solve_optimal(model: &LpModel) -> Result<LpSolution> {
    if model.num_vars() > DENSE_LP_CAP {
        return Err(Error::InstanceTooLarge { size: model.num_vars(), cap: DENSE_LP_CAP });
    }
    let sol = solve(model)?;
    if sol.status != Status::Optimal {
        return Err(Error::NumericalBreakdown(format!("bound LP ended {:?}", sol.status)));
    }
    Ok(sol)
}
