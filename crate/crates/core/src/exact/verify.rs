//! Checking solver reports against exhaustive optima.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::{brute_force_assignment, brute_force_tour, brute_force_two_matching, BruteForceResult, Target};
use crate::error::Result;
use crate::graph::Instance;
use crate::objectives::ValueOracle;
use crate::report::{Reference, SolveReport};

/// Additive guarantee for reward-minus-cost objectives: a run that is an
/// `α`-approximation for the shifted objective `f + |S|·M` satisfies
/// `f(S) ≥ α·OPT - (1 + α - 2α/p)·M·n` for the unshifted `f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdditiveBound {
    /// Largest single-edge penalty, `β·max c(e)` for `(1-β)w - βc`.
    pub m: f64,
    /// Size of the largest basis (`n` for tours).
    pub basis_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub rel_tol: f64,
    pub additive: Option<AdditiveBound>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { rel_tol: 1e-9, additive: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Ratio,
    Additive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub algorithm: String,
    pub reference: Reference,
    pub check: Check,
    pub value: f64,
    pub optimum: f64,
    pub ratio: f64,
    pub required: f64,
    pub pass: bool,
}

fn optimum(inst: &Instance, oracle: &ValueOracle, reference: Reference) -> Result<BruteForceResult> {
    let target = Target::Oracle(oracle);
    match reference {
        Reference::Tour => brute_force_tour(inst, oracle),
        Reference::TwoMatching => brute_force_two_matching(inst, target),
        Reference::Assignment => brute_force_assignment(inst, target),
    }
}

/// One verdict per report: `value ≥ ratio·OPT` against the optimum named by
/// the report's certificate, or the additive form when `opts.additive` is set.
/// Optima are computed once per reference kind.
pub fn verify_certificates(
    inst: &Instance,
    oracle: &ValueOracle,
    reports: &[SolveReport],
    opts: &VerifyOptions,
) -> Result<Vec<Verdict>> {
    let mut optima: HashMap<Reference, f64> = HashMap::new();
    let mut verdicts = Vec::with_capacity(reports.len());
    for r in reports {
        let reference = r.certificate.reference;
        let opt = match optima.get(&reference) {
            Some(v) => *v,
            None => {
                let v = optimum(inst, oracle, reference)?.value;
                optima.insert(reference, v);
                v
            }
        };
        let alpha = r.certificate.ratio;
        let (check, required) = match opts.additive {
            Some(a) => {
                let p = r.certificate.p().unwrap_or(2.0);
                (Check::Additive, alpha * opt - (1.0 + alpha - 2.0 * alpha / p) * a.m * a.basis_size as f64)
            }
            None => (Check::Ratio, alpha * opt),
        };
        let slack = opts.rel_tol * 1f64.max(required.abs()).max(opt.abs());
        verdicts.push(Verdict {
            algorithm: r.algorithm.clone(),
            reference,
            check,
            value: r.value,
            optimum: opt,
            ratio: alpha,
            required,
            pass: r.value >= required - slack,
        });
    }
    Ok(verdicts)
}
