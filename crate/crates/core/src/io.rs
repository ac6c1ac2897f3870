//! Solution files and the checks run on them.

use serde::{Deserialize, Serialize};

use crate::assignment::{assignment_cost, validate_assignment, EpsilonAssignment, Validity};
use crate::duals::{check_slackness, DualVariables};
use crate::error::Result;
use crate::hungarian::{SolveResult, SolveStats};
use crate::lsap::SquaredSolveResult;
use crate::matrix::EditCostMatrix;

/// The JSON form of a solution. `u`, `v` and `stats` are only present when
/// the producing solver has them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub rho: Vec<usize>,
    pub varrho: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
    pub cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolveStats>,
}

impl Solution {
    pub fn assignment(&self) -> EpsilonAssignment {
        EpsilonAssignment::new(self.rho.clone(), self.varrho.clone())
    }
}

impl From<SolveResult<f64>> for Solution {
    fn from(r: SolveResult<f64>) -> Self {
        Self {
            rho: r.assignment.rho,
            varrho: r.assignment.varrho,
            u: Some(r.duals.u),
            v: Some(r.duals.v),
            cost: r.objective,
            stats: Some(r.stats),
        }
    }
}

impl From<SquaredSolveResult<f64>> for Solution {
    fn from(r: SquaredSolveResult<f64>) -> Self {
        Self {
            rho: r.assignment.rho,
            varrho: r.assignment.varrho,
            u: None,
            v: None,
            cost: r.objective,
            stats: Some(r.lsap.stats),
        }
    }
}

/// Outcome of [`verify`]. `None` marks a check that could not run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub validity: String,
    pub detail: Option<String>,
    pub recomputed_cost: Option<f64>,
    pub cost_matches: Option<bool>,
    pub duals_present: bool,
    pub duals_feasible: Option<bool>,
    pub slackness: Option<bool>,
    pub dual_objective: Option<f64>,
}

impl VerifyReport {
    /// True when the assignment is complete, its cost is right and, if duals
    /// were given, they certify it.
    pub fn passed(&self) -> bool {
        self.validity == Validity::Complete.label()
            && self.cost_matches == Some(true)
            && (!self.duals_present
                || (self.duals_feasible == Some(true) && self.slackness == Some(true)))
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Checks `s` against `c`; `tol` is relative for costs and absolute for
/// reduced costs.
pub fn verify(c: &EditCostMatrix<f64>, s: &Solution, tol: f64) -> VerifyReport {
    let a = s.assignment();
    let validity = validate_assignment(&a, c.n(), c.m());
    let mut report = VerifyReport {
        validity: validity.label().to_string(),
        detail: match &validity {
            Validity::Invalid(why) => Some(why.clone()),
            _ => None,
        },
        recomputed_cost: None,
        cost_matches: None,
        duals_present: s.u.is_some() || s.v.is_some(),
        duals_feasible: None,
        slackness: None,
        dual_objective: None,
    };
    if validity.is_complete() {
        if let Ok(cost) = assignment_cost(&a, c) {
            report.recomputed_cost = Some(cost);
            report.cost_matches = Some(close(cost, s.cost, tol));
        }
    }
    if let (Some(u), Some(v)) = (&s.u, &s.v) {
        match check_duals(c, &a, u, v, tol) {
            Ok((feasible, slack, objective)) => {
                report.duals_feasible = Some(feasible);
                report.slackness = slack;
                report.dual_objective = Some(objective);
            }
            Err(e) => {
                report.duals_feasible = Some(false);
                report.detail.get_or_insert_with(|| e.to_string());
            }
        }
    }
    report
}

fn check_duals(
    c: &EditCostMatrix<f64>,
    a: &EpsilonAssignment,
    u: &[f64],
    v: &[f64],
    tol: f64,
) -> Result<(bool, Option<bool>, f64)> {
    let duals = DualVariables::new(u.to_vec(), v.to_vec())?;
    let feasible = duals.is_feasible(c, tol)?;
    let slack = if validate_assignment(a, c.n(), c.m()).is_valid() {
        Some(check_slackness(a, &duals, c, tol)?)
    } else {
        None
    };
    Ok((feasible, slack, duals.objective()))
}
