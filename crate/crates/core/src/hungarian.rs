//! The edit-aware Hungarian solver.
//!
//! [`solve`] runs three steps:
//!
//! 1. [`preprocess`] builds feasible duals and a partial assignment from row
//!    and column minima (optional);
//! 2. every unassigned target is assigned by an augmenting path;
//! 3. every remaining unassigned source is assigned the same way on the
//!    transposed instance.
//!
//! Augmenting paths may end on an unassigned source, on a removed source
//! (taking it back from epsilon), or on epsilon itself (turning the last
//! target of the path into an insertion). Complementary slackness holds after
//! every step, so the final assignment is optimal and its cost equals the
//! dual objective.
//!
//! Tie-breaking is deterministic: scans take the smallest index, candidate
//! rows are expanded first-in first-out, and when the epsilon bound ties the
//! row bound during a dual update the path ends on epsilon.
//!
//! Time is `O(min(n,m)^2 max(n,m))`; beyond the input matrix only `O(n+m)`
//! scratch memory is used.

use serde::{Deserialize, Serialize};

use crate::assignment::{raw_cost, validate_assignment, EpsilonAssignment, Validity};
use crate::cost::Cost;
use crate::duals::{check_slackness, DualVariables};
use crate::engine::{self, AlternatingTree, Direct, EngineStats, Sink, Transposed, NONE};
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Start from the row/column reduction instead of empty duals.
    pub preprocess: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { preprocess: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub augmentations: usize,
    pub dual_updates: usize,
    /// Dual updates whose step was not strictly positive.
    pub zero_delta_updates: usize,
    /// Largest number of columns in a single alternating tree.
    pub max_tree_columns: usize,
    /// Largest number of expanded rows in a single alternating tree.
    pub max_tree_rows: usize,
}

impl SolveStats {
    fn absorb(&mut self, e: &EngineStats) {
        self.dual_updates = e.dual_updates;
        self.zero_delta_updates = e.zero_delta_updates;
        self.max_tree_columns = e.max_tree_columns;
        self.max_tree_rows = e.max_tree_rows;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<C> {
    pub assignment: EpsilonAssignment,
    pub duals: DualVariables<C>,
    pub objective: C,
    pub stats: SolveStats,
}

/// Which set the augmentation just completed an element of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Targets,
    Sources,
}

/// State after one augmentation, handed to the observer of [`solve_with`].
pub struct AugmentationEvent<'a, C> {
    pub phase: Phase,
    /// 1-based index of the element that just got assigned.
    pub root: usize,
    rho: &'a [usize],
    varrho: &'a [usize],
    u: &'a [C],
    v: &'a [C],
}

impl<C: Cost> AugmentationEvent<'_, C> {
    pub fn assignment(&self) -> EpsilonAssignment {
        to_public(self.rho, self.varrho)
    }

    pub fn duals(&self) -> DualVariables<C> {
        DualVariables {
            u: self.u.to_vec(),
            v: self.v.to_vec(),
        }
    }
}

/// An augmenting path found by [`augment`], with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    /// The source where the path ends, or `n+1` when it ends on epsilon.
    pub sink_row: usize,
    /// For an epsilon ending, the target that becomes an insertion; else 0.
    pub sink_col: usize,
    /// Predecessor target of each source in the alternating tree (0 if none).
    pub pred: Vec<usize>,
}

fn to_internal(a: &EpsilonAssignment) -> (Vec<usize>, Vec<usize>) {
    let conv = |x: &usize| if *x == 0 { NONE } else { x - 1 };
    (
        a.rho.iter().map(conv).collect(),
        a.varrho.iter().map(conv).collect(),
    )
}

fn to_public(rho: &[usize], varrho: &[usize]) -> EpsilonAssignment {
    let conv = |x: &usize| if *x == NONE { 0 } else { x + 1 };
    EpsilonAssignment {
        rho: rho.iter().map(conv).collect(),
        varrho: varrho.iter().map(conv).collect(),
    }
}

/// Row/column reduction and greedy initial assignment.
///
/// `u_i` is the minimum of row `i` (removal included), `v_j` the minimum of
/// column `j` of `C - u` (insertion included). Rows are then scanned in order
/// and each takes the first free target with a zero reduced cost; rows left
/// over whose removal is tight are removed, and targets left over whose
/// insertion is tight are inserted.
pub fn preprocess<C: Cost>(c: &EditCostMatrix<C>) -> (EpsilonAssignment, DualVariables<C>) {
    let (n, m) = (c.n(), c.m());
    let mut rho = vec![NONE; n];
    let mut varrho = vec![NONE; m];
    let mut duals = DualVariables::zeros(n, m);
    engine::preprocess::<C, _, true>(
        &Direct(c),
        &mut rho,
        &mut varrho,
        &mut duals.u,
        &mut duals.v,
    );
    (to_public(&rho, &varrho), duals)
}

/// Finds an augmenting path rooted at the unassigned target `k` (1-based)
/// and updates `duals` in place.
///
/// `a` and `duals` must satisfy complementary slackness. The assignment is
/// not modified; pass the result to [`apply_augmenting_path`].
pub fn augment<C: Cost>(
    k: usize,
    c: &EditCostMatrix<C>,
    a: &EpsilonAssignment,
    duals: &mut DualVariables<C>,
) -> Result<AugmentingPath> {
    let (n, m) = (c.n(), c.m());
    if k == 0 || k > m {
        return Err(Error::Precondition(format!(
            "target {k} is out of range 1..={m}"
        )));
    }
    if let Validity::Invalid(why) = validate_assignment(a, n, m) {
        return Err(Error::InvalidAssignment(why));
    }
    if a.varrho[k - 1] != 0 {
        return Err(Error::Precondition(format!(
            "target {k} is already assigned"
        )));
    }
    if !check_slackness(a, duals, c, C::zero())? {
        return Err(Error::Precondition(
            "assignment and duals violate complementary slackness".into(),
        ));
    }
    let (rho, varrho) = to_internal(a);
    let mut tree = AlternatingTree::new(n);
    let mut stats = EngineStats::default();
    let sink = engine::augment::<C, _, true>(
        k - 1,
        &Direct(c),
        &rho,
        &varrho,
        &mut duals.u,
        &mut duals.v,
        &mut tree,
        &mut stats,
    )?;
    let (sink_row, sink_col) = match sink {
        Sink::Row(i) => (i + 1, 0),
        Sink::Epsilon(j) => (n + 1, j + 1),
    };
    Ok(AugmentingPath {
        sink_row,
        sink_col,
        pred: tree
            .pred
            .iter()
            .map(|&p| if p == NONE { 0 } else { p + 1 })
            .collect(),
    })
}

/// Swaps assigned and unassigned edges along `path`, which must have been
/// produced by [`augment`] for root `k` on the same assignment.
pub fn apply_augmenting_path(
    path: &AugmentingPath,
    a: &mut EpsilonAssignment,
    k: usize,
) -> Result<()> {
    let (n, m) = (a.n(), a.m());
    if k == 0 || k > m {
        return Err(Error::Precondition(format!(
            "target {k} is out of range 1..={m}"
        )));
    }
    if path.pred.len() != n {
        return Err(Error::Dimension(format!(
            "predecessor vector has length {}, expected {n}",
            path.pred.len()
        )));
    }
    let sink = if path.sink_row == n + 1 {
        if path.sink_col == 0 || path.sink_col > m {
            return Err(Error::Internal(format!(
                "bad epsilon sink column {}",
                path.sink_col
            )));
        }
        Sink::Epsilon(path.sink_col - 1)
    } else if (1..=n).contains(&path.sink_row) {
        Sink::Row(path.sink_row - 1)
    } else {
        return Err(Error::Internal(format!("bad sink row {}", path.sink_row)));
    };
    let pred: Vec<usize> = path
        .pred
        .iter()
        .map(|&p| if p == 0 { NONE } else { p - 1 })
        .collect();
    let (mut rho, mut varrho) = to_internal(a);
    engine::apply_path(sink, k - 1, &pred, &mut rho, &mut varrho)?;
    *a = to_public(&rho, &varrho);
    Ok(())
}

/// Solves the instance to optimality.
pub fn solve<C: Cost>(c: &EditCostMatrix<C>, options: SolveOptions) -> Result<SolveResult<C>> {
    solve_with(c, options, |_| {})
}

/// Like [`solve`], calling `observer` after every augmentation.
pub fn solve_with<C: Cost>(
    c: &EditCostMatrix<C>,
    options: SolveOptions,
    mut observer: impl FnMut(&AugmentationEvent<'_, C>),
) -> Result<SolveResult<C>> {
    let (n, m) = (c.n(), c.m());
    let mut rho = vec![NONE; n];
    let mut varrho = vec![NONE; m];
    let mut u = vec![C::zero(); n + 1];
    let mut v = vec![C::zero(); m + 1];
    if options.preprocess {
        engine::preprocess::<C, _, true>(&Direct(c), &mut rho, &mut varrho, &mut u, &mut v);
    }

    let mut engine_stats = EngineStats::default();
    let mut tree = AlternatingTree::new(n);
    let mut augmentations = engine::assign_columns::<C, _, true>(
        &Direct(c),
        &mut rho,
        &mut varrho,
        &mut u,
        &mut v,
        &mut tree,
        &mut engine_stats,
        |k, rho, varrho, u, v| {
            observer(&AugmentationEvent {
                phase: Phase::Targets,
                root: k + 1,
                rho,
                varrho,
                u,
                v,
            })
        },
    )?;

    let mut tree = AlternatingTree::new(m);
    augmentations += engine::assign_columns::<C, _, true>(
        &Transposed(c),
        &mut varrho,
        &mut rho,
        &mut v,
        &mut u,
        &mut tree,
        &mut engine_stats,
        |k, varrho, rho, v, u| {
            observer(&AugmentationEvent {
                phase: Phase::Sources,
                root: k + 1,
                rho,
                varrho,
                u,
                v,
            })
        },
    )?;

    let assignment = to_public(&rho, &varrho);
    if !assignment.validate().is_complete() {
        return Err(Error::Internal(
            "solver finished with an incomplete assignment".into(),
        ));
    }
    let objective = raw_cost(&assignment, c);
    let mut stats = SolveStats {
        augmentations,
        ..SolveStats::default()
    };
    stats.absorb(&engine_stats);
    Ok(SolveResult {
        assignment,
        duals: DualVariables { u, v },
        objective,
        stats,
    })
}
