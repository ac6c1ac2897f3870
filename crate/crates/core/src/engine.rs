//! Shortest augmenting path machinery shared by the edit solver and the
//! classical square solver.
//!
//! Internal encoding (0-based): `rho[i]` is a column in `0..m`, `m` for the
//! epsilon column, or [`NONE`]; `varrho[j]` is a row in `0..n`, `n` for the
//! epsilon row, or [`NONE`]. The `EDIT` flag switches the epsilon handling on;
//! with it off the code is the textbook primal-dual Hungarian method on a
//! square matrix.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

pub(crate) const NONE: usize = usize::MAX;

/// Read access to a cost matrix. With epsilon handling, row `rows()` and
/// column `cols()` are the epsilon row and column.
pub(crate) trait CostView<C> {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn at(&self, i: usize, j: usize) -> C;
}

pub(crate) struct Direct<'a, C>(pub &'a EditCostMatrix<C>);

impl<C: Cost> CostView<C> for Direct<'_, C> {
    fn rows(&self) -> usize {
        self.0.n()
    }
    fn cols(&self) -> usize {
        self.0.m()
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> C {
        self.0.get(i, j)
    }
}

/// The instance seen from `V`: rows are targets, columns are sources.
pub(crate) struct Transposed<'a, C>(pub &'a EditCostMatrix<C>);

impl<C: Cost> CostView<C> for Transposed<'_, C> {
    fn rows(&self) -> usize {
        self.0.m()
    }
    fn cols(&self) -> usize {
        self.0.n()
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> C {
        self.0.get(j, i)
    }
}

pub(crate) struct Square<'a, C> {
    pub size: usize,
    pub data: &'a [C],
}

impl<C: Cost> CostView<C> for Square<'_, C> {
    fn rows(&self) -> usize {
        self.size
    }
    fn cols(&self) -> usize {
        self.size
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.size + j]
    }
}

/// Where an augmenting path ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sink {
    /// A row that is unassigned or currently removed.
    Row(usize),
    /// The epsilon row, reached through column `j`.
    Epsilon(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct EngineStats {
    pub dual_updates: usize,
    pub zero_delta_updates: usize,
    pub max_tree_columns: usize,
    pub max_tree_rows: usize,
}

/// Per-augmentation scratch state, allocated once per solve.
///
/// The rows form a permutation split in three regions: `lu[..su_len]` is
/// `SU` (rows in the tree), `lu[su_len..]` is `LU \ SU` (labelled rows
/// waiting in FIFO order), and `free` is `U \ LU` kept in increasing index
/// order.
pub(crate) struct AlternatingTree<C> {
    pub pi: Vec<C>,
    pub pred: Vec<usize>,
    lu: Vec<usize>,
    su_len: usize,
    free: Vec<usize>,
    sv: Vec<usize>,
}

impl<C: Cost> AlternatingTree<C> {
    pub fn new(rows: usize) -> Self {
        Self {
            pi: vec![C::infinity(); rows],
            pred: vec![NONE; rows],
            lu: Vec::with_capacity(rows),
            su_len: 0,
            free: Vec::with_capacity(rows),
            sv: Vec::with_capacity(rows),
        }
    }

    fn reset(&mut self) {
        let rows = self.pi.len();
        self.pi.iter_mut().for_each(|p| *p = C::infinity());
        self.pred.iter_mut().for_each(|p| *p = NONE);
        self.lu.clear();
        self.su_len = 0;
        self.free.clear();
        self.free.extend(0..rows);
        self.sv.clear();
    }
}

/// Row and column reduction followed by a greedy scanline over zero reduced
/// costs. `rho`/`varrho` must be all [`NONE`] on entry.
pub(crate) fn preprocess<C: Cost, M: CostView<C>, const EDIT: bool>(
    c: &M,
    rho: &mut [usize],
    varrho: &mut [usize],
    u: &mut [C],
    v: &mut [C],
) {
    let (n, m) = (c.rows(), c.cols());
    let zero = C::zero();
    let (row_span, col_span) = if EDIT { (m + 1, n + 1) } else { (m, n) };
    for (i, ui) in u.iter_mut().enumerate().take(n) {
        *ui = (1..row_span).fold(c.at(i, 0), |acc, j| min(acc, c.at(i, j)));
    }
    for (j, vj) in v.iter_mut().enumerate().take(m) {
        *vj = (1..col_span).fold(c.at(0, j) - u[0], |acc, i| min(acc, c.at(i, j) - u[i]));
    }
    for i in 0..n {
        for j in 0..m {
            if varrho[j] == NONE && c.at(i, j) - u[i] - v[j] <= zero {
                rho[i] = j;
                varrho[j] = i;
                break;
            }
        }
        if EDIT && rho[i] == NONE && c.at(i, m) - u[i] <= zero {
            rho[i] = m;
        }
    }
    if EDIT {
        for j in 0..m {
            if varrho[j] == NONE && c.at(n, j) - v[j] <= zero {
                varrho[j] = n;
            }
        }
    }
}

#[inline]
fn min<C: Cost>(a: C, b: C) -> C {
    if b < a {
        b
    } else {
        a
    }
}

#[inline]
fn is_sink_row(assigned: usize, cols: usize, edit: bool) -> bool {
    assigned == NONE || (edit && assigned == cols)
}

/// Grows a tree of minimal alternating paths from the unassigned column `k`
/// until it reaches a sink, updating the duals so that the path found has
/// zero reduced length. The tree (`pi`, `pred`) is left in `tree`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn augment<C: Cost, M: CostView<C>, const EDIT: bool>(
    k: usize,
    c: &M,
    rho: &[usize],
    varrho: &[usize],
    u: &mut [C],
    v: &mut [C],
    tree: &mut AlternatingTree<C>,
    stats: &mut EngineStats,
) -> Result<Sink> {
    let (n, m) = (c.rows(), c.cols());
    let zero = C::zero();
    tree.reset();
    let mut j = k;
    loop {
        tree.sv.push(j);
        stats.max_tree_columns = stats.max_tree_columns.max(tree.sv.len());
        stats.max_tree_rows = stats.max_tree_rows.max(tree.su_len);

        if EDIT && varrho[j] != n && c.at(n, j) - v[j] <= zero {
            return Ok(Sink::Epsilon(j));
        }

        let vj = v[j];
        let mut keep = 0;
        for idx in 0..tree.free.len() {
            let i = tree.free[idx];
            let reduced = c.at(i, j) - u[i] - vj;
            if reduced < tree.pi[i] {
                tree.pred[i] = j;
                tree.pi[i] = reduced;
                if reduced <= zero {
                    if is_sink_row(rho[i], m, EDIT) {
                        return Ok(Sink::Row(i));
                    }
                    tree.lu.push(i);
                    continue;
                }
            }
            tree.free[keep] = i;
            keep += 1;
        }
        tree.free.truncate(keep);

        if tree.su_len == tree.lu.len() {
            stats.dual_updates += 1;
            let delta_s = tree
                .free
                .iter()
                .map(|&i| tree.pi[i])
                .fold(None, |acc: Option<C>, p| Some(acc.map_or(p, |a| min(a, p))));
            let delta_eps = if EDIT {
                let mut best: Option<(usize, C)> = None;
                for &col in &tree.sv {
                    let slack = c.at(n, col) - v[col];
                    let better = match best {
                        None => true,
                        Some((bj, bs)) => slack < bs || (slack == bs && col < bj),
                    };
                    if better {
                        best = Some((col, slack));
                    }
                }
                best
            } else {
                None
            };
            let delta = match (delta_s, delta_eps) {
                (Some(s), Some((_, e))) => min(s, e),
                (Some(s), None) => s,
                (None, Some((_, e))) => e,
                (None, None) => {
                    return Err(Error::Internal(
                        "alternating tree exhausted without reaching a sink".into(),
                    ))
                }
            };
            if delta <= zero {
                stats.zero_delta_updates += 1;
            }
            for &col in &tree.sv {
                v[col] += delta;
            }
            for &row in &tree.lu {
                u[row] -= delta;
            }
            if let Some((l, e)) = delta_eps {
                if delta_s.is_none_or(|s| e <= s) {
                    return Ok(Sink::Epsilon(l));
                }
            }
            let mut keep = 0;
            for idx in 0..tree.free.len() {
                let i = tree.free[idx];
                tree.pi[i] -= delta;
                if tree.pi[i] <= zero {
                    if is_sink_row(rho[i], m, EDIT) {
                        return Ok(Sink::Row(i));
                    }
                    tree.lu.push(i);
                    continue;
                }
                tree.free[keep] = i;
                keep += 1;
            }
            tree.free.truncate(keep);
        }

        let i = *tree
            .lu
            .get(tree.su_len)
            .ok_or_else(|| Error::Internal("no candidate row after dual update".into()))?;
        tree.su_len += 1;
        j = rho[i];
        if j >= m {
            return Err(Error::Internal(format!("tree row {i} is not substituted")));
        }
    }
}

/// Flips the assigned and unassigned edges along the path ending at `sink`.
pub(crate) fn apply_path(
    sink: Sink,
    k: usize,
    pred: &[usize],
    rho: &mut [usize],
    varrho: &mut [usize],
) -> Result<()> {
    let n = rho.len();
    let (mut i, mut j) = match sink {
        Sink::Epsilon(l) => {
            if l >= varrho.len() {
                return Err(Error::Internal(format!(
                    "epsilon sink column {l} out of range"
                )));
            }
            let r = varrho[l];
            varrho[l] = n;
            (r, l)
        }
        Sink::Row(i) => (i, NONE),
    };
    let mut steps = 0;
    while j != k {
        steps += 1;
        if i >= n || steps > n + 1 {
            return Err(Error::Internal(format!(
                "malformed predecessor chain while walking back to column {k}"
            )));
        }
        j = pred[i];
        if j >= varrho.len() {
            return Err(Error::Internal(format!(
                "row {i} has no predecessor column"
            )));
        }
        rho[i] = j;
        std::mem::swap(&mut varrho[j], &mut i);
    }
    Ok(())
}

/// Assigns every unassigned column of `c` by successive augmentations,
/// calling `after` once per augmentation with the root column.
#[allow(clippy::too_many_arguments)]
pub(crate) fn assign_columns<C: Cost, M: CostView<C>, const EDIT: bool>(
    c: &M,
    rho: &mut [usize],
    varrho: &mut [usize],
    u: &mut [C],
    v: &mut [C],
    tree: &mut AlternatingTree<C>,
    stats: &mut EngineStats,
    mut after: impl FnMut(usize, &[usize], &[usize], &[C], &[C]),
) -> Result<usize> {
    let mut augmentations = 0;
    for k in 0..c.cols() {
        if varrho[k] != NONE {
            continue;
        }
        let sink = augment::<C, M, EDIT>(k, c, rho, varrho, u, v, tree, stats)?;
        apply_path(sink, k, &tree.pred, rho, varrho)?;
        augmentations += 1;
        after(k, rho, varrho, u, v);
    }
    Ok(augmentations)
}
