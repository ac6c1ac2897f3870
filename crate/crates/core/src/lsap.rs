//! Reference solvers: the classical square assignment problem, and the edit
//! problem solved through its squared `(n+m) x (n+m)` formulation.
//!
//! Both run on the same augmenting-path engine as [`crate::hungarian`] with
//! the epsilon handling compiled out, so timing differences between the two
//! routes come from problem size rather than implementation quality.

use crate::assignment::{assignment_cost, EpsilonAssignment};
use crate::cost::Cost;
use crate::engine::{self, AlternatingTree, EngineStats, Square, NONE};
use crate::error::{Error, Result};
use crate::hungarian::SolveStats;
use crate::matrix::EditCostMatrix;
use crate::slsape::{build_slsape, from_slsape_bijection, OmegaPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct LsapResult<C> {
    /// `permutation[row] = col`, 0-based.
    pub permutation: Vec<usize>,
    pub u: Vec<C>,
    pub v: Vec<C>,
    pub objective: C,
    pub stats: SolveStats,
}

/// Minimum-cost perfect matching on a square, row-major `rows x cols` matrix.
pub fn solve_lsap<C: Cost>(costs: &[C], rows: usize, cols: usize) -> Result<LsapResult<C>> {
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let size = rows;
    if costs.len() != size * size {
        return Err(Error::Dimension(format!(
            "{} entries for a {size}x{size} matrix",
            costs.len()
        )));
    }
    if let Some(idx) = costs.iter().position(|c| !c.is_admissible()) {
        return Err(Error::InvalidCost {
            row: idx / size + 1,
            col: idx % size + 1,
            value: costs[idx].to_string(),
        });
    }

    let view = Square { size, data: costs };
    let mut rho = vec![NONE; size];
    let mut varrho = vec![NONE; size];
    let mut u = vec![C::zero(); size + 1];
    let mut v = vec![C::zero(); size + 1];
    engine::preprocess::<C, _, false>(&view, &mut rho, &mut varrho, &mut u, &mut v);
    let mut tree = AlternatingTree::new(size);
    let mut engine_stats = EngineStats::default();
    let augmentations = engine::assign_columns::<C, _, false>(
        &view,
        &mut rho,
        &mut varrho,
        &mut u,
        &mut v,
        &mut tree,
        &mut engine_stats,
        |_, _, _, _, _| {},
    )?;
    if rho.iter().any(|&j| j >= size) {
        return Err(Error::Internal(
            "square solver left a row unassigned".into(),
        ));
    }
    u.truncate(size);
    v.truncate(size);
    let objective = rho
        .iter()
        .enumerate()
        .map(|(i, &j)| costs[i * size + j])
        .sum();
    Ok(LsapResult {
        permutation: rho,
        u,
        v,
        objective,
        stats: SolveStats {
            augmentations,
            dual_updates: engine_stats.dual_updates,
            zero_delta_updates: engine_stats.zero_delta_updates,
            max_tree_columns: engine_stats.max_tree_columns,
            max_tree_rows: engine_stats.max_tree_rows,
        },
    })
}

/// Result of [`solve_via_slsape`].
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredSolveResult<C> {
    pub assignment: EpsilonAssignment,
    /// Cost of `assignment` on the edit instance.
    pub objective: C,
    pub omega: C,
    /// The optimal bijection of the squared instance and its duals.
    pub lsap: LsapResult<C>,
}

/// Solves the edit problem by building and solving the squared instance.
///
/// Fails with [`Error::ForbiddenPair`] if the square optimum uses a cell
/// priced at the forbidding cost, which can only happen with
/// [`OmegaPolicy::MaxSubstitution`].
pub fn solve_via_slsape<C: Cost>(
    c: &EditCostMatrix<C>,
    policy: OmegaPolicy,
) -> Result<SquaredSolveResult<C>> {
    let squared = build_slsape(c, policy);
    let size = squared.size();
    let lsap = solve_lsap(squared.costs(), size, size)?;
    let assignment = from_slsape_bijection(&lsap.permutation, c.n(), c.m())?;
    let objective = assignment_cost(&assignment, c)?;
    Ok(SquaredSolveResult {
        assignment,
        objective,
        omega: squared.omega(),
        lsap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_square_instances() {
        let r = solve_lsap(&[0i64, 1, 1, 0], 2, 2).unwrap();
        assert_eq!(r.permutation, vec![0, 1]);
        assert_eq!(r.objective, 0);

        let r = solve_lsap(&[1i64, 2, 2, 1], 2, 2).unwrap();
        assert_eq!(r.objective, 2);

        let r = solve_lsap(&[5i64, 1, 1, 5], 2, 2).unwrap();
        assert_eq!(r.permutation, vec![1, 0]);
        assert_eq!(r.objective, 2);
        assert_eq!(r.u.iter().sum::<i64>() + r.v.iter().sum::<i64>(), 2);

        let r = solve_lsap::<i64>(&[], 0, 0).unwrap();
        assert!(r.permutation.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            solve_lsap(&[0i64; 6], 2, 3),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            solve_lsap(&[0.0, f64::NAN, 0.0, 0.0], 2, 2),
            Err(Error::InvalidCost { row: 1, col: 2, .. })
        ));
        assert!(solve_lsap(&[0i64; 3], 2, 2).is_err());
    }

    #[test]
    fn squared_route_on_pure_edit_instances() {
        let insert_only = EditCostMatrix::from_rows(&[[4i64, 2, 2, 0]]).unwrap();
        let r = solve_via_slsape(&insert_only, OmegaPolicy::default()).unwrap();
        assert_eq!(r.objective, 8);

        let remove_only = EditCostMatrix::from_rows(&[[3i64], [5], [0]]).unwrap();
        let r = solve_via_slsape(&remove_only, OmegaPolicy::default()).unwrap();
        assert_eq!(r.objective, 8);
        assert_eq!(r.assignment.rho, vec![1, 1]);
    }

    #[test]
    fn tight_omega_can_be_violated() {
        // Removing is far more expensive than the forbidding cost, so the
        // squared optimum prefers the forbidden cells.
        let c = EditCostMatrix::from_rows(&[[1i64, 100], [1, 100], [0, 0]]).unwrap();
        assert!(solve_via_slsape(&c, OmegaPolicy::default()).is_ok());
        assert!(matches!(
            solve_via_slsape(&c, OmegaPolicy::MaxSubstitution),
            Err(Error::ForbiddenPair { .. })
        ));
    }
}
