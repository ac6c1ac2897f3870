//! Dual variables and the optimality certificates built on them.

use serde::{Deserialize, Serialize};

use crate::assignment::{validate_assignment, EpsilonAssignment, Validity};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

/// Row potentials `u` (length `n+1`) and column potentials `v` (length `m+1`).
/// The epsilon entries `u[n]` and `v[m]` are always zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualVariables<C> {
    pub u: Vec<C>,
    pub v: Vec<C>,
}

impl<C: Cost> DualVariables<C> {
    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            u: vec![C::zero(); n + 1],
            v: vec![C::zero(); m + 1],
        }
    }

    /// Checks that both vectors are non-empty and end with a zero epsilon entry.
    pub fn new(u: Vec<C>, v: Vec<C>) -> Result<Self> {
        match (u.last(), v.last()) {
            (Some(&a), Some(&b)) if a == C::zero() && b == C::zero() => Ok(Self { u, v }),
            (Some(_), Some(_)) => Err(Error::Dimension(
                "the epsilon entries of u and v must be 0".into(),
            )),
            _ => Err(Error::Dimension("u and v must be non-empty".into())),
        }
    }

    pub fn n(&self) -> usize {
        self.u.len() - 1
    }

    pub fn m(&self) -> usize {
        self.v.len() - 1
    }

    /// `E(u, v) = sum(u) + sum(v)`.
    pub fn objective(&self) -> C {
        self.u.iter().copied().sum::<C>() + self.v.iter().copied().sum::<C>()
    }

    /// `c[i][j] - u[i] - v[j]`.
    #[inline]
    pub fn reduced_cost(&self, c: &EditCostMatrix<C>, i: usize, j: usize) -> C {
        c.get(i, j) - self.u[i] - self.v[j]
    }

    fn check_dims(&self, c: &EditCostMatrix<C>) -> Result<()> {
        if self.u.len() != c.n() + 1 || self.v.len() != c.m() + 1 {
            return Err(Error::Dimension(format!(
                "duals have lengths {}/{}, instance needs {}/{}",
                self.u.len(),
                self.v.len(),
                c.n() + 1,
                c.m() + 1
            )));
        }
        Ok(())
    }

    /// `u[i] + v[j] <= c[i][j]` (up to `tol`) on the whole matrix.
    pub fn is_feasible(&self, c: &EditCostMatrix<C>, tol: C) -> Result<bool> {
        self.check_dims(c)?;
        Ok(self.first_violation(c, tol).is_none())
    }

    /// First cell (0-based) whose reduced cost is below `-tol`.
    pub fn first_violation(&self, c: &EditCostMatrix<C>, tol: C) -> Option<(usize, usize)> {
        if self.u.last() != Some(&C::zero()) || self.v.last() != Some(&C::zero()) {
            return Some((c.n(), c.m()));
        }
        let neg_tol = C::zero() - tol;
        for i in 0..=c.n() {
            for j in 0..=c.m() {
                if self.reduced_cost(c, i, j) < neg_tol {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Complementary slackness between an assignment and a pair of duals.
///
/// Holds when every reduced cost is non-negative and every selected cell has
/// a zero reduced cost, both up to `tol`. Applied to a complete assignment
/// this certifies optimality, and then the assignment cost equals
/// [`DualVariables::objective`].
pub fn check_slackness<C: Cost>(
    a: &EpsilonAssignment,
    duals: &DualVariables<C>,
    c: &EditCostMatrix<C>,
    tol: C,
) -> Result<bool> {
    duals.check_dims(c)?;
    let (n, m) = (c.n(), c.m());
    if let Validity::Invalid(why) = validate_assignment(a, n, m) {
        return Err(Error::InvalidAssignment(why));
    }
    if duals.first_violation(c, tol).is_some() {
        return Ok(false);
    }
    for (i, &j) in a.rho.iter().enumerate() {
        if j != 0 && !duals.reduced_cost(c, i, j - 1).approx_eq(C::zero(), tol) {
            return Ok(false);
        }
    }
    for (j, &i) in a.varrho.iter().enumerate() {
        if i == n + 1 && !duals.reduced_cost(c, n, j).approx_eq(C::zero(), tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance() -> EditCostMatrix<i64> {
        EditCostMatrix::from_rows(&[[5, 1, 2], [1, 3, 0], [2, 0, 0]]).unwrap()
    }

    #[test]
    fn slackness_and_feasibility() {
        let c = instance();
        let duals = DualVariables::new(vec![1, 0, 0], vec![1, 0, 0]).unwrap();
        assert!(duals.is_feasible(&c, 0).unwrap());
        let a = EpsilonAssignment::new(vec![2, 1], vec![2, 1]);
        assert!(check_slackness(&a, &duals, &c, 0).unwrap());
        assert_eq!(duals.objective(), 2);

        let mut broken = duals.clone();
        broken.u[0] += 1;
        assert!(!check_slackness(&a, &broken, &c, 0).unwrap());
        assert_eq!(broken.first_violation(&c, 0), Some((0, 1)));

        // Feasible but not tight on the selected removal.
        let loose = DualVariables::new(vec![1, -1, 0], vec![1, 0, 0]).unwrap();
        let with_removal = EpsilonAssignment::new(vec![2, 3], vec![3, 1]);
        assert!(loose.is_feasible(&c, 0).unwrap());
        assert!(!check_slackness(&with_removal, &loose, &c, 0).unwrap());
    }

    #[test]
    fn dimension_errors() {
        let c = instance();
        let duals = DualVariables::<i64>::zeros(1, 2);
        assert!(matches!(duals.is_feasible(&c, 0), Err(Error::Dimension(_))));
        let a = EpsilonAssignment::unassigned(2, 2);
        assert!(matches!(
            check_slackness(&a, &duals, &c, 0),
            Err(Error::Dimension(_))
        ));
        assert!(DualVariables::new(vec![1i64], vec![0]).is_err());
        assert!(DualVariables::<i64>::new(vec![], vec![0]).is_err());
    }

    #[test]
    fn tolerance_admits_rounding_noise() {
        let c = EditCostMatrix::from_rows(&[[0.3f64, 1.0], [1.0, 0.0]]).unwrap();
        let duals = DualVariables::new(vec![0.1 + 0.2, 0.0], vec![0.0, 0.0]).unwrap();
        let a = EpsilonAssignment::new(vec![1], vec![1]);
        assert!(!check_slackness(&a, &duals, &c, 0.0).unwrap());
        assert!(check_slackness(&a, &duals, &c, 1e-12).unwrap());
    }
}
