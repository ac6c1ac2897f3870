//! The squared formulation: an edit instance recast as an ordinary
//! `(n+m) x (n+m)` assignment problem.
//!
//! Rows are `u_1..u_n` followed by one epsilon copy per target (`eps_1..eps_m`);
//! columns are `v_1..v_m` followed by one epsilon copy per source
//! (`eps_1..eps_n`). Layout, with `w` the forbidding cost:
//!
//! ```text
//! | substitutions (n x m) | diag(removals), w elsewhere   |
//! | diag(insertions), w   | zeros (m x n)                 |
//! ```
//!
//! Permutations here are 0-based: `perm[row] = col`.

use crate::assignment::{validate_assignment, EpsilonAssignment, Validity};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

/// How the forbidding cost is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaPolicy {
    /// One plus the sum of every allowed entry: larger than any feasible total.
    #[default]
    SumOfEntries,
    /// One plus the largest substitution cost.
    MaxSubstitution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SLsapeInstance<C> {
    n: usize,
    m: usize,
    omega: C,
    costs: Vec<C>,
}

impl<C: Cost> SLsapeInstance<C> {
    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega(&self) -> C {
        self.omega
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C {
        self.costs[row * self.size() + col]
    }

    /// Row-major `size x size` costs.
    pub fn costs(&self) -> &[C] {
        &self.costs
    }

    /// Whether `(row, col)` pairs a source with a foreign epsilon or a foreign
    /// epsilon with a target.
    pub fn is_forbidden(&self, row: usize, col: usize) -> bool {
        let (n, m) = (self.n, self.m);
        if row < n && col >= m {
            col - m != row
        } else if row >= n && col < m {
            row - n != col
        } else {
            false
        }
    }

    /// Cost of a permutation on this instance, forbidden cells included.
    pub fn permutation_cost(&self, perm: &[usize]) -> Result<C> {
        check_permutation(perm, self.size())?;
        Ok(perm
            .iter()
            .enumerate()
            .map(|(row, &col)| self.get(row, col))
            .sum())
    }
}

pub fn build_slsape<C: Cost>(c: &EditCostMatrix<C>, policy: OmegaPolicy) -> SLsapeInstance<C> {
    let (n, m) = (c.n(), c.m());
    let one = C::from_f64(1.0);
    let omega = match policy {
        OmegaPolicy::SumOfEntries => c.total() + one,
        OmegaPolicy::MaxSubstitution => {
            let mut max = C::zero();
            for i in 0..n {
                for j in 0..m {
                    if c.get(i, j) > max {
                        max = c.get(i, j);
                    }
                }
            }
            max + one
        }
    };
    let size = n + m;
    let mut costs = vec![C::zero(); size * size];
    for i in 0..n {
        let row = &mut costs[i * size..(i + 1) * size];
        row[..m].copy_from_slice(&c.row(i)[..m]);
        for (k, cell) in row[m..].iter_mut().enumerate() {
            *cell = if k == i { c.removal(i) } else { omega };
        }
    }
    for l in 0..m {
        let row = &mut costs[(n + l) * size..(n + l + 1) * size];
        for (j, cell) in row[..m].iter_mut().enumerate() {
            *cell = if j == l { c.insertion(j) } else { omega };
        }
    }
    SLsapeInstance { n, m, omega, costs }
}

/// Maps a complete epsilon-assignment to a bijection of the squared instance.
///
/// Substitutions keep their pair, `u_i -> eps` becomes `u_i -> eps_i` and
/// `eps -> v_j` becomes `eps_j -> v_j`. The leftover epsilon copies (one per
/// substitution on each side) are paired in increasing index order.
pub fn to_slsape_bijection(a: &EpsilonAssignment) -> Result<Vec<usize>> {
    let (n, m) = (a.n(), a.m());
    match validate_assignment(a, n, m) {
        Validity::Complete => {}
        Validity::Partial => return Err(Error::Incomplete("some elements are unassigned".into())),
        Validity::Invalid(why) => return Err(Error::InvalidAssignment(why)),
    }
    let mut perm = vec![0; n + m];
    let mut spare_cols = Vec::new();
    for (i, &j) in a.rho.iter().enumerate() {
        if j == m + 1 {
            perm[i] = m + i;
        } else {
            perm[i] = j - 1;
            spare_cols.push(m + i);
        }
    }
    let mut spare_cols = spare_cols.into_iter();
    for (j, &i) in a.varrho.iter().enumerate() {
        perm[n + j] = if i == n + 1 {
            j
        } else {
            spare_cols
                .next()
                .ok_or_else(|| Error::Internal("unbalanced epsilon copies".into()))?
        };
    }
    Ok(perm)
}

/// Inverse of [`to_slsape_bijection`]. Rejects permutations that use a
/// forbidden pairing.
pub fn from_slsape_bijection(perm: &[usize], n: usize, m: usize) -> Result<EpsilonAssignment> {
    check_permutation(perm, n + m)?;
    let mut a = EpsilonAssignment::unassigned(n, m);
    for (i, &col) in perm[..n].iter().enumerate() {
        if col < m {
            a.rho[i] = col + 1;
            a.varrho[col] = i + 1;
        } else if col - m == i {
            a.rho[i] = m + 1;
        } else {
            return Err(Error::ForbiddenPair { row: i, col });
        }
    }
    for (l, &col) in perm[n..].iter().enumerate() {
        if col < m {
            if col != l {
                return Err(Error::ForbiddenPair { row: n + l, col });
            }
            a.varrho[col] = n + 1;
        }
    }
    Ok(a)
}

pub(crate) fn check_permutation(perm: &[usize], size: usize) -> Result<()> {
    if perm.len() != size {
        return Err(Error::NotPermutation(format!(
            "length {} instead of {size}",
            perm.len()
        )));
    }
    let mut seen = vec![false; size];
    for &col in perm {
        if col >= size || seen[col] {
            return Err(Error::NotPermutation(format!(
                "column {col} is out of range or repeated"
            )));
        }
        seen[col] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::assignment_cost;

    #[test]
    fn degenerate_one_by_one() {
        let c = EditCostMatrix::from_rows(&[[3i64, 2], [1, 0]]).unwrap();
        let s = build_slsape(&c, OmegaPolicy::default());
        assert_eq!(s.costs(), &[3, 2, 1, 0]);
        assert!((0..2).all(|r| (0..2).all(|k| !s.is_forbidden(r, k))));
    }

    #[test]
    fn block_layout_two_by_one() {
        let c = EditCostMatrix::from_rows(&[[3i64, 9], [4, 8], [5, 0]]).unwrap();
        let s = build_slsape(&c, OmegaPolicy::SumOfEntries);
        let w = s.omega();
        assert_eq!(w, 3 + 9 + 4 + 8 + 5 + 1);
        assert_eq!(s.costs(), &[3, 9, w, 4, w, 8, 5, 0, 0]);
        let forbidden: Vec<_> = (0..3)
            .flat_map(|r| (0..3).map(move |k| (r, k)))
            .filter(|&(r, k)| s.is_forbidden(r, k))
            .collect();
        assert_eq!(forbidden, vec![(0, 2), (1, 1)]);

        let tight = build_slsape(&c, OmegaPolicy::MaxSubstitution);
        assert_eq!(tight.omega(), 5);
    }

    #[test]
    fn bijections_of_one_by_one() {
        let sub = EpsilonAssignment::new(vec![1], vec![1]);
        assert_eq!(to_slsape_bijection(&sub).unwrap(), vec![0, 1]);
        let edit = EpsilonAssignment::new(vec![2], vec![2]);
        assert_eq!(to_slsape_bijection(&edit).unwrap(), vec![1, 0]);
        assert_eq!(from_slsape_bijection(&[0, 1], 1, 1).unwrap(), sub);
        assert_eq!(from_slsape_bijection(&[1, 0], 1, 1).unwrap(), edit);
    }

    #[test]
    fn rejects_forbidden_and_malformed_permutations() {
        // u_1 -> eps_2 is forbidden.
        assert!(matches!(
            from_slsape_bijection(&[3, 0, 1, 2], 2, 2),
            Err(Error::ForbiddenPair { row: 0, col: 3 })
        ));
        // eps_1 -> v_2 is forbidden.
        assert!(matches!(
            from_slsape_bijection(&[0, 3, 1, 2], 2, 2),
            Err(Error::ForbiddenPair { row: 2, col: 1 })
        ));
        assert!(matches!(
            from_slsape_bijection(&[0, 0], 1, 1),
            Err(Error::NotPermutation(_))
        ));
        assert!(to_slsape_bijection(&EpsilonAssignment::unassigned(1, 1)).is_err());
    }

    #[test]
    fn cost_preserved_on_figure_example() {
        let a = EpsilonAssignment::new(vec![4, 6, 5, 8], vec![5, 5, 5, 1, 3, 2, 5]);
        let costs: Vec<i64> = (0..40).map(|k| (k * 7 % 11) as i64).collect();
        let mut costs = costs;
        costs[39] = 0;
        let c = EditCostMatrix::new(4, 7, costs).unwrap();
        let s = build_slsape(&c, OmegaPolicy::default());
        let perm = to_slsape_bijection(&a).unwrap();
        assert_eq!(
            s.permutation_cost(&perm).unwrap(),
            assignment_cost(&a, &c).unwrap()
        );
        assert_eq!(from_slsape_bijection(&perm, 4, 7).unwrap(), a);
    }
}
