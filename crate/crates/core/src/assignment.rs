//! Epsilon-assignments: the primal solutions.
//!
//! An assignment is stored as the pair of vectors `(rho, varrho)` using the
//! 1-based encoding that also appears in the JSON solution format:
//!
//! * `rho[i-1] = j` with `1 <= j <= m` substitutes `u_i` by `v_j`,
//!   `j = m+1` removes `u_i`, and `j = 0` leaves `u_i` unassigned;
//! * `varrho[j-1] = i` with `1 <= i <= n` means `u_i -> v_j`, `i = n+1`
//!   inserts `v_j`, and `i = 0` leaves `v_j` unassigned.
//!
//! The epsilon-to-epsilon pair is implicitly always selected and costs nothing.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsilonAssignment {
    pub rho: Vec<usize>,
    pub varrho: Vec<usize>,
}

/// Outcome of [`validate_assignment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    /// Every element of `U` and `V` is assigned and both vectors agree.
    Complete,
    /// Both vectors agree but some elements are unassigned.
    Partial,
    Invalid(String),
}

impl Validity {
    pub fn is_complete(&self) -> bool {
        matches!(self, Validity::Complete)
    }

    pub fn is_valid(&self) -> bool {
        !matches!(self, Validity::Invalid(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Validity::Complete => "complete",
            Validity::Partial => "partial",
            Validity::Invalid(_) => "invalid",
        }
    }
}

/// One edit operation of an assignment, with 1-based element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOperation {
    Substitution { source: usize, target: usize },
    Removal { source: usize },
    Insertion { target: usize },
}

impl EpsilonAssignment {
    pub fn new(rho: Vec<usize>, varrho: Vec<usize>) -> Self {
        Self { rho, varrho }
    }

    /// The empty partial assignment on `n` sources and `m` targets.
    pub fn unassigned(n: usize, m: usize) -> Self {
        Self {
            rho: vec![0; n],
            varrho: vec![0; m],
        }
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn m(&self) -> usize {
        self.varrho.len()
    }

    pub fn validate(&self) -> Validity {
        validate_assignment(self, self.n(), self.m())
    }

    /// Substitutions, then removals, then insertions.
    pub fn operations(&self) -> Vec<EditOperation> {
        let (n, m) = (self.n(), self.m());
        let mut ops = Vec::with_capacity(n + m);
        for (i, &j) in self.rho.iter().enumerate() {
            if (1..=m).contains(&j) {
                ops.push(EditOperation::Substitution {
                    source: i + 1,
                    target: j,
                });
            }
        }
        for (i, &j) in self.rho.iter().enumerate() {
            if j == m + 1 {
                ops.push(EditOperation::Removal { source: i + 1 });
            }
        }
        for (j, &i) in self.varrho.iter().enumerate() {
            if i == n + 1 {
                ops.push(EditOperation::Insertion { target: j + 1 });
            }
        }
        ops
    }

    pub fn to_matrix(&self) -> Result<AssignmentMatrix> {
        to_matrix(self)
    }
}

/// Classifies `a` as an assignment between `n` sources and `m` targets.
pub fn validate_assignment(a: &EpsilonAssignment, n: usize, m: usize) -> Validity {
    if a.rho.len() != n || a.varrho.len() != m {
        return Validity::Invalid(format!(
            "expected |rho| = {n} and |varrho| = {m}, got {} and {}",
            a.rho.len(),
            a.varrho.len()
        ));
    }
    let mut complete = true;
    for (i, &j) in a.rho.iter().enumerate() {
        if j > m + 1 {
            return Validity::Invalid(format!(
                "rho[{}] = {j} is out of range 0..={}",
                i + 1,
                m + 1
            ));
        }
        if j == 0 {
            complete = false;
        } else if j <= m && a.varrho[j - 1] != i + 1 {
            return Validity::Invalid(format!(
                "rho[{}] = {j} but varrho[{j}] = {}",
                i + 1,
                a.varrho[j - 1]
            ));
        }
    }
    for (j, &i) in a.varrho.iter().enumerate() {
        if i > n + 1 {
            return Validity::Invalid(format!(
                "varrho[{}] = {i} is out of range 0..={}",
                j + 1,
                n + 1
            ));
        }
        if i == 0 {
            complete = false;
        } else if i <= n && a.rho[i - 1] != j + 1 {
            return Validity::Invalid(format!(
                "varrho[{}] = {i} but rho[{i}] = {}",
                j + 1,
                a.rho[i - 1]
            ));
        }
    }
    if complete {
        Validity::Complete
    } else {
        Validity::Partial
    }
}

/// Total cost of the substitutions, removals and insertions of `a`.
///
/// Only complete assignments have a cost; partial and invalid ones are
/// rejected.
pub fn assignment_cost<C: Cost>(a: &EpsilonAssignment, c: &EditCostMatrix<C>) -> Result<C> {
    match validate_assignment(a, c.n(), c.m()) {
        Validity::Complete => Ok(raw_cost(a, c)),
        Validity::Partial => Err(Error::Incomplete(
            "some elements are unassigned".to_string(),
        )),
        Validity::Invalid(why) => Err(Error::InvalidAssignment(why)),
    }
}

/// Cost of the assigned cells of a (possibly partial) valid assignment.
pub(crate) fn raw_cost<C: Cost>(a: &EpsilonAssignment, c: &EditCostMatrix<C>) -> C {
    let n = c.n();
    let mut total = C::zero();
    for (i, &j) in a.rho.iter().enumerate() {
        if j != 0 {
            total += c.get(i, j - 1);
        }
    }
    for (j, &i) in a.varrho.iter().enumerate() {
        if i == n + 1 {
            total += c.get(n, j);
        }
    }
    total
}

/// Binary `(n+1) x (m+1)` representation of an assignment.
///
/// Rows `0..n` and columns `0..m` hold at most one selected cell each; the
/// epsilon row and column are unconstrained and the corner is always set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentMatrix {
    n: usize,
    m: usize,
    cells: Vec<bool>,
}

impl AssignmentMatrix {
    pub fn from_cells(n: usize, m: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != (n + 1) * (m + 1) {
            return Err(Error::Shape {
                n,
                m,
                expected: (n + 1) * (m + 1),
                got: cells.len(),
            });
        }
        Ok(Self { n, m, cells })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
        let m = rows[0]
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("empty row".into()))?;
        let mut cells = Vec::with_capacity((n + 1) * (m + 1));
        for row in rows {
            if row.len() != m + 1 {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for &x in row {
                match x {
                    0 => cells.push(false),
                    1 => cells.push(true),
                    other => {
                        return Err(Error::InvalidMatrix(format!("entry {other} is not binary")))
                    }
                }
            }
        }
        Ok(Self { n, m, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * (self.m + 1) + j]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.cells[i * (self.m + 1) + j] = true;
    }

    pub fn row_sum(&self, i: usize) -> usize {
        (0..=self.m).filter(|&j| self.get(i, j)).count()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..=self.n).filter(|&i| self.get(i, j)).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..=self.n)
            .map(|i| (0..=self.m).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn to_assignment(&self) -> Result<EpsilonAssignment> {
        from_matrix(self)
    }
}

pub fn to_matrix(a: &EpsilonAssignment) -> Result<AssignmentMatrix> {
    let (n, m) = (a.n(), a.m());
    if let Validity::Invalid(why) = a.validate() {
        return Err(Error::InvalidAssignment(why));
    }
    let mut x = AssignmentMatrix {
        n,
        m,
        cells: vec![false; (n + 1) * (m + 1)],
    };
    for (i, &j) in a.rho.iter().enumerate() {
        if j != 0 {
            x.set(i, j - 1);
        }
    }
    for (j, &i) in a.varrho.iter().enumerate() {
        if i == n + 1 {
            x.set(n, j);
        }
    }
    x.set(n, m);
    Ok(x)
}

pub fn from_matrix(x: &AssignmentMatrix) -> Result<EpsilonAssignment> {
    let (n, m) = (x.n, x.m);
    if !x.get(n, m) {
        return Err(Error::InvalidMatrix(
            "the epsilon/epsilon entry must be 1".into(),
        ));
    }
    let mut rho = vec![0; n];
    for (i, slot) in rho.iter_mut().enumerate() {
        let mut selected = (0..=m).filter(|&j| x.get(i, j));
        if let Some(j) = selected.next() {
            if selected.next().is_some() {
                return Err(Error::InvalidMatrix(format!(
                    "row {} sums to more than 1",
                    i + 1
                )));
            }
            *slot = j + 1;
        }
    }
    let mut varrho = vec![0; m];
    for (j, slot) in varrho.iter_mut().enumerate() {
        let mut selected = (0..=n).filter(|&i| x.get(i, j));
        if let Some(i) = selected.next() {
            if selected.next().is_some() {
                return Err(Error::InvalidMatrix(format!(
                    "column {} sums to more than 1",
                    j + 1
                )));
            }
            *slot = i + 1;
        }
    }
    Ok(EpsilonAssignment { rho, varrho })
}
