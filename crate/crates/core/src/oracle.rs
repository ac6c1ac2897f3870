//! Exhaustive enumeration of epsilon-assignments.
//!
//! Every complete epsilon-assignment is determined by its substitutions, an
//! injection from a subset of `U` into `V`: unmatched sources are removed and
//! unmatched targets inserted. Enumerating the injections therefore
//! enumerates the assignments, each exactly once.
//!
//! Order: by number of substitutions `p`, then subsets of `U` in
//! lexicographic order, then injections in lexicographic order of their
//! images.

use num_bigint::BigUint;

use crate::assignment::EpsilonAssignment;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

/// Default bound on `n + m` for enumeration.
pub const DEFAULT_LIMIT: usize = 12;

/// Number of epsilon-assignments between sets of sizes `n` and `m`:
/// `sum_{p=0}^{min(n,m)} C(n,p) C(m,p) p!`.
pub fn count_assignments(n: usize, m: usize) -> BigUint {
    let mut total = BigUint::from(0u32);
    for p in 0..=n.min(m) {
        total += binomial(n, p) * binomial(m, p) * factorial(p);
    }
    total
}

/// Lower bound `C(n+m, n)` on [`count_assignments`], valid for `n <= m`.
pub fn count_lower_bound(n: usize, m: usize) -> BigUint {
    binomial(n + m, n)
}

/// Upper bound `(n+m)! / m!` on [`count_assignments`], valid for `n <= m`.
pub fn count_upper_bound(n: usize, m: usize) -> BigUint {
    ((m + 1)..=(n + m)).fold(BigUint::from(1u32), |acc, k| acc * k)
}

pub fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut acc = BigUint::from(1u32);
    for k in 0..b {
        acc *= a - k;
        acc /= k + 1;
    }
    acc
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, x| acc * x)
}

fn check_limit(n: usize, m: usize, limit: usize) -> Result<()> {
    if n + m > limit {
        return Err(Error::TooLarge { size: n + m, limit });
    }
    Ok(())
}

/// Lazily walks every complete epsilon-assignment of an `n x m` instance.
#[derive(Debug, Clone)]
pub struct Enumeration {
    n: usize,
    m: usize,
    /// Current substitution count.
    p: usize,
    /// Sorted sources taking part in substitutions.
    subset: Vec<usize>,
    /// `images[t]` is the target of `subset[t]`.
    images: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl Enumeration {
    fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            p: 0,
            subset: Vec::new(),
            images: Vec::new(),
            used: vec![false; m],
            started: false,
            done: false,
        }
    }

    fn reset_images(&mut self) {
        self.used.iter_mut().for_each(|u| *u = false);
        self.images.clear();
        for t in 0..self.p {
            self.images.push(t);
            self.used[t] = true;
        }
    }

    fn next_injection(&mut self) -> bool {
        for pos in (0..self.p).rev() {
            let old = self.images[pos];
            self.used[old] = false;
            if let Some(v) = (old + 1..self.m).find(|&v| !self.used[v]) {
                self.images[pos] = v;
                self.used[v] = true;
                let mut candidates = (0..self.m).filter(|&v| !self.used[v]).collect::<Vec<_>>();
                candidates.truncate(self.p - pos - 1);
                for (slot, v) in self.images[pos + 1..].iter_mut().zip(candidates) {
                    *slot = v;
                    self.used[v] = true;
                }
                return true;
            }
        }
        false
    }

    fn next_subset(&mut self) -> bool {
        let (n, p) = (self.n, self.p);
        for pos in (0..p).rev() {
            if self.subset[pos] < n - p + pos {
                self.subset[pos] += 1;
                for t in pos + 1..p {
                    self.subset[t] = self.subset[t - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        if self.next_injection() {
            return true;
        }
        if self.next_subset() {
            self.reset_images();
            return true;
        }
        if self.p < self.n.min(self.m) {
            self.p += 1;
            self.subset = (0..self.p).collect();
            self.reset_images();
            return true;
        }
        self.done = true;
        false
    }

    fn current(&self) -> EpsilonAssignment {
        let (n, m) = (self.n, self.m);
        let mut a = EpsilonAssignment::new(vec![m + 1; n], vec![n + 1; m]);
        for (&i, &j) in self.subset.iter().zip(&self.images) {
            a.rho[i] = j + 1;
            a.varrho[j] = i + 1;
        }
        a
    }

    fn current_cost<C: Cost>(&self, c: &EditCostMatrix<C>) -> C {
        let mut total = C::zero();
        let mut next = self.subset.iter().zip(&self.images).peekable();
        for i in 0..self.n {
            match next.peek() {
                Some(&(&s, &j)) if s == i => {
                    total += c.get(i, j);
                    next.next();
                }
                _ => total += c.removal(i),
            }
        }
        for (j, &used) in self.used.iter().enumerate() {
            if !used {
                total += c.insertion(j);
            }
        }
        total
    }
}

impl Iterator for Enumeration {
    type Item = EpsilonAssignment;

    fn next(&mut self) -> Option<EpsilonAssignment> {
        if self.advance() {
            Some(self.current())
        } else {
            None
        }
    }
}

pub fn enumerate_assignments(n: usize, m: usize) -> Result<Enumeration> {
    enumerate_assignments_with_limit(n, m, DEFAULT_LIMIT)
}

pub fn enumerate_assignments_with_limit(n: usize, m: usize, limit: usize) -> Result<Enumeration> {
    check_limit(n, m, limit)?;
    Ok(Enumeration::new(n, m))
}

/// A minimum-cost assignment found by trying every one of them. The first
/// minimum in enumeration order wins ties.
pub fn brute_force_optimum<C: Cost>(c: &EditCostMatrix<C>) -> Result<(EpsilonAssignment, C)> {
    brute_force_optimum_with_limit(c, DEFAULT_LIMIT)
}

pub fn brute_force_optimum_with_limit<C: Cost>(
    c: &EditCostMatrix<C>,
    limit: usize,
) -> Result<(EpsilonAssignment, C)> {
    check_limit(c.n(), c.m(), limit)?;
    let mut cursor = Enumeration::new(c.n(), c.m());
    let mut best: Option<(EpsilonAssignment, C)> = None;
    while cursor.advance() {
        let cost = cursor.current_cost(c);
        if best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((cursor.current(), cost));
        }
    }
    best.ok_or_else(|| Error::Internal("enumeration produced no assignment".into()))
}
