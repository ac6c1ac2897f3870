//! The edit cost matrix and its plain-text format.
//!
//! An instance transforming `U = {u_1..u_n}` into `V = {v_1..v_m}` is an
//! `(n+1) x (m+1)` matrix. Rows `0..n` are the elements of `U`, columns `0..m`
//! the elements of `V`; the extra row `n` holds insertion costs and the extra
//! column `m` holds removal costs. The corner `(n, m)` is the epsilon-to-epsilon
//! cost and is always zero.
//!
//! Rust-level indices are 0-based. The text format is positional:
//!
//! ```text
//! # optional comment lines
//! n m
//! c_11 ... c_1m c_1eps
//! ...
//! c_eps1 ... c_epsm 0
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::cost::Cost;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EditCostMatrix<C = f64> {
    n: usize,
    m: usize,
    costs: Vec<C>,
}

impl<C: Cost> EditCostMatrix<C> {
    /// Builds an instance from `(n+1)*(m+1)` row-major values.
    pub fn new(n: usize, m: usize, costs: Vec<C>) -> Result<Self> {
        let expected = (n + 1) * (m + 1);
        if costs.len() != expected {
            return Err(Error::Shape {
                n,
                m,
                expected,
                got: costs.len(),
            });
        }
        for (idx, &value) in costs.iter().enumerate() {
            if !value.is_admissible() {
                return Err(Error::InvalidCost {
                    row: idx / (m + 1) + 1,
                    col: idx % (m + 1) + 1,
                    value: value.to_string(),
                });
            }
        }
        let corner = costs[expected - 1];
        if corner != C::zero() {
            return Err(Error::NonZeroCorner(corner.to_string()));
        }
        Ok(Self { n, m, costs })
    }

    /// Builds an instance from `n+1` rows of `m+1` values each.
    pub fn from_rows<R: AsRef<[C]>>(rows: &[R]) -> Result<Self> {
        let n = rows
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("a cost matrix has at least one row".into()))?;
        let width = rows[0].as_ref().len();
        let m = width
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("a cost matrix has at least one column".into()))?;
        let mut costs = Vec::with_capacity((n + 1) * (m + 1));
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    width
                )));
            }
            costs.extend_from_slice(row);
        }
        Self::new(n, m, costs)
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            costs: vec![C::zero(); (n + 1) * (m + 1)],
        }
    }

    /// Size of the source set `U`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the target set `V`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry `(i, j)` with `i <= n`, `j <= m` (0-based, `n`/`m` are epsilon).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C {
        self.costs[i * (self.m + 1) + j]
    }

    #[inline]
    pub fn substitution(&self, i: usize, j: usize) -> C {
        debug_assert!(i < self.n && j < self.m);
        self.get(i, j)
    }

    #[inline]
    pub fn removal(&self, i: usize) -> C {
        self.get(i, self.m)
    }

    #[inline]
    pub fn insertion(&self, j: usize) -> C {
        self.get(self.n, j)
    }

    pub fn row(&self, i: usize) -> &[C] {
        let w = self.m + 1;
        &self.costs[i * w..(i + 1) * w]
    }

    pub fn as_slice(&self) -> &[C] {
        &self.costs
    }

    /// The instance transforming `V` into `U`: substitutions are transposed and
    /// the removal column becomes the insertion row.
    pub fn transpose(&self) -> Self {
        let mut costs = Vec::with_capacity(self.costs.len());
        for j in 0..=self.m {
            for i in 0..=self.n {
                costs.push(self.get(i, j));
            }
        }
        Self {
            n: self.m,
            m: self.n,
            costs,
        }
    }

    /// Applies `f` to every entry and re-validates the result.
    pub fn map<D: Cost>(&self, f: impl Fn(C) -> D) -> Result<EditCostMatrix<D>> {
        EditCostMatrix::new(self.n, self.m, self.costs.iter().map(|&c| f(c)).collect())
    }

    /// Sum of every entry.
    pub fn total(&self) -> C {
        self.costs.iter().copied().sum()
    }

    /// Writes the text format, preceded by `# `-prefixed header lines.
    pub fn to_text_with_header(&self, header: &[String]) -> String {
        let mut out = String::new();
        for line in header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = write!(out, "{self}");
        out
    }
}

impl<C: Cost> fmt::Display for EditCostMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m)?;
        for i in 0..=self.n {
            let mut first = true;
            for value in self.row(i) {
                if !first {
                    f.write_char(' ')?;
                }
                first = false;
                write!(f, "{value}")?;
            }
            f.write_char('\n')?;
        }
        Ok(())
    }
}

impl<C> FromStr for EditCostMatrix<C>
where
    C: Cost + FromStr,
    C::Err: fmt::Display,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(no, line)| (no + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing \"n m\" header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected \"n m\", found {header:?}"),
            });
        }
        let parse_dim = |tok: &str| {
            tok.parse::<usize>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("bad dimension {tok:?}: {e}"),
            })
        };
        let n = parse_dim(dims[0])?;
        let m = parse_dim(dims[1])?;

        let mut costs = Vec::with_capacity((n + 1) * (m + 1));
        for row in 0..=n {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: line_no,
                msg: format!("expected {} cost rows, found {}", n + 1, row),
            })?;
            let before = costs.len();
            for tok in line.split_whitespace() {
                let value = tok.parse::<C>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad cost {tok:?}: {e}"),
                })?;
                costs.push(value);
            }
            let got = costs.len() - before;
            if got != m + 1 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {} values, found {}", m + 1, got),
                });
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing data after the last cost row".into(),
            });
        }
        Self::new(n, m, costs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(
            EditCostMatrix::new(1, 1, vec![1.0, -2.0, 1.0, 0.0]),
            Err(Error::InvalidCost { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            EditCostMatrix::new(1, 1, vec![1.0, f64::NAN, 1.0, 0.0]),
            Err(Error::InvalidCost { .. })
        ));
        assert!(matches!(
            EditCostMatrix::new(1, 1, vec![1.0, f64::INFINITY, 1.0, 0.0]),
            Err(Error::InvalidCost { .. })
        ));
        assert!(matches!(
            EditCostMatrix::new(1, 1, vec![1.0, 2.0, 1.0, 3.0]),
            Err(Error::NonZeroCorner(_))
        ));
        assert!(matches!(
            EditCostMatrix::<i64>::new(1, 1, vec![1, 2, 3]),
            Err(Error::Shape {
                expected: 4,
                got: 3,
                ..
            })
        ));
    }

    #[test]
    fn accessors_follow_block_layout() {
        let c = EditCostMatrix::from_rows(&[[3i64, 9], [4, 8], [5, 0]]).unwrap();
        assert_eq!((c.n(), c.m()), (2, 1));
        assert_eq!(c.substitution(1, 0), 4);
        assert_eq!(c.removal(0), 9);
        assert_eq!(c.insertion(0), 5);

        let t = c.transpose();
        assert_eq!((t.n(), t.m()), (1, 2));
        assert_eq!(t.row(0), &[3, 4, 5]);
        assert_eq!(t.row(1), &[9, 8, 0]);
        assert_eq!(t.transpose(), c);
    }

    #[test]
    fn text_round_trip() {
        let text = "# family=product\n2 2\n1 2 3\n2 4 6\n\n3 6 0\n";
        let c: EditCostMatrix<f64> = text.parse().unwrap();
        assert_eq!(c.row(1), &[2.0, 4.0, 6.0]);
        assert_eq!(c.to_string(), "2 2\n1 2 3\n2 4 6\n3 6 0\n");
        let back: EditCostMatrix<f64> = c.to_string().parse().unwrap();
        assert_eq!(back, c);

        let with_header = c.to_text_with_header(&["seed=1".to_string()]);
        assert!(with_header.starts_with("# seed=1\n2 2\n"));
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = "1 1\n1 2\n1 x\n"
            .parse::<EditCostMatrix<f64>>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = "1 1\n1 2 3\n1 0\n"
            .parse::<EditCostMatrix<f64>>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = "1 1\n1 2\n".parse::<EditCostMatrix<f64>>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = "0 0\n7\n".parse::<EditCostMatrix<f64>>().unwrap_err();
        assert!(matches!(err, Error::NonZeroCorner(_)), "{err}");
        let err = "".parse::<EditCostMatrix<f64>>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn empty_instance() {
        let c: EditCostMatrix<f64> = "0 0\n0\n".parse().unwrap();
        assert_eq!((c.n(), c.m()), (0, 0));
        assert_eq!(c.total(), 0.0);
    }
}
