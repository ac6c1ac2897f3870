//! Seeded instance generators for the three benchmark families.
//!
//! Random draws come from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! consumed one `u64` per cell in row-major order, skipping the corner:
//!
//! * real values: `lo + (hi - lo) * (x >> 11) * 2^-53`, i.e. uniform on `[lo, hi)`;
//! * integer values: `lo + floor(x * (hi - lo + 1) / 2^64)`, uniform on `lo..=hi`.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::matrix::EditCostMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Independent uniform draws.
    UniformRandom,
    /// `c[i][j] = i * j` on the whole matrix, 1-based.
    Product,
    /// `c[n-i+1][m-j+1] = i * j` on the substitution block; the insertion row
    /// repeats the last source row and the removal column the last target
    /// column.
    FlippedProduct,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::UniformRandom,
        Family::Product,
        Family::FlippedProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::UniformRandom => "uniform-random",
            Family::Product => "product",
            Family::FlippedProduct => "flipped-product",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown family {s:?} (expected uniform-random, product or flipped-product)"
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueKind {
    Integer,
    #[default]
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Value range of the random family.
    pub lo: f64,
    pub hi: f64,
    pub values: ValueKind,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, m: usize) -> Self {
        Self {
            family,
            n,
            m,
            seed: 0,
            lo: 0.0,
            hi: 10.0,
            values: ValueKind::Real,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn range(mut self, lo: f64, hi: f64) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn integer(mut self) -> Self {
        self.values = ValueKind::Integer;
        self
    }

    /// Comment lines recorded in instance files.
    pub fn header(&self) -> Vec<String> {
        let mut lines = vec![
            format!("family={}", self.family),
            format!("n={} m={}", self.n, self.m),
        ];
        if self.family == Family::UniformRandom {
            lines.push(format!("seed={}", self.seed));
            lines.push(format!(
                "range={}:{} values={}",
                self.lo,
                self.hi,
                match self.values {
                    ValueKind::Integer => "integer",
                    ValueKind::Real => "real",
                }
            ));
            lines.push("rng=chacha8".to_string());
        }
        lines
    }

    fn check(&self) -> Result<()> {
        let bad = Error::InvalidRange {
            lo: self.lo,
            hi: self.hi,
        };
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo < 0.0 || self.lo > self.hi {
            return Err(bad);
        }
        if self.values == ValueKind::Integer && (self.lo.fract() != 0.0 || self.hi.fract() != 0.0) {
            return Err(bad);
        }
        Ok(())
    }
}

/// Builds the instance described by `spec`. Pure in `spec`.
pub fn generate<C: Cost>(spec: &GeneratorSpec) -> Result<EditCostMatrix<C>> {
    spec.check()?;
    let (n, m) = (spec.n, spec.m);
    let width = m + 1;
    let mut costs = vec![C::zero(); (n + 1) * width];
    match spec.family {
        Family::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            for cell in costs.iter_mut().take((n + 1) * width - 1) {
                let x = rng.next_u64();
                *cell = C::from_f64(draw(x, spec));
            }
        }
        Family::Product => {
            for i in 0..=n {
                for j in 0..=m {
                    costs[i * width + j] = C::from_f64(((i + 1) * (j + 1)) as f64);
                }
            }
        }
        Family::FlippedProduct => {
            // Row r, column s (1-based) of the block holds (n-r+1)(m-s+1); the
            // insertion row uses r = n and the removal column s = m.
            for i in 0..=n {
                let a = n.saturating_sub(i).max(1);
                for j in 0..=m {
                    let b = m.saturating_sub(j).max(1);
                    costs[i * width + j] = C::from_f64((a * b) as f64);
                }
            }
        }
    }
    costs[(n + 1) * width - 1] = C::zero();
    EditCostMatrix::new(n, m, costs)
}

fn draw(x: u64, spec: &GeneratorSpec) -> f64 {
    match spec.values {
        ValueKind::Real => {
            let unit = (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            spec.lo + (spec.hi - spec.lo) * unit
        }
        ValueKind::Integer => {
            let span = (spec.hi - spec.lo) as u128 + 1;
            let offset = ((x as u128 * span) >> 64) as f64;
            spec.lo + offset
        }
    }
}
