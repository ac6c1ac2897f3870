//! Timing harness comparing the edit solver with the squared reference.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, Family, GeneratorSpec};
use crate::hungarian::{solve, SolveOptions};
use crate::lsap::solve_via_slsape;
use crate::matrix::EditCostMatrix;
use crate::slsape::OmegaPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Lsape,
    Slsape,
}

impl Solver {
    pub const ALL: [Solver; 2] = [Solver::Lsape, Solver::Slsape];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Lsape => "lsape",
            Solver::Slsape => "slsape",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lsape" => Ok(Solver::Lsape),
            "slsape" => Ok(Solver::Slsape),
            _ => Err(format!("unknown solver {s:?} (expected lsape or slsape)")),
        }
    }
}

/// One CSV row of a benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub solver: Solver,
    pub reps: usize,
    pub median_s: f64,
    pub mean_s: f64,
}

/// Solves `c` once with `solver` and returns the elapsed wall time in
/// seconds together with the optimal cost.
pub fn time_once(c: &EditCostMatrix<f64>, solver: Solver) -> Result<(f64, f64)> {
    let start = Instant::now();
    let cost = match solver {
        Solver::Lsape => solve(c, SolveOptions::default())?.objective,
        Solver::Slsape => solve_via_slsape(c, OmegaPolicy::default())?.objective,
    };
    // Clamp to a positive value so coarse clocks never report zero.
    let secs = start.elapsed().as_secs_f64().max(1e-9);
    Ok((secs, cost))
}

/// Runs `reps` timed solves and returns `(median, mean)`.
pub fn time_solver(c: &EditCostMatrix<f64>, solver: Solver, reps: usize) -> Result<(f64, f64)> {
    if reps == 0 {
        return Err(Error::Precondition("reps must be at least 1".into()));
    }
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        times.push(time_once(c, solver)?.0);
    }
    Ok((median(&mut times), times.iter().sum::<f64>() / reps as f64))
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k == 0 {
        f64::NAN
    } else if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

/// Parses `"n:m,n:m,..."`.
pub fn parse_sizes(s: &str) -> Result<Vec<(usize, usize)>> {
    let bad = |what: &str| Error::Precondition(format!("bad size list {s:?}: {what}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = item.split_once(':').ok_or_else(|| bad("expected n:m"))?;
        let n = a.trim().parse().map_err(|_| bad(a))?;
        let m = b.trim().parse().map_err(|_| bad(b))?;
        out.push((n, m));
    }
    if out.is_empty() {
        return Err(bad("no sizes"));
    }
    Ok(out)
}

/// Parses an inclusive sweep `"lo:hi:step"` into `[lo, lo+step, ..., <= hi]`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = |what: &str| Error::Precondition(format!("bad range {s:?}: {what}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad("expected lo:hi:step"));
    };
    let lo: usize = lo.parse().map_err(|_| bad(lo))?;
    let hi: usize = hi.parse().map_err(|_| bad(hi))?;
    let step: usize = step.parse().map_err(|_| bad(step))?;
    if step == 0 || lo > hi {
        return Err(bad("need step > 0 and lo <= hi"));
    }
    Ok((lo..=hi).step_by(step).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub sizes: Vec<(usize, usize)>,
    pub reps: usize,
    pub seed: u64,
}

/// The instance timed for `family` at position `index` of the size list.
pub fn bench_instance(
    family: Family,
    n: usize,
    m: usize,
    seed: u64,
    index: usize,
) -> Result<EditCostMatrix<f64>> {
    generate(&GeneratorSpec::new(family, n, m).seed(seed.wrapping_add(index as u64)))
}

/// Times both solvers on one shared instance per `(family, size)`.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &family in &config.families {
        for (index, &(n, m)) in config.sizes.iter().enumerate() {
            let c = bench_instance(family, n, m, config.seed, index)?;
            for solver in Solver::ALL {
                let (median_s, mean_s) = time_solver(&c, solver, config.reps)?;
                records.push(BenchRecord {
                    family: family.name().to_string(),
                    n,
                    m,
                    solver,
                    reps: config.reps,
                    median_s,
                    mean_s,
                });
            }
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_size_lists() {
        assert_eq!(parse_sizes("3:4, 10:10").unwrap(), vec![(3, 4), (10, 10)]);
        assert!(parse_sizes("3-4").is_err());
        assert!(parse_sizes("").is_err());
        assert!(parse_sizes("a:1").is_err());
    }

    #[test]
    fn parses_inclusive_ranges() {
        assert_eq!(parse_range("30:300:90").unwrap(), vec![30, 120, 210, 300]);
        assert_eq!(parse_range("100:1000:100").unwrap().len(), 10);
        assert_eq!(parse_range("5:5:1").unwrap(), vec![5]);
        assert!(parse_range("1:5:0").is_err());
        assert!(parse_range("9:5:1").is_err());
        assert!(parse_range("1:5").is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn one_record_per_family_size_and_solver() {
        let config = BenchConfig {
            families: vec![Family::UniformRandom, Family::Product],
            sizes: vec![(3, 4), (5, 2)],
            reps: 2,
            seed: 1,
        };
        let records = run_bench(&config).unwrap();
        assert_eq!(records.len(), 8);
        assert!(records
            .iter()
            .all(|r| r.median_s > 0.0 && r.mean_s > 0.0 && r.reps == 2));
    }

    #[test]
    fn both_solvers_agree_on_the_shared_instance() {
        let c = bench_instance(Family::UniformRandom, 6, 9, 5, 0).unwrap();
        let (_, a) = time_once(&c, Solver::Lsape).unwrap();
        let (_, b) = time_once(&c, Solver::Slsape).unwrap();
        assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn zero_reps_rejected() {
        let c = EditCostMatrix::<f64>::zeros(1, 1);
        assert!(time_solver(&c, Solver::Lsape, 0).is_err());
    }
}
