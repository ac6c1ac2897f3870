//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsape::bench::{time_solver, Solver};
use lsape::oracle::{count_lower_bound, count_upper_bound};
use lsape::{
    apply_augmenting_path, augment, brute_force_optimum, check_slackness, count_assignments,
    enumerate_assignments, generate, preprocess, solve, solve_via_slsape, DualVariables,
    EditCostMatrix, EpsilonAssignment, Family, GeneratorSpec, OmegaPolicy, SolveOptions, Validity,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_int(n: usize, m: usize, seed: u64, hi: f64) -> EditCostMatrix<i64> {
    generate(
        &GeneratorSpec::new(Family::UniformRandom, n, m)
            .seed(seed)
            .range(0.0, hi)
            .integer(),
    )
    .unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..1000u64 {
        let n = (rng.next_u64() % 7) as usize;
        let m = (rng.next_u64() % 7) as usize;
        let c = random_int(n, m, k, 10.0);
        let got = solve(&c, SolveOptions::default()).map_err(|e| e.to_string())?;
        let (_, best) = brute_force_optimum(&c).map_err(|e| e.to_string())?;
        ensure(got.objective == best, || {
            format!(
                "instance {k} ({n}x{m}): solver {} vs oracle {best}",
                got.objective
            )
        })?;
    }
    Ok("1000 integer instances, n,m in [0,6]".into())
}

fn solver_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for k in 0..200u64 {
        let n = 1 + (rng.next_u64() % 30) as usize;
        let m = 1 + (rng.next_u64() % 30) as usize;
        let c: EditCostMatrix<f64> =
            generate(&GeneratorSpec::new(Family::UniformRandom, n, m).seed(1000 + k)).unwrap();
        let a = solve(&c, SolveOptions::default())
            .map_err(|e| e.to_string())?
            .objective;
        let b = solve_via_slsape(&c, OmegaPolicy::default())
            .map_err(|e| e.to_string())?
            .objective;
        let rel = (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
        ensure(rel <= 1e-9, || {
            format!("instance {k} ({n}x{m}): {a} vs {b}")
        })?;
    }
    Ok(format!(
        "200 real instances, n,m in [1,30], worst relative gap {worst:.1e}"
    ))
}

fn preprocess_fixture() -> Outcome {
    let c = EditCostMatrix::from_rows(&[
        [7i64, 11, 9, 8, 9, 10],
        [2, 8, 8, 5, 7, 3],
        [1, 7, 6, 6, 9, 5],
        [3, 7, 6, 2, 2, 3],
        [4, 2, 2, 7, 8, 0],
    ])
    .unwrap();
    let (a, d) = preprocess(&c);
    let got = (d.u.clone(), d.v.clone(), a.rho.clone(), a.varrho.clone());
    let want = (
        vec![7, 2, 1, 2, 0],
        vec![0, 2, 2, 0, 0, 0],
        vec![1, 0, 0, 4],
        vec![1, 5, 5, 4, 0],
    );
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("u, v, rho, varrho reproduced".into())
}

fn augment_case(
    rows: &[&[i64]],
    rho: Vec<usize>,
    varrho: Vec<usize>,
    k: usize,
) -> Result<(EpsilonAssignment, EpsilonAssignment, bool), String> {
    let c = EditCostMatrix::from_rows(rows).map_err(|e| e.to_string())?;
    let before = EpsilonAssignment::new(rho, varrho);
    let mut a = before.clone();
    let mut d = DualVariables::zeros(c.n(), c.m());
    let path = augment(k, &c, &a, &mut d).map_err(|e| e.to_string())?;
    apply_augmenting_path(&path, &mut a, k).map_err(|e| e.to_string())?;
    let slack = check_slackness(&a, &d, &c, 0).map_err(|e| e.to_string())?;
    Ok((before, a, slack))
}

fn augment_fixtures() -> Outcome {
    let (before, a, slack) = augment_case(
        &[
            &[0, 2, 0, 0, 1, 3],
            &[0, 4, 4, 2, 4, 1],
            &[0, 4, 3, 4, 7, 4],
            &[2, 4, 3, 0, 0, 2],
            &[4, 0, 0, 6, 7, 0],
        ],
        vec![1, 0, 0, 4],
        vec![1, 5, 5, 4, 0],
        5,
    )?;
    let newly = (0..5)
        .filter(|&j| before.varrho[j] == 0 && a.varrho[j] != 0)
        .count();
    ensure(a.validate().is_valid() && slack && newly == 1, || {
        format!("first example fallback checks failed: {a:?}")
    })?;
    ensure(a.rho == [4, 1, 0, 5] && a.varrho == [2, 5, 5, 1, 4], || {
        format!("first example: {a:?}")
    })?;

    let (_, a, slack) = augment_case(
        &[
            &[0, 0, 3, 0, 4],
            &[0, 2, 0, 2, 7],
            &[0, 0, 2, 3, 6],
            &[4, 6, 8, 0, 0],
        ],
        vec![4, 1, 2],
        vec![2, 3, 0, 1],
        3,
    )?;
    ensure(
        slack && a.rho == [1, 3, 2] && a.varrho == [1, 3, 2, 4],
        || format!("second example: {a:?}"),
    )?;

    let (_, a, slack) = augment_case(
        &[&[2, 3, 0, 4], &[7, 0, 5, 0], &[0, 0, 4, 6], &[4, 6, 0, 0]],
        vec![3, 4, 2],
        vec![0, 3, 1],
        1,
    )?;
    ensure(slack && a.rho == [3, 2, 1] && a.varrho == [3, 2, 1], || {
        format!("third example: {a:?}")
    })?;
    ensure(a.validate() == Validity::Complete, || {
        "third example incomplete".into()
    })?;
    Ok("three worked examples reproduced".into())
}

fn counting() -> Outcome {
    for n in 0..=5 {
        for m in 0..=5 {
            let enumerated = enumerate_assignments(n, m)
                .map_err(|e| e.to_string())?
                .count();
            ensure(count_assignments(n, m) == enumerated.into(), || {
                format!(
                    "n={n} m={m}: formula {} vs {enumerated}",
                    count_assignments(n, m)
                )
            })?;
        }
    }
    for m in 0..=8 {
        for n in 0..=m {
            let c = count_assignments(n, m);
            ensure(
                count_lower_bound(n, m) <= c && c <= count_upper_bound(n, m),
                || format!("bounds fail at n={n} m={m}"),
            )?;
        }
    }
    Ok("36 counts match enumeration; bounds hold for n <= m <= 8".into())
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..500u64 {
        let n = (rng.next_u64() % 51) as usize;
        let m = (rng.next_u64() % 51) as usize;
        let c = random_int(n, m, 5000 + k, 100.0);
        let r = solve(&c, SolveOptions::default()).map_err(|e| e.to_string())?;
        let feasible = r.duals.is_feasible(&c, 0).map_err(|e| e.to_string())?;
        let slack = check_slackness(&r.assignment, &r.duals, &c, 0).map_err(|e| e.to_string())?;
        ensure(
            feasible && slack && r.objective == r.duals.objective(),
            || {
                format!(
                    "instance {k} ({n}x{m}): feasible={feasible} slack={slack} cost={} E={}",
                    r.objective,
                    r.duals.objective()
                )
            },
        )?;
    }
    Ok("500 integer instances, n,m <= 50".into())
}

const REPS: usize = 11;

fn timing_trend() -> Outcome {
    let ratio = |m: usize| -> Result<(f64, f64, f64), String> {
        let c: EditCostMatrix<f64> =
            generate(&GeneratorSpec::new(Family::UniformRandom, 30, m).seed(70 + m as u64))
                .map_err(|e| e.to_string())?;
        let (fast, _) = time_solver(&c, Solver::Lsape, REPS).map_err(|e| e.to_string())?;
        let (slow, _) = time_solver(&c, Solver::Slsape, REPS).map_err(|e| e.to_string())?;
        Ok((fast, slow, slow / fast))
    };
    let (f30, s30, r30) = ratio(30)?;
    let (f300, s300, r300) = ratio(300)?;
    let summary = format!(
        "m=30: lsape {f30:.2e}s slsape {s30:.2e}s (x{r30:.1}); \
         m=300: lsape {f300:.2e}s slsape {s300:.2e}s (x{r300:.1})"
    );
    ensure(f300 < s300 && r300 > r30, || summary.clone())?;
    Ok(summary)
}

fn complexity_smoke() -> Outcome {
    let median = |size: usize| -> Result<f64, String> {
        let c: EditCostMatrix<f64> =
            generate(&GeneratorSpec::new(Family::UniformRandom, size, size).seed(80))
                .map_err(|e| e.to_string())?;
        Ok(time_solver(&c, Solver::Lsape, REPS)
            .map_err(|e| e.to_string())?
            .0)
    };
    let t200 = median(200)?;
    let t400 = median(400)?;
    let factor = t400 / t200;
    let summary = format!("n=m=200: {t200:.2e}s, n=m=400: {t400:.2e}s, factor {factor:.2}");
    ensure(factor <= 12.0, || summary.clone())?;
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("solver equivalence", solver_equivalence),
        ("preprocess fixture", preprocess_fixture),
        ("augment fixtures", augment_fixtures),
        ("counting", counting),
        ("duality and slackness", duality),
        ("timing trend", timing_trend),
        ("complexity smoke", complexity_smoke),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {} {name}: {msg} [{secs:.2}s]", idx + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} [{secs:.2}s]", idx + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
