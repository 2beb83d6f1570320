//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omtope::arith::{IntMatrix, IntVector};
use omtope::cycles::{distinguished_cycle, find_symmetric_cycle, validate_cycle, DEFAULT_BUDGET};
use omtope::decomp::{brute_force_decompose, decompose, decompose_in_window};
use omtope::instances::{
    generic_arrangement, hypercube_instance, region_count, DEFAULT_CAP, DEFAULT_COORD_BOUND,
};
use omtope::spectra::{build_transform, unsigned_binomial, TransformKind, Transforms};
use omtope::verify::{
    evaluate_pair, negative_controls, run_experiment, ExperimentPlan, ExperimentResult, PlanSide,
};
use omtope::SignVector;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn sv(s: &str) -> SignVector {
    s.parse().unwrap()
}

fn ints(v: &IntVector) -> Vec<i64> {
    v.to_i64().expect("small entries")
}

fn cube_side(n: usize) -> PlanSide {
    let cube = hypercube_instance(n).unwrap();
    let order: Vec<usize> = (1..=n).collect();
    let cycle = distinguished_cycle(&cube, &SignVector::all_plus(n).unwrap(), &order).unwrap();
    PlanSide::new(cube, cycle)
}

fn realizable_side(d: usize, n: usize, seed: u64) -> Result<PlanSide, String> {
    let (_, inst) = generic_arrangement(d, n, seed, DEFAULT_COORD_BOUND, DEFAULT_CAP)
        .map_err(|e| e.to_string())?;
    let expected = region_count(d, n).map_err(|e| e.to_string())?;
    ensure!(
        inst.topes().len() as u128 == expected,
        "d={d} n={n} seed={seed}: {} topes, region_count {expected}",
        inst.topes().len()
    );
    let cycle = find_symmetric_cycle(&inst, &inst.topes()[0], DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("d={d} n={n} seed={seed}: no cycle within budget"))?;
    Ok(PlanSide::new(inst, cycle))
}

// Test-side binomial, independent of the library's Pascal table.
fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Faces of the complex generated by `facets`, counted by enumerating every
/// subset of the vertex set.
fn face_counts(n: usize, facets: &[u64], t: usize) -> Vec<i64> {
    let mut counts = vec![0i64; t + 1];
    for s in 0u64..(1 << n) {
        if facets.iter().any(|f| s & f == s) {
            counts[s.count_ones() as usize] += 1;
        }
    }
    counts
}

// 1
fn worked_example() -> Outcome {
    let (s, t) = (5usize, 6usize);
    let first = cube_side(s);
    let second = cube_side(t);
    let (t1, t2) = (sv("+-+-+"), sv("+-+-+-"));

    let mut h_oracle = Vec::new();
    for (side, tope, m, f_expected, omega_expected) in [
        (
            &first,
            t1,
            s,
            vec![1, 5, 10, 5, 0, 0, 0],
            vec![1, 5, 5, 0, 0, 0, 0],
        ),
        (
            &second,
            t2,
            t,
            vec![1, 6, 15, 12, 3, 0, 0],
            vec![1, 6, 12, 8, 0, 0, 0],
        ),
    ] {
        let q = brute_force_decompose(&side.cycle, &tope).map_err(|e| e.to_string())?;
        ensure!(q.size() == 5, "{tope}: oracle |Q| = {}", q.size());
        let facets: Vec<u64> = q
            .members()
            .iter()
            .map(|x| !(tope.negative_mask() ^ x.negative_mask()) & ((1 << m) - 1))
            .collect();
        let f = face_counts(m, &facets, t);
        ensure!(f == f_expected, "{tope}: oracle f = {f:?}");
        // omega_j = C(m, m - j) - f_{m - j}
        let omega: Vec<i64> = (0..=t as i64)
            .map(|j| {
                let i = m as i64 - j;
                if i < 0 {
                    0
                } else {
                    i64::try_from(choose(m as i64, i)).unwrap() - f[i as usize]
                }
            })
            .collect();
        ensure!(omega == omega_expected, "{tope}: oracle omega = {omega:?}");
        // h_k = sum_j omega_j (-1)^{k-j} C(t-j, k-j)
        let h: Vec<i64> = (0..=t as i64)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        omega[j as usize]
                            * sign(k - j)
                            * i64::try_from(choose(t as i64 - j, k - j)).unwrap()
                    })
                    .sum()
            })
            .collect();
        h_oracle.push(h);
    }
    ensure!(
        h_oracle[0] == vec![1, -1, -5, 10, -5, -1, 1],
        "oracle h' = {:?}",
        h_oracle[0]
    );
    ensure!(
        h_oracle[1] == vec![1, 0, -3, 0, 3, 0, -1],
        "oracle h'' = {:?}",
        h_oracle[1]
    );
    let dot: i64 = h_oracle[0]
        .iter()
        .zip(&h_oracle[1])
        .map(|(a, b)| a * b)
        .sum();
    ensure!(dot == 0, "oracle <h', h''> = {dot}");

    let r = evaluate_pair(&first, &t1, &second, &t2).map_err(|e| e.to_string())?;
    ensure!(r.q1 == 5 && r.q2 == 5, "|Q| = {}, {}", r.q1, r.q2);
    ensure!(ints(&r.f1) == vec![1, 5, 10, 5, 0, 0, 0], "f' = {}", r.f1);
    ensure!(ints(&r.f2) == vec![1, 6, 15, 12, 3, 0, 0], "f'' = {}", r.f2);
    ensure!(
        ints(&r.omega1) == vec![1, 5, 5, 0, 0, 0, 0],
        "omega' = {}",
        r.omega1
    );
    ensure!(
        ints(&r.omega2) == vec![1, 6, 12, 8, 0, 0, 0],
        "omega'' = {}",
        r.omega2
    );
    ensure!(ints(&r.h1) == h_oracle[0], "h' = {}", r.h1);
    ensure!(ints(&r.h2) == h_oracle[1], "h'' = {}", r.h2);
    ensure!(r.hh_value == BigInt::from(0), "<h', h''> = {}", r.hh_value);
    ensure!(
        r.raw_value == r.hh_value,
        "kernel form {} vs {}",
        r.raw_value,
        r.hh_value
    );
    ensure!(
        r.orthogonal && r.anomalies.is_empty(),
        "anomalies {:?}",
        r.anomalies
    );
    Ok("all intermediate values match the oracles; <h', h''> = 0 by both routes".into())
}

fn check_admitted(r: &ExperimentResult) -> Result<(), String> {
    ensure!(r.hypotheses_enforced, "hypotheses not enforced");
    ensure!(r.violations == 0, "{} violations", r.violations);
    for p in &r.pairs {
        let pair = format!("{} x {}", p.tope1, p.tope2);
        ensure!(
            p.q1 >= 5 && p.q2 >= 5,
            "{pair}: admitted with |Q| = {}, {}",
            p.q1,
            p.q2
        );
        ensure!(
            p.ds1 && p.ds2,
            "{pair}: Dehn-Sommerville type relation fails"
        );
        ensure!(
            p.iota1 == BigInt::from(0) && p.iota2 == BigInt::from(0),
            "{pair}: <h, iota> != 0"
        );
        ensure!(p.span1 == Some(true), "{pair}: h' outside the span");
        ensure!(
            p.orthogonal && p.raw_value == p.hh_value,
            "{pair}: value {}",
            p.hh_value
        );
    }
    Ok(())
}

fn hypercube_sweep() -> Result<ExperimentResult, String> {
    run_experiment(&ExperimentPlan::new(cube_side(5), cube_side(6))).map_err(|e| e.to_string())
}

// 2
fn exhaustive_sweep() -> Outcome {
    let r = hypercube_sweep()?;
    ensure!(r.pairs_total == 32 * 64, "{} pairs in total", r.pairs_total);
    check_admitted(&r)?;
    ensure!(r.pairs_tested > 0, "no admitted pairs");
    Ok(format!(
        "{} admitted of {} pairs ({} skipped by |Q| >= 5), 0 violations",
        r.pairs_tested, r.pairs_total, r.pairs_skipped
    ))
}

/// `(d, n)` of each side and the seed.
type RealizableCase = ((usize, usize), (usize, usize), u64);

const REALIZABLE: [RealizableCase; 6] = [
    ((3, 5), (3, 6), 0),
    ((3, 5), (3, 6), 1),
    ((3, 5), (3, 6), 2),
    ((3, 6), (3, 7), 0),
    ((3, 6), (3, 7), 1),
    ((3, 6), (3, 7), 2),
];

fn realizable_sweeps() -> Result<Vec<ExperimentResult>, String> {
    REALIZABLE
        .iter()
        .map(|&((d1, n1), (d2, n2), seed)| {
            let plan = ExperimentPlan::new(
                realizable_side(d1, n1, seed)?,
                realizable_side(d2, n2, seed)?,
            );
            run_experiment(&plan).map_err(|e| e.to_string())
        })
        .collect()
}

// 3
fn realizable_sweep() -> Outcome {
    let results = realizable_sweeps()?;
    let mut parts = Vec::new();
    for (r, ((d1, n1), (d2, n2), seed)) in results.iter().zip(REALIZABLE) {
        check_admitted(r).map_err(|e| format!("({d1},{n1})x({d2},{n2}) seed {seed}: {e}"))?;
        parts.push(format!(
            "({d1},{n1})x({d2},{n2})#{seed}: {}/{}",
            r.pairs_tested, r.pairs_total
        ));
    }
    let admitted: usize = results.iter().map(|r| r.pairs_tested).sum();
    ensure!(admitted > 0, "no admitted pairs in any realizable sweep");
    Ok(format!("0 violations; admitted/total {}", parts.join(", ")))
}

// 4
fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut checked = 0usize;
    for n in 3..=6 {
        let cube = hypercube_instance(n).unwrap();
        for _ in 0..3 {
            let base = SignVector::from_negative_mask(n, rng.gen::<u64>()).unwrap();
            let mut order: Vec<usize> = (1..=n).collect();
            order.shuffle(&mut rng);
            let cycle = distinguished_cycle(&cube, &base, &order).map_err(|e| e.to_string())?;
            ensure!(
                validate_cycle(&cube, &cycle).is_ok(),
                "invalid cycle {base} {order:?}"
            );
            for tope in cube.topes() {
                let d = decompose(&cube, &cycle, tope).map_err(|e| e.to_string())?;
                let o = brute_force_decompose(&cycle, tope).map_err(|e| e.to_string())?;
                ensure!(
                    d.member_set() == o.member_set(),
                    "n={n} base={base} order={order:?} T={tope}: oracle disagrees"
                );
                ensure!(d.size() % 2 == 1, "|Q({tope})| = {} is even", d.size());
                for w in 1..2 * n {
                    let dw = decompose_in_window(&cycle, tope, w).map_err(|e| e.to_string())?;
                    ensure!(
                        dw.member_set() == d.member_set(),
                        "T={tope}: window {w} differs"
                    );
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} (cycle, tope) cases agree, all |Q| odd, all windows equal"
    ))
}

// 5
fn matrix_identities() -> Outcome {
    for t in 0..=20usize {
        let tr = Transforms::new(t);
        let u = tr.get(TransformKind::BackIdentity);
        let s = tr.get(TransformKind::SignedBinomial);
        let m = tr.get(TransformKind::MKernel);
        let product = u
            .mul(s)
            .and_then(|x| x.mul(&s.transpose()))
            .and_then(|x| x.mul(u))
            .map_err(|e| e.to_string())?;
        ensure!(&product == m, "t={t}: M != U S S^T U");
        let closed = IntMatrix::from_fn(t + 1, t + 1, |i, j| {
            choose((i + j) as i64, i as i64) * sign((i + j) as i64)
        });
        ensure!(&closed == m, "t={t}: M differs from (-1)^(i+j) C(i+j, i)");
        let id = IntMatrix::identity(t + 1);
        ensure!(
            s.mul(&unsigned_binomial(t)).unwrap() == id,
            "t={t}: S * |S| != I"
        );
        ensure!(u.mul(u).unwrap() == id, "t={t}: U^2 != I");
        ensure!(
            build_transform(TransformKind::ForwardShift, t)
                .pow(t + 1)
                .unwrap()
                .is_zero(),
            "t={t}: shift is not nilpotent"
        );
    }
    Ok("all identities hold for t = 0..=20".into())
}

// 6
fn negative_control_sweeps() -> Outcome {
    let parity =
        negative_controls(&ExperimentPlan::new(cube_side(5), cube_side(7)).allow_equal_parity())
            .map_err(|e| e.to_string())?;
    ensure!(
        parity.nonzero_values > 0,
        "equal parity sweep found no nonzero value"
    );
    ensure!(
        parity.violations == 0,
        "negative control counted violations"
    );
    let small = negative_controls(&ExperimentPlan::new(cube_side(3), cube_side(6)).with_min_q(3))
        .map_err(|e| e.to_string())?;
    ensure!(
        small.anomaly_count() > 0,
        "min_q = 3 sweep found no anomaly"
    );
    Ok(format!(
        "h5 x h7: {} nonzero values of {} pairs; h3 x h6 min_q=3: {} anomalies {:?}",
        parity.nonzero_values,
        parity.pairs_tested,
        small.anomaly_count(),
        small.anomaly_counts
    ))
}

// 7
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let reports = |threads: usize| -> Result<Vec<Vec<u8>>, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| {
            let mut results = vec![
                run_experiment(
                    &ExperimentPlan::new(
                        cube_side(5).with_topes(vec![sv("+-+-+")]),
                        cube_side(6).with_topes(vec![sv("+-+-+-")]),
                    )
                    .with_min_q(1)
                    .allow_equal_parity(),
                )
                .map_err(|e| e.to_string())?,
                hypercube_sweep()?,
            ];
            results.extend(realizable_sweeps()?);
            let mut files = Vec::new();
            for (i, r) in results.iter().enumerate() {
                for ext in ["json", "csv"] {
                    let path = dir.path().join(format!("r{threads}-{i}.{ext}"));
                    r.save(&path).map_err(|e| e.to_string())?;
                    files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
                }
            }
            Ok(files)
        })
    };
    let a = reports(1)?;
    let b = reports(4)?;
    let c = reports(4)?;
    ensure!(a == b, "reports differ between 1 and 4 workers");
    ensure!(b == c, "reports differ between repeated runs");
    Ok(format!(
        "{} report files byte-identical across runs and worker counts",
        a.len()
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 7] = [
        ("worked example", worked_example, Duration::from_secs(1)),
        (
            "exhaustive hypercube sweep",
            exhaustive_sweep,
            Duration::from_secs(60),
        ),
        (
            "realizable sweep",
            realizable_sweep,
            Duration::from_secs(120),
        ),
        (
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(60),
        ),
        (
            "matrix identities",
            matrix_identities,
            Duration::from_secs(60),
        ),
        (
            "negative controls",
            negative_control_sweeps,
            Duration::from_secs(60),
        ),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    // warm the shared transform cache so criterion 1 is timed on its own work
    Transforms::shared(6);

    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
