//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned here; nothing is deferred to calibration.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ks2::asymptotic::{scale_statistic, smirnov_tail};
use ks2::corridor::CorridorSpec;
use ks2::exact::{brute_force_p2, p2_classical_exact};
use ks2::stable::{p2_stable, p2_stable_full};
use ks2::statistic::{compute_statistic, KsStatistic, Sample, TiePolicy};

fn outcome(id: u32, label: &str, pass: bool) {
    println!("criterion {id} {}: {label}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {label}");
}

/// Criterion 1: brute-force equivalence over every (m, n, c) with
/// m, n <= 8: 1e-12 relative, or 1e-15 absolute below oracle 1e-3.
#[test]
fn criterion_1_brute_force_equivalence() {
    let started = Instant::now();
    let mut worst_rel = 0.0f64;
    let mut worst_abs = 0.0f64;
    let mut cells = 0u64;
    for m in 1..=8u64 {
        for n in 1..=8u64 {
            for c in 0..=(m * n + 1) as i64 {
                let spec = CorridorSpec::new(m, n, c);
                let oracle = brute_force_p2(&spec).unwrap().to_f64();
                let got = p2_stable(&spec);
                let diff = (got - oracle).abs();
                cells += 1;
                if oracle >= 1e-3 {
                    worst_rel = worst_rel.max(diff / oracle);
                    assert!(diff <= 1e-12 * oracle, "m={m} n={n} c={c}: {got} vs {oracle}");
                } else {
                    worst_abs = worst_abs.max(diff);
                    assert!(diff <= 1e-15, "m={m} n={n} c={c}: {got} vs {oracle}");
                }
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    outcome(
        1,
        &format!(
            "brute-force equivalence on {cells} cells (worst rel {worst_rel:.2e}, worst abs {worst_abs:.2e}, {elapsed:.1}s)"
        ),
        elapsed < 60.0,
    );
}

/// Criterion 2: rational-oracle equivalence at 1e-9 relative for 25
/// seed-deterministic thresholds on each of five size pairs, wherever the
/// exact value is at least 1e-280.
#[test]
fn criterion_2_rational_oracle_equivalence() {
    let started = Instant::now();
    let pairs = [(12u64, 13u64), (12, 18), (100, 100), (100, 101), (500, 500)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut checked = 0u64;
    let mut below_floor = 0u64;
    let mut worst = 0.0f64;
    for (m, n) in pairs {
        for _ in 0..25 {
            let c = rng.gen_range(1..=(m * n) as i64);
            let spec = CorridorSpec::new(m, n, c);
            let exact = p2_classical_exact(&spec).unwrap().to_f64();
            if exact < 1e-280 {
                below_floor += 1;
                continue;
            }
            let stable = p2_stable(&spec);
            let rel = (stable - exact).abs() / exact;
            worst = worst.max(rel);
            checked += 1;
            assert!(rel <= 1e-9, "m={m} n={n} c={c}: rel {rel:e}");
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    outcome(
        2,
        &format!(
            "rational-oracle equivalence on {checked} cells ({below_floor} below 1e-280 floor, worst rel {worst:.2e}, {elapsed:.1}s)"
        ),
        elapsed < 300.0,
    );
}

/// Criterion 3: the saturation witness at m = n = 500, c = 125000. The
/// exact tail is strictly positive, its complement rounds to exactly 1.0
/// in double precision, and the stable sweep still recovers it to 1e-9.
#[test]
fn criterion_3_saturation_witness() {
    let spec = CorridorSpec::new(500, 500, 125_000);
    let exact = p2_classical_exact(&spec).unwrap();
    assert!(!exact.is_zero());
    assert_eq!(exact.complement().to_f64(), 1.0);
    let oracle = exact.to_f64();
    let stable = p2_stable(&spec);
    assert!(stable > 0.0);
    let rel = (stable - oracle).abs() / oracle;
    outcome(
        3,
        &format!("saturation witness: exact {oracle:e}, 1-p rounds to 1.0, stable rel err {rel:.2e}"),
        rel <= 1e-9,
    );
}

/// Criterion 4: degenerate thresholds: c <= 0 gives exactly 1.0 and
/// c > m*n gives exactly 0.0.
#[test]
fn criterion_4_case_split_conformance() {
    let mut sizes: Vec<(u64, u64)> = Vec::new();
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            sizes.push((m, n));
        }
    }
    sizes.extend([(100, 100), (250, 97), (1, 1000)]);
    for &(m, n) in &sizes {
        for c in [0i64, -1, -1000] {
            assert_eq!(p2_stable(&CorridorSpec::new(m, n, c)), 1.0, "m={m} n={n} c={c}");
        }
        let beyond = (m * n) as i64 + 1;
        assert_eq!(p2_stable(&CorridorSpec::new(m, n, beyond)), 0.0, "m={m} n={n}");
        assert_eq!(p2_stable(&CorridorSpec::new(m, n, beyond + 17)), 0.0, "m={m} n={n}");
    }
    outcome(4, &format!("case split exact on {} size pairs", sizes.len()), true);
}

/// Criterion 5: structural properties over randomized suites of >= 1000
/// cases each: range, monotonicity in c, symmetry, banding equivalence.
#[test]
fn criterion_5_structural_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);

    // range [0, 1]
    for _ in 0..1000 {
        let m = rng.gen_range(1..=300u64);
        let n = rng.gen_range(1..=300u64);
        let c = rng.gen_range(-2i64..=(m * n) as i64 + 2);
        let p = p2_stable(&CorridorSpec::new(m, n, c));
        assert!((0.0..=1.0).contains(&p), "m={m} n={n} c={c}: {p}");
    }

    // monotone non-increasing in c
    for _ in 0..1000 {
        let m = rng.gen_range(1..=150u64);
        let n = rng.gen_range(1..=150u64);
        let c = rng.gen_range(0i64..=(m * n) as i64);
        let hi = p2_stable(&CorridorSpec::new(m, n, c));
        let lo = p2_stable(&CorridorSpec::new(m, n, c + 1));
        assert!(
            lo <= hi + 1e-12 * hi.max(lo) + 1e-300,
            "m={m} n={n} c={c}: {hi} then {lo}"
        );
    }

    // symmetry under swapping the samples
    for _ in 0..1000 {
        let m = rng.gen_range(1..=200u64);
        let n = rng.gen_range(1..=200u64);
        let c = rng.gen_range(0i64..=(m * n) as i64 + 1);
        let a = p2_stable(&CorridorSpec::new(m, n, c));
        let b = p2_stable(&CorridorSpec::new(n, m, c));
        assert!(
            (a - b).abs() <= 1e-15 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE),
            "m={m} n={n} c={c}: {a} vs {b}"
        );
    }

    // banding equivalence against the full table
    for _ in 0..1000 {
        let m = rng.gen_range(1..=200u64);
        let n = rng.gen_range(1..=200u64);
        let c = rng.gen_range(0i64..=(m * n) as i64 + 1);
        let spec = CorridorSpec::new(m, n, c);
        let banded = p2_stable(&spec);
        let full = p2_stable_full(&spec).unwrap();
        assert!(
            (banded - full).abs() <= 1e-12 * full.abs().max(f64::MIN_POSITIVE),
            "m={m} n={n} c={c}: {banded} vs {full}"
        );
    }

    outcome(5, "range, monotonicity, symmetry, banding: 1000 cases each", true);
}

/// Criterion 6: the statistic agrees with a direct double-loop sup over
/// the union of jump points on 1000 random pairs, and is invariant under
/// strictly increasing transforms.
#[test]
fn criterion_6_statistic_correctness() {
    // independent re-implementation: no merge bookkeeping, O((m+n)^2)
    fn sup_over_union(xs: &[f64], ys: &[f64]) -> u64 {
        let (m, n) = (xs.len() as i128, ys.len() as i128);
        let mut best = 0i128;
        for &v in xs.iter().chain(ys.iter()) {
            let i = xs.iter().filter(|&&x| x <= v).count() as i128;
            let j = ys.iter().filter(|&&y| y <= v).count() as i128;
            best = best.max((i * n - j * m).abs());
        }
        best as u64
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    for case in 0..1000 {
        let m = rng.gen_range(1..=50usize);
        let n = rng.gen_range(1..=50usize);
        // integer-valued doubles keep the increasing transforms exact
        let xs: Vec<f64> = (0..m).map(|_| rng.gen_range(-100..=100) as f64).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-100..=100) as f64).collect();
        let sx = Sample::new(xs.clone()).unwrap();
        let sy = Sample::new(ys.clone()).unwrap();
        let base = compute_statistic(&sx, &sy, TiePolicy::Resolve).unwrap().statistic;
        assert_eq!(base.c, sup_over_union(&xs, &ys), "case {case}");
        assert_eq!((base.m, base.n), (m as u64, n as u64));

        let affine = |v: f64| 3.0 * v - 7.0;
        let cubic = |v: f64| v * v * v;
        for f in [affine as fn(f64) -> f64, cubic] {
            let tx = Sample::new(xs.iter().map(|&v| f(v)).collect()).unwrap();
            let ty = Sample::new(ys.iter().map(|&v| f(v)).collect()).unwrap();
            let t = compute_statistic(&tx, &ty, TiePolicy::Resolve).unwrap().statistic;
            assert_eq!(t, base, "case {case}: transform changed the statistic");
        }
    }
    outcome(6, "statistic matches the double-loop oracle on 1000 pairs", true);
}

/// Criterion 7: the limiting tail is within 0.01 of the exact value at
/// m = n = 1000, yet visibly off (by more than 0.001 somewhere) at m = 12
/// with moderate p values.
#[test]
fn criterion_7_asymptotic_convergence() {
    let (m, n) = (1000u64, 1000u64);
    let mut worst_large = 0.0f64;
    for x_target in [0.8f64, 1.0, 1.5, 2.0] {
        let c = (x_target * ((m * n) as f64 * (m + n) as f64).sqrt()).round() as i64;
        let spec = CorridorSpec::new(m, n, c);
        let p = p2_stable(&spec);
        let stat = KsStatistic { m, n, c: c as u64 };
        let tail = smirnov_tail(scale_statistic(&stat));
        let diff = (p - tail).abs();
        worst_large = worst_large.max(diff);
        assert!(diff <= 0.01, "x={x_target}: exact {p} vs tail {tail}");
    }

    let m = 12u64;
    let mut worst_small = 0.0f64;
    for n in 13..=18u64 {
        for c in 1..=(m * n) as i64 {
            let spec = CorridorSpec::new(m, n, c);
            let p = p2_stable(&spec);
            if (0.01..=0.2).contains(&p) {
                let stat = KsStatistic { m, n, c: c as u64 };
                let tail = smirnov_tail(scale_statistic(&stat));
                worst_small = worst_small.max((p - tail).abs());
            }
        }
    }
    outcome(
        7,
        &format!(
            "asymptotic within {worst_large:.1e} at m=n=1000; small-sample discrepancy {worst_small:.1e} > 1e-3"
        ),
        worst_small > 0.001,
    );
}

/// Criterion 8: the full m = 12, n = 13..18 sweep over every threshold,
/// with asymptotic comparison, completes in under 10 seconds.
#[test]
fn criterion_8_historically_arduous_sweep_is_fast() {
    let started = Instant::now();
    let m = 12u64;
    let mut cells = 0u64;
    let mut checksum = 0.0f64;
    for n in 13..=18u64 {
        for c in 0..=(m * n + 1) as i64 {
            let spec = CorridorSpec::new(m, n, c);
            let p = p2_stable(&spec);
            let tail = if c <= 0 {
                1.0
            } else {
                smirnov_tail(scale_statistic(&KsStatistic { m, n, c: c as u64 }))
            };
            checksum += p + tail;
            cells += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(checksum.is_finite());
    outcome(
        8,
        &format!("{cells} cells of the m=12 grid swept in {elapsed:.3}s"),
        elapsed < 10.0,
    );
}
