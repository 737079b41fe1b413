//! Acceptance criteria 1–10, one pass/fail line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use shapdet::blocks::{cartan_exponent, enumerate_blocks};
use shapdet::exact::{binomial, CycNumber, ExactMatrix, Rational};
use shapdet::gram::{predicted_determinant, verify_with, BPolynomial, FormContext, YMonomial};
use shapdet::partitions::{enumerate_basis, enumerate_partitions, exponent_totals, exponents};
use shapdet::roots::{a_matrix, det_a, AffineType};
use shapdet::series::{ab_series, cartan_series, dimension_series, spin_cartan_series};
use shapdet::ROSTER;

type Outcome = Result<String, String>;

fn ty(s: &str) -> AffineType {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {:.2?}, limit {:.0?}", elapsed, limit)
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for s in ROSTER {
        let t = ty(s);
        for n in 1..=6 {
            let expected = if n % t.r() == 0 { t.alpha() } else { t.beta() };
            let det = a_matrix(&t, n).det();
            ensure(det == CycNumber::from_int(t.r() as u8, expected), || {
                format!("{s} n={n}: det {det}, expected {expected}")
            })?;
            det_a(&t, n).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{count} determinants in {:.2?}", start.elapsed()))
}

fn criterion_2_schedule() -> Vec<(&'static str, u32)> {
    vec![
        ("A1^1", 6),
        ("A2^2", 6),
        ("A2^1", 4),
        ("A5^2", 4),
        ("A4^2", 4),
        ("D3^2", 4),
        ("D5^2", 4),
        ("E6^2", 4),
        ("D4^3", 4),
        ("D4^1", 3),
        ("E6^1", 3),
        ("A4^1", 3),
    ]
}

/// Criteria 2 and 3 share the Gram computations.
fn criteria_2_and_3() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut det_failures = Vec::new();
    let mut identity_failures = Vec::new();
    let mut cases = 0;
    for (s, max_d) in criterion_2_schedule() {
        let t = ty(s);
        let ctx = FormContext::new(&t);
        for d in 1..=max_d {
            cases += 1;
            let report = match verify_with(&ctx, d) {
                Ok(r) => r,
                Err(e) => {
                    det_failures.push(format!("{s} d={d}: {e}"));
                    continue;
                }
            };
            let (a, b) = exponent_totals(&t, d).unwrap();
            let predicted = CycNumber::from_rational(
                t.r() as u8,
                Rational::from_integer(predicted_determinant(&t, &a, &b)),
            );
            if report.det_m != predicted {
                det_failures.push(format!("{s} d={d}: det M {} vs {predicted}", report.det_m));
            }
            if !report.identity_ok || !report.det_n.is_one() {
                identity_failures.push(format!(
                    "{s} d={d}: identity {} det N {}",
                    report.identity_ok, report.det_n
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let c2 = if !det_failures.is_empty() {
        Err(det_failures.join("; "))
    } else {
        within(elapsed, Duration::from_secs(60))
            .map(|_| format!("{cases} (type, d) cases, det M = α^a β^b, {elapsed:.2?}"))
    };
    let c3 = if identity_failures.is_empty() {
        Ok(format!(
            "{cases} cases, M = P Q P⁻¹ N exactly and det N = 1"
        ))
    } else {
        Err(identity_failures.join("; "))
    };
    (c2, c3)
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for s in ROSTER {
        let t = ty(s);
        let ctx = FormContext::new(&t);
        for size in 0..=5 {
            for lambda in enumerate_partitions(size) {
                let (a, b) = exponents(&t, &lambda).map_err(|e| e.to_string())?;
                let det = ctx.q_block(&lambda).det().map_err(|e| e.to_string())?;
                let expected = predicted_determinant(&t, &a, &b);
                ensure(det.to_integer() == Some(expected.clone()), || {
                    format!("{s} {lambda}: det Q_λ = {det}, expected {expected}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} blocks Q_λ"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for s in ROSTER {
        let t = ty(s);
        let (sa, sb) = ab_series(&t, 25);
        for d in 0..=25 {
            let (a, b) = exponent_totals(&t, d).map_err(|e| e.to_string())?;
            ensure(
                &a == sa.coeff(d as usize) && &b == sb.coeff(d as usize),
                || {
                    format!(
                        "{s} d={d}: sums ({a}, {b}) vs series ({}, {})",
                        sa.coeff(d as usize),
                        sb.coeff(d as usize)
                    )
                },
            )?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("12 types, d ≤ 25, {:.2?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    for p in [2u32, 3, 5, 7] {
        let series = cartan_series(p, 15).map_err(|e| e.to_string())?;
        let (a, _) = ab_series(&ty(&format!("A{}^1", p - 1)), 15);
        for d in 0..=15 {
            let closed = BigInt::from(cartan_exponent(p, d, false).map_err(|e| e.to_string())?);
            ensure(
                &closed == series.coeff(d as usize) && &closed == a.coeff(d as usize),
                || {
                    format!(
                        "p={p} d={d}: closed {closed}, series {}, a(d) {}",
                        series.coeff(d as usize),
                        a.coeff(d as usize)
                    )
                },
            )?;
        }
    }
    ensure(cartan_exponent(2, 1, false) == Ok(1), || {
        "N(1) at p=2".into()
    })?;
    ensure(cartan_exponent(2, 2, false) == Ok(3), || {
        "N(2) at p=2".into()
    })?;
    let blocks = enumerate_blocks(4, 2).map_err(|e| e.to_string())?;
    ensure(
        blocks.len() == 1 && blocks[0].cartan_det == BigInt::from(8),
        || format!("S_4 at p=2: {blocks:?}"),
    )?;
    Ok("p ∈ {2,3,5,7}, d ≤ 15; N(1)=1, N(2)=3, S_4 principal block det 8".into())
}

fn criterion_7() -> Outcome {
    for p in [3u32, 5, 7] {
        let series = spin_cartan_series(p, 15).map_err(|e| e.to_string())?;
        let (_, b) = ab_series(&ty(&format!("A{}^2", p - 1)), 15);
        for d in 0..=15 {
            let closed = BigInt::from(cartan_exponent(p, d, true).map_err(|e| e.to_string())?);
            ensure(
                &closed == series.coeff(d as usize) && &closed == b.coeff(d as usize),
                || {
                    format!(
                        "p={p} d={d}: closed {closed}, series {}, b(d) {}",
                        series.coeff(d as usize),
                        b.coeff(d as usize)
                    )
                },
            )?;
        }
    }
    let spot: Vec<u64> = (0..=4)
        .map(|d| cartan_exponent(3, d, true).unwrap())
        .collect();
    ensure(spot == [0, 1, 2, 5, 8], || {
        format!("p=3 spot values {spot:?}")
    })?;
    Ok("p ∈ {3,5,7}, d ≤ 15; p=3 gives 0,1,2,5,8".into())
}

fn criterion_8() -> Outcome {
    for p in [2u32, 3, 5] {
        for n in 0..=10 {
            let blocks = enumerate_blocks(n, p).map_err(|e| e.to_string())?;
            let total: usize = blocks.iter().map(|b| b.member_count).sum();
            ensure(total == enumerate_partitions(n).len(), || {
                format!("n={n} p={p}: {total} members")
            })?;
            for a in &blocks {
                for b in &blocks {
                    ensure(a.weight != b.weight || a.cartan_det == b.cartan_det, || {
                        format!("n={n} p={p}: weight {} dets differ", a.weight)
                    })?;
                }
            }
        }
    }
    let b = enumerate_blocks(4, 2).unwrap();
    ensure(b.len() == 1 && b[0].weight == 2, || format!("(4,2): {b:?}"))?;
    let weights: Vec<u32> = enumerate_blocks(4, 3)
        .unwrap()
        .iter()
        .map(|b| b.weight)
        .collect();
    ensure(weights == [1, 0, 0], || {
        format!("(4,3) weights {weights:?}")
    })?;
    Ok("n ≤ 10, p ∈ {2,3,5}".into())
}

fn order_strategy() -> impl Strategy<Value = u8> {
    prop_oneof![Just(1u8), Just(3u8)]
}

/// Square matrices of size 1..=3 over `ℚ` (order 1) or `ℚ(ζ₃)` (order 3).
fn matrix_strategy(order: u8) -> impl Strategy<Value = ExactMatrix> {
    (1usize..=3).prop_flat_map(move |n| {
        proptest::collection::vec((-3i64..=3, -2i64..=2), n * n).prop_map(move |entries| {
            ExactMatrix::from_fn(order, n, n, |i, j| {
                let (a, b) = entries[i * n + j];
                let b = if order == 1 { 0 } else { b };
                CycNumber::new(
                    order,
                    Rational::from_integer(a.into()),
                    Rational::from_integer(b.into()),
                )
                .unwrap()
            })
        })
    })
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    let single = order_strategy().prop_flat_map(matrix_strategy);
    run_property(256, (single, 0usize..=4), |(m, k)| {
        let n = m.rows() as u64;
        let lhs = m.sym_power(k).unwrap().det().unwrap();
        let e = binomial(n + k as u64 - 1, n);
        let rhs = m.det().unwrap().pow(u64::try_from(e).unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })?;
    let pair = order_strategy().prop_flat_map(|o| (matrix_strategy(o), matrix_strategy(o)));
    run_property(256, pair, |(a, b)| {
        let (n, m) = (a.rows() as u64, b.rows() as u64);
        let lhs = a.kron(&b).unwrap().det().unwrap();
        let rhs = &a.det().unwrap().pow(m) * &b.det().unwrap().pow(n);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })?;

    // degree orthogonality
    for s in ["A2^1", "E6^2", "D4^3", "A5^2"] {
        let ctx = FormContext::new(&ty(s));
        let order = ctx.order();
        for d1 in 0..=3 {
            for d2 in 0..=3 {
                if d1 == d2 {
                    continue;
                }
                for u in ctx.basis(d1) {
                    for v in ctx.basis(d2) {
                        let f = BPolynomial::monomial(
                            order,
                            YMonomial::from(&u),
                            CycNumber::one(order),
                        );
                        let g = BPolynomial::monomial(
                            order,
                            YMonomial::from(&v),
                            CycNumber::one(order),
                        );
                        ensure(
                            ctx.form_s(&f, &g).is_zero() && ctx.form_k(&f, &g).is_zero(),
                            || format!("{s}: ({u}, {v}) not orthogonal"),
                        )?;
                    }
                }
            }
        }
    }

    // (y_λ, f)_S = (z_λ, f)_K
    for s in ROSTER {
        let ctx = FormContext::new(&ty(s));
        for d in 0..=4 {
            ensure(ctx.y_z_adjointness_holds(d).unwrap(), || {
                format!("{s} d={d}: y/z adjointness")
            })?;
        }
    }

    // basis sizes
    for s in ROSTER {
        let t = ty(s);
        let dim = dimension_series(&t, 10);
        for d in 0..=10 {
            let size = enumerate_basis(&t, d).len();
            ensure(BigInt::from(size) == *dim.coeff(d as usize), || {
                format!("{s} d={d}: basis {size} vs {}", dim.coeff(d as usize))
            })?;
        }
    }
    Ok("256 + 256 matrix cases, orthogonality, y/z adjointness d ≤ 4, basis sizes d ≤ 10".into())
}

fn shapdet(args: &[&str]) -> Result<i32, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_shapdet"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    status
        .status
        .code()
        .ok_or_else(|| "killed by signal".into())
}

fn criterion_10() -> Outcome {
    let roster = shapdet(&["gram", "--roster", "--check"])?;
    ensure(roster == 0, || {
        format!("gram --roster --check exited {roster}")
    })?;
    let det_roster = shapdet(&["detA", "--roster"])?;
    ensure(det_roster == 0, || {
        format!("detA --roster exited {det_roster}")
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let t = ty("D4^3");
    let rd = t.root_data();
    let mut gram = rd.gram.clone();
    gram[0][2] -= 1;
    let fixture = serde_json::json!({ "nodes": rd.nodes, "gram": gram, "mu": rd.mu });
    let path = dir.path().join("perturbed.json");
    std::fs::write(&path, fixture.to_string()).map_err(|e| e.to_string())?;
    let path = path.to_str().unwrap();

    let clean_path = dir.path().join("clean.json");
    let clean = serde_json::json!({ "nodes": rd.nodes, "gram": rd.gram, "mu": rd.mu });
    std::fs::write(&clean_path, clean.to_string()).map_err(|e| e.to_string())?;
    let clean = shapdet(&[
        "gram",
        "D4^3",
        "-d",
        "2",
        "--check",
        "--root-data",
        clean_path.to_str().unwrap(),
    ])?;
    ensure(clean == 0, || format!("unperturbed fixture exited {clean}"))?;

    let perturbed = shapdet(&["gram", "D4^3", "-d", "2", "--check", "--root-data", path])?;
    ensure(perturbed == 1, || {
        format!("perturbed fixture exited {perturbed}")
    })?;
    let invalid = shapdet(&["info", "A3^2"])?;
    ensure(invalid == 2, || format!("invalid type exited {invalid}"))?;
    Ok("roster exits 0, perturbed Cartan entry exits 1".into())
}

fn main() {
    let (c2, c3) = criteria_2_and_3();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "det A^(n) table", criterion_1()),
        (2, "det M = α^a(d) β^b(d)", c2),
        (3, "M = P Q P⁻¹ N, det N = 1", c3),
        (4, "det Q_λ = α^a_λ β^b_λ", criterion_4()),
        (5, "partition sums vs a(q), b(q)", criterion_5()),
        (6, "Cartan exponent N(d)", criterion_6()),
        (7, "spin Cartan exponent N(d)", criterion_7()),
        (8, "block explorer", criterion_8()),
        (9, "property suites", criterion_9()),
        (10, "CLI contract", criterion_10()),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
