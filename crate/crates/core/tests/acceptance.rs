//! Acceptance checks, one `PASS`/`FAIL` line each. Runs without the libtest
//! harness so the table is always printed. The ω(10000) run is skipped unless
//! `--ignored` (or `--include-ignored`) is passed.

use std::process::ExitCode;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use sternct::arith::LaurentPoly;
use sternct::nu::{nu_fast, nu_gf_coeffs};
use sternct::omega_gf::{
    h_support_ok, l_polynomial, omega_gf, omega_gf_with, omega_series, partial_fraction_residual,
    prefold_support, solve_component, u_recurrence_mismatch, v_recurrence_mismatch,
    x_quadratic_residual,
};
use sternct::stern::{nu_def, omega_def, OMEGA_SMALL};
use sternct::transfer::{choose_split, omega_transfer};

type Outcome = Result<(), String>;

fn check(cond: bool, why: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn msg(e: sternct::Error) -> String {
    e.to_string()
}

fn golden_table() -> Outcome {
    for n in 0..=20u32 {
        let want = BigInt::from(OMEGA_SMALL[n as usize]);
        check(omega_def(n) == want, || format!("definition, n = {n}"))?;
        if n >= 2 {
            let tr = omega_transfer(n as u64, false).map_err(msg)?;
            check(tr == want, || format!("transfer, n = {n}"))?;
        }
        if n >= 7 {
            let gf = omega_gf(n as u64).map_err(msg)?;
            check(gf == want, || format!("gf, n = {n}"))?;
        }
    }
    Ok(())
}

fn nu_pipeline() -> Outcome {
    for n in 0..=20u32 {
        check(nu_fast(n as u64) == nu_def(n), || format!("n = {n}"))?;
    }
    for (n, c) in nu_gf_coeffs(10).iter().enumerate() {
        check(*c == nu_fast(n as u64), || {
            format!("series coefficient {n}")
        })?;
    }
    Ok(())
}

fn transfer_equals_gf() -> Outcome {
    for n in [30u64, 50, 100, 300] {
        let tr = omega_transfer(n, true).map_err(msg)?;
        check(tr == omega_gf(n).map_err(msg)?, || format!("n = {n}"))?;
    }
    Ok(())
}

fn series_expansion() -> Outcome {
    for n in 2..=30u64 {
        let s = omega_series(n).map_err(msg)?;
        let want = if n <= 20 {
            BigInt::from(OMEGA_SMALL[n as usize])
        } else {
            omega_transfer(n, false).map_err(msg)?
        };
        check(s == want, || format!("n = {n}"))?;
    }
    Ok(())
}

fn series_and_recurrence_oracles() -> Outcome {
    check(x_quadratic_residual(200).map_err(msg)?.is_zero(), || {
        "X(t) residual".into()
    })?;
    for j in [0i64, -1, -2, -5, -10, -20] {
        if let Some(k) = u_recurrence_mismatch(j, 100).map_err(msg)? {
            return Err(format!("u, j = {j}, k = {k}"));
        }
    }
    if let Some(k) = v_recurrence_mismatch(100).map_err(msg)? {
        return Err(format!("v, k = {k}"));
    }
    for (i, s) in partial_fraction_residual(50)
        .map_err(msg)?
        .iter()
        .enumerate()
    {
        check(s.is_zero() && s.order() >= 50, || {
            format!("partial fractions, x^{i}")
        })?;
    }
    Ok(())
}

fn structure_at_seed_14() -> Outcome {
    let split = choose_split(10_000).map_err(msg)?;
    check((split.m, split.n) == (9986, 14), || {
        format!("split = ({}, {})", split.m, split.n)
    })?;
    let l = l_polynomial(&solve_component(14).map_err(msg)?).map_err(msg)?;
    check(l.t_degree() == Some(4), || {
        format!("t-degree {:?}", l.t_degree())
    })?;
    check(l.coeff(0) == LaurentPoly::one(), || "L(x, 0) != 1".into())?;
    let support = prefold_support(14).map_err(msg)?;
    check(support == (-65551, 65551), || {
        format!("support {support:?}")
    })
}

fn omega_10000() -> Outcome {
    let out = omega_gf_with(10_000, None).map_err(msg)?;
    let s = out.value.to_string();
    println!("omega(10000): {} subproblems", out.subproblems);
    check(s.len() == 6591, || format!("{} digits", s.len()))?;
    check(s.starts_with("675076678550698"), || {
        format!("prefix {}", &s[..15])
    })?;
    check(s.ends_with("425131"), || {
        format!("suffix {}", &s[s.len() - 6..])
    })?;
    let bundled = include_str!("data/omega_10000.txt").trim();
    check(s == bundled, || "differs from the bundled value".into())
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let terms = prop::collection::vec((-40i64..40, -50i64..50), 0..12);
    runner
        .run(&terms, |t| {
            let p = LaurentPoly::from_terms(t);
            prop_assert_eq!(p.ct(), p.reverse().ct());
            if !p.is_zero() && (p.ldeg().unwrap() > 0 || p.deg().unwrap() < 0) {
                prop_assert_eq!(p.ct(), BigInt::from(0));
            }
            Ok(())
        })
        .map_err(|e| format!("P1/P2: {e}"))?;
    for n in 2..=60u64 {
        let a = omega_transfer(n, true).map_err(msg)?;
        let b = omega_transfer(n, false).map_err(msg)?;
        check(a == b, || format!("prune soundness, N = {n}"))?;
        // assembly fails with NotIntegral on a fractional total
        let gf = omega_gf(n).map_err(|e| format!("integrality, N = {n}: {e}"))?;
        check(gf == a, || format!("gf, N = {n}"))?;
    }
    for n in 1..=8 {
        let sym = solve_component(n).map_err(msg)?.is_x_symmetric();
        check(sym, || format!("symmetry, seed {n}"))?;
    }
    h_support_ok(200)
        .map_err(msg)?
        .map_err(|n| format!("h_n support, n = {n}"))
}

type Criterion = (u32, &'static str, fn() -> Outcome, bool);

const CRITERIA: [Criterion; 8] = [
    (1, "omega(0..=20) equals the listed values by every applicable method (exact)", golden_table, false),
    (2, "nu_fast = nu_def for n <= 20, first 10 series coefficients agree (exact)", nu_pipeline, false),
    (3, "omega_transfer = omega_gf for N in {30, 50, 100, 300} (exact)", transfer_equals_gf, false),
    (4, "t-series expansion of the solved component gives omega(N), N <= 30 (exact)", series_expansion, false),
    (
        5,
        "X(t) to order 200, u/v recurrences vs closed forms to order 100, partial fractions to 50 (exact)",
        series_and_recurrence_oracles,
        false,
    ),
    (6, "L: t-degree 4, L(x,0) = 1; support [-65551, 65551]; split (9986, 14) (exact)", structure_at_seed_14, false),
    (
        7,
        "omega(10000): 6591 digits, prefix 675076678550698, suffix 425131, equals bundled value",
        omega_10000,
        true,
    ),
    (8, "P1/P2, prune soundness N <= 60, H symmetry, h_n support n <= 200, integrality", properties, false),
];

fn main() -> ExitCode {
    let slow = std::env::args().any(|a| a == "--ignored" || a == "--include-ignored");
    let mut failed = 0;
    for (id, what, run, is_slow) in CRITERIA {
        if is_slow && !slow {
            println!("SKIP criterion {id}: {what} (pass --ignored to run)");
            continue;
        }
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS criterion {id}: {what}"),
            Err(why) => {
                println!("FAIL criterion {id}: {what}: {why}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
