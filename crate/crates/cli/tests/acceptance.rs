//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qdwork::report::{emit_report, parse_report, Format};
use qdwork_core::padic::{check_dwork_padic, check_mortenson, check_sun_liu, jacobi};
use qdwork_core::polyring::{CyclotomicTable, Poly};
use qdwork_core::qseries::{sum_side, sum_term, SumSpec};
use qdwork_core::verifier::{
    count_multiples, exponent_bound_holds, param_root_substitutions, thm2_sides, verify_gz_d2, verify_lemma21,
    verify_param_roots, verify_thm1, verify_thm2, Limits, ParamVariant, TheoremParams,
};
use qdwork_core::{RatFun, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    ensure(start.elapsed() < budget, || format!("took {:?}, budget {:?}", start.elapsed(), budget))
}

fn sign(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

fn limits() -> Limits {
    Limits::default()
}

fn cyclotomic_suite() -> Outcome {
    let start = Instant::now();
    let mut table = CyclotomicTable::new();
    for n in 1..=100u64 {
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .try_fold(Poly::one(), |acc, d| table.get(d).map(|p| &acc * &p))
            .map_err(|e| e.to_string())?;
        let mut target = vec![0i64; n as usize + 1];
        target[0] = -1;
        target[n as usize] = 1;
        ensure(product == Poly::from_ints(&target), || format!("product over d | {n} is not q^{n} - 1"))?;
    }
    let one = Rational::from_integer(1.into());
    for n in 1..=200u64 {
        let primes: Vec<u64> = (2..=n).filter(|p| n % p == 0 && is_prime(*p)).collect();
        let expected = match (n, primes.as_slice()) {
            (1, _) => 0,
            (_, [p]) => *p as i64,
            _ => 1,
        };
        let value = table.get(n).map_err(|e| e.to_string())?.eval(&one);
        ensure(value == Rational::from_integer(expected.into()), || format!("Phi_{n}(1) = {value}, expected {expected}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("n <= 100 products, n <= 200 values at 1, {:?}", start.elapsed()))
}

/// Class-1 instances with m <= 6, n in {3, 5, 7, 9} and n^r <= 30, plus the
/// explicitly listed larger ones.
fn thm1_grid() -> Vec<TheoremParams> {
    let mut out = Vec::new();
    for m in 2..=6u64 {
        for s in 1..m {
            for n in [3u64, 5, 7, 9] {
                if n % m != 1 {
                    continue;
                }
                for r in 2..=4u32 {
                    if n.pow(r) <= 30 {
                        out.push(TheoremParams::new(m, s, n, r));
                    }
                }
            }
        }
    }
    out.extend([TheoremParams::new(6, 1, 7, 2), TheoremParams::new(2, 1, 9, 2)]);
    out
}

fn thm1_suite() -> Outcome {
    let start = Instant::now();
    let grid = thm1_grid();
    for p in &grid {
        let report = verify_thm1(p, &limits()).map_err(|e| format!("{p:?}: {e}"))?;
        ensure(report.passed, || format!("{p:?}: {:?}", report.failure_witness))?;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} instances, {:?}", grid.len(), start.elapsed()))
}

fn thm2_suite() -> Outcome {
    let start = Instant::now();
    let cases = [(4, 1, 3, 2), (4, 3, 3, 2), (4, 1, 3, 3), (3, 1, 5, 2), (3, 2, 5, 2), (6, 1, 5, 2), (6, 5, 5, 2)];
    for (m, s, n, r) in cases {
        let p = TheoremParams::new(m, s, n, r);
        let report = verify_thm2(&p, &limits()).map_err(|e| format!("{p:?}: {e}"))?;
        ensure(report.passed, || format!("{p:?}: {:?}", report.failure_witness))?;
    }
    let (_, rhs) = thm2_sides(&TheoremParams::new(4, 1, 3, 2), &limits()).map_err(|e| e.to_string())?;
    ensure(rhs == RatFun::one(), || format!("(4,1,3,2) right side is {rhs}"))?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} instances, (4,1,3,2) right side = 1, {:?}", cases.len(), start.elapsed()))
}

fn lemma_suite() -> Outcome {
    let mut count = 0;
    for m in 2..=6u64 {
        for s in 1..m {
            for n in [3u64, 5, 7] {
                if (1..=m).filter(|d| m % d == 0 && n % d == 0).max() != Some(1) {
                    continue;
                }
                let report = verify_lemma21(m, n, s, &limits()).map_err(|e| format!("({m},{n},{s}): {e}"))?;
                ensure(report.passed, || format!("({m},{n},{s}): {:?}", report.failure_witness))?;
                count += 1;
            }
        }
    }
    let spec = SumSpec::new(2, 1, 1, 3, -3).map_err(|e| e.to_string())?;
    let terms: Vec<RatFun> = (0..3).map(|k| sum_term(&spec, k)).collect();
    let expected = [RatFun::from_int(1), RatFun::from_int(-2), RatFun::zero()];
    ensure(terms == expected, || format!("(2,3,1) terms {terms:?}"))?;
    ensure(sum_side(&spec) == RatFun::from_int(-1), || "(2,3,1) sum is not -1".into())?;
    Ok(format!("{count} instances, (2,3,1) terms 1, -2, 0"))
}

fn param_suite() -> Outcome {
    let cases = [
        (ParamVariant::One, (2, 1, 3, 2)),
        (ParamVariant::One, (4, 1, 5, 2)),
        (ParamVariant::Two, (4, 1, 3, 2)),
        (ParamVariant::Two, (4, 3, 3, 2)),
    ];
    let mut roots = 0;
    for (variant, (m, s, n, r)) in cases {
        let p = TheoremParams::new(m, s, n, r);
        let report = verify_param_roots(variant, &p, &limits()).map_err(|e| format!("{p:?}: {e}"))?;
        ensure(report.passed, || format!("{variant:?} {p:?}: {:?}", report.failure_witness))?;
        for root in param_root_substitutions(variant, &p).map_err(|e| e.to_string())? {
            let stated = match variant {
                ParamVariant::One => sign(s * root.j + s * (n - 1) / m),
                ParamVariant::Two => sign(s * n * n * root.j),
            };
            ensure(root.expected_sign == stated, || format!("{variant:?} {p:?} {root:?}: stated sign {stated}"))?;
            roots += 1;
        }
    }
    Ok(format!("{roots} root substitutions, both sides equal the stated sign"))
}

fn gz_suite() -> Outcome {
    for (n, expected) in [(3u64, -1i8), (5, 1)] {
        let symbol = jacobi(-1, n).map_err(|e| e.to_string())?;
        ensure(symbol == expected, || format!("(-1/{n}) = {symbol}"))?;
        let report = verify_gz_d2(n, 2, &limits()).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("n = {n}: {:?}", report.failure_witness))?;
    }
    Ok("(3,2) with sign -1, (5,2) with sign +1".into())
}

fn mortenson_suite() -> Outcome {
    let mut count = 0;
    for p in (5..=97).filter(|&p| is_prime(p)) {
        for variant in 1..=4 {
            let c = check_mortenson(p, variant).map_err(|e| e.to_string())?;
            ensure(c.passed, || format!("p = {p}, variant {variant}: {} vs {}", c.lhs_residue, c.rhs_residue))?;
            count += 1;
        }
    }
    let c = check_mortenson(5, 1).map_err(|e| e.to_string())?;
    ensure(c.lhs_residue == 1 && c.rhs_residue == 1, || format!("p = 5 variant 1: {c:?}"))?;
    Ok(format!("{count} instances, p = 5 variant 1 residues 1 and 1 mod 25"))
}

fn sun_liu_suite() -> Outcome {
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    let mut count = 0;
    // The congruence is stated for odd primes.
    for p in (3..=31).filter(|&p| is_prime(p)) {
        for x in [q(0, 1), q(1, 2), q(1, 3), q(2, 3), q(1, 4), q(3, 4), q(1, 5)] {
            if x.denom() % p == 0.into() {
                continue;
            }
            let c = check_sun_liu(p, 1, &x).map_err(|e| format!("p = {p}, x = {x}: {e}"))?;
            ensure(c.passed, || format!("p = {p}, x = {x}: {} vs {}", c.lhs_residue, c.rhs_residue))?;
            count += 1;
        }
    }
    for p in [5, 7, 11, 13] {
        for n in 2..=4 {
            for x in [q(1, 2), q(1, 3), q(1, 4), q(1, 6)] {
                let c = check_sun_liu(p, n, &x).map_err(|e| format!("p = {p}, n = {n}, x = {x}: {e}"))?;
                ensure(c.passed, || format!("p = {p}, n = {n}, x = {x}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn dwork_suite() -> Outcome {
    let start = Instant::now();
    for (p, r, m, s) in [(3, 2, 2, 1), (5, 2, 2, 1), (5, 2, 4, 1), (5, 2, 4, 3), (3, 3, 2, 1)] {
        let d = check_dwork_padic(p, r, m, s).map_err(|e| e.to_string())?;
        let diff_ok = d.diff_valuation.is_none_or(|v| v >= 2 * r as i64);
        let w_ok = d.w_valuation.is_none_or(|v| v >= 0);
        ensure(d.passed && diff_ok && w_ok, || format!("({p},{r},{m},{s}): {d:?}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("5 instances, {:?}", start.elapsed()))
}

fn counting_suite() -> Outcome {
    let mut mismatches = Vec::new();
    let mut points = 0;
    for m in 2..=6u64 {
        for n in (3..=9u64).step_by(2).filter(|n| n % m == 1) {
            for s in 1..m {
                for r in 2..=4u32 {
                    for j in 1..=r {
                        let c = count_multiples(m, s, n, r, j).map_err(|e| e.to_string())?;
                        let bound = exponent_bound_holds(m, s, n, r, j).map_err(|e| e.to_string())?;
                        points += 1;
                        if c.counted != c.expected || !bound {
                            mismatches.push(format!(
                                "(m,s,n,r,j)=({m},{s},{n},{r},{j}) counted {} expected {} bound {bound}",
                                c.counted, c.expected
                            ));
                        }
                    }
                }
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("{} of {points} points: {}", mismatches.len(), mismatches.join("; ")))?;
    Ok(format!("{points} grid points"))
}

fn q_to_one_suite() -> Outcome {
    let mut count = 0;
    for p in thm1_grid().into_iter().filter(|p| is_prime(p.n) && p.n % p.m == 1) {
        let report = verify_thm1(&p, &limits()).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("{p:?} does not pass"))?;
        let d = check_dwork_padic(p.n, p.r, p.m, p.s).map_err(|e| e.to_string())?;
        let ok = d.diff_valuation.is_none_or(|v| v >= 2 * p.r as i64);
        ensure(ok && d.passed, || format!("{p:?}: {d:?}"))?;
        count += 1;
    }
    Ok(format!("{count} prime instances"))
}

fn qdwork(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdwork")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_suite() -> Outcome {
    let exits: [(&[&str], i32); 8] = [
        (&["verify", "thm1", "--m", "2", "--s", "1", "--n", "3", "--r", "2"], 0),
        (&["verify", "thm1", "--m", "2", "--s", "1", "--n", "4", "--r", "2"], 2),
        (&["verify", "thm2", "--m", "4", "--s", "1", "--n", "3", "--r", "2"], 0),
        (&["verify", "lemma21", "--m", "2", "--n", "3", "--s", "1"], 0),
        (&["verify", "gz-d2", "--n", "3", "--r", "2"], 0),
        (&["padic", "mortenson", "--p", "5", "--variant", "1"], 0),
        (&["verify", "thm1", "--m", "2", "--s", "1", "--n", "3", "--r", "6"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in exits {
        let (code, _) = qdwork(args);
        ensure(code == expected, || format!("{args:?} exited {code}, expected {expected}"))?;
    }
    let (code, text) = qdwork(&["cyclotomic", "9"]);
    ensure(code == 0 && text == "q^6 + q^3 + 1\n", || format!("cyclotomic 9 gave {text:?} ({code})"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("grid.conf");
    std::fs::write(
        &config,
        "[grid]\nm = 2..6\ns = all\nn = 3, 5, 7, 9\nr = 2..3\n\n[theorems]\nthm1 = true\nthm2 = true\n\n[run]\nsize_guard = 81\n",
    )
    .map_err(|e| e.to_string())?;
    let config = config.to_str().expect("utf-8 temp path");
    let mut bodies = Vec::new();
    for jobs in ["1", "4"] {
        let (code, json) = qdwork(&["--json", "scan", config, "--jobs", jobs]);
        ensure(code == 0, || format!("scan with jobs {jobs} exited {code}"))?;
        let doc = parse_report(&json).map_err(|e| e.to_string())?;
        ensure(emit_report(&doc, Format::Json) == json, || "JSON does not round-trip".into())?;
        ensure(doc.summary.failed == 0 && doc.summary.passed > 0, || format!("summary {:?}", doc.summary))?;
        let mut doc = doc.without_timings();
        if let Some(c) = doc.config.as_mut() {
            c.jobs = 0;
        }
        bodies.push(emit_report(&doc, Format::Json));
    }
    ensure(bodies[0] == bodies[1], || "jobs 1 and jobs 4 reports differ".into())?;
    Ok("exit codes, JSON round-trip, scan determinism under jobs 1 and 4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cyclotomic identities", cyclotomic_suite),
        ("thm1 grid", thm1_suite),
        ("thm2 instances", thm2_suite),
        ("lemma root substitutions", lemma_suite),
        ("parametric root identities", param_suite),
        ("d = 2 congruence", gz_suite),
        ("Mortenson congruences", mortenson_suite),
        ("Sun and Liu congruences", sun_liu_suite),
        ("Dwork-type valuations", dwork_suite),
        ("multiple counts and exponent bounds", counting_suite),
        ("q -> 1 consistency", q_to_one_suite),
        ("command line", cli_suite),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
