use qdwork_core::verifier::{verify_thm1, verify_thm2, Limits, TheoremParams};
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    for (m, s, n, r) in [(6, 1, 7, 2), (2, 1, 9, 2), (2, 1, 3, 3), (4, 1, 5, 2)] {
        let t0 = Instant::now();
        let report = verify_thm1(&TheoremParams::new(m, s, n, r), &limits).unwrap();
        println!("thm1 {m} {s} {n} {r}: {} in {:?}", report.passed, t0.elapsed());
    }
    for (m, s, n, r) in [(4, 1, 3, 3), (6, 1, 5, 2), (3, 2, 5, 2)] {
        let t0 = Instant::now();
        let report = verify_thm2(&TheoremParams::new(m, s, n, r), &limits).unwrap();
        println!("thm2 {m} {s} {n} {r}: {} in {:?}", report.passed, t0.elapsed());
    }
}
