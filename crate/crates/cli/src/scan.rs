//! Grid scans: expand a configuration into tasks, run them on up to `jobs`
//! threads and collect the entries in parameter order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use qdwork_core::numtheory::is_prime;
use qdwork_core::padic::check_mortenson;
use qdwork_core::verifier::{
    verify_gz_d2, verify_lemma21, verify_param_roots, verify_thm1, verify_thm2, Limits, ParamVariant, Theorem,
    TheoremParams, VerificationReport,
};
use qdwork_core::Error;

use crate::config::ScanConfig;
use crate::report::{CongruenceEntry, Entry, Params, ReportDocument, SkippedEntry, VerificationEntry};

/// One unit of work. The derived order is the emission order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Theorem { theorem: Theorem, params: Params },
    Mortenson { prime: u64, variant: u8 },
}

/// Errors that mark a parameter combination as outside a theorem's hypotheses
/// (or beyond the size guard) rather than as a fault.
pub fn is_invalid(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_)
            | Error::HypothesisViolation(_)
            | Error::NotPIntegral
            | Error::InvalidModulus
            | Error::SizeGuard { .. }
    )
}

pub fn plan(config: &ScanConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    for theorem in config.selected() {
        let mut push = |m, s, n, r| tasks.push(Task::Theorem { theorem, params: Params { m, s, n, r } });
        match theorem {
            Theorem::GzD2 => {
                for &n in &config.n {
                    for &r in &config.r {
                        push(2, 1, n, Some(r));
                    }
                }
            }
            Theorem::Lemma21 => {
                for &m in &config.m {
                    for s in 1..m {
                        for &n in &config.n {
                            push(m, s, n, None);
                        }
                    }
                }
            }
            _ => {
                for &m in &config.m {
                    for s in 1..m {
                        for &n in &config.n {
                            for &r in &config.r {
                                push(m, s, n, Some(r));
                            }
                        }
                    }
                }
            }
        }
    }
    for prime in (5..=config.prime_bound).filter(|&p| is_prime(p)) {
        for variant in 1..=4 {
            tasks.push(Task::Mortenson { prime, variant });
        }
    }
    tasks.sort();
    tasks
}

fn drive(theorem: Theorem, p: Params, limits: &Limits) -> Result<VerificationReport, Error> {
    let full = || TheoremParams::new(p.m, p.s, p.n, p.r.unwrap_or(0));
    match theorem {
        Theorem::Thm1 => verify_thm1(&full(), limits),
        Theorem::Thm2 => verify_thm2(&full(), limits),
        Theorem::Param1Roots => verify_param_roots(ParamVariant::One, &full(), limits),
        Theorem::Param2Roots => verify_param_roots(ParamVariant::Two, &full(), limits),
        Theorem::Lemma21 => verify_lemma21(p.m, p.n, p.s, limits),
        Theorem::GzD2 => verify_gz_d2(p.n, p.r.unwrap_or(0), limits),
    }
}

/// Runs one task. `Err` carries an internal error: a failure that no choice
/// of parameters should be able to provoke.
pub fn run_task(task: Task, limits: &Limits) -> Result<Entry, Error> {
    let start = Instant::now();
    let mut entry = match task {
        Task::Theorem { theorem, params } => match drive(theorem, params, limits) {
            Ok(report) => Entry::Verification(VerificationEntry::from(report)),
            Err(e) if is_invalid(&e) => {
                Entry::Skipped(SkippedEntry { theorem: theorem.name().to_string(), params, reason: e.to_string() })
            }
            Err(e) => return Err(e),
        },
        Task::Mortenson { prime, variant } => {
            Entry::Congruence(CongruenceEntry::mortenson(variant, &check_mortenson(prime, variant)?))
        }
    };
    entry.set_elapsed_ms(start.elapsed().as_millis() as u64);
    Ok(entry)
}

/// Runs every task of the configuration on `config.jobs` worker threads.
/// Entries come back in task order whatever the interleaving.
pub fn run_scan(config: &ScanConfig) -> Result<ReportDocument, Error> {
    let tasks = plan(config);
    let limits = Limits { size_guard: config.size_guard };
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Entry, Error>>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let workers = config.jobs.clamp(1, tasks.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&task) = tasks.get(i) else { break };
                let result = run_task(task, &limits);
                *slots[i].lock().expect("slot lock") = Some(result);
            });
        }
    });
    let entries = slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot lock").expect("every task ran"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReportDocument::new(Some(config.clone()), entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ScanConfig {
        ScanConfig::parse(text).unwrap()
    }

    #[test]
    fn plan_is_sorted_by_theorem_then_parameters() {
        let c = config("[grid]\nm = 2..3\nn = 3\nr = 2\n[theorems]\nthm2 = true\nthm1 = true\n");
        let tasks = plan(&c);
        assert_eq!(tasks.len(), 6);
        let Task::Theorem { theorem, params } = tasks[0] else { panic!() };
        assert_eq!((theorem, params), (Theorem::Thm1, Params { m: 2, s: 1, n: 3, r: Some(2) }));
        let Task::Theorem { theorem, .. } = tasks[5] else { panic!() };
        assert_eq!(theorem, Theorem::Thm2);
    }

    #[test]
    fn small_grid_passes_or_skips() {
        let c = config("[grid]\nm = 2..4\nn = 3, 5\nr = 2\n[theorems]\nthm1 = true\nthm2 = true\n");
        let doc = run_scan(&c).unwrap();
        assert_eq!(doc.summary.failed, 0);
        assert!(doc.summary.passed > 0);
        assert_eq!(doc.summary.passed + doc.summary.skipped, doc.entries.len());
    }

    #[test]
    fn size_guard_skips() {
        let c = config("[grid]\nm = 2\nn = 3\nr = 3\n[theorems]\nthm1 = true\n[run]\nsize_guard = 10\n");
        let doc = run_scan(&c).unwrap();
        assert_eq!(doc.summary.skipped, 1);
    }
}
