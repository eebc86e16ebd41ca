//! Report documents and their text and JSON renderings.

use std::fmt::Write as _;

use qdwork_core::padic::{CongruenceInstance, DworkCheck};
use qdwork_core::verifier::{ReportParams, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::config::ScanConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub m: u64,
    pub s: u64,
    pub n: u64,
    pub r: Option<u32>,
}

impl From<ReportParams> for Params {
    fn from(p: ReportParams) -> Self {
        Params { m: p.m, s: p.s, n: p.n, r: p.r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub theorem: String,
    pub params: Params,
    pub modulus_factors: Vec<(u64, u32)>,
    pub passed: bool,
    pub failure_witness: Option<String>,
    pub elapsed_ms: u64,
}

impl From<VerificationReport> for VerificationEntry {
    fn from(r: VerificationReport) -> Self {
        VerificationEntry {
            theorem: r.theorem.name().to_string(),
            params: r.params.into(),
            modulus_factors: r.modulus_factors,
            passed: r.passed,
            failure_witness: r.failure_witness,
            elapsed_ms: r.elapsed_ms,
        }
    }
}

/// A residue comparison modulo `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceEntry {
    /// `mortenson` or `sun-liu`.
    pub check: String,
    pub prime: u64,
    pub variant: Option<u8>,
    pub n: Option<u64>,
    pub x: Option<String>,
    pub exponent: u32,
    pub lhs_residue: u64,
    pub rhs_residue: u64,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl CongruenceEntry {
    pub fn mortenson(variant: u8, c: &CongruenceInstance) -> Self {
        Self::from_instance("mortenson", Some(variant), None, None, c)
    }

    pub fn sun_liu(n: u64, x: String, c: &CongruenceInstance) -> Self {
        Self::from_instance("sun-liu", None, Some(n), Some(x), c)
    }

    fn from_instance(check: &str, variant: Option<u8>, n: Option<u64>, x: Option<String>, c: &CongruenceInstance) -> Self {
        CongruenceEntry {
            check: check.to_string(),
            prime: c.prime,
            variant,
            n,
            x,
            exponent: c.exponent,
            lhs_residue: c.lhs_residue,
            rhs_residue: c.rhs_residue,
            passed: c.passed,
            elapsed_ms: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DworkEntry {
    pub prime: u64,
    pub r: u32,
    pub m: u64,
    pub s: u64,
    pub diff_valuation: Option<i64>,
    pub w_valuation: Option<i64>,
    pub inverse_binomial_valuation: i64,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl DworkEntry {
    pub fn new(prime: u64, r: u32, m: u64, s: u64, d: &DworkCheck) -> Self {
        DworkEntry {
            prime,
            r,
            m,
            s,
            diff_valuation: d.diff_valuation,
            w_valuation: d.w_valuation,
            inverse_binomial_valuation: d.inverse_binomial_valuation,
            passed: d.passed,
            elapsed_ms: 0,
        }
    }
}

/// A grid point whose parameters the theorem does not admit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedEntry {
    pub theorem: String,
    pub params: Params,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entry {
    Verification(VerificationEntry),
    Congruence(CongruenceEntry),
    Dwork(DworkEntry),
    Skipped(SkippedEntry),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
    Skipped,
}

impl Entry {
    pub fn outcome(&self) -> Outcome {
        let passed = match self {
            Entry::Verification(v) => v.passed,
            Entry::Congruence(c) => c.passed,
            Entry::Dwork(d) => d.passed,
            Entry::Skipped(_) => return Outcome::Skipped,
        };
        if passed {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }

    pub fn set_elapsed_ms(&mut self, ms: u64) {
        match self {
            Entry::Verification(v) => v.elapsed_ms = ms,
            Entry::Congruence(c) => c.elapsed_ms = ms,
            Entry::Dwork(d) => d.elapsed_ms = ms,
            Entry::Skipped(_) => {}
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(entries: &[Entry]) -> Summary {
        let mut s = Summary::default();
        for e in entries {
            match e.outcome() {
                Outcome::Passed => s.passed += 1,
                Outcome::Failed => s.failed += 1,
                Outcome::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    /// Echo of the scan configuration; absent for single checks.
    pub config: Option<ScanConfig>,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(config: Option<ScanConfig>, entries: Vec<Entry>) -> Self {
        let summary = Summary::tally(&entries);
        ReportDocument { tool_version: TOOL_VERSION.to_string(), config, entries, summary }
    }

    pub fn single(entry: Entry) -> Self {
        Self::new(None, vec![entry])
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Zeroes every timing field, leaving only the deterministic content.
    pub fn without_timings(mut self) -> Self {
        for e in &mut self.entries {
            e.set_elapsed_ms(0);
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn params_text(p: &Params) -> String {
    let mut out = format!("m={} s={} n={}", p.m, p.s, p.n);
    if let Some(r) = p.r {
        let _ = write!(out, " r={r}");
    }
    out
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn entry_line(e: &Entry) -> String {
    match e {
        Entry::Verification(v) => {
            let factors: Vec<String> = v.modulus_factors.iter().map(|(k, e)| format!("Phi_{k}^{e}")).collect();
            let mut line = format!("{} {} {}", v.theorem, params_text(&v.params), verdict(v.passed));
            if !factors.is_empty() {
                let _ = write!(line, " mod {}", factors.join("*"));
            }
            if let Some(w) = &v.failure_witness {
                let _ = write!(line, ": {w}");
            }
            let _ = write!(line, " ({} ms)", v.elapsed_ms);
            line
        }
        Entry::Congruence(c) => {
            let mut what = format!("{} p={}", c.check, c.prime);
            if let Some(v) = c.variant {
                let _ = write!(what, " variant={v}");
            }
            if let Some(n) = c.n {
                let _ = write!(what, " n={n}");
            }
            if let Some(x) = &c.x {
                let _ = write!(what, " x={x}");
            }
            format!(
                "{what} {} mod {}^{}: {} vs {} ({} ms)",
                verdict(c.passed),
                c.prime,
                c.exponent,
                c.lhs_residue,
                c.rhs_residue,
                c.elapsed_ms
            )
        }
        Entry::Dwork(d) => {
            let show = |v: Option<i64>| v.map_or_else(|| "inf".to_string(), |v| v.to_string());
            format!(
                "dwork p={} r={} m={} s={} {} v(diff)={} v(w)={} v(inverse binomial)={} ({} ms)",
                d.prime,
                d.r,
                d.m,
                d.s,
                verdict(d.passed),
                show(d.diff_valuation),
                show(d.w_valuation),
                d.inverse_binomial_valuation,
                d.elapsed_ms
            )
        }
        Entry::Skipped(s) => format!("{} {} SKIPPED: {}", s.theorem, params_text(&s.params), s.reason),
    }
}

pub fn emit_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(doc).expect("report documents always serialize");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            for e in &doc.entries {
                out.push_str(&entry_line(e));
                out.push('\n');
            }
            let s = doc.summary;
            let _ = writeln!(out, "summary: {} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
            out
        }
    }
}

pub fn parse_report(json: &str) -> serde_json::Result<ReportDocument> {
    serde_json::from_str(json)
}
