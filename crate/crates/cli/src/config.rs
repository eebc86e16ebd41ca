//! Scan configuration files.
//!
//! Line-oriented `key = value` pairs grouped under `[section]` headers. `#`
//! starts a comment. Integer lists are comma separated, and any item may be
//! an inclusive range `lo..hi`. Booleans are `true` or `false`.
//!
//! ```text
//! [grid]
//! m = 2..6
//! s = all
//! n = 3, 5, 7, 9
//! r = 2..3
//!
//! [theorems]
//! thm1 = true
//! thm2 = true
//!
//! [padic]
//! prime_bound = 31
//!
//! [run]
//! jobs = 4
//! size_guard = 200
//! ```

use std::collections::BTreeSet;
use std::fmt;

use qdwork_core::verifier::{Theorem, DEFAULT_SIZE_GUARD};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub m: Vec<u64>,
    /// Only `"all"` (every `0 < s < m`) is accepted.
    pub s_rule: String,
    pub n: Vec<u64>,
    pub r: Vec<u32>,
    /// Selected theorem names, in canonical order.
    pub theorems: Vec<String>,
    /// Mortenson checks run for every prime `5 <= p <= prime_bound`; 0 disables them.
    pub prime_bound: u64,
    pub jobs: usize,
    pub size_guard: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            m: Vec::new(),
            s_rule: String::from("all"),
            n: Vec::new(),
            r: Vec::new(),
            theorems: Vec::new(),
            prime_bound: 0,
            jobs: 1,
            size_guard: DEFAULT_SIZE_GUARD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line number, or 0 for whole-file problems.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line, message: message.into() })
}

fn parse_int<T: std::str::FromStr>(line: usize, text: &str) -> Result<T, ConfigError> {
    match text.trim().parse() {
        Ok(v) => Ok(v),
        Err(_) => fail(line, format!("expected an integer, got {:?}", text.trim())),
    }
}

fn parse_list<T>(line: usize, text: &str) -> Result<Vec<T>, ConfigError>
where
    T: std::str::FromStr + Copy + Ord + Into<u64> + TryFrom<u64>,
{
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return fail(line, "empty list");
    }
    for item in text.split(',') {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: T = parse_int(line, lo)?;
            let hi: T = parse_int(line, hi)?;
            if lo > hi {
                return fail(line, format!("empty range {item}"));
            }
            for v in lo.into()..=hi.into() {
                out.push(T::try_from(v).ok().expect("inside a range of T"));
            }
        } else {
            out.push(parse_int(line, item)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_bool(line: usize, text: &str) -> Result<bool, ConfigError> {
    match text.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => fail(line, format!("expected true or false, got {other:?}")),
    }
}

impl ScanConfig {
    pub fn parse(text: &str) -> Result<ScanConfig, ConfigError> {
        let mut config = ScanConfig::default();
        let mut selected = BTreeSet::new();
        let mut section: Option<String> = None;
        let mut seen = BTreeSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    return fail(line, "unterminated section header");
                };
                let name = name.trim();
                if !["grid", "theorems", "padic", "run"].contains(&name) {
                    return fail(line, format!("unknown section [{name}]"));
                }
                section = Some(name.to_string());
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return fail(line, format!("expected key = value, got {body:?}"));
            };
            let key = key.trim();
            let Some(sec) = section.as_deref() else {
                return fail(line, format!("key {key:?} outside any section"));
            };
            if !seen.insert(format!("{sec}.{key}")) {
                return fail(line, format!("duplicate key {key:?} in [{sec}]"));
            }
            match (sec, key) {
                ("grid", "m") => config.m = parse_list(line, value)?,
                ("grid", "n") => config.n = parse_list(line, value)?,
                ("grid", "r") => config.r = parse_list(line, value)?,
                ("grid", "s") => {
                    if value.trim() != "all" {
                        return fail(line, "s only accepts \"all\"");
                    }
                }
                ("theorems", name) => {
                    let Some(theorem) = Theorem::from_name(name) else {
                        return fail(line, format!("unknown theorem {name:?}"));
                    };
                    if parse_bool(line, value)? {
                        selected.insert(theorem);
                    }
                }
                ("padic", "prime_bound") => config.prime_bound = parse_int(line, value)?,
                ("run", "jobs") => config.jobs = parse_int(line, value)?,
                ("run", "size_guard") => config.size_guard = parse_int(line, value)?,
                _ => return fail(line, format!("unknown key {key:?} in [{sec}]")),
            }
        }

        config.theorems = selected.iter().map(|t| t.name().to_string()).collect();
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.jobs == 0 {
            return fail(0, "jobs must be at least 1");
        }
        if self.theorems.is_empty() && self.prime_bound == 0 {
            return fail(0, "nothing selected: enable a theorem or set a prime_bound");
        }
        if !self.theorems.is_empty() {
            for (name, empty) in [("m", self.m.is_empty()), ("n", self.n.is_empty()), ("r", self.r.is_empty())] {
                if empty {
                    return fail(0, format!("grid list {name} is missing or empty"));
                }
            }
        }
        Ok(())
    }

    pub fn selected(&self) -> Vec<Theorem> {
        self.theorems.iter().filter_map(|t| Theorem::from_name(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let text = "# grid\n[grid]\nm = 2..4\ns = all\nn = 3, 5\nr = 2\n\n[theorems]\nthm1 = true\nthm2 = true # both\nlemma21 = false\n\n[run]\njobs = 4\n";
        let config = ScanConfig::parse(text).unwrap();
        assert_eq!(config.m, [2, 3, 4]);
        assert_eq!(config.n, [3, 5]);
        assert_eq!(config.r, [2]);
        assert_eq!(config.theorems, ["thm1", "thm2"]);
        assert_eq!(config.jobs, 4);
        assert_eq!(config.size_guard, DEFAULT_SIZE_GUARD);
    }

    #[test]
    fn rejects_bad_files() {
        let base = "[theorems]\nthm1 = true\n[grid]\nm = 2\nr = 2\n";
        let err = ScanConfig::parse(&format!("{base}n =\n")).unwrap_err();
        assert_eq!(err, ConfigError { line: 6, message: "empty list".into() });
        assert!(ScanConfig::parse(base).unwrap_err().message.contains("n is missing"));
        assert!(ScanConfig::parse(&format!("{base}n = 5..3\n")).is_err());
        assert!(ScanConfig::parse(&format!("{base}n = 3\nn = 5\n")).is_err());
        assert!(ScanConfig::parse(&format!("{base}n = 3\n[run]\njobs = 0\n")).is_err());
        assert!(ScanConfig::parse(&format!("{base}n = x\n")).is_err());
        assert!(ScanConfig::parse("m = 2\n").is_err());
        assert!(ScanConfig::parse("[grid]\nm = 2\n").unwrap_err().message.contains("nothing selected"));
        assert!(ScanConfig::parse("[theorems]\nthm9 = true\n").is_err());
        assert!(ScanConfig::parse("[theorems]\nthm1 = yes\n").is_err());
        assert!(ScanConfig::parse("[extra]\n").is_err());
        assert!(ScanConfig::parse("[grid]\ns = 1\n").is_err());
    }

    #[test]
    fn padic_only() {
        let config = ScanConfig::parse("[padic]\nprime_bound = 13\n").unwrap();
        assert!(config.theorems.is_empty());
        assert_eq!(config.prime_bound, 13);
    }
}
