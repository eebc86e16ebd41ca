//! Command-line front end for the q-Dwork congruence checker: single checks,
//! configuration-driven grid scans, and text or JSON reports.

pub mod app;
pub mod config;
pub mod report;
pub mod scan;

pub use app::run;
pub use config::{ConfigError, ScanConfig};
pub use report::{emit_report, parse_report, Entry, Format, ReportDocument};
pub use scan::run_scan;
