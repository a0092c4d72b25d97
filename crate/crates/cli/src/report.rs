//! Machine-readable verification reports: one record per check, assembled
//! in check-id order so reruns with the same configuration are
//! byte-identical.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA: &str = "report/v1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        params: Value,
        expected: Value,
        computed: Value,
    ) -> CheckRecord {
        let pass = expected == computed;
        CheckRecord { id: id.into(), anchor: anchor.into(), params, expected, computed, pass }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub version: &'static str,
    pub seed: u64,
    pub cap: u64,
    pub input_hash: String,
    /// zero unless timing collection was requested, to keep reports
    /// reproducible byte for byte
    pub wall_time_ms: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn assemble(
        suite: &str,
        seed: u64,
        cap: u64,
        wall_time_ms: u64,
        mut checks: Vec<CheckRecord>,
    ) -> VerificationReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        VerificationReport {
            schema: REPORT_SCHEMA,
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            cap,
            input_hash: input_hash(suite, seed, cap),
            wall_time_ms,
            passed,
            failed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let id_width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(5).max(5);
        let anchor_width = self.checks.iter().map(|c| c.anchor.len()).max().unwrap_or(6).max(6);
        out.push_str(&format!(
            "suite {} (version {}, seed {}, cap {})\n",
            self.suite, self.version, self.seed, self.cap
        ));
        out.push_str(&format!(
            "{:<id_width$}  {:<anchor_width$}  {:<6}  detail\n",
            "check", "anchor", "status"
        ));
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            let detail = if c.pass {
                String::new()
            } else {
                format!("expected {} got {}", c.expected, c.computed)
            };
            out.push_str(&format!(
                "{:<id_width$}  {:<anchor_width$}  {:<6}  {}\n",
                c.id, c.anchor, status, detail
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }

    /// One line per check: id,pass
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,anchor,pass\n");
        for c in &self.checks {
            out.push_str(&format!("{},{},{}\n", c.id, c.anchor, c.pass));
        }
        out
    }
}

pub fn input_hash(suite: &str, seed: u64, cap: u64) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!(
        "suite={suite};seed={seed};cap={cap};version={}",
        env!("CARGO_PKG_VERSION")
    ));
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
