//! Verification report schema.

use std::collections::BTreeMap;

use conflat_core::kernels::{Family, HopfMode, KernelSpec, TruncationPolicy};
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check crashed or its preconditions failed.
    Error,
    /// Informational measurement with no pass/fail threshold.
    Reported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass when `value <= tolerance`.
    AtMost,
    /// Recorded only; the tolerance is the expected magnitude.
    Reported,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub criterion: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSpec>,
    pub value: Option<f64>,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub measured: BTreeMap<String, f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub core_version: &'static str,
    pub max_dim: usize,
    pub truncation_defaults: BTreeMap<String, usize>,
    pub hopf_mode_default: HopfMode,
}

impl Environment {
    pub fn current() -> Self {
        let mut t = BTreeMap::new();
        for k in 1..=4 {
            let name = if k == 4 { "lattice_k4_plus".to_string() } else { format!("lattice_k{k}") };
            t.insert(name, TruncationPolicy::default_for(Family::Cot, k).radius);
        }
        t.insert("hopf_dyadic".into(), TruncationPolicy::default_for(Family::Hopf, 0).radius);
        Environment {
            core_version: env!("CARGO_PKG_VERSION"),
            max_dim: conflat_core::clifford::MAX_DIM,
            truncation_defaults: t,
            hopf_mode_default: HopfMode::default(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub reported: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub environment: Environment,
    pub summary: Summary,
    pub verdict: Verdict,
    /// Sorted by id.
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(suite: String, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Error => summary.error += 1,
                Verdict::Reported => summary.reported += 1,
            }
        }
        let verdict = if summary.fail + summary.error == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            suite,
            seed,
            environment: Environment::current(),
            summary,
            verdict,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aggregate verdict per acceptance criterion; reported-only checks do not count.
    pub fn criterion_verdicts(&self) -> BTreeMap<u8, Verdict> {
        let mut out: BTreeMap<u8, Verdict> = BTreeMap::new();
        for c in &self.checks {
            let e = out.entry(c.criterion).or_insert(Verdict::Pass);
            if matches!(c.verdict, Verdict::Fail | Verdict::Error) {
                *e = Verdict::Fail;
            }
        }
        out
    }
}
