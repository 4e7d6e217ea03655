//! Check definitions and the suite runner.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use conflat_core::KernelSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{resolve_seed, SuiteConfig};
use crate::error::Result;
use crate::report::{CheckRecord, Comparison, VerificationReport, Verdict};
use crate::suites;

/// Per-check state. The generator is seeded from the suite seed and the check id,
/// so results do not depend on which other checks run or in what order.
pub struct Ctx {
    pub seed: u64,
    pub rng: ChaCha8Rng,
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub value: f64,
    pub measured: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn new(value: f64) -> Self {
        Outcome {
            value,
            measured: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, v: f64) -> Self {
        self.measured.insert(key.into(), v);
        self
    }

    pub fn insert(&mut self, key: impl Into<String>, v: f64) {
        self.measured.insert(key.into(), v);
    }
}

pub type CheckFn = Box<dyn Fn(&mut Ctx) -> conflat_core::Result<Outcome> + Send + Sync>;

pub struct CheckDef {
    pub id: String,
    pub criterion: u8,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub kernel: Option<KernelSpec>,
    pub run: CheckFn,
}

impl CheckDef {
    pub fn at_most<F>(id: &str, criterion: u8, tolerance: f64, run: F) -> Self
    where
        F: Fn(&mut Ctx) -> conflat_core::Result<Outcome> + Send + Sync + 'static,
    {
        CheckDef {
            id: id.to_string(),
            criterion,
            tolerance,
            comparison: Comparison::AtMost,
            kernel: None,
            run: Box::new(run),
        }
    }

    pub fn reported<F>(id: &str, criterion: u8, expected: f64, run: F) -> Self
    where
        F: Fn(&mut Ctx) -> conflat_core::Result<Outcome> + Send + Sync + 'static,
    {
        CheckDef {
            comparison: Comparison::Reported,
            ..Self::at_most(id, criterion, expected, run)
        }
    }

    pub fn kernel(mut self, spec: KernelSpec) -> Self {
        self.kernel = Some(spec);
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub timings: bool,
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "check panicked".into()
    }
}

pub fn run_check(def: &CheckDef, opts: RunOptions) -> CheckRecord {
    let mut ctx = Ctx {
        seed: opts.seed,
        rng: ChaCha8Rng::seed_from_u64(opts.seed ^ fnv1a(&def.id)),
    };
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| (def.run)(&mut ctx)));
    let runtime_ms = opts.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (value, measured, verdict, error) = match res {
        Ok(Ok(o)) => {
            let verdict = match def.comparison {
                Comparison::Reported => Verdict::Reported,
                Comparison::AtMost if o.value.is_finite() && o.value <= def.tolerance => Verdict::Pass,
                Comparison::AtMost => Verdict::Fail,
            };
            (Some(o.value), o.measured, verdict, None)
        }
        Ok(Err(e)) => (None, BTreeMap::new(), Verdict::Error, Some(e.to_string())),
        Err(p) => (None, BTreeMap::new(), Verdict::Error, Some(panic_message(p))),
    };
    CheckRecord {
        id: def.id.clone(),
        criterion: def.criterion,
        kernel: def.kernel.clone(),
        value,
        tolerance: def.tolerance,
        comparison: def.comparison,
        measured,
        verdict,
        error,
        runtime_ms,
    }
}

pub fn run_checks(suite: &str, defs: &[CheckDef], opts: RunOptions) -> VerificationReport {
    let records = defs.iter().map(|d| run_check(d, opts)).collect();
    VerificationReport::new(suite.to_string(), opts.seed, records)
}

/// Runs every suite named in the config as one report.
pub fn run_suite(cfg: &SuiteConfig, timings: bool) -> Result<VerificationReport> {
    let seed = resolve_seed(cfg)?;
    run_suite_with_seed(cfg, seed, timings)
}

pub fn run_suite_with_seed(cfg: &SuiteConfig, seed: u64, timings: bool) -> Result<VerificationReport> {
    let mut defs = Vec::new();
    for name in &cfg.suites {
        for d in suites::checks_for(name)? {
            if !defs.iter().any(|e: &CheckDef| e.id == d.id) {
                defs.push(d);
            }
        }
    }
    Ok(run_checks(&cfg.suites.join("+"), &defs, RunOptions { seed, timings }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RunOptions {
        RunOptions { seed: 1, timings: false }
    }

    #[test]
    fn crash_is_recorded_and_suite_continues() {
        let defs = vec![
            CheckDef::at_most("b.panics", 1, 1.0, |_| panic!("boom")),
            CheckDef::at_most("a.nan", 1, 1.0, |_| Ok(Outcome::new(f64::NAN))),
            CheckDef::at_most("c.ok", 1, 1.0, |_| Ok(Outcome::new(0.5))),
        ];
        let r = run_checks("t", &defs, opts());
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a.nan", "b.panics", "c.ok"]);
        assert_eq!(r.checks[0].verdict, Verdict::Fail);
        assert_eq!(r.checks[1].verdict, Verdict::Error);
        assert_eq!(r.checks[1].error.as_deref(), Some("boom"));
        assert_eq!(r.checks[2].verdict, Verdict::Pass);
        assert!(r.checks.iter().all(|c| c.runtime_ms.is_none()));
    }

    #[test]
    fn rng_depends_on_id_not_order() {
        use rand::RngExt;
        let mk = |id: &str| CheckDef::at_most(id, 1, 2.0, |ctx| Ok(Outcome::new(ctx.rng.random_range(0.0..1.0))));
        let r1 = run_checks("t", &[mk("x"), mk("y")], opts());
        let r2 = run_checks("t", &[mk("y")], opts());
        assert_eq!(r1.checks[1].value, r2.checks[0].value);
        assert_ne!(r1.checks[0].value, r1.checks[1].value);
    }

    #[test]
    fn default_suite_covers_every_criterion() {
        let defs = suites::checks_for("default").unwrap();
        for c in 1..=13u8 {
            assert!(defs.iter().any(|d| d.criterion == c), "criterion {c}");
        }
        for d in &defs {
            assert!(d.id.starts_with(&format!("c{:02}.", d.criterion)), "{}", d.id);
        }
        let mut ids: Vec<&str> = defs.iter().map(|d| d.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), defs.len());
    }
}
