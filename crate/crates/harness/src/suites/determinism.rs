use crate::config::SuiteConfig;
use crate::runner::{run_suite_with_seed, CheckDef, Outcome};

/// Suites cheap enough to run twice inside a check. The full default suite is
/// compared by the acceptance test.
const REPLAYED: [&str; 4] = ["algebra-axioms", "fundamental-solutions", "transversion", "semidirect"];

pub fn checks() -> Vec<CheckDef> {
    vec![
        // value is the number of report bytes that differ between two runs
        CheckDef::at_most("c13.determinism.replay", 13, 0.0, |ctx| {
            let cfg = SuiteConfig {
                suites: REPLAYED.iter().map(|s| s.to_string()).collect(),
                ..SuiteConfig::for_suite("default")
            };
            let run = || {
                run_suite_with_seed(&cfg, ctx.seed, false)
                    .map(|r| r.to_json())
                    .map_err(|e| conflat_core::Error::InvalidParameter(e.to_string()))
            };
            let (a, b) = (run()?, run()?);
            let diff = a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
            Ok(Outcome::new(diff as f64).with("report_bytes", a.len() as f64))
        }),
    ]
}
