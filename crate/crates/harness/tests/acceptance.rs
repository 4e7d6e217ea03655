//! One line per acceptance criterion, from two runs of the default suite.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::thread;

use conflat_harness::config::{SuiteConfig, DEFAULT_SEED};
use conflat_harness::report::Verdict;
use conflat_harness::run_suite_with_seed;

fn main() -> ExitCode {
    let cfg = SuiteConfig::for_suite("default");
    let (a, b) = thread::scope(|s| {
        let ha = s.spawn(|| run_suite_with_seed(&cfg, DEFAULT_SEED, false).expect("default suite runs"));
        let hb = s.spawn(|| run_suite_with_seed(&cfg, DEFAULT_SEED, false).expect("default suite runs"));
        (ha.join().expect("first run"), hb.join().expect("second run"))
    });
    let verdicts = a.criterion_verdicts();
    let identical = a.to_json() == b.to_json();

    let mut failed = Vec::new();
    for c in 1..=13u8 {
        let mut ok = verdicts.get(&c) == Some(&Verdict::Pass);
        if c == 13 {
            ok &= identical;
        }
        let ids: Vec<&str> = a.checks.iter().filter(|r| r.criterion == c).map(|r| r.id.as_str()).collect();
        println!("criterion {c:2}: {}  [{}]", if ok { "PASS" } else { "FAIL" }, ids.join(", "));
        for r in a.checks.iter().filter(|r| r.criterion == c) {
            println!(
                "    {:<45} {:>12} {:?} tol {:e}",
                r.id,
                r.value.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into()),
                r.verdict,
                r.tolerance
            );
        }
        if !ok {
            failed.push(c);
        }
    }
    println!("reports byte-identical: {identical}");
    if failed.is_empty() {
        println!("acceptance: all 13 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
