use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use conflat_core::kernels::evaluate;
use conflat_core::KernelSpec;
use conflat_harness::config::{from_json, parse_config};
use conflat_harness::converge::convergence_study;
use conflat_harness::error::{HarnessError, Result};
use conflat_harness::runner::run_suite;

#[derive(Parser)]
#[command(name = "conflat", version, about = "Kernel evaluation and verification on conformally flat spin manifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a JSON report.
    Verify {
        /// Suite name; ignored when --config is given.
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-check wall time (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate one kernel and print its coefficients as JSON.
    Eval {
        /// Kernel spec as inline JSON or a path to a JSON file.
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Tabulate a kernel against its truncation radius.
    Converge {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "10,20,40,80")]
        radii: String,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| HarnessError::io(path.display().to_string(), e))
}

fn load_spec(arg: &str) -> Result<KernelSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(&PathBuf::from(arg))?
    };
    from_json(&text)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| HarnessError::Argument(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| HarnessError::io(p.display().to_string(), e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify {
            suite,
            config,
            out,
            timings,
        } => {
            let cfg = match config {
                Some(p) => parse_config(&read(&p)?)?,
                None => parse_config(&serde_json::to_string(&serde_json::json!({
                    "schema_version": 1,
                    "suites": [suite],
                }))
                .expect("json"))?,
            };
            let report = run_suite(&cfg, timings)?;
            write_out(out.as_ref(), &report.to_json())?;
            eprintln!(
                "{}: {} pass, {} fail, {} error, {} reported",
                report.suite, report.summary.pass, report.summary.fail, report.summary.error, report.summary.reported
            );
            Ok(report.passed())
        }
        Cmd::Eval { spec, x, y } => {
            let spec = load_spec(&spec)?;
            let v = evaluate(&spec, &parse_list(&x, "x")?, &parse_list(&y, "y")?)?;
            println!("{}", serde_json::to_string(&v).expect("json"));
            Ok(true)
        }
        Cmd::Converge { spec, x, y, radii, out } => {
            let spec = load_spec(&spec)?;
            let t = convergence_study(&spec, &parse_list(&x, "x")?, &parse_list(&y, "y")?, &parse_list(&radii, "radius")?)?;
            match out {
                Some(p) => {
                    let f = fs::File::create(&p).map_err(|e| HarnessError::io(p.display().to_string(), e))?;
                    t.write_csv(f)?;
                }
                None => t.write_csv(std::io::stdout())?,
            }
            if let Some(o) = t.fitted_order() {
                eprintln!("fitted order {o:.3}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
