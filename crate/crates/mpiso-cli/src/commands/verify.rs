//! `mpiso verify`: run the named invariant suites and print one row per
//! verified statement. Exit 0 only when every row passes.

use clap::Args;
use serde::Serialize;

use mpiso::{all_suites, run_suite, Result, SuiteOutcome};

use crate::report::{emit, seed_echo, OutputFormat};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all"
    #[arg(long, default_value = "all")]
    pub suite: String,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    suite: String,
    seed: String,
    rows: Vec<SuiteOutcome>,
    all_passed: bool,
}

pub fn run(args: &VerifyArgs, seed: u64, output: OutputFormat) -> Result<i32> {
    let rows = if args.suite == "all" {
        all_suites(seed)?
    } else {
        vec![run_suite(&args.suite, seed)?]
    };
    let all_passed = rows.iter().all(|r| r.passed);
    let report = VerifyReport {
        command: "verify",
        suite: args.suite.clone(),
        seed: seed_echo(seed),
        rows,
        all_passed,
    };
    emit(output, &report, || render(&report));
    Ok(if report.all_passed { 0 } else { 1 })
}

fn render(r: &VerifyReport) -> String {
    let mut out = format!("verify --suite {} (seed = {})\n", r.suite, r.seed);
    let width = r.rows.iter().map(|row| row.suite.len()).max().unwrap_or(0);
    for row in &r.rows {
        out.push_str(&format!(
            "  {} {:width$}  {}\n",
            if row.passed { "ok  " } else { "FAIL" },
            row.suite,
            row.detail,
        ));
        out.push_str(&format!("  {:4} {:width$}  {}\n", "", "", row.statement));
    }
    let passed = r.rows.iter().filter(|row| row.passed).count();
    out.push_str(&format!("{passed}/{} suites passed\n", r.rows.len()));
    out
}
