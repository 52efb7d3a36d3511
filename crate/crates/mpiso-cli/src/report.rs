//! Report assembly. Every command produces one report value that is
//! rendered either as stable plain text or as JSON; identical inputs,
//! flags and seed must yield byte-identical output in both modes, so all
//! floats go through the same fixed formatter in text mode and through
//! serde_json (shortest round-trip) in JSON mode.

use clap::ValueEnum;
use serde::Serialize;

use mpiso::calculus::Verdict;
use mpiso::IsometryReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

pub fn emit<T: Serialize>(format: OutputFormat, report: &T, text: impl FnOnce() -> String) {
    match format {
        OutputFormat::Json => {
            let mut doc = serde_json::to_string_pretty(report).expect("report serializes");
            doc.push('\n');
            print!("{doc}");
        }
        OutputFormat::Text => print!("{}", text()),
    }
}

pub fn fnum(v: f64) -> String {
    format!("{v:.6e}")
}

pub fn verdict_word(r: &IsometryReport) -> &'static str {
    match r.verdict {
        Verdict::Accepted => "accepted",
        Verdict::Rejected => "rejected",
    }
}

pub fn seed_echo(seed: u64) -> String {
    format!("{seed:#x}")
}

/// One line per order verdict: order, exponents, verdict, residual, and
/// the witness defect when the order was rejected.
pub fn order_line(r: &IsometryReport) -> String {
    let mut line = format!(
        "  m={} p={} q={}: {} (residual {}",
        r.m,
        r.p,
        r.q,
        verdict_word(r),
        fnum(r.max_relative_residual)
    );
    if let Some(g) = r.gram_residual {
        line.push_str(&format!(", gram {}", fnum(g)));
    }
    line.push(')');
    if let Some(w) = &r.witness {
        line.push_str(&format!(
            " witness residual {} defect {}",
            fnum(w.residual),
            fnum(w.defect)
        ));
    }
    line.push('\n');
    line
}
