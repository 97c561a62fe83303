use std::io::Write;

use ges_core::verify::{run_suite, CheckStatus, DiscrepancyLog, SuiteReport, VerifyOptions};
use serde::Serialize;

use super::Outcome;
use crate::args::VerifyArgs;
use crate::error::Result;
use crate::output::{opt_real, real, Format, Output};

#[derive(Debug, Serialize)]
pub struct VerifyDocument<'a> {
    pub report: &'a SuiteReport,
    pub discrepancy_log: &'a DiscrepancyLog,
}

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Discrepancy => "DISC",
    }
}

pub fn run(args: &VerifyArgs, seed: u64, out: &mut Output) -> Result<Outcome> {
    let options = VerifyOptions {
        seed,
        inject_splitter_fault: args.inject_fault,
        ..VerifyOptions::default()
    };
    let (report, log) = run_suite(&options);
    if let Some(path) = &args.discrepancy_log {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, &log)?;
        writeln!(f)?;
    }
    match out.format {
        Format::Json => out.json(&VerifyDocument {
            report: &report,
            discrepancy_log: &log,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.to_owned(),
                        c.name.to_owned(),
                        status(c.status).to_owned(),
                        opt_real(c.measured),
                        real(c.tolerance),
                        c.detail.clone(),
                    ]
                })
                .collect();
            out.csv(&["suite", "check", "status", "measured", "tolerance", "detail"], &rows)?;
        }
        Format::Text => {
            let w = out.writer();
            for c in &report.checks {
                let m = c.measured.map(|m| format!("{m:.3e}")).unwrap_or_else(|| "-".into());
                writeln!(
                    w,
                    "{} {:<48} {:>10} (tol {:.0e})  {}",
                    status(c.status),
                    format!("{}/{}", c.suite, c.name),
                    m,
                    c.tolerance,
                    c.detail
                )?;
            }
            writeln!(
                w,
                "\n{} passed, {} failed, {} discrepancies (seed {})",
                report.passed, report.failed, report.discrepancies, seed
            )?;
            writeln!(w, "\ndiscrepancy log")?;
            for d in &log.entries {
                writeln!(
                    w,
                    "- {}\n    claim:      {}\n    computed:   {}\n    resolution: {}",
                    d.topic, d.claim, d.computed, d.resolution
                )?;
            }
        }
    }
    if !report.all_passed() {
        for c in report.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            log::error!("{}/{} failed: {}", c.suite, c.name, c.detail);
        }
        return Ok(Outcome::VerificationFailed);
    }
    Ok(Outcome::Success)
}
