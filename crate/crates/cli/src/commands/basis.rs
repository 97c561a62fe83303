use ges_core::basis::{compare_bases, explicit_basis, generate_basis, ges_seed, verify_representation, GesIndex};
use serde::Serialize;

use super::{amplitude_table, Outcome};
use crate::args::BasisArgs;
use crate::error::{CliError, Result};
use crate::output::{real, Format, Output};
use crate::statefile::{records, AmplitudeRecord};

#[derive(Debug, Serialize)]
pub struct ListedState {
    pub index: String,
    pub amplitudes: Vec<AmplitudeRecord>,
}

pub fn run(args: &BasisArgs, cutoff: f64, out: &mut Output) -> Result<Outcome> {
    let list = args.list || !(args.verify || args.compare_generated);
    if [list, args.verify, args.compare_generated]
        .iter()
        .filter(|x| **x)
        .count()
        > 1
        && out.format != Format::Text
    {
        return Err(CliError::Usage(
            "structured output takes one of --list, --verify, --compare-generated at a time".into(),
        ));
    }
    let mut outcome = Outcome::Success;
    if list {
        list_states(args, cutoff, out)?;
    }
    if args.verify {
        outcome = verify(out)?;
    }
    if args.compare_generated {
        compare(cutoff, out)?;
    }
    Ok(outcome)
}

fn list_states(args: &BasisArgs, cutoff: f64, out: &mut Output) -> Result<()> {
    let basis = explicit_basis();
    let only = args.index.as_deref().map(str::parse::<GesIndex>).transpose()?;
    let listed: Vec<ListedState> = basis
        .iter()
        .filter(|(i, _)| only.is_none_or(|o| o == *i))
        .map(|(i, s)| ListedState {
            index: i.to_string(),
            amplitudes: records(s, cutoff),
        })
        .collect();
    match out.format {
        Format::Json => out.json(&listed)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = listed
                .iter()
                .flat_map(|l| {
                    l.amplitudes
                        .iter()
                        .map(|r| vec![l.index.clone(), r.basis_label.clone(), real(r.re), real(r.im)])
                })
                .collect();
            out.csv(&["index", "basis_label", "re", "im"], &rows)?;
        }
        Format::Text => {
            let w = out.writer();
            for l in &listed {
                writeln!(w, "φ[{}]", l.index)?;
                amplitude_table(w, &l.amplitudes)?;
            }
        }
    }
    Ok(())
}

fn verify(out: &mut Output) -> Result<Outcome> {
    let report = verify_representation(&explicit_basis())?;
    let ok = report.is_orthonormal() && report.is_complete() && report.genuine_count() == 16;
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .states
                .iter()
                .map(|s| {
                    vec![
                        s.index.to_string(),
                        real(s.report.max_concurrence()),
                        real(s.report.max_entropy_deviation_from_one()),
                        s.report.is_genuine.to_string(),
                    ]
                })
                .collect();
            out.csv(&["index", "max_concurrence", "max_entropy_deviation", "genuine"], &rows)?;
        }
        Format::Text => {
            let w = out.writer();
            writeln!(
                w,
                "max orthonormality deviation  {}",
                real(report.max_orthonormality_deviation)
            )?;
            writeln!(
                w,
                "max completeness deviation    {}",
                real(report.max_completeness_deviation)
            )?;
            writeln!(w, "{:<8}{:>26}{:>26}  genuine", "index", "max C", "max |S - 1|")?;
            for s in &report.states {
                writeln!(
                    w,
                    "{:<8}{:>26}{:>26}  {}",
                    s.index.to_string(),
                    real(s.report.max_concurrence()),
                    real(s.report.max_entropy_deviation_from_one()),
                    s.report.is_genuine
                )?;
            }
            writeln!(w, "{}/16 genuine", report.genuine_count())?;
        }
    }
    if !ok {
        log::error!("basis verification failed");
        return Ok(Outcome::VerificationFailed);
    }
    Ok(Outcome::Success)
}

fn compare(tol: f64, out: &mut Output) -> Result<()> {
    let explicit = explicit_basis();
    let generated = generate_basis(&ges_seed())?;
    // A zero display cutoff would make the comparison exact; keep a floor.
    let agreement = compare_bases(&explicit, &generated, tol.max(1e-12))?;
    match out.format {
        Format::Json => out.json(&agreement)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = agreement
                .iter()
                .map(|a| {
                    vec![
                        a.index.to_string(),
                        real(a.overlap),
                        real(a.phase.re),
                        real(a.phase.im),
                        a.equal_up_to_global_phase.to_string(),
                        a.identical.to_string(),
                    ]
                })
                .collect();
            out.csv(
                &[
                    "index",
                    "overlap",
                    "phase_re",
                    "phase_im",
                    "equal_up_to_global_phase",
                    "identical",
                ],
                &rows,
            )?;
        }
        Format::Text => {
            let w = out.writer();
            writeln!(w, "generated = phase · tabulated")?;
            writeln!(
                w,
                "{:<8}{:>12}{:>12}{:>12}  status",
                "index", "overlap", "phase re", "phase im"
            )?;
            for a in &agreement {
                let status = match (a.identical, a.equal_up_to_global_phase) {
                    (true, _) => "identical",
                    (false, true) => "match up to phase",
                    _ => "mismatch",
                };
                writeln!(
                    w,
                    "{:<8}{:>12.9}{:>12.6}{:>12.6}  {status}",
                    a.index.to_string(),
                    a.overlap,
                    a.phase.re,
                    a.phase.im
                )?;
            }
        }
    }
    Ok(())
}
