use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use ges_core::circuit::{self, SchemeParams};
use ges_core::detection::{detect, prepare_ges, DetectionOutcome};
use ges_core::measures::{measure_report, MeasureReport};
use ges_core::StateVector;
use serde::Serialize;

use super::{amplitude_table, measure_table, Outcome};
use crate::args::{OutcomeArg, SimulateArgs};
use crate::error::Result;
use crate::output::{real, Format, Output};
use crate::statefile::{display_records, AmplitudeRecord};

#[derive(Debug, Serialize)]
pub struct OutcomeReport {
    pub outcome: &'static str,
    pub probability: f64,
    /// `prime` or `double_prime` for single clicks.
    pub heralded_branch: Option<&'static str>,
    pub state: Option<Vec<AmplitudeRecord>>,
    pub measures: Option<MeasureReport>,
}

#[derive(Debug, Serialize)]
pub struct BranchReport {
    pub outcome: &'static str,
    pub probability: f64,
    pub corrected: bool,
    pub state: Option<Vec<AmplitudeRecord>>,
}

#[derive(Debug, Serialize)]
pub struct DeterministicReport {
    pub total_probability: f64,
    pub branches: Vec<BranchReport>,
    /// The common corrected state, when both branches agree up to a global
    /// phase.
    pub state: Option<Vec<AmplitudeRecord>>,
    pub measures: Option<MeasureReport>,
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub params: SchemeParams,
    pub outcomes: Vec<OutcomeReport>,
    pub deterministic: Option<DeterministicReport>,
}

pub fn outcome_name(o: DetectionOutcome) -> &'static str {
    match o {
        DetectionOutcome::D1ClickD2Null => "d1",
        DetectionOutcome::D2ClickD1Null => "d2",
        DetectionOutcome::NoClick => "none",
        DetectionOutcome::DoubleClick => "double",
    }
}

fn to_outcome(o: OutcomeArg) -> DetectionOutcome {
    match o {
        OutcomeArg::D1 => DetectionOutcome::D1ClickD2Null,
        OutcomeArg::D2 => DetectionOutcome::D2ClickD1Null,
        OutcomeArg::None => DetectionOutcome::NoClick,
        OutcomeArg::Double => DetectionOutcome::DoubleClick,
    }
}

pub fn simulate(args: &SimulateArgs, cutoff: f64) -> Result<SimulateReport> {
    let params = SchemeParams::new(args.phi, args.theta.0, args.eta)?;
    let out = circuit::evolve(&params);
    let wanted: Vec<DetectionOutcome> = match args.outcome {
        Some(o) => vec![to_outcome(o)],
        None => DetectionOutcome::ALL.to_vec(),
    };
    let mut outcomes = Vec::new();
    for o in wanted {
        let d = detect(&out, o, params.eta())?;
        let state = d.state.pure();
        let measures = match (args.measures, state) {
            (true, Some(s)) => Some(measure_report(s)?),
            _ => None,
        };
        outcomes.push(OutcomeReport {
            outcome: outcome_name(o),
            probability: d.probability,
            heralded_branch: o.heralded_branch().map(|b| b.name()),
            state: state.map(|s| display_records(s, cutoff)),
            measures,
        });
    }
    let deterministic = if args.deterministic {
        Some(deterministic(&params, args.measures, cutoff)?)
    } else {
        None
    };
    Ok(SimulateReport {
        params,
        outcomes,
        deterministic,
    })
}

fn deterministic(params: &SchemeParams, with_measures: bool, cutoff: f64) -> Result<DeterministicReport> {
    if (params.phi_reduced() - FRAC_PI_2).abs() > 1e-12 {
        log::warn!("--deterministic away from phi = pi/2: the corrected branches generally differ");
    }
    let prep = prepare_ges(params)?;
    let states: Vec<&StateVector> = prep.branches.iter().filter_map(|b| b.state.as_ref()).collect();
    let common = match states.as_slice() {
        [a, b] if a.equal_up_to_global_phase(b, 1e-12)? => Some(*a),
        [a] => Some(*a),
        _ => None,
    };
    if common.is_none() {
        log::warn!("corrected branches are not the same state; no common state reported");
    }
    let measures = match (with_measures, common) {
        (true, Some(s)) => Some(measure_report(s)?),
        _ => None,
    };
    Ok(DeterministicReport {
        total_probability: prep.total_probability(),
        branches: prep
            .branches
            .iter()
            .map(|b| BranchReport {
                outcome: outcome_name(b.outcome),
                probability: b.probability,
                corrected: b.corrected,
                state: b.state.as_ref().map(|s| display_records(s, cutoff)),
            })
            .collect(),
        state: common.map(|s| display_records(s, cutoff)),
        measures,
    })
}

pub fn run(args: &SimulateArgs, cutoff: f64, out: &mut Output) -> Result<Outcome> {
    let report = simulate(args, cutoff)?;
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            let mut push = |scope: &str, p: f64, state: &Option<Vec<AmplitudeRecord>>| match state {
                Some(recs) if !recs.is_empty() => {
                    for r in recs {
                        rows.push(vec![
                            scope.to_owned(),
                            real(p),
                            r.basis_label.clone(),
                            real(r.re),
                            real(r.im),
                        ]);
                    }
                }
                _ => rows.push(vec![
                    scope.to_owned(),
                    real(p),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
            };
            for o in &report.outcomes {
                push(o.outcome, o.probability, &o.state);
            }
            if let Some(d) = &report.deterministic {
                push("deterministic", d.total_probability, &d.state);
            }
            out.csv(&["outcome", "probability", "basis_label", "re", "im"], &rows)?;
        }
        Format::Text => write_text(out.writer(), &report)?,
    }
    Ok(Outcome::Success)
}

fn write_text(w: &mut dyn Write, r: &SimulateReport) -> Result<()> {
    let p = &r.params;
    writeln!(w, "phi = {}  theta = {:?}  eta = {}", p.phi(), p.thetas(), p.eta())?;
    writeln!(w)?;
    writeln!(w, "{:<8}{:>26}  branch", "outcome", "probability")?;
    for o in &r.outcomes {
        writeln!(
            w,
            "{:<8}{:>26}  {}",
            o.outcome,
            real(o.probability),
            o.heralded_branch.unwrap_or("-")
        )?;
    }
    for o in &r.outcomes {
        if let Some(recs) = &o.state {
            writeln!(w)?;
            writeln!(w, "[{}] conditioned atomic state", o.outcome)?;
            amplitude_table(w, recs)?;
            if let Some(m) = &o.measures {
                measure_table(w, m)?;
            }
        }
    }
    if let Some(d) = &r.deterministic {
        writeln!(w)?;
        writeln!(
            w,
            "deterministic protocol: success probability {}",
            real(d.total_probability)
        )?;
        for b in &d.branches {
            writeln!(
                w,
                "  {:<6} probability {}{}",
                b.outcome,
                real(b.probability),
                if b.corrected { "  (σʸ on q4 applied)" } else { "" }
            )?;
        }
        match &d.state {
            Some(recs) => {
                writeln!(w, "  common state:")?;
                amplitude_table(w, recs)?;
            }
            None => writeln!(w, "  corrected branches differ; no common state")?,
        }
        if let Some(m) = &d.measures {
            measure_table(w, m)?;
        }
    }
    Ok(())
}
