use ges_core::basis::{
    canonical_state, compare_to_reference, decompose, explicit_basis, reference_expansion, CanonicalState,
    PhaseAlignedComparison,
};
use serde::Serialize;

use super::Outcome;
use crate::args::DecomposeArgs;
use crate::error::Result;
use crate::output::{real, Format, Output};
use crate::statefile::read_state;

#[derive(Debug, Serialize)]
pub struct CoefficientRow {
    pub index: String,
    pub re: f64,
    pub im: f64,
    pub abs2: f64,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub input: String,
    pub coefficients: Vec<CoefficientRow>,
    pub weight: f64,
    pub residual: f64,
    /// For named states: agreement with the reference expansion after one
    /// global phase.
    pub reference: Option<PhaseAlignedComparison>,
}

pub fn decompose_input(args: &DecomposeArgs) -> Result<DecomposeReport> {
    let (input, state, named) = match (&args.name, &args.file) {
        (Some(n), _) => {
            let c: CanonicalState = n.parse()?;
            (c.name().to_owned(), canonical_state(c), Some(c))
        }
        (None, Some(p)) => (p.display().to_string(), read_state(p, args.normalize)?, None),
        (None, None) => unreachable!("clap requires a name or --file"),
    };
    let d = decompose(&state, &explicit_basis())?;
    let reference = named.map(|c| compare_to_reference(&d, &reference_expansion(c)));
    if let Some(r) = &reference {
        if r.max_deviation > 1e-12 {
            log::warn!(
                "{input}: coefficients differ from the reference expansion by up to {:.6}",
                r.max_deviation
            );
        }
    }
    Ok(DecomposeReport {
        input,
        coefficients: d
            .coefficients
            .iter()
            .map(|(i, c)| CoefficientRow {
                index: i.to_string(),
                re: c.re,
                im: c.im,
                abs2: c.norm_sqr(),
            })
            .collect(),
        weight: d.weight(),
        residual: d.residual,
        reference,
    })
}

pub fn run(args: &DecomposeArgs, cutoff: f64, out: &mut Output) -> Result<Outcome> {
    let report = decompose_input(args)?;
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .coefficients
                .iter()
                .map(|c| vec![c.index.clone(), real(c.re), real(c.im), real(c.abs2)])
                .collect();
            out.csv(&["index", "re", "im", "abs2"], &rows)?;
        }
        Format::Text => {
            let w = out.writer();
            writeln!(w, "{}", report.input)?;
            writeln!(w, "{:<8}{:>26}{:>26}{:>26}", "index", "re", "im", "|c|^2")?;
            for c in &report.coefficients {
                let (re, im) = (clip(c.re, cutoff), clip(c.im, cutoff));
                writeln!(
                    w,
                    "{:<8}{:>26}{:>26}{:>26}",
                    c.index,
                    real(re),
                    real(im),
                    real(clip(c.abs2, cutoff * cutoff))
                )?;
            }
            writeln!(w, "sum |c|^2 = {}", real(report.weight))?;
            writeln!(w, "residual  = {}", real(report.residual))?;
            if let Some(r) = &report.reference {
                writeln!(w, "reference expansion deviation = {}", real(r.max_deviation))?;
            }
        }
    }
    Ok(Outcome::Success)
}

fn clip(x: f64, cutoff: f64) -> f64 {
    if x.abs() <= cutoff {
        0.0
    } else {
        x
    }
}
