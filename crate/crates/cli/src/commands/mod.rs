pub mod basis;
pub mod decompose;
pub mod simulate;
pub mod sweep;
pub mod verify;

use std::io::Write;

use ges_core::measures::MeasureReport;

use crate::error::Result;
use crate::output::real;
use crate::statefile::AmplitudeRecord;

/// Whether a command's own checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub(crate) fn amplitude_table(w: &mut dyn Write, recs: &[AmplitudeRecord]) -> Result<()> {
    writeln!(w, "  {:<8}{:>26}{:>26}{:>26}", "basis", "re", "im", "|a|^2")?;
    for r in recs {
        let p = r.re * r.re + r.im * r.im;
        writeln!(
            w,
            "  |{}⟩  {:>26}{:>26}{:>26}",
            r.basis_label,
            real(r.re),
            real(r.im),
            real(p)
        )?;
    }
    Ok(())
}

pub(crate) fn measure_table(w: &mut dyn Write, r: &MeasureReport) -> Result<()> {
    writeln!(w, "  pairwise concurrence")?;
    for (k, v) in &r.pairwise_concurrence {
        writeln!(w, "    C({k}) = {v:.12}")?;
    }
    writeln!(w, "  bipartition entropy")?;
    for (k, v) in r.pair_entropy.iter().chain(&r.single_entropy) {
        writeln!(w, "    S({k}) = {v:.12}")?;
    }
    writeln!(w, "  genuine (all C = 0, all S = 1): {}", r.is_genuine)?;
    Ok(())
}
