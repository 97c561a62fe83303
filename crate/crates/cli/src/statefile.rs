//! JSON state files: a list of `{basis_label, re, im}` records.
//!
//! ```json
//! [{"basis_label": "0000", "re": 0.7071067811865476, "im": 0.0},
//!  {"basis_label": "1111", "re": 0.7071067811865476, "im": 0.0}]
//! ```
//!
//! Absent labels have amplitude zero. Extra fields are ignored, so amplitude
//! tables written by `ges simulate --json` can be read back.

use std::collections::BTreeSet;
use std::path::Path;

use ges_core::circuit::atomic_space;
use ges_core::StateVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Allowed `|‖ψ‖² − 1|` for a file read without `--normalize`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub basis_label: String,
    pub re: f64,
    pub im: f64,
}

pub fn parse_state(json: &str, normalize: bool) -> Result<StateVector> {
    let records: Vec<AmplitudeRecord> =
        serde_json::from_str(json).map_err(|e| CliError::Input(format!("malformed state file: {e}")))?;
    let space = atomic_space();
    let mut amps = vec![Complex64::new(0.0, 0.0); space.dim()];
    let mut seen = BTreeSet::new();
    for r in &records {
        let l = &r.basis_label;
        if l.len() != 4 || !l.chars().all(|c| c == '0' || c == '1') {
            return Err(CliError::Input(format!(
                "basis label `{l}` is not four characters of 0/1"
            )));
        }
        if !seen.insert(l.clone()) {
            return Err(CliError::Input(format!("basis label `{l}` appears twice")));
        }
        if !r.re.is_finite() || !r.im.is_finite() {
            return Err(CliError::Input(format!("non-finite amplitude for `{l}`")));
        }
        let idx = usize::from_str_radix(l, 2).expect("validated binary label");
        amps[idx] = Complex64::new(r.re, r.im);
    }
    let state = StateVector::new(space, amps)?;
    let n2 = state.norm_sqr();
    if n2 == 0.0 {
        return Err(CliError::Input("state file describes the zero vector".into()));
    }
    if normalize {
        return Ok(state.normalized()?);
    }
    if (n2 - 1.0).abs() > NORMALIZATION_TOL {
        return Err(CliError::Input(format!(
            "state has squared norm {n2}, not 1 within {NORMALIZATION_TOL:e}; pass --normalize to rescale"
        )));
    }
    Ok(state)
}

pub fn read_state(path: &Path, normalize: bool) -> Result<StateVector> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text, normalize)
}

/// Nonzero amplitudes (modulus above `cutoff`) as records.
pub fn records(state: &StateVector, cutoff: f64) -> Vec<AmplitudeRecord> {
    state
        .support(cutoff)
        .into_iter()
        .map(|(basis_label, a)| AmplitudeRecord {
            basis_label,
            re: a.re,
            im: a.im,
        })
        .collect()
}

/// [`records`] after fixing the global phase (first listed amplitude real
/// and positive) and zeroing components at or below `cutoff`. Used for
/// conditioned states, whose overall phase carries no information.
pub fn display_records(state: &StateVector, cutoff: f64) -> Vec<AmplitudeRecord> {
    let clip = |x: f64| if x.abs() <= cutoff { 0.0 } else { x };
    records(&state.with_canonical_phase(cutoff), cutoff)
        .into_iter()
        .map(|r| AmplitudeRecord {
            re: clip(r.re),
            im: clip(r.im),
            ..r
        })
        .collect()
}
