//! Photodetection at the interferometer output and heralded GES preparation.
//!
//! Detector `D1` watches the upper mode and `D2` the lower mode. Each
//! detector of quantum efficiency `η` is described by the POVM
//! `Π₀(η) = Σ_n (1−η)^n |n⟩⟨n|`, `Π₁(η) = I − Π₀(η)`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::circuit::{self, Branch, SchemeParams};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::STRUCTURAL_TOL;
use crate::operator::Operator;
use crate::state::StateVector;

/// Outcome probabilities below this are treated as "did not happen".
pub const VANISHING_PROBABILITY: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionOutcome {
    D1ClickD2Null,
    D2ClickD1Null,
    NoClick,
    DoubleClick,
}

impl DetectionOutcome {
    pub const ALL: [DetectionOutcome; 4] = [
        DetectionOutcome::D1ClickD2Null,
        DetectionOutcome::D2ClickD1Null,
        DetectionOutcome::NoClick,
        DetectionOutcome::DoubleClick,
    ];

    /// Whether `(D1, D2)` click.
    pub fn clicks(self) -> (bool, bool) {
        match self {
            DetectionOutcome::D1ClickD2Null => (true, false),
            DetectionOutcome::D2ClickD1Null => (false, true),
            DetectionOutcome::NoClick => (false, false),
            DetectionOutcome::DoubleClick => (true, true),
        }
    }

    /// The atomic branch a single click heralds.
    pub fn heralded_branch(self) -> Option<Branch> {
        match self {
            DetectionOutcome::D1ClickD2Null => Some(Branch::DoublePrime),
            DetectionOutcome::D2ClickD1Null => Some(Branch::Prime),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DetectionOutcome::D1ClickD2Null => "d1_click_d2_null",
            DetectionOutcome::D2ClickD1Null => "d2_click_d1_null",
            DetectionOutcome::NoClick => "no_click",
            DetectionOutcome::DoubleClick => "double_click",
        }
    }
}

/// Single-detector POVM weights for efficiency `η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorPovm {
    eta: f64,
}

impl DetectorPovm {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!(
                "detector efficiency {eta} outside [0, 1]"
            )));
        }
        Ok(Self { eta })
    }

    /// `⟨n|Π₀(η)|n⟩ = (1−η)^n`.
    pub fn null_weight(&self, photons: usize) -> f64 {
        (1.0 - self.eta).powi(photons as i32)
    }

    /// `⟨n|Π₁(η)|n⟩ = 1 − (1−η)^n`.
    pub fn click_weight(&self, photons: usize) -> f64 {
        1.0 - self.null_weight(photons)
    }

    pub fn weight(&self, click: bool, photons: usize) -> f64 {
        if click {
            self.click_weight(photons)
        } else {
            self.null_weight(photons)
        }
    }
}

/// Atomic state conditioned on a detection outcome.
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionalState {
    /// Exactly one photonic component contributes.
    Pure(StateVector),
    /// Several photonic components contribute incoherently (e.g. no click
    /// with `η < 1`).
    Mixed(DensityMatrix),
    /// The outcome has probability below [`VANISHING_PROBABILITY`].
    Vanishing,
}

impl ConditionalState {
    pub fn pure(&self) -> Option<&StateVector> {
        match self {
            ConditionalState::Pure(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_vanishing(&self) -> bool {
        matches!(self, ConditionalState::Vanishing)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Detection {
    pub outcome: DetectionOutcome,
    pub probability: f64,
    pub state: ConditionalState,
}

/// Photonic weight outside the one-photon sector (`|00⟩` and `|11⟩`).
pub fn one_photon_leakage(state: &StateVector) -> Result<f64> {
    let vacuum = circuit::photonic_component(state, 0, 0)?.norm_sqr();
    let double = circuit::photonic_component(state, 1, 1)?.norm_sqr();
    Ok(vacuum + double)
}

fn components(state: &StateVector) -> Result<Vec<((usize, usize), StateVector)>> {
    [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .map(|(u, l)| Ok(((u, l), circuit::photonic_component(state, u, l)?)))
        .collect()
}

fn check_input(state: &StateVector) -> Result<()> {
    if state.space() != &circuit::full_space() {
        return Err(Error::SpaceMismatch);
    }
    state.require_normalized()?;
    let leak = one_photon_leakage(state)?;
    if leak > STRUCTURAL_TOL {
        return Err(Error::OutsideOnePhotonSector(leak));
    }
    Ok(())
}

/// Probability of `outcome` and the conditioned atomic state.
pub fn detect(state: &StateVector, outcome: DetectionOutcome, eta: f64) -> Result<Detection> {
    check_input(state)?;
    let povm = DetectorPovm::new(eta)?;
    let (click_d1, click_d2) = outcome.clicks();
    let mut contributions = Vec::new();
    let mut probability = 0.0;
    for ((n_u, n_l), atoms) in components(state)? {
        let w = povm.weight(click_d1, n_u) * povm.weight(click_d2, n_l);
        let p = w * atoms.norm_sqr();
        if p > 0.0 {
            probability += p;
            contributions.push((p, atoms));
        }
    }
    let state = if probability < VANISHING_PROBABILITY {
        ConditionalState::Vanishing
    } else {
        contributions.retain(|(p, _)| *p / probability > VANISHING_PROBABILITY);
        if contributions.len() == 1 {
            ConditionalState::Pure(contributions[0].1.normalized()?)
        } else {
            let terms = contributions
                .iter()
                .map(|(p, s)| Ok((*p / probability, s.normalized()?)))
                .collect::<Result<Vec<_>>>()?;
            ConditionalState::Mixed(DensityMatrix::mixture(&terms)?)
        }
    };
    Ok(Detection {
        outcome,
        probability,
        state,
    })
}

/// Probabilities of all four outcomes, in [`DetectionOutcome::ALL`] order.
pub fn outcome_probabilities(state: &StateVector, eta: f64) -> Result<[(DetectionOutcome, f64); 4]> {
    let mut out = [(DetectionOutcome::NoClick, 0.0); 4];
    for (slot, o) in out.iter_mut().zip(DetectionOutcome::ALL) {
        *slot = (o, detect(state, o, eta)?.probability);
    }
    Ok(out)
}

/// One heralded branch of the deterministic preparation.
#[derive(Clone, Debug, PartialEq)]
pub struct HeraldedGes {
    pub outcome: DetectionOutcome,
    pub probability: f64,
    /// Atomic state straight after the click.
    pub raw_state: Option<StateVector>,
    /// State after the `σ^y` correction on qubit 4 (identity for `D2`).
    pub state: Option<StateVector>,
    pub corrected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GesPreparation {
    pub params: SchemeParams,
    pub branches: [HeraldedGes; 2],
}

impl GesPreparation {
    /// Sum of both click-branch probabilities.
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    pub fn branch(&self, outcome: DetectionOutcome) -> Option<&HeraldedGes> {
        self.branches.iter().find(|b| b.outcome == outcome)
    }

    /// Picks the branch a detector run would report for a uniform draw
    /// `u ∈ [0, 1)`; `None` when neither detector clicks.
    pub fn sample(&self, u: f64) -> Option<&HeraldedGes> {
        let mut acc = 0.0;
        for b in &self.branches {
            acc += b.probability;
            if u < acc {
                return Some(b);
            }
        }
        None
    }
}

/// `σ^y` on qubit 4 of the atomic register.
pub fn sigma_y_on_fourth() -> Operator {
    Operator::pauli("q4", 2)
        .and_then(|y| y.embed(&["q4"], &circuit::atomic_space()))
        .expect("static labels")
}

/// Runs the circuit, conditions on each single-click outcome and applies the
/// `σ^y₄` correction to the `D1` branch so both branches carry the `χ′`
/// family state.
pub fn prepare_ges(params: &SchemeParams) -> Result<GesPreparation> {
    if (params.phi_reduced() - FRAC_PI_2).abs() > 1e-12 {
        log::warn!(
            "preparing GES at phi = {} (expected pi/2); branches will not be genuine entangled states",
            params.phi()
        );
    }
    let out = circuit::evolve(params);
    let y4 = sigma_y_on_fourth();
    let herald = |outcome: DetectionOutcome| -> Result<HeraldedGes> {
        let det = detect(&out, outcome, params.eta())?;
        let raw = det.state.pure().cloned();
        let corrected = outcome == DetectionOutcome::D1ClickD2Null;
        let state = match (&raw, corrected) {
            (Some(s), true) => Some(y4.apply(s)?),
            (Some(s), false) => Some(s.clone()),
            (None, _) => None,
        };
        Ok(HeraldedGes {
            outcome,
            probability: det.probability,
            raw_state: raw,
            state,
            corrected,
        })
    };
    Ok(GesPreparation {
        params: *params,
        branches: [
            herald(DetectionOutcome::D2ClickD1Null)?,
            herald(DetectionOutcome::D1ClickD2Null)?,
        ],
    })
}
