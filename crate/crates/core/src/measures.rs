//! Entanglement measures for the four-qubit register.
//!
//! Numerical measures (Wootters concurrence, von Neumann entropy of reduced
//! states) are computed from state vectors. Closed-form expressions for the
//! `φ = π/2` heralded states are provided alongside as comparators. By
//! brute-force calibration the concurrence formula describes the pair
//! `(q3, q4)` and the entropy formula the cut `{q1,q2}|{q3,q4}`; see
//! [`CALIBRATED_PAIR`] and [`CALIBRATED_CUT`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::circuit::{Branch, QUBITS};
use crate::density::{reduced_state, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, SPECTRAL_TOL};
use crate::state::StateVector;

/// Eigenvalues of `ρ` below this are dropped before the concurrence
/// combination; they are indistinguishable from rounding noise.
const RANK_CUTOFF: f64 = 1e-14;

/// Qubit pair whose concurrence the `λ±` closed form reproduces.
pub const CALIBRATED_PAIR: (&str, &str) = ("q3", "q4");

/// Side A of the 2-2 cut whose entropy the `δ±` closed form reproduces.
pub const CALIBRATED_CUT: [&str; 2] = ["q1", "q2"];

/// Threshold for the "C = 0, S = 1" genuineness signature.
pub const GENUINE_TOL: f64 = 1e-10;

/// Wootters concurrence of a two-qubit density matrix.
///
/// The square roots `√μ_k` of the eigenvalues of `ρ (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`
/// are obtained as singular values of `τ = Wᵀ (σʸ⊗σʸ) W` where
/// `ρ = W W†` is the spectral factorization. This gives the same numbers
/// without square-rooting eigenvalues that are zero up to rounding.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.space().dims() != [2, 2] {
        return Err(Error::InvalidDensity("concurrence needs a two-qubit state".into()));
    }
    validate_density(rho)?;
    let eig = rho.eigen()?;
    if let Some(&min) = eig.values.last() {
        if min < -SPECTRAL_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
    }
    let kept: Vec<usize> = (0..4).filter(|&k| eig.values[k] > RANK_CUTOFF).collect();
    if kept.is_empty() {
        return Err(Error::InvalidDensity("zero matrix".into()));
    }
    let w = CMatrix::from_fn(4, kept.len(), |r, j| {
        eig.vectors[(r, kept[j])] * eig.values[kept[j]].sqrt()
    });
    let yy = linalg::kron(&linalg::pauli(2), &linalg::pauli(2));
    let tau = w.transpose() * yy * &w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv.resize(4, 0.0);
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

fn validate_density(rho: &DensityMatrix) -> Result<()> {
    let herm = linalg::hermiticity_deviation(rho.matrix());
    if herm > linalg::STRUCTURAL_TOL {
        return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > linalg::STRUCTURAL_TOL || tr.im.abs() > linalg::STRUCTURAL_TOL {
        return Err(Error::InvalidDensity(format!("trace is {tr}")));
    }
    Ok(())
}

/// `−Σ p log₂ p` over the spectrum, with `0·log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    validate_density(rho)?;
    let values = rho.eigenvalues()?;
    if let Some(&min) = values.last() {
        if min < -SPECTRAL_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
    }
    Ok(values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0))
}

/// `λ±` of the closed-form concurrence (`+` for `χ′`, `−` for `χ″`).
pub fn lambda_closed_form(thetas: [f64; 4], branch: Branch) -> Result<f64> {
    let c2 = thetas.map(|t| (2.0 * t).cos());
    let s2 = thetas.map(|t| (2.0 * t).sin());
    let num = (c2[0] * c2[1] * s2[2] * s2[3]).abs();
    let den = closed_form_denominator(thetas, branch)?;
    Ok(num / den)
}

fn closed_form_denominator(thetas: [f64; 4], branch: Branch) -> Result<f64> {
    let prod = crate::circuit::cos2_product(thetas);
    let den = match branch {
        Branch::Prime => 1.0 + prod,
        Branch::DoublePrime => 1.0 - prod,
    };
    if den.abs() < 1e-14 {
        return Err(Error::DegenerateClosedForm(format!(
            "branch {} has vanishing weight at thetas {thetas:?}",
            branch.name()
        )));
    }
    Ok(den)
}

/// `C = max(0, λ±)`.
pub fn concurrence_closed_form(thetas: [f64; 4], branch: Branch) -> Result<f64> {
    Ok(lambda_closed_form(thetas, branch)?.max(0.0))
}

/// `δ± = (cos2θ₃cos2θ₄ ± cos2θ₁cos2θ₂) / (1 ± ∏cos2θ_i)`.
pub fn delta_closed_form(thetas: [f64; 4], branch: Branch) -> Result<f64> {
    let c2 = thetas.map(|t| (2.0 * t).cos());
    let sign = match branch {
        Branch::Prime => 1.0,
        Branch::DoublePrime => -1.0,
    };
    let den = closed_form_denominator(thetas, branch)?;
    Ok((c2[2] * c2[3] + sign * c2[0] * c2[1]) / den)
}

/// `S = 1 − ½[(1+δ)log₂(1+δ) + (1−δ)log₂(1−δ)]`.
pub fn entropy_closed_form(thetas: [f64; 4], branch: Branch) -> Result<f64> {
    let delta = delta_closed_form(thetas, branch)?;
    binary_entropy_of_delta(delta)
}

/// The entropy expression as a function of `δ`; `|δ| > 1` is an error.
pub fn binary_entropy_of_delta(delta: f64) -> Result<f64> {
    // Allow a few ulps of slack at the endpoints, nothing more.
    if delta.abs() > 1.0 + 1e-12 {
        return Err(Error::ClosedFormInconsistency(delta.abs()));
    }
    let xlog = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    Ok(1.0 - 0.5 * (xlog(1.0 + delta) + xlog(1.0 - delta)))
}

/// A split of the four qubits into two nonempty groups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bipartition {
    side_a: Vec<String>,
    side_b: Vec<String>,
}

impl Bipartition {
    pub fn new<S: AsRef<str>>(side_a: &[S]) -> Result<Self> {
        let mut a: Vec<String> = Vec::new();
        for l in side_a {
            let l = l.as_ref();
            if !QUBITS.contains(&l) {
                return Err(Error::UnknownLabel(l.to_owned()));
            }
            if a.iter().any(|x| x == l) {
                return Err(Error::DuplicateLabel(l.to_owned()));
            }
            a.push(l.to_owned());
        }
        if a.is_empty() || a.len() == QUBITS.len() {
            return Err(Error::InvalidParameter(
                "bipartition side must be a nonempty proper subset".into(),
            ));
        }
        a.sort();
        let b = QUBITS
            .iter()
            .filter(|q| !a.iter().any(|x| x == *q))
            .map(|q| q.to_string())
            .collect();
        Ok(Self { side_a: a, side_b: b })
    }

    pub fn side_a(&self) -> &[String] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[String] {
        &self.side_b
    }

    /// The three 2-2 cuts, with `q1` always on side A.
    pub fn two_two() -> Vec<Bipartition> {
        ["q2", "q3", "q4"]
            .iter()
            .map(|q| Bipartition::new(&["q1", q]).expect("valid"))
            .collect()
    }

    /// The four 1-3 cuts.
    pub fn one_three() -> Vec<Bipartition> {
        QUBITS.iter().map(|q| Bipartition::new(&[q]).expect("valid")).collect()
    }

    /// All seven inequivalent bipartitions.
    pub fn all() -> Vec<Bipartition> {
        let mut v = Self::two_two();
        v.extend(Self::one_three());
        v
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.side_a.join(","), self.side_b.join(","))
    }
}

/// Entropy of the reduction onto side A. The side-B entropy must agree
/// within 1e-10 (Schmidt symmetry of pure states).
pub fn bipartition_entropy(state: &StateVector, cut: &Bipartition) -> Result<f64> {
    state.require_normalized()?;
    let sa = von_neumann_entropy(&reduced_state(state, cut.side_a())?)?;
    let sb = von_neumann_entropy(&reduced_state(state, cut.side_b())?)?;
    if (sa - sb).abs() > SPECTRAL_TOL {
        return Err(Error::Numerical(format!(
            "entropy asymmetry across {cut}: {sa} vs {sb}"
        )));
    }
    Ok(sa)
}

/// Concurrence of the reduced state of two qubits.
pub fn pair_concurrence(state: &StateVector, a: &str, b: &str) -> Result<f64> {
    concurrence(&reduced_state(state, &[a, b])?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    /// Keyed `"qi,qj"`.
    pub pairwise_concurrence: BTreeMap<String, f64>,
    /// 2-2 cuts keyed `"q1,qj|..."`.
    pub pair_entropy: BTreeMap<String, f64>,
    /// 1-3 cuts keyed by the single qubit.
    pub single_entropy: BTreeMap<String, f64>,
    pub is_genuine: bool,
}

impl MeasureReport {
    pub fn max_concurrence(&self) -> f64 {
        self.pairwise_concurrence.values().copied().fold(0.0, f64::max)
    }

    /// All seven bipartition entropies.
    pub fn entropies(&self) -> impl Iterator<Item = f64> + '_ {
        self.pair_entropy.values().chain(self.single_entropy.values()).copied()
    }

    pub fn max_entropy_deviation_from_one(&self) -> f64 {
        self.entropies().map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// All six pairwise concurrences, the three 2-2 and four 1-3 entropies, and
/// the "all C = 0, all S = 1" flag.
pub fn measure_report(state: &StateVector) -> Result<MeasureReport> {
    state.require_normalized()?;
    let mut pairwise = BTreeMap::new();
    for (i, a) in QUBITS.iter().enumerate() {
        for b in &QUBITS[i + 1..] {
            pairwise.insert(format!("{a},{b}"), pair_concurrence(state, a, b)?);
        }
    }
    let mut pair_entropy = BTreeMap::new();
    for cut in Bipartition::two_two() {
        pair_entropy.insert(cut.to_string(), bipartition_entropy(state, &cut)?);
    }
    let mut single_entropy = BTreeMap::new();
    for cut in Bipartition::one_three() {
        single_entropy.insert(cut.side_a()[0].clone(), bipartition_entropy(state, &cut)?);
    }
    let genuine = pairwise.values().all(|&c| c <= GENUINE_TOL)
        && pair_entropy
            .values()
            .chain(single_entropy.values())
            .all(|&s| s >= 1.0 - GENUINE_TOL);
    Ok(MeasureReport {
        pairwise_concurrence: pairwise,
        pair_entropy,
        single_entropy,
        is_genuine: genuine,
    })
}
