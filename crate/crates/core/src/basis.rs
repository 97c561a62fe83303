//! The sixteen-state genuine entangled-state (GES) representation.
//!
//! States are indexed by a family `k ∈ 1..=4` and a Pauli component
//! `μ ∈ 0..=3`. Family `k` applies the local string
//!
//! | family | qubit 1 | qubit 2 | qubit 3 |
//! |--------|---------|---------|---------|
//! | 1      | `I`     | `σ^μ`   | `I`     |
//! | 2      | `σ³`    | `σ^μ`   | `I`     |
//! | 3      | `I`     | `σ^μ`   | `σ³`    |
//! | 4      | `σ³`    | `σ^μ`   | `σ³`    |
//!
//! to the seed state `(|0000⟩+|1111⟩−|0110⟩−|1100⟩−|1010⟩−|0011⟩−|0101⟩−|1001⟩)/√8`.
//! The explicit table in [`explicit_basis`] is the basis of record; the
//! Pauli construction in [`generate_basis`] agrees with it up to one global
//! phase per state.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{atomic_space, QUBITS};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, STRUCTURAL_TOL};
use crate::measures::{measure_report, MeasureReport};
use crate::operator::Operator;
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GesIndex {
    family: u8,
    component: u8,
}

impl GesIndex {
    pub fn new(family: u8, component: u8) -> Result<Self> {
        if !(1..=4).contains(&family) || component > 3 {
            return Err(Error::InvalidParameter(format!(
                "GES index ({family},{component}) outside families 1..=4, components 0..=3"
            )));
        }
        Ok(Self { family, component })
    }

    pub fn family(self) -> u8 {
        self.family
    }

    pub fn component(self) -> u8 {
        self.component
    }

    /// Position `0..16` in family-major order.
    pub fn ordinal(self) -> usize {
        4 * (self.family as usize - 1) + self.component as usize
    }

    /// All sixteen indices, family-major.
    pub fn all() -> impl Iterator<Item = GesIndex> {
        (1..=4u8).flat_map(|f| {
            (0..4u8).map(move |c| GesIndex {
                family: f,
                component: c,
            })
        })
    }
}

impl fmt::Display for GesIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.family, self.component)
    }
}

impl FromStr for GesIndex {
    type Err = Error;

    /// Parses `"k,μ"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad GES index `{s}` (expected `family,component`)"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let f = a.trim().parse().map_err(|_| bad())?;
        let c = b.trim().parse().map_err(|_| bad())?;
        GesIndex::new(f, c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Explicit,
    Generated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GesBasis {
    states: Vec<StateVector>,
    provenance: Provenance,
}

impl GesBasis {
    /// Builds a basis from sixteen states in family-major order. Only the
    /// shape is checked; call [`verify_representation`] for orthonormality.
    pub fn from_states(states: Vec<StateVector>, provenance: Provenance) -> Result<Self> {
        if states.len() != 16 {
            return Err(Error::DimensionMismatch {
                expected: 16,
                found: states.len(),
            });
        }
        let atoms = atomic_space();
        if states.iter().any(|s| s.space() != &atoms) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { states, provenance })
    }

    pub fn get(&self, index: GesIndex) -> &StateVector {
        &self.states[index.ordinal()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (GesIndex, &StateVector)> {
        GesIndex::all().zip(self.states.iter())
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Returns a copy with one state replaced.
    pub fn with_state(&self, index: GesIndex, state: StateVector) -> Result<Self> {
        let mut states = self.states.clone();
        states[index.ordinal()] = state;
        Self::from_states(states, self.provenance)
    }

    /// 16×16 matrix whose columns are the basis states.
    pub fn column_matrix(&self) -> CMatrix {
        CMatrix::from_fn(16, 16, |r, c| self.states[c].amplitude(r))
    }

    /// Gram matrix `G_ab = ⟨φ_a|φ_b⟩`.
    pub fn gram(&self) -> CMatrix {
        let m = self.column_matrix();
        m.adjoint() * m
    }

    /// `max |G − I|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        linalg::max_abs(&(self.gram() - CMatrix::identity(16, 16)))
    }

    /// `max |Σ|φ⟩⟨φ| − I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let m = self.column_matrix();
        linalg::max_abs(&(&m * m.adjoint() - CMatrix::identity(16, 16)))
    }
}

// Signs in family-major order; each state has eight terms of weight 1/√8.
const EXPLICIT_TABLE: [&str; 16] = [
    "+0000 +1111 -0110 -1100 -1010 -0011 -0101 -1001",
    "-1110 -0111 -1101 +1011 -0010 +0100 -1000 -0001",
    "+1110 +0111 +1101 +1011 -0010 -0100 -1000 -0001",
    "-0000 +1111 -0110 -1100 +1010 +0011 -0101 +1001",
    "-0000 +1111 +0110 -1100 -1010 +0011 +0101 -1001",
    "-1110 +0111 -1101 +1011 +0010 -0100 -1000 +0001",
    "+1110 -0111 +1101 +1011 +0010 +0100 -1000 +0001",
    "+0000 +1111 +0110 -1100 +1010 -0011 +0101 +1001",
    "-0000 +1111 -0110 +1100 -1010 -0011 +0101 +1001",
    "-1110 -0111 +1101 +1011 -0010 -0100 +1000 +0001",
    "+1110 +0111 -1101 +1011 -0010 +0100 +1000 +0001",
    "+0000 +1111 -0110 +1100 +1010 +0011 +0101 -1001",
    "+0000 +1111 +0110 +1100 -1010 +0011 -0101 +1001",
    "-1110 +0111 +1101 +1011 +0010 +0100 +1000 -0001",
    "+1110 -0111 -1101 +1011 +0010 -0100 +1000 -0001",
    "-0000 +1111 +0110 +1100 +1010 -0011 -0101 -1001",
];

fn signed_terms(row: &str) -> StateVector {
    let w = 1.0 / 8f64.sqrt();
    let terms = row.split_whitespace().map(|tok| {
        let (sign, label) = tok.split_at(1);
        let s = if sign == "-" { -w } else { w };
        (Complex64::new(s, 0.0), label)
    });
    StateVector::from_terms(atomic_space(), terms).expect("static table")
}

/// The sixteen states as tabulated, with real amplitudes `±1/√8`.
pub fn explicit_basis() -> GesBasis {
    GesBasis {
        states: EXPLICIT_TABLE.iter().map(|row| signed_terms(row)).collect(),
        provenance: Provenance::Explicit,
    }
}

/// The heralded `χ′` state at `θ_i = π/4`, which seeds the basis.
pub fn ges_seed() -> StateVector {
    signed_terms(EXPLICIT_TABLE[0])
}

/// The heralded `χ″` state at `θ_i = π/4`.
pub fn ges_partner() -> StateVector {
    signed_terms("+1110 +0111 +1101 +1011 -0010 -0100 -1000 -0001")
}

/// Local Pauli string for one basis index, on the atomic register.
pub fn pauli_string(index: GesIndex) -> Operator {
    let z1 = matches!(index.family, 2 | 4);
    let z3 = matches!(index.family, 3 | 4);
    let m = linalg::kron(
        &linalg::kron(
            &linalg::kron(
                &linalg::pauli(if z1 { 3 } else { 0 }),
                &linalg::pauli(index.component as usize),
            ),
            &linalg::pauli(if z3 { 3 } else { 0 }),
        ),
        &linalg::pauli(0),
    );
    Operator::new(atomic_space(), m).expect("16x16")
}

/// Applies the sixteen Pauli strings to `seed`.
pub fn generate_basis(seed: &StateVector) -> Result<GesBasis> {
    if seed.space() != &atomic_space() {
        return Err(Error::SpaceMismatch);
    }
    seed.require_normalized()?;
    let states = GesIndex::all()
        .map(|i| pauli_string(i).apply(seed))
        .collect::<Result<Vec<_>>>()?;
    GesBasis::from_states(states, Provenance::Generated)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    /// `⟨φ_k|ψ⟩` in family-major order.
    pub coefficients: Vec<(GesIndex, Complex64)>,
    /// `‖ψ − Σ c_k|φ_k⟩‖`.
    pub residual: f64,
}

impl Decomposition {
    pub fn coefficient(&self, index: GesIndex) -> Complex64 {
        self.coefficients[index.ordinal()].1
    }

    /// `Σ |c_k|²`.
    pub fn weight(&self) -> f64 {
        self.coefficients.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn reconstruct(&self, basis: &GesBasis) -> StateVector {
        self.coefficients
            .iter()
            .fold(StateVector::zeros(atomic_space()), |acc, (i, c)| {
                acc.add_scaled(*c, basis.get(*i)).expect("same space")
            })
    }
}

/// Expands a normalized four-qubit state in `basis`.
pub fn decompose(state: &StateVector, basis: &GesBasis) -> Result<Decomposition> {
    if state.space() != &atomic_space() {
        return Err(Error::SpaceMismatch);
    }
    state.require_normalized()?;
    let coefficients = basis
        .iter()
        .map(|(i, phi)| Ok((i, phi.inner(state)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut d = Decomposition {
        coefficients,
        residual: 0.0,
    };
    let back = d.reconstruct(basis);
    d.residual = state.add_scaled(Complex64::new(-1.0, 0.0), &back)?.norm();
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalState {
    Ghz4,
    W4,
    Cl4,
    D4,
}

impl CanonicalState {
    pub const ALL: [CanonicalState; 4] = [
        CanonicalState::Ghz4,
        CanonicalState::W4,
        CanonicalState::Cl4,
        CanonicalState::D4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalState::Ghz4 => "ghz4",
            CanonicalState::W4 => "w4",
            CanonicalState::Cl4 => "cl4",
            CanonicalState::D4 => "d4",
        }
    }
}

impl FromStr for CanonicalState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz4" | "ghz" => Ok(CanonicalState::Ghz4),
            "w4" | "w" => Ok(CanonicalState::W4),
            "cl4" | "cluster" => Ok(CanonicalState::Cl4),
            "d4" | "dicke" => Ok(CanonicalState::D4),
            _ => Err(Error::UnknownState(s.to_owned())),
        }
    }
}

impl fmt::Display for CanonicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn canonical_state(name: CanonicalState) -> StateVector {
    let r = |x: f64| Complex64::new(x, 0.0);
    let build = |terms: &[(f64, &str)]| {
        StateVector::from_terms(atomic_space(), terms.iter().map(|&(a, l)| (r(a), l))).expect("static labels")
    };
    match name {
        CanonicalState::Ghz4 => {
            let h = 1.0 / 2f64.sqrt();
            build(&[(h, "0000"), (h, "1111")])
        }
        CanonicalState::W4 => build(&[(0.5, "0001"), (0.5, "0010"), (0.5, "0100"), (0.5, "1000")]),
        CanonicalState::Cl4 => build(&[(0.5, "0000"), (0.5, "0110"), (0.5, "1001"), (-0.5, "1111")]),
        CanonicalState::D4 => {
            let h = 1.0 / 6f64.sqrt();
            build(&["0011", "0101", "1001", "1100", "0110", "1010"].map(|l| (h, l)))
        }
    }
}

/// Reference real expansion coefficients of the canonical states in the
/// explicit basis (indices not listed are zero).
pub fn reference_expansion(name: CanonicalState) -> Vec<(GesIndex, f64)> {
    let i = |f, c| GesIndex::new(f, c).expect("static index");
    let s8 = 1.0 / 8f64.sqrt();
    let s12 = 1.0 / (2.0 * 3f64.sqrt());
    match name {
        CanonicalState::Ghz4 => vec![(i(1, 0), 0.5), (i(3, 3), 0.5), (i(2, 3), 0.5), (i(4, 0), 0.5)],
        CanonicalState::W4 => vec![
            (i(3, 2), s8),
            (i(2, 2), s8),
            (i(1, 1), -s8),
            (i(1, 2), -2.0 * s8),
            (i(4, 1), s8),
        ],
        CanonicalState::Cl4 => vec![
            (i(2, 3), s8),
            (i(4, 0), s8),
            (i(1, 0), -s8),
            (i(3, 0), -s8),
            (i(1, 3), -s8),
            (i(3, 3), -s8),
            (i(4, 3), -s8),
            (i(2, 0), -s8),
        ],
        CanonicalState::D4 => vec![
            (i(2, 3), 2.0 * s12),
            (i(4, 3), -s12),
            (i(2, 0), s12),
            (i(1, 3), s12),
            (i(3, 0), -s12),
            (i(1, 0), -2.0 * s12),
        ],
    }
}

/// Result of comparing complex coefficients to a real reference after the
/// best common phase is removed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseAlignedComparison {
    /// `e^{iα}` minimizing `‖e^{iα}c − r‖`.
    pub phase: Complex64,
    /// `max_k |e^{iα}c_k − r_k|`.
    pub max_deviation: f64,
}

/// Compares a decomposition to a reference coefficient pattern up to one
/// global phase.
pub fn compare_to_reference(d: &Decomposition, reference: &[(GesIndex, f64)]) -> PhaseAlignedComparison {
    let mut r = vec![0.0; 16];
    for (i, v) in reference {
        r[i.ordinal()] = *v;
    }
    let overlap: Complex64 = d.coefficients.iter().zip(&r).map(|((_, c), rv)| c.conj() * rv).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let max_deviation = d
        .coefficients
        .iter()
        .zip(&r)
        .map(|((_, c), rv)| (c * phase - rv).norm())
        .fold(0.0, f64::max);
    PhaseAlignedComparison { phase, max_deviation }
}

/// Real-coefficient reconstruction of a reference expansion.
pub fn reference_state(reference: &[(GesIndex, f64)], basis: &GesBasis) -> StateVector {
    reference
        .iter()
        .fold(StateVector::zeros(atomic_space()), |acc, (i, v)| {
            acc.add_scaled(Complex64::new(*v, 0.0), basis.get(*i))
                .expect("same space")
        })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateGenuineness {
    pub index: GesIndex,
    pub report: MeasureReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentationReport {
    pub provenance: Provenance,
    pub max_orthonormality_deviation: f64,
    pub max_completeness_deviation: f64,
    pub states: Vec<StateGenuineness>,
}

impl RepresentationReport {
    pub fn genuine_count(&self) -> usize {
        self.states.iter().filter(|s| s.report.is_genuine).count()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.max_orthonormality_deviation <= STRUCTURAL_TOL
    }

    pub fn is_complete(&self) -> bool {
        self.max_completeness_deviation <= STRUCTURAL_TOL
    }
}

/// Orthonormality, completeness and per-state genuineness.
///
/// States that are not normalized (for instance in a corrupted basis) get
/// their measures from the normalized copy.
pub fn verify_representation(basis: &GesBasis) -> Result<RepresentationReport> {
    let states = basis
        .iter()
        .map(|(index, s)| {
            Ok(StateGenuineness {
                index,
                report: measure_report(&s.normalized()?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RepresentationReport {
        provenance: basis.provenance(),
        max_orthonormality_deviation: basis.orthonormality_deviation(),
        max_completeness_deviation: basis.completeness_deviation(),
        states,
    })
}

/// Per-index agreement between a generated and an explicit basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseAgreement {
    pub index: GesIndex,
    /// `|⟨explicit|generated⟩|`.
    pub overlap: f64,
    /// `generated ≈ phase · explicit`.
    pub phase: Complex64,
    pub equal_up_to_global_phase: bool,
    /// Whether the states agree without any phase correction.
    pub identical: bool,
}

pub fn compare_bases(explicit: &GesBasis, generated: &GesBasis, tol: f64) -> Result<Vec<PhaseAgreement>> {
    explicit
        .iter()
        .map(|(index, e)| {
            let g = generated.get(index);
            let ov = e.inner(g)?;
            let phase = if ov.norm() > 0.0 {
                ov / ov.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            Ok(PhaseAgreement {
                index,
                overlap: ov.norm(),
                phase,
                equal_up_to_global_phase: (ov.norm() - 1.0).abs() <= tol,
                identical: e.max_deviation(g)? <= tol,
            })
        })
        .collect()
}

/// The qubit labels of the register, for callers that need them in order.
pub fn qubit_labels() -> [&'static str; 4] {
    QUBITS
}

/// Dense real matrix of the explicit signs (rows: basis states, columns:
/// computational basis), scaled by √8.
pub fn explicit_sign_matrix() -> DMatrix<i8> {
    let b = explicit_basis();
    DMatrix::from_fn(16, 16, |r, c| {
        let a = b.states[r].amplitude(c).re * 8f64.sqrt();
        a.round() as i8
    })
}
