//! The Mach–Zehnder interferometer with four dispersively coupled cavities.
//!
//! The photonic sector holds two modes, `U` (upper arm) and `L` (lower arm),
//! each truncated at one photon, giving the basis `|n_U n_L⟩`. The full
//! system space is `U ⊗ L ⊗ q1 ⊗ q2 ⊗ q3 ⊗ q4` (dimension 64). A photon
//! leaving in `|01⟩` heralds the atomic branch `χ′`; a photon in `|10⟩`
//! heralds `χ″`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::operator::Operator;
use crate::space::HilbertSpace;
use crate::state::StateVector;

pub const MODE_UPPER: &str = "U";
pub const MODE_LOWER: &str = "L";
pub const MODES: [&str; 2] = [MODE_UPPER, MODE_LOWER];
pub const QUBITS: [&str; 4] = ["q1", "q2", "q3", "q4"];

pub fn photonic_space() -> HilbertSpace {
    HilbertSpace::new(MODES.map(|m| (m, 2))).expect("static labels")
}

pub fn atomic_space() -> HilbertSpace {
    HilbertSpace::qubits(&QUBITS).expect("static labels")
}

pub fn full_space() -> HilbertSpace {
    photonic_space().concat(&atomic_space()).expect("static labels")
}

/// Protocol knobs: the atom–photon phase, the four preparation angles and
/// the detector efficiency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchemeParams {
    phi: f64,
    thetas: [f64; 4],
    eta: f64,
}

impl SchemeParams {
    pub fn new(phi: f64, thetas: [f64; 4], eta: f64) -> Result<Self> {
        if !phi.is_finite() || thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("phi and thetas must be finite".into()));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!(
                "detector efficiency {eta} outside [0, 1]"
            )));
        }
        Ok(Self { phi, thetas, eta })
    }

    /// Ideal detectors (`η = 1`).
    pub fn ideal(phi: f64, thetas: [f64; 4]) -> Result<Self> {
        Self::new(phi, thetas, 1.0)
    }

    /// `φ = π/2`, every `θ_i = π/4`, ideal detectors.
    pub fn ges_point() -> Self {
        Self {
            phi: FRAC_PI_2,
            thetas: [FRAC_PI_4; 4],
            eta: 1.0,
        }
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(self.phi, self.thetas, eta)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `φ` reduced into `[0, 2π)`.
    pub fn phi_reduced(&self) -> f64 {
        self.phi.rem_euclid(TAU)
    }

    pub fn thetas(&self) -> [f64; 4] {
        self.thetas
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Physical inputs to the dispersive phase shift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    pub dipole: f64,
    /// Per-photon field amplitude. When `None` it is derived from
    /// `sqrt(ħω / (2ε₀V))`.
    pub field: Option<f64>,
    pub tau: f64,
    pub detuning: f64,
    pub hbar: f64,
    pub omega: f64,
    pub volume: f64,
    pub epsilon0: f64,
}

impl PhysicalParams {
    /// SI constants for `ħ` and `ε₀`; everything else is caller-supplied.
    pub fn si(dipole: f64, omega: f64, volume: f64, tau: f64, detuning: f64) -> Self {
        Self {
            dipole,
            field: None,
            tau,
            detuning,
            hbar: 1.054_571_817e-34,
            omega,
            volume,
            epsilon0: 8.854_187_812_8e-12,
        }
    }

    pub fn single_photon_field(&self) -> Result<f64> {
        if let Some(e) = self.field {
            return Ok(e);
        }
        if self.epsilon0 <= 0.0 || self.volume <= 0.0 {
            return Err(Error::InvalidParameter(
                "ε₀ and V must be positive to derive the field".into(),
            ));
        }
        Ok((self.hbar * self.omega / (2.0 * self.epsilon0 * self.volume)).sqrt())
    }
}

/// `φ = d²𝓔²τ / (ħ²Δ)`.
pub fn phase_from_physical(p: &PhysicalParams) -> Result<f64> {
    if p.detuning == 0.0 {
        return Err(Error::InvalidParameter("detuning must be nonzero".into()));
    }
    if p.tau < 0.0 {
        return Err(Error::InvalidParameter("interaction time must be nonnegative".into()));
    }
    if p.hbar == 0.0 {
        return Err(Error::InvalidParameter("ħ must be nonzero".into()));
    }
    let field = p.single_photon_field()?;
    let phi = p.dipole.powi(2) * field.powi(2) * p.tau / (p.hbar.powi(2) * p.detuning);
    if !phi.is_finite() {
        return Err(Error::InvalidParameter("phase shift is not finite".into()));
    }
    Ok(phi)
}

fn annihilation() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

fn number() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
}

fn projector(bit: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// Photon-number operator of `mode` on the photonic sector.
pub fn number_operator(mode: &str) -> Result<Operator> {
    let n = Operator::new(HilbertSpace::new([(mode, 2)])?, number())?;
    n.embed(&[mode], &photonic_space())
}

/// Hopping generator `â†_U â_L + â†_L â_U`, truncated at one photon per mode.
pub fn hopping_generator() -> Operator {
    let a = annihilation();
    let ad = a.adjoint();
    let m = ad.kronecker(&a) + a.kronecker(&ad);
    Operator::new(photonic_space(), m).expect("4x4")
}

/// 50/50 splitter `exp[−i(π/4)(â†_U â_L + â†_L â_U)]` on the photonic sector.
pub fn beam_splitter() -> Operator {
    splitter_with_angle(FRAC_PI_4)
}

fn splitter_with_angle(angle: f64) -> Operator {
    Operator::evolution(&hopping_generator(), angle).expect("hopping generator is Hermitian")
}

/// `exp[−iφ(n̂_U |0⟩⟨0|_i + n̂_L |1⟩⟨1|_i)]` on the full space.
pub fn atom_photon_unitary(qubit: usize, phi: f64) -> Result<Operator> {
    if !(1..=4).contains(&qubit) {
        return Err(Error::InvalidParameter(format!("qubit index {qubit} outside 1..=4")));
    }
    let label = QUBITS[qubit - 1];
    let local = HilbertSpace::new([(MODE_UPPER, 2), (MODE_LOWER, 2), (label, 2)])?;
    let eye = CMatrix::identity(2, 2);
    let n_u = number().kronecker(&eye);
    let n_l = eye.kronecker(&number());
    let generator = n_u.kronecker(&projector(0)) + n_l.kronecker(&projector(1));
    let generator = Operator::new(local, generator)?;
    let phi = phi.rem_euclid(TAU);
    Operator::evolution(&generator, phi)?.embed(&[MODE_UPPER, MODE_LOWER, label], &full_space())
}

/// Switches used to build deliberately broken circuits for negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircuitFaults {
    /// Replace the output splitter by its inverse (sign of the generator flipped).
    pub flip_output_splitter: bool,
}

/// `Û = Û_BS2 Û₄ Û₃ Û₂ Û₁ Û_BS1` on the full space.
pub fn mz_circuit(phi: f64) -> Operator {
    mz_circuit_with(phi, CircuitFaults::default())
}

pub fn mz_circuit_with(phi: f64, faults: CircuitFaults) -> Operator {
    circuit_stages(phi, faults)
        .into_iter()
        .reduce(|acc, step| step.compose(&acc).expect("same space"))
        .expect("six stages")
}

/// The six stages in application order: `Û_BS1, Û₁, …, Û₄, Û_BS2`.
pub fn circuit_stages(phi: f64, faults: CircuitFaults) -> Vec<Operator> {
    let full = full_space();
    let out_angle = if faults.flip_output_splitter {
        -FRAC_PI_4
    } else {
        FRAC_PI_4
    };
    let mut stages = vec![beam_splitter().embed(&MODES, &full).expect("modes exist")];
    stages.extend((1..=4).map(|q| atom_photon_unitary(q, phi).expect("qubit index in range")));
    stages.push(
        splitter_with_angle(out_angle)
            .embed(&MODES, &full)
            .expect("modes exist"),
    );
    stages
}

/// Single-qubit preparation `cos θ|0⟩ + sin θ|1⟩`.
pub fn qubit_state(label: &str, theta: f64) -> Result<StateVector> {
    StateVector::new(
        HilbertSpace::qubits(&[label])?,
        vec![c(theta.cos(), 0.0), c(theta.sin(), 0.0)],
    )
}

/// The atomic product state `⊗ (cos θ_i|0⟩ + sin θ_i|1⟩)`.
pub fn atomic_product_state(thetas: [f64; 4]) -> StateVector {
    let mut s = qubit_state(QUBITS[0], thetas[0]).expect("static label");
    for (label, &t) in QUBITS.iter().zip(&thetas).skip(1) {
        s = s
            .tensor(&qubit_state(label, t).expect("static label"))
            .expect("distinct labels");
    }
    s
}

/// `|10⟩ ⊗ atoms`: one photon entering the upper port.
pub fn initial_state(params: &SchemeParams) -> StateVector {
    let photon = StateVector::from_label(photonic_space(), "10").expect("static label");
    photon
        .tensor(&atomic_product_state(params.thetas))
        .expect("distinct labels")
}

/// `Û |Ψ_i⟩`.
pub fn evolve(params: &SchemeParams) -> StateVector {
    evolve_with(params, CircuitFaults::default())
}

pub fn evolve_with(params: &SchemeParams, faults: CircuitFaults) -> StateVector {
    circuit_stages(params.phi, faults)
        .iter()
        .try_fold(initial_state(params), |s, step| step.apply(&s))
        .expect("same space")
}

/// The two heralded atomic branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `χ′`, heralded by the photon in the lower mode (`|01⟩`).
    Prime,
    /// `χ″`, heralded by the photon in the upper mode (`|10⟩`).
    DoublePrime,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Prime, Branch::DoublePrime];

    /// Photon occupations `(n_U, n_L)` of the heralding photonic component.
    pub fn photonic_occupation(self) -> (usize, usize) {
        match self {
            Branch::Prime => (0, 1),
            Branch::DoublePrime => (1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Prime => "prime",
            Branch::DoublePrime => "double_prime",
        }
    }
}

/// Atomic amplitude vector paired with photonic component `|n_U n_L⟩`.
pub fn photonic_component(state: &StateVector, n_upper: usize, n_lower: usize) -> Result<StateVector> {
    let full = full_space();
    if state.space() != &full {
        return Err(Error::SpaceMismatch);
    }
    if n_upper > 1 || n_lower > 1 {
        return Err(Error::InvalidParameter(
            "photon occupation above the one-photon cutoff".into(),
        ));
    }
    let atoms = atomic_space();
    let block = 2 * n_upper + n_lower;
    let n = atoms.dim();
    let amps: Vec<Complex64> = (0..n).map(|a| state.amplitude(block * n + a)).collect();
    StateVector::new(atoms, amps)
}

pub fn branch_state(state: &StateVector, branch: Branch) -> Result<StateVector> {
    let (u, l) = branch.photonic_occupation();
    photonic_component(state, u, l)
}

/// Component states of the closed-form output (`A±`, `B`, `C`, `D`).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormComponents {
    pub a_plus: StateVector,
    pub a_minus: StateVector,
    pub b: StateVector,
    pub c: StateVector,
    pub d: StateVector,
}

impl ClosedFormComponents {
    pub fn new(thetas: [f64; 4]) -> Self {
        let cs = thetas.map(f64::cos);
        let sn = thetas.map(f64::sin);
        let (c1, c2, c3, c4) = (cs[0], cs[1], cs[2], cs[3]);
        let (s1, s2, s3, s4) = (sn[0], sn[1], sn[2], sn[3]);
        let build = |terms: &[(f64, &str)]| {
            StateVector::from_terms(atomic_space(), terms.iter().map(|&(a, l)| (c(a, 0.0), l))).expect("static labels")
        };
        let a = |sign: f64| build(&[(c1 * c2 * c3 * c4, "0000"), (sign * s1 * s2 * s3 * s4, "1111")]);
        Self {
            a_plus: a(1.0),
            a_minus: a(-1.0),
            b: build(&[
                (c1 * c2 * s3 * c4, "0010"),
                (c1 * s2 * c3 * c4, "0100"),
                (s1 * c2 * c3 * c4, "1000"),
                (c1 * c2 * c3 * s4, "0001"),
            ]),
            c: build(&[
                (s1 * s2 * s3 * c4, "1110"),
                (c1 * s2 * s3 * s4, "0111"),
                (s1 * s2 * c3 * s4, "1101"),
                (s1 * c2 * s3 * s4, "1011"),
            ]),
            d: build(&[
                (c1 * s2 * s3 * c4, "0110"),
                (s1 * s2 * c3 * c4, "1100"),
                (s1 * c2 * s3 * c4, "1010"),
                (c1 * c2 * s3 * s4, "0011"),
                (c1 * s2 * c3 * s4, "0101"),
                (s1 * c2 * c3 * s4, "1001"),
            ]),
        }
    }
}

/// Unnormalized branch state assembled from the closed-form components:
///
/// * `χ′ = cos 2φ |A₊⟩ + cos φ (|B⟩ + |C⟩) + |D⟩`
/// * `χ″ = sin 2φ |A₋⟩ + sin φ (|B⟩ − |C⟩)`
///
/// With this convention `‖χ′‖² + ‖χ″‖² = 1` and the circuit output equals
/// `−i e^{−2iφ} (|01⟩⊗χ′ + |10⟩⊗χ″)`.
pub fn closed_form_chi(params: &SchemeParams, branch: Branch) -> StateVector {
    let k = ClosedFormComponents::new(params.thetas);
    let phi = params.phi_reduced();
    let r = |x: f64| c(x, 0.0);
    let combine = |terms: &[(f64, &StateVector)]| {
        terms.iter().fold(StateVector::zeros(atomic_space()), |acc, (w, s)| {
            acc.add_scaled(r(*w), s).expect("same space")
        })
    };
    match branch {
        Branch::Prime => combine(&[
            ((2.0 * phi).cos(), &k.a_plus),
            (phi.cos(), &k.b),
            (phi.cos(), &k.c),
            (1.0, &k.d),
        ]),
        Branch::DoublePrime => combine(&[((2.0 * phi).sin(), &k.a_minus), (phi.sin(), &k.b), (-phi.sin(), &k.c)]),
    }
}

/// Global phase relating the circuit output to the closed-form branches.
pub fn closed_form_global_phase(phi: f64) -> Complex64 {
    c(0.0, -1.0) * Complex64::from_polar(1.0, -2.0 * phi.rem_euclid(TAU))
}

/// `∏ cos 2θ_i`.
pub fn cos2_product(thetas: [f64; 4]) -> f64 {
    thetas.iter().map(|t| (2.0 * t).cos()).product()
}

/// Branch weight at `φ = π/2`: `Γ₁ = (1 + ∏cos2θ)/2`, `Γ₂ = (1 − ∏cos2θ)/2`.
pub fn gamma(thetas: [f64; 4], branch: Branch) -> f64 {
    let p = cos2_product(thetas);
    match branch {
        Branch::Prime => 0.5 * (1.0 + p),
        Branch::DoublePrime => 0.5 * (1.0 - p),
    }
}
