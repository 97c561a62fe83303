//! Seeded invariant suite spanning every module.
//!
//! [`run_suite`] evaluates each invariant and records one [`CheckResult`]
//! per check. Failures are data, never errors: a check whose computation
//! itself errors is recorded as failed with the error text. Places where the
//! reference claims and the computed results disagree are collected
//! separately in a [`DiscrepancyLog`].
//!
//! The report contains no timing or environment information, so a fixed
//! seed yields byte-identical JSON.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{
    canonical_state, compare_bases, compare_to_reference, decompose, explicit_basis, generate_basis, ges_partner,
    ges_seed, reference_expansion, verify_representation, CanonicalState, GesIndex,
};
use crate::circuit::{
    self, atomic_space, closed_form_chi, closed_form_global_phase, evolve_with, gamma, mz_circuit, photonic_space,
    Branch, CircuitFaults, SchemeParams,
};
use crate::density::{partial_trace_matrix, reduced_state, DensityMatrix};
use crate::detection::{
    detect, one_photon_leakage, outcome_probabilities, prepare_ges, sigma_y_on_fourth, DetectionOutcome,
};
use crate::error::Result;
use crate::linalg::{self, CMatrix, SPECTRAL_TOL, STRUCTURAL_TOL};
use crate::measures::{
    self, bipartition_entropy, concurrence, concurrence_closed_form, entropy_closed_form, lambda_closed_form,
    measure_report, pair_concurrence, von_neumann_entropy, Bipartition, CALIBRATED_CUT, CALIBRATED_PAIR,
};
use crate::operator::Operator;
use crate::space::HilbertSpace;
use crate::state::StateVector;

/// Tolerance for closed-form vs numerical measures.
pub const MEASURE_TOL: f64 = 1e-9;

/// Relative slack accepted for the `≈` spot value of the entropy.
pub const SPOT_ENTROPY_TOL: f64 = 1e-4;

/// Claimed entropy of the `χ′` state at `θ_i = π/8`.
pub const CLAIMED_SPOT_ENTROPY: f64 = 0.8813;

pub const ETA_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.8, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random `(φ, θ)` draws for the circuit oracle.
    pub circuit_samples: usize,
    /// Random `θ` draws for the closed-form measures and random states for
    /// Parseval.
    pub measure_samples: usize,
    /// Negative control: flip the output splitter.
    pub inject_splitter_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            circuit_samples: 200,
            measure_samples: 100,
            inject_splitter_fault: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Computed result disagrees with a reference claim that the
    /// implementation does not adopt; see the discrepancy log.
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub status: CheckStatus,
    /// Worst deviation observed (`None` when the computation errored).
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub topic: &'static str,
    pub claim: String,
    pub computed: String,
    pub resolution: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DiscrepancyLog {
    pub entries: Vec<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub options: VerifyOptions,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub discrepancies: usize,
}

impl SuiteReport {
    /// `true` iff no check failed. Discrepancies do not count as failures.
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, suite: &str, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.suite == suite && c.name == name)
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckResult>,
    log: DiscrepancyLog,
}

impl Recorder {
    /// Passes iff `measured ≤ tol`.
    fn bound(
        &mut self,
        suite: &'static str,
        name: &'static str,
        tol: f64,
        run: impl FnOnce() -> Result<(f64, String)>,
    ) {
        let r = run();
        self.push(suite, name, tol, r, |m| m <= tol, CheckStatus::Fail);
    }

    /// Like [`bound`](Self::bound) but an exceedance is a discrepancy.
    fn claim(
        &mut self,
        suite: &'static str,
        name: &'static str,
        tol: f64,
        run: impl FnOnce() -> Result<(f64, String)>,
    ) {
        let r = run();
        self.push(suite, name, tol, r, |m| m <= tol, CheckStatus::Discrepancy);
    }

    /// Passes iff `measured > floor`, used by negative controls.
    fn exceeds(
        &mut self,
        suite: &'static str,
        name: &'static str,
        floor: f64,
        run: impl FnOnce() -> Result<(f64, String)>,
    ) {
        let r = run();
        self.push(suite, name, floor, r, |m| m > floor, CheckStatus::Fail);
    }

    fn push(
        &mut self,
        suite: &'static str,
        name: &'static str,
        tolerance: f64,
        r: Result<(f64, String)>,
        ok: impl Fn(f64) -> bool,
        otherwise: CheckStatus,
    ) {
        let (status, measured, detail) = match r {
            Ok((m, d)) if m.is_finite() && ok(m) => (CheckStatus::Pass, Some(m), d),
            Ok((m, d)) => (otherwise, m.is_finite().then_some(m), d),
            Err(e) => (CheckStatus::Fail, None, format!("error: {e}")),
        };
        log::debug!("{suite}/{name}: {status:?} {measured:?}");
        self.checks.push(CheckResult {
            suite,
            name,
            status,
            measured,
            tolerance,
            detail,
        });
    }

    fn note(
        &mut self,
        topic: &'static str,
        claim: impl Into<String>,
        computed: impl Into<String>,
        resolution: impl Into<String>,
    ) {
        self.log.entries.push(Discrepancy {
            topic,
            claim: claim.into(),
            computed: computed.into(),
            resolution: resolution.into(),
        });
    }
}

/// Runs the full suite; returns the check report and the discrepancy log.
pub fn run_suite(options: &VerifyOptions) -> (SuiteReport, DiscrepancyLog) {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut rec = Recorder::default();

    core_checks(&mut rec, &mut rng);
    circuit_checks(&mut rec, &mut rng, options);
    detection_checks(&mut rec, &mut rng);
    measure_checks(&mut rec, &mut rng, options);
    basis_checks(&mut rec, &mut rng, options);

    let count = |s: CheckStatus| rec.checks.iter().filter(|c| c.status == s).count();
    let report = SuiteReport {
        options: *options,
        passed: count(CheckStatus::Pass),
        failed: count(CheckStatus::Fail),
        discrepancies: count(CheckStatus::Discrepancy),
        checks: rec.checks,
    };
    (report, rec.log)
}

fn random_thetas(rng: &mut ChaCha8Rng, hi: f64) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(0.0..hi))
}

/// Normalized state with independent uniform real and imaginary parts.
pub fn random_state(rng: &mut impl Rng, space: HilbertSpace) -> StateVector {
    let amps = (0..space.dim())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::new(space, amps)
        .and_then(|s| s.normalized())
        .expect("nonzero random vector")
}

/// `exp(−i a n̂·σ⃗)` for a random axis and angle.
pub fn random_qubit_unitary(rng: &mut impl Rng, label: &str) -> Operator {
    let n: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    let space = HilbertSpace::qubits(&[label]).expect("single label");
    let g = (1..=3).fold(CMatrix::zeros(2, 2), |acc, k| {
        acc + linalg::pauli(k) * Complex64::new(n[k - 1] / len, 0.0)
    });
    let gen = Operator::new(space, g).expect("2x2");
    Operator::evolution(&gen, rng.random_range(0.0..PI)).expect("Hermitian generator")
}

fn full_closed_form(params: &SchemeParams) -> Result<StateVector> {
    let one_lower = StateVector::from_label(photonic_space(), "01")?;
    let one_upper = StateVector::from_label(photonic_space(), "10")?;
    let prime = one_lower.tensor(&closed_form_chi(params, Branch::Prime))?;
    let double = one_upper.tensor(&closed_form_chi(params, Branch::DoublePrime))?;
    prime.add_scaled(Complex64::new(1.0, 0.0), &double)
}

fn core_checks(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    const S: &str = "quantum-core";
    let a = random_state(rng, HilbertSpace::qubits(&["a"]).unwrap());
    let b = random_state(rng, HilbertSpace::qubits(&["b", "c"]).unwrap());
    let c = random_state(rng, HilbertSpace::qubits(&["d"]).unwrap());
    rec.bound(S, "tensor_associativity", STRUCTURAL_TOL, || {
        let left = a.tensor(&b)?.tensor(&c)?;
        let right = a.tensor(&b.tensor(&c)?)?;
        Ok((left.max_deviation(&right)?, "((a⊗b)⊗c) vs (a⊗(b⊗c))".into()))
    });

    let space = atomic_space();
    let psi = random_state(rng, space.clone());
    let phi = random_state(rng, space.clone());
    rec.bound(S, "partial_trace_linearity_and_trace", STRUCTURAL_TOL, || {
        let (x, y) = (Complex64::new(0.3, -0.7), Complex64::new(-1.1, 0.2));
        let pm = psi.amplitudes() * psi.amplitudes().adjoint();
        let qm = phi.amplitudes() * phi.amplitudes().adjoint();
        let keep = ["q3", "q1"];
        let (_, lhs) = partial_trace_matrix(&space, &(&pm * x + &qm * y), &keep)?;
        let (_, tp) = partial_trace_matrix(&space, &pm, &keep)?;
        let (_, tq) = partial_trace_matrix(&space, &qm, &keep)?;
        let lin = linalg::max_abs(&(lhs - (tp.clone() * x + tq * y)));
        let tr = (tp.trace() - pm.trace()).norm();
        let (_, all) = partial_trace_matrix(&space, &pm, &circuit::QUBITS)?;
        let id = linalg::max_abs(&(all - pm));
        Ok((
            lin.max(tr).max(id),
            format!("linearity {lin:.3e}, trace {tr:.3e}, keep-all {id:.3e}"),
        ))
    });

    rec.bound(S, "reduced_spectrum_valid", SPECTRAL_TOL, || {
        let mut worst: f64 = 0.0;
        for cut in Bipartition::all() {
            let vals = reduced_state(&psi, cut.side_a())?.eigenvalues()?;
            let sum = (vals.iter().sum::<f64>() - 1.0).abs();
            let neg = vals.iter().fold(0.0f64, |m, &v| m.max(-v));
            worst = worst.max(sum).max(neg);
        }
        Ok((worst, "spectra of 7 reductions: |Σλ−1| and max(−λ)".into()))
    });
}

fn circuit_checks(rec: &mut Recorder, rng: &mut ChaCha8Rng, options: &VerifyOptions) {
    const S: &str = "optical-circuit";
    let faults = CircuitFaults {
        flip_output_splitter: options.inject_splitter_fault,
    };
    let samples: Vec<SchemeParams> = (0..options.circuit_samples)
        .map(|_| {
            let phi = rng.random_range(0.0..TAU);
            SchemeParams::ideal(phi, random_thetas(rng, PI)).expect("finite")
        })
        .collect();

    rec.bound(S, "unitarity", STRUCTURAL_TOL, || {
        let worst = (0..25)
            .map(|k| mz_circuit(TAU * k as f64 / 24.0).unitarity_deviation())
            .fold(0.0, f64::max);
        Ok((worst, "‖U†U − I‖ over 25 phases in [0, 2π]".into()))
    });

    rec.bound(S, "photon_number_conservation", STRUCTURAL_TOL, || {
        let full = circuit::full_space();
        let mut worst: f64 = 0.0;
        for k in 0..8 {
            let u = mz_circuit(TAU * k as f64 / 8.0);
            for idx in 0..full.dim() {
                let digits = full.to_multi_index(idx);
                let n = digits[0] + digits[1];
                let out = u.apply(&StateVector::basis(full.clone(), idx)?)?;
                let leak: f64 = (0..full.dim())
                    .filter(|&j| {
                        let d = full.to_multi_index(j);
                        d[0] + d[1] != n
                    })
                    .map(|j| out.amplitude(j).norm_sqr())
                    .sum();
                worst = worst.max(leak.sqrt());
            }
        }
        Ok((
            worst,
            "amplitude leaving the photon-number sector, 64 basis inputs × 8 phases".into(),
        ))
    });

    rec.bound(S, "oracle_equivalence", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for p in &samples {
            let out = evolve_with(p, faults);
            worst = worst.max(out.max_deviation_up_to_phase(&full_closed_form(p)?)?);
        }
        Ok((
            worst,
            format!(
                "{} random (φ, θ): circuit vs closed form up to one global phase",
                samples.len()
            ),
        ))
    });

    rec.bound(S, "closed_form_global_phase", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for p in &samples {
            let out = evolve_with(p, faults);
            let cf = full_closed_form(p)?.scaled(closed_form_global_phase(p.phi()));
            worst = worst.max(out.max_deviation(&cf)?);
        }
        Ok((worst, "circuit output = −i e^{−2iφ}(|01⟩χ′ + |10⟩χ″)".into()))
    });

    rec.bound(S, "one_photon_leakage", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for p in &samples {
            worst = worst.max(one_photon_leakage(&evolve_with(p, faults))?);
        }
        Ok((worst, "weight outside |01⟩, |10⟩ after evolution".into()))
    });

    let at_half_pi: Vec<SchemeParams> = samples
        .iter()
        .map(|p| SchemeParams::ideal(FRAC_PI_2, p.thetas()).expect("finite"))
        .collect();
    rec.bound(S, "branch_weights_gamma", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for p in &at_half_pi {
            let out = evolve_with(p, faults);
            let mut total = 0.0;
            for b in Branch::BOTH {
                let w = circuit::branch_state(&out, b)?.norm_sqr();
                total += w;
                worst = worst.max((w - gamma(p.thetas(), b)).abs());
            }
            worst = worst.max((total - 1.0).abs());
        }
        Ok((worst, "‖χ′‖² = Γ₁, ‖χ″‖² = Γ₂, sum 1 at φ = π/2".into()))
    });

    let p = &at_half_pi[0];
    rec.note(
        "upper_port_normalization",
        "the state heralded by D1 is normalized by 1/√Γ₁",
        format!(
            "‖χ″‖² = Γ₂ = (1 − ∏cos2θ)/2; e.g. θ = {:?}: Γ₁ = {:.12}, Γ₂ = {:.12}, ‖χ″‖² = {:.12}",
            p.thetas(),
            gamma(p.thetas(), Branch::Prime),
            gamma(p.thetas(), Branch::DoublePrime),
            circuit::branch_state(&circuit::evolve(p), Branch::DoublePrime)
                .map(|s| s.norm_sqr())
                .unwrap_or(f64::NAN)
        ),
        "treated as a typo for 1/√Γ₂; states are normalized by their computed norm",
    );
    rec.note(
        "output_normalization",
        "output state carries an overall factor 1/2",
        "with χ′, χ″ as defined by the component sums, ‖χ′‖² + ‖χ″‖² = 1 without the factor; the circuit output is −i e^{−2iφ}(|01⟩χ′ + |10⟩χ″)",
        "factor dropped; global phase recorded explicitly",
    );
}

fn detection_checks(rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    const S: &str = "detection";
    let states: Vec<StateVector> = (0..20)
        .map(|_| {
            let p = SchemeParams::ideal(rng.random_range(0.0..TAU), random_thetas(rng, PI)).expect("finite");
            circuit::evolve(&p)
        })
        .collect();

    rec.bound(S, "povm_completeness", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for s in &states {
            for eta in ETA_GRID {
                let total: f64 = outcome_probabilities(s, eta)?.iter().map(|(_, p)| p).sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
        Ok((worst, format!("|Σ p − 1| over 20 states × η ∈ {ETA_GRID:?}")))
    });

    rec.bound(S, "double_click_vanishes", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for s in &states {
            worst = worst.max(detect(s, DetectionOutcome::DoubleClick, 1.0)?.probability);
        }
        Ok((worst, "single photon cannot fire both detectors".into()))
    });

    rec.bound(S, "eta_independence", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for s in &states {
            for outcome in [DetectionOutcome::D1ClickD2Null, DetectionOutcome::D2ClickD1Null] {
                let reference = detect(s, outcome, 1.0)?;
                let Some(r) = reference.state.pure() else { continue };
                for eta in ETA_GRID.into_iter().filter(|&e| e > 0.0) {
                    let d = detect(s, outcome, eta)?;
                    let f = d.state.pure().map(|x| x.fidelity(r)).transpose()?.unwrap_or(0.0);
                    worst = worst.max(1.0 - f);
                }
            }
        }
        Ok((worst, "1 − F(click state at η, click state at η = 1)".into()))
    });

    let ges = SchemeParams::ges_point();
    rec.bound(S, "ges_branch_states", STRUCTURAL_TOL, || {
        let prep = prepare_ges(&ges)?;
        let d2 = prep
            .branch(DetectionOutcome::D2ClickD1Null)
            .and_then(|b| b.raw_state.clone());
        let d1 = prep
            .branch(DetectionOutcome::D1ClickD2Null)
            .and_then(|b| b.raw_state.clone());
        let (Some(d2), Some(d1)) = (d2, d1) else {
            return Ok((f64::INFINITY, "a click branch vanished".into()));
        };
        let f2 = 1.0 - d2.fidelity(&ges_seed())?;
        let f1 = 1.0 - d1.fidelity(&ges_partner())?;
        Ok((
            f1.max(f2),
            format!("1 − F: D2 vs χ′ seed {f2:.3e}, D1 vs χ″ partner {f1:.3e}"),
        ))
    });

    rec.bound(S, "ges_branch_probabilities", STRUCTURAL_TOL, || {
        let prep = prepare_ges(&ges)?;
        let worst = prep
            .branches
            .iter()
            .map(|b| (b.probability - 0.5).abs())
            .fold(0.0, f64::max);
        let total = (prep.total_probability() - 1.0).abs();
        Ok((
            worst.max(total),
            "each click 1/2, deterministic total 1 at η = 1".into(),
        ))
    });

    rec.bound(S, "sigma_y_correction", STRUCTURAL_TOL, || {
        let y = sigma_y_on_fourth();
        let mapped = y.apply(&ges_seed())?;
        let f = 1.0 - mapped.fidelity(&ges_partner())?;
        let prep = prepare_ges(&ges)?;
        let corrected = prep
            .branch(DetectionOutcome::D1ClickD2Null)
            .and_then(|b| b.state.clone())
            .map(|s| s.fidelity(&ges_seed()))
            .transpose()?
            .unwrap_or(0.0);
        Ok((
            f.max(1.0 - corrected),
            "σʸ₄ χ′ ≅ χ″ and the corrected D1 branch ≅ χ′".into(),
        ))
    });

    let mut computed = Vec::new();
    rec.bound(S, "success_probability_is_eta", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for eta in ETA_GRID {
            let t = prepare_ges(&ges.with_eta(eta)?)?.total_probability();
            computed.push(format!("η = {eta}: {t:.12} (η² = {:.12})", eta * eta));
            worst = worst.max((t - eta).abs());
        }
        Ok((
            worst,
            "total heralded probability equals η under the single-photon POVM".into(),
        ))
    });
    rec.note(
        "success_probability",
        "deterministic generation succeeds with probability η²",
        computed.join("; "),
        "one photon meets one detector, so the click probability is η; the η² claim is reported, not adopted",
    );
}

fn measure_checks(rec: &mut Recorder, rng: &mut ChaCha8Rng, options: &VerifyOptions) {
    const S: &str = "entanglement-measures";

    rec.bound(S, "ges_genuineness", measures::GENUINE_TOL, || {
        let mut worst: f64 = 0.0;
        for s in [ges_seed(), ges_partner()] {
            let r = measure_report(&s)?;
            worst = worst.max(r.max_concurrence()).max(r.max_entropy_deviation_from_one());
        }
        Ok((worst, "both heralded states: 6 concurrences 0, 7 entropies 1".into()))
    });

    rec.bound(S, "local_unitary_invariance", SPECTRAL_TOL, || {
        let space = HilbertSpace::qubits(&["a", "b"])?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let s1 = random_state(rng, space.clone());
            let s2 = random_state(rng, space.clone());
            let w = rng.random_range(0.0..1.0);
            let rho = DensityMatrix::mixture(&[(w, s1), (1.0 - w, s2)])?;
            let u = random_qubit_unitary(rng, "a").tensor(&random_qubit_unitary(rng, "b"))?;
            let m = u.matrix() * rho.matrix() * u.matrix().adjoint();
            let rotated = DensityMatrix::new(space.clone(), (&m + m.adjoint()) * Complex64::new(0.5, 0.0))?;
            worst = worst.max((concurrence(&rotated)? - concurrence(&rho)?).abs());
        }
        Ok((worst, "20 random rank-2 states under random U₁⊗U₂".into()))
    });

    rec.bound(S, "entropy_symmetry", SPECTRAL_TOL, || {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let s = random_state(rng, atomic_space());
            for cut in Bipartition::all() {
                let a = von_neumann_entropy(&reduced_state(&s, cut.side_a())?)?;
                let b = von_neumann_entropy(&reduced_state(&s, cut.side_b())?)?;
                worst = worst.max((a - b).abs());
            }
        }
        Ok((worst, "S(ρ_A) vs S(ρ_B) over 7 cuts of 10 random states".into()))
    });

    let thetas: Vec<[f64; 4]> = (0..options.measure_samples)
        .map(|_| random_thetas(rng, FRAC_PI_2))
        .collect();
    let (pa, pb) = CALIBRATED_PAIR;
    let cut = Bipartition::new(&CALIBRATED_CUT).expect("static cut");
    rec.bound(S, "closed_form_concurrence", MEASURE_TOL, || {
        let mut worst: f64 = 0.0;
        for t in &thetas {
            for b in Branch::BOTH {
                let s = heralded(*t, b)?;
                worst = worst.max((pair_concurrence(&s, pa, pb)? - concurrence_closed_form(*t, b)?).abs());
            }
        }
        Ok((
            worst,
            format!("pair ({pa},{pb}), both branches, {} random θ at φ = π/2", thetas.len()),
        ))
    });

    rec.bound(S, "closed_form_entropy", MEASURE_TOL, || {
        let mut worst: f64 = 0.0;
        for t in &thetas {
            for b in Branch::BOTH {
                let s = heralded(*t, b)?;
                worst = worst.max((bipartition_entropy(&s, &cut)? - entropy_closed_form(*t, b)?).abs());
            }
        }
        Ok((
            worst,
            format!("cut {cut}, both branches, {} random θ at φ = π/2", thetas.len()),
        ))
    });

    let spot = [FRAC_PI_8; 4];
    rec.bound(S, "spot_lambda", MEASURE_TOL, || {
        let lp = lambda_closed_form(spot, Branch::Prime)?;
        let lm = lambda_closed_form(spot, Branch::DoublePrime)?;
        let np = pair_concurrence(&heralded(spot, Branch::Prime)?, pa, pb)?;
        let nm = pair_concurrence(&heralded(spot, Branch::DoublePrime)?, pa, pb)?;
        let worst = [
            (lp - 0.2).abs(),
            (lm - 1.0 / 3.0).abs(),
            (np - 0.2).abs(),
            (nm - 1.0 / 3.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Ok((
            worst,
            format!("θ = π/8: λ₊ = {lp:.12} (numeric {np:.12}), λ₋ = {lm:.12} (numeric {nm:.12})"),
        ))
    });

    let mut spot_entropy = f64::NAN;
    rec.bound(S, "spot_entropy_oracle", MEASURE_TOL, || {
        let cf = entropy_closed_form(spot, Branch::Prime)?;
        let num = bipartition_entropy(&heralded(spot, Branch::Prime)?, &cut)?;
        spot_entropy = num;
        Ok((
            (cf - num).abs(),
            format!("θ = π/8: closed form {cf:.12}, numeric {num:.12}"),
        ))
    });
    rec.claim(S, "spot_entropy_claimed_value", SPOT_ENTROPY_TOL, || {
        Ok((
            (spot_entropy - CLAIMED_SPOT_ENTROPY).abs(),
            format!("claimed S(χ′) ≈ {CLAIMED_SPOT_ENTROPY}, computed {spot_entropy:.6}"),
        ))
    });
    rec.note(
        "spot_entropy",
        format!("S(χ′) ≈ {CLAIMED_SPOT_ENTROPY} at θ_i = π/8"),
        format!("δ₊ = 0.8 gives S = {spot_entropy:.6}; closed form and numerics agree"),
        "the claimed value does not follow from the entropy formula at δ₊ = 0.8; reported, not adopted",
    );

    if let Ok(s) = heralded(spot, Branch::Prime).and_then(|s| measure_report(&s)) {
        let pair: Vec<String> = s.pair_entropy.values().map(|v| format!("{v:.6}")).collect();
        let single: Vec<String> = s.single_entropy.values().map(|v| format!("{v:.6}")).collect();
        rec.note(
            "one_vs_three_entanglement",
            "1-vs-3 entanglement equals that of any two-qubit pair",
            format!(
                "θ_i = π/8, χ′: 2-2 entropies [{}], 1-3 entropies [{}]",
                pair.join(", "),
                single.join(", ")
            ),
            "equal only at θ_i = π/4 where every reduction is maximally mixed; asserted there only",
        );
    }
    rec.note(
        "calibration",
        "the concurrence and entropy formulas hold for any two atomic qubits",
        format!(
            "the formulas are not symmetric in θ; brute-force matching selects pair ({pa},{pb}) for concurrence and cut {cut} for entropy"
        ),
        "closed forms are compared against the calibrated pair and cut",
    );
}

/// Normalized heralded state at `φ = π/2`.
fn heralded(thetas: [f64; 4], branch: Branch) -> Result<StateVector> {
    let p = SchemeParams::ideal(FRAC_PI_2, thetas)?;
    closed_form_chi(&p, branch).normalized()
}

fn basis_checks(rec: &mut Recorder, rng: &mut ChaCha8Rng, options: &VerifyOptions) {
    const S: &str = "ges-basis";
    let basis = explicit_basis();

    rec.bound(S, "orthonormality", STRUCTURAL_TOL, || {
        Ok((basis.orthonormality_deviation(), "max |G − I₁₆|".into()))
    });
    rec.bound(S, "completeness", STRUCTURAL_TOL, || {
        Ok((basis.completeness_deviation(), "max |Σ|φ⟩⟨φ| − I₁₆|".into()))
    });
    rec.bound(S, "all_states_genuine", measures::GENUINE_TOL, || {
        let r = verify_representation(&basis)?;
        let worst = r
            .states
            .iter()
            .map(|s| {
                s.report
                    .max_concurrence()
                    .max(s.report.max_entropy_deviation_from_one())
            })
            .fold(0.0, f64::max);
        Ok((worst, format!("{}/16 genuine", r.genuine_count())))
    });

    rec.bound(S, "parseval", STRUCTURAL_TOL, || {
        let mut worst: f64 = 0.0;
        for _ in 0..options.measure_samples {
            let s = random_state(rng, atomic_space());
            let d = decompose(&s, &basis)?;
            worst = worst.max((d.weight() - 1.0).abs()).max(d.residual);
        }
        Ok((
            worst,
            format!(
                "|Σ|c|² − 1| and residual over {} random states",
                options.measure_samples
            ),
        ))
    });

    for (name, which) in [
        ("decompose_ghz4", CanonicalState::Ghz4),
        ("decompose_w4", CanonicalState::W4),
        ("decompose_cl4", CanonicalState::Cl4),
    ] {
        rec.bound(S, name, STRUCTURAL_TOL, || {
            let d = decompose(&canonical_state(which), &basis)?;
            let cmp = compare_to_reference(&d, &reference_expansion(which));
            Ok((cmp.max_deviation, format!("aligned by phase {:.6}", cmp.phase)))
        });
    }

    let mut d4_dev = f64::NAN;
    rec.claim(S, "decompose_d4", STRUCTURAL_TOL, || {
        let d = decompose(&canonical_state(CanonicalState::D4), &basis)?;
        let cmp = compare_to_reference(&d, &reference_expansion(CanonicalState::D4));
        d4_dev = cmp.max_deviation;
        Ok((cmp.max_deviation, "reference expansion vs computed coefficients".into()))
    });
    rec.bound(S, "decompose_d4_computed", STRUCTURAL_TOL, || {
        let d = decompose(&canonical_state(CanonicalState::D4), &basis)?;
        let cmp = compare_to_reference(&d, &d4_expansion());
        Ok((
            cmp.max_deviation.max(d.residual),
            "−(√3/2)φ₁,₀ + (φ₂,₃ + φ₃,₃ + φ₄,₀)/(2√3)".into(),
        ))
    });
    let recon = crate::basis::reference_state(&reference_expansion(CanonicalState::D4), &basis);
    let wrong: Vec<String> = recon
        .support(1e-9)
        .into_iter()
        .filter(|(_, a)| a.re < 0.0)
        .map(|(l, a)| format!("{:+.6}|{l}⟩", a.re))
        .collect();
    rec.note(
        "dicke_expansion",
        "D₄ = (2φ₂,₃ − φ₄,₃ + φ₂,₀ + φ₁,₃ − φ₃,₀ − 2φ₁,₀)/(2√3)",
        format!(
            "that combination is normalized but not D₄ (max coefficient deviation {d4_dev:.6}; negative terms {}); \
             D₄ = −(√3/2)φ₁,₀ + (φ₂,₃ + φ₃,₃ + φ₄,₀)/(2√3)",
            wrong.join(" ")
        ),
        "reported; the computed decomposition is verified separately",
    );

    match generate_basis(&ges_seed()).and_then(|g| compare_bases(&basis, &g, STRUCTURAL_TOL).map(|c| (g, c))) {
        Ok((generated, agreement)) => {
            rec.bound(S, "generated_orthonormality", STRUCTURAL_TOL, || {
                Ok((
                    generated.orthonormality_deviation(),
                    "Pauli-generated basis, max |G − I₁₆|".into(),
                ))
            });
            rec.bound(S, "generated_matches_up_to_phase", STRUCTURAL_TOL, || {
                let worst = agreement.iter().map(|a| (a.overlap - 1.0).abs()).fold(0.0, f64::max);
                let quarter = agreement
                    .iter()
                    .map(|a| {
                        [1.0, -1.0]
                            .iter()
                            .flat_map(|&s| [Complex64::new(s, 0.0), Complex64::new(0.0, s)])
                            .map(|q| (a.phase - q).norm())
                            .fold(f64::INFINITY, f64::min)
                    })
                    .fold(0.0, f64::max);
                Ok((
                    worst.max(quarter),
                    "|⟨explicit|generated⟩| = 1, phases in {±1, ±i}".into(),
                ))
            });
            let phases: Vec<String> = agreement
                .iter()
                .map(|a| format!("({}): {}", a.index, phase_name(a.phase)))
                .collect();
            let identical = agreement.iter().filter(|a| a.identical).count();
            rec.note(
                "pauli_phases",
                "the Pauli-string construction on the seed reproduces the tabulated states",
                format!(
                    "{identical}/16 identical; generated = phase · explicit with {}",
                    phases.join(", ")
                ),
                "tabulated states are the basis of record; generated states agree up to these global phases",
            );
        }
        Err(e) => rec.bound(S, "generated_basis", 0.0, || Err(e)),
    }

    rec.exceeds(S, "corrupted_basis_detected", STRUCTURAL_TOL, || {
        let i = GesIndex::new(3, 1)?;
        let mut amps: Vec<Complex64> = basis.get(i).amplitudes().iter().copied().collect();
        amps[0b1110] = -amps[0b1110];
        let bad = basis.with_state(i, StateVector::new(atomic_space(), amps)?)?;
        Ok((
            bad.orthonormality_deviation(),
            "negative control: one sign flipped in (3,1)".into(),
        ))
    });
}

/// Computed expansion of the Dicke state in the explicit basis.
pub fn d4_expansion() -> Vec<(GesIndex, f64)> {
    let i = |f, c| GesIndex::new(f, c).expect("static index");
    let s = 1.0 / (2.0 * 3f64.sqrt());
    vec![
        (i(1, 0), -(3f64.sqrt()) / 2.0),
        (i(2, 3), s),
        (i(3, 3), s),
        (i(4, 0), s),
    ]
}

fn phase_name(z: Complex64) -> String {
    for (q, name) in [
        (Complex64::new(1.0, 0.0), "1"),
        (Complex64::new(-1.0, 0.0), "-1"),
        (Complex64::new(0.0, 1.0), "i"),
        (Complex64::new(0.0, -1.0), "-i"),
    ] {
        if (z - q).norm() < 1e-9 {
            return name.to_owned();
        }
    }
    format!("{:.6}{:+.6}i", z.re, z.im)
}
