mod common;

use common::{atomic_state, raw_amplitudes, state_from, thetas};
use ges_core::basis::{decompose, explicit_basis};
use ges_core::circuit::{self, atomic_space, Branch, SchemeParams};
use ges_core::detection::{detect, outcome_probabilities, DetectionOutcome};
use ges_core::measures::{concurrence, von_neumann_entropy, Bipartition};
use ges_core::verify::random_qubit_unitary;
use ges_core::{partial_trace_matrix, reduced_state, DensityMatrix, HilbertSpace, Operator};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, TAU};

fn max_abs(m: &nalgebra::DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(a in raw_amplitudes(2), b in raw_amplitudes(4), c in raw_amplitudes(2)) {
        let a = state_from(HilbertSpace::qubits(&["a"]).unwrap(), &a);
        let b = state_from(HilbertSpace::qubits(&["b", "c"]).unwrap(), &b);
        let c = state_from(HilbertSpace::qubits(&["d"]).unwrap(), &c);
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert_eq!(left.space(), right.space());
        prop_assert!(left.max_deviation(&right).unwrap() <= 1e-15);
    }

    #[test]
    fn partial_trace_is_linear_and_trace_preserving(
        psi in atomic_state(),
        phi in atomic_state(),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
        keep_mask in 0u8..16,
    ) {
        let space = atomic_space();
        let keep: Vec<&str> = circuit::QUBITS
            .iter()
            .enumerate()
            .filter(|(k, _)| keep_mask >> k & 1 == 1)
            .map(|(_, l)| *l)
            .collect();
        let p = psi.amplitudes() * psi.amplitudes().adjoint();
        let q = phi.amplitudes() * phi.amplitudes().adjoint();
        let (x, y) = (Complex64::new(x, 0.0), Complex64::new(0.0, y));
        let (_, mixed) = partial_trace_matrix(&space, &(&p * x + &q * y), &keep).unwrap();
        let (_, tp) = partial_trace_matrix(&space, &p, &keep).unwrap();
        let (_, tq) = partial_trace_matrix(&space, &q, &keep).unwrap();
        prop_assert!(max_abs(&(mixed - (&tp * x + tq * y))) <= 1e-12);
        prop_assert!((tp.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn reduced_spectra_are_probability_vectors(psi in atomic_state()) {
        for cut in Bipartition::all() {
            let vals = reduced_state(&psi, cut.side_a()).unwrap().eigenvalues().unwrap();
            prop_assert!((vals.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(vals.iter().all(|&v| v >= -1e-10));
        }
    }

    #[test]
    fn entropy_is_symmetric_across_every_cut(psi in atomic_state()) {
        for cut in Bipartition::all() {
            let a = von_neumann_entropy(&reduced_state(&psi, cut.side_a()).unwrap()).unwrap();
            let b = von_neumann_entropy(&reduced_state(&psi, cut.side_b()).unwrap()).unwrap();
            prop_assert!((a - b).abs() <= 1e-10, "{cut}: {a} vs {b}");
        }
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(
        s1 in raw_amplitudes(4),
        s2 in raw_amplitudes(4),
        w in 0.0..1.0f64,
        seed in any::<u64>(),
    ) {
        let space = HilbertSpace::qubits(&["a", "b"]).unwrap();
        let rho = DensityMatrix::mixture(&[
            (w, state_from(space.clone(), &s1)),
            (1.0 - w, state_from(space.clone(), &s2)),
        ]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Operator = random_qubit_unitary(&mut rng, "a").tensor(&random_qubit_unitary(&mut rng, "b")).unwrap();
        let m = u.matrix() * rho.matrix() * u.matrix().adjoint();
        let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let rotated = DensityMatrix::new(space, m).unwrap();
        let (c0, c1) = (concurrence(&rho).unwrap(), concurrence(&rotated).unwrap());
        prop_assert!((c0 - c1).abs() <= 1e-10, "{c0} vs {c1}");
        prop_assert!((0.0..=1.0).contains(&c0));
    }

    #[test]
    fn parseval_in_the_explicit_basis(psi in atomic_state()) {
        let d = decompose(&psi, &explicit_basis()).unwrap();
        prop_assert!((d.weight() - 1.0).abs() <= 1e-12);
        prop_assert!(d.residual <= 1e-12);
    }

    #[test]
    fn povm_probabilities_sum_to_one(phi in 0.0..TAU, t in thetas(), eta in 0.0..=1.0f64) {
        let out = circuit::evolve(&SchemeParams::ideal(phi, t).unwrap());
        let p = outcome_probabilities(&out, eta).unwrap();
        let total: f64 = p.iter().map(|(_, x)| x).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|(_, x)| *x >= 0.0));
    }

    #[test]
    fn click_states_do_not_depend_on_eta(t in thetas(), eta in 0.01..=1.0f64) {
        let out = circuit::evolve(&SchemeParams::ideal(FRAC_PI_2, t).unwrap());
        for o in [DetectionOutcome::D1ClickD2Null, DetectionOutcome::D2ClickD1Null] {
            let ideal = detect(&out, o, 1.0).unwrap();
            let lossy = detect(&out, o, eta).unwrap();
            prop_assert!((lossy.probability - eta * ideal.probability).abs() <= 1e-12);
            if let (Some(a), Some(b)) = (ideal.state.pure(), lossy.state.pure()) {
                prop_assert!(a.fidelity(b).unwrap() >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn circuit_matches_closed_form(phi in -TAU..2.0 * TAU, t in thetas()) {
        let p = SchemeParams::ideal(phi, t).unwrap();
        let out = circuit::evolve(&p);
        let g = circuit::closed_form_global_phase(phi);
        for b in Branch::BOTH {
            let num = circuit::branch_state(&out, b).unwrap();
            let cf = circuit::closed_form_chi(&p, b).scaled(g);
            prop_assert!(num.max_deviation(&cf).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn circuit_is_unitary_and_conserves_photons(phi in 0.0..TAU, t in thetas()) {
        prop_assert!(circuit::mz_circuit(phi).unitarity_deviation() <= 1e-12);
        let out = circuit::evolve(&SchemeParams::ideal(phi, t).unwrap());
        prop_assert!(ges_core::detection::one_photon_leakage(&out).unwrap() <= 1e-12);
        prop_assert!((out.norm_sqr() - 1.0).abs() <= 1e-12);
    }
}
