//! Acceptance criteria, one line each.
//!
//! Tolerances are pinned here and never loosened. A criterion that the
//! physics cannot meet stays red; `/root/notes/decisions.md` carries the
//! analysis.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, TAU};
use std::process::{Command, ExitCode};

use ges_core::basis::{
    self, canonical_state, compare_to_reference, decompose, explicit_basis, reference_expansion, CanonicalState,
};
use ges_core::circuit::{self, atomic_space, Branch, SchemeParams};
use ges_core::detection::{self, detect, outcome_probabilities, DetectionOutcome};
use ges_core::measures::{self, CALIBRATED_CUT, CALIBRATED_PAIR};
use ges_core::verify::{self, random_state, VerifyOptions};
use ges_core::{reduced_state, StateVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const AMPLITUDE_TOL: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-12;
const GENUINE_TOL: f64 = 1e-10;
const MEASURE_TOL: f64 = 1e-9;
const SPOT_TOL: f64 = 1e-12;
const SPOT_ENTROPY: f64 = 0.8813;
const SPOT_ENTROPY_TOL: f64 = 1e-4;
const ETAS: [f64; 5] = [0.0, 0.25, 0.5, 0.8, 1.0];

/// Sub-checks of one criterion; the criterion passes iff all do.
struct Criterion {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// `measured ≤ tol`.
    fn within(&mut self, what: &str, measured: f64, tol: f64) {
        let line = format!("{what} {measured:.3e} (tol {tol:.0e})");
        if measured <= tol && measured.is_finite() {
            self.notes.push(line);
        } else {
            self.failures.push(line);
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if ok {
            self.notes.push(what.to_owned());
        } else {
            self.failures.push(what.to_owned());
        }
    }

    fn expect<T>(&mut self, what: &str, r: ges_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng, phi: Option<f64>) -> SchemeParams {
    let phi = phi.unwrap_or_else(|| rng.random_range(0.0..TAU));
    let t = std::array::from_fn(|_| rng.random_range(0.0..FRAC_PI_2));
    SchemeParams::ideal(phi, t).unwrap()
}

fn circuit_oracle() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p = random_params(&mut rng, None);
        let out = circuit::evolve(&p);
        // One global phase shared by both branches, fitted on their joint overlap.
        let pairs = Branch::BOTH.map(|b| (circuit::branch_state(&out, b).unwrap(), circuit::closed_form_chi(&p, b)));
        let ov: Complex64 = pairs.iter().map(|(num, cf)| num.inner(cf).unwrap()).sum();
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for (num, cf) in &pairs {
            worst = worst.max(num.scaled(phase).max_deviation(cf).unwrap());
        }
    }
    c.within("200 samples, max amplitude deviation", worst, AMPLITUDE_TOL);
    c
}

fn post_selection_norms() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p = random_params(&mut rng, Some(FRAC_PI_2));
        let out = circuit::evolve(&p);
        for b in Branch::BOTH {
            let w = circuit::branch_state(&out, b).unwrap().norm_sqr();
            worst = worst.max((w - circuit::gamma(p.thetas(), b)).abs());
        }
    }
    c.within("200 samples, max |‖χ‖² − Γ|", worst, AMPLITUDE_TOL);
    c
}

fn ges_preparation() -> Criterion {
    let mut c = Criterion::new();
    let out = circuit::evolve(&SchemeParams::ges_point());
    let infidelity = |a: &StateVector, b: &StateVector| 1.0 - a.fidelity(b).unwrap();
    for (o, want) in [
        (DetectionOutcome::D2ClickD1Null, basis::ges_seed()),
        (DetectionOutcome::D1ClickD2Null, basis::ges_partner()),
    ] {
        let Some(d) = c.expect(o.name(), detect(&out, o, 1.0)) else {
            continue;
        };
        c.within(
            &format!("{} |p − 0.5|", o.name()),
            (d.probability - 0.5).abs(),
            AMPLITUDE_TOL,
        );
        match d.state.pure() {
            Some(s) => c.within(&format!("{} infidelity", o.name()), infidelity(s, &want), FIDELITY_TOL),
            None => c.holds(&format!("{} state is pure", o.name()), false),
        }
    }
    let y = detection::sigma_y_on_fourth();
    let mapped = y.apply(&basis::ges_seed()).unwrap();
    c.within(
        "σʸ₄ image infidelity",
        infidelity(&mapped, &basis::ges_partner()),
        FIDELITY_TOL,
    );
    if let Some(prep) = c.expect("prepare", detection::prepare_ges(&SchemeParams::ges_point())) {
        c.within(
            "deterministic |P − 1|",
            (prep.total_probability() - 1.0).abs(),
            AMPLITUDE_TOL,
        );
    }
    c
}

fn genuineness() -> Criterion {
    let mut c = Criterion::new();
    for (name, s) in [("χ′", basis::ges_seed()), ("χ″", basis::ges_partner())] {
        let Some(r) = c.expect(name, measures::measure_report(&s)) else {
            continue;
        };
        c.holds(
            &format!("{name}: 6 pairs, 7 cuts"),
            r.pairwise_concurrence.len() == 6 && r.entropies().count() == 7,
        );
        c.within(&format!("{name} max C"), r.max_concurrence(), GENUINE_TOL);
        c.within(
            &format!("{name} max |S − 1|"),
            r.max_entropy_deviation_from_one(),
            GENUINE_TOL,
        );
    }
    c
}

fn closed_form_measures() -> Criterion {
    let mut c = Criterion::new();
    let (pa, pb) = CALIBRATED_PAIR;
    let cut = measures::Bipartition::new(&CALIBRATED_CUT).unwrap();
    let numeric = |t: [f64; 4], b: Branch| {
        let p = SchemeParams::ideal(FRAC_PI_2, t).unwrap();
        let s = circuit::closed_form_chi(&p, b).normalized().unwrap();
        let conc = measures::concurrence(&reduced_state(&s, &[pa, pb]).unwrap()).unwrap();
        (conc, measures::bipartition_entropy(&s, &cut).unwrap())
    };

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut dc, mut ds) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let t = random_params(&mut rng, Some(FRAC_PI_2)).thetas();
        for b in Branch::BOTH {
            let (conc, ent) = numeric(t, b);
            dc = dc.max((conc - measures::concurrence_closed_form(t, b).unwrap()).abs());
            ds = ds.max((ent - measures::entropy_closed_form(t, b).unwrap()).abs());
        }
    }
    c.within("100 samples, concurrence", dc, MEASURE_TOL);
    c.within("entropy", ds, MEASURE_TOL);

    let spot = [FRAC_PI_8; 4];
    let (c_prime, s_prime) = numeric(spot, Branch::Prime);
    let (c_double, _) = numeric(spot, Branch::DoublePrime);
    let l_plus = measures::lambda_closed_form(spot, Branch::Prime).unwrap();
    let l_minus = measures::lambda_closed_form(spot, Branch::DoublePrime).unwrap();
    c.within("|λ₊ − 0.2|", (l_plus - 0.2).abs().max((c_prime - 0.2).abs()), SPOT_TOL);
    c.within(
        "|λ₋ − 1/3|",
        (l_minus - 1.0 / 3.0).abs().max((c_double - 1.0 / 3.0).abs()),
        SPOT_TOL,
    );
    c.within(
        &format!("|S(χ′) − {SPOT_ENTROPY}| with S(χ′) = {s_prime:.6}"),
        (s_prime - SPOT_ENTROPY).abs(),
        SPOT_ENTROPY_TOL,
    );
    c
}

fn basis_validity() -> Criterion {
    let mut c = Criterion::new();
    let b = explicit_basis();
    c.within("‖G − I‖max", b.orthonormality_deviation(), AMPLITUDE_TOL);
    c.within("‖Σ|φ⟩⟨φ| − I‖max", b.completeness_deviation(), AMPLITUDE_TOL);
    let mut genuine = 0;
    for (_, s) in b.iter() {
        if let Some(r) = c.expect("report", measures::measure_report(s)) {
            if r.max_concurrence() <= GENUINE_TOL && r.max_entropy_deviation_from_one() <= GENUINE_TOL {
                genuine += 1;
            }
        }
    }
    c.holds(&format!("{genuine}/16 genuine"), genuine == 16);
    c
}

fn decompositions() -> Criterion {
    let mut c = Criterion::new();
    let b = explicit_basis();
    for name in CanonicalState::ALL {
        let d = decompose(&canonical_state(name), &b).unwrap();
        let cmp = compare_to_reference(&d, &reference_expansion(name));
        c.within(&format!("{} pattern", name.name()), cmp.max_deviation, AMPLITUDE_TOL);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d = decompose(&random_state(&mut rng, atomic_space()), &b).unwrap();
        worst = worst.max((d.weight() - 1.0).abs()).max(d.residual);
    }
    c.within("100 samples, Parseval", worst, AMPLITUDE_TOL);
    c
}

fn detector_model() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut sum_dev, mut infid) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let out = circuit::evolve(&random_params(&mut rng, Some(FRAC_PI_2)));
        for eta in ETAS {
            let p = outcome_probabilities(&out, eta).unwrap();
            sum_dev = sum_dev.max((p.iter().map(|(_, x)| x).sum::<f64>() - 1.0).abs());
        }
        for o in [DetectionOutcome::D1ClickD2Null, DetectionOutcome::D2ClickD1Null] {
            let ideal = detect(&out, o, 1.0).unwrap();
            for eta in ETAS.into_iter().filter(|&e| e > 0.0) {
                let lossy = detect(&out, o, eta).unwrap();
                if let (Some(a), Some(b)) = (ideal.state.pure(), lossy.state.pure()) {
                    infid = infid.max(1.0 - a.fidelity(b).unwrap());
                }
            }
        }
    }
    c.within("|Σp − 1|", sum_dev, AMPLITUDE_TOL);
    c.within("click-state infidelity vs η=1", infid, FIDELITY_TOL);

    let (_, log) = verify::run_suite(&VerifyOptions {
        seed: SEED,
        ..VerifyOptions::default()
    });
    let entry = log.entries.iter().find(|e| e.topic == "success_probability");
    c.holds(
        "success probability logged next to the η² claim",
        entry.is_some_and(|e| e.claim.contains("η²") && !e.computed.is_empty()),
    );
    c
}

fn determinism() -> Criterion {
    let mut c = Criterion::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ges"))
            .args(["verify", "--seed", "42", "--json"])
            .env("RUST_LOG", "off")
            .output()
            .expect("ges runs")
    };
    let (a, b) = (run(), run());
    c.holds("two runs exit 0", a.status.success() && b.status.success());
    c.holds(
        &format!("{} bytes, identical", a.stdout.len()),
        !a.stdout.is_empty() && a.stdout == b.stdout,
    );
    c
}

fn main() -> ExitCode {
    type Check = fn() -> Criterion;
    let criteria: [(&str, Check); 9] = [
        ("circuit-oracle equivalence", circuit_oracle),
        ("post-selection normalization", post_selection_norms),
        ("GES preparation", ges_preparation),
        ("genuineness signature", genuineness),
        ("closed-form measures", closed_form_measures),
        ("basis validity", basis_validity),
        ("decompositions", decompositions),
        ("detector model", detector_model),
        ("determinism", determinism),
    ];
    let mut red = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let c = f();
        if c.failures.is_empty() {
            println!("PASS {} {name}: {}", k + 1, c.notes.join("; "));
        } else {
            red += 1;
            println!(
                "FAIL {} {name}: {} | ok: {}",
                k + 1,
                c.failures.join("; "),
                c.notes.join("; ")
            );
        }
    }
    println!("{} of {} criteria pass", criteria.len() - red, criteria.len());
    if red == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
