#![allow(dead_code)]

use ges_core::circuit::atomic_space;
use ges_core::{HilbertSpace, StateVector};
use num_complex::Complex64;
use proptest::prelude::*;

/// Normalized state on `space` from raw (re, im) pairs.
pub fn state_from(space: HilbertSpace, raw: &[(f64, f64)]) -> StateVector {
    let amps = raw.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    StateVector::new(space, amps).unwrap().normalized().unwrap()
}

/// Raw amplitudes bounded away from the zero vector.
pub fn raw_amplitudes(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
}

pub fn atomic_state() -> impl Strategy<Value = StateVector> {
    raw_amplitudes(16).prop_map(|r| state_from(atomic_space(), &r))
}

pub fn thetas() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0..std::f64::consts::PI)
}
