//! Grid sweeps comparing closed-form and numerical branch measures.
//!
//! Grid order is lexicographic with φ outermost, then θ₁..θ₄, then η.
//! Closed-form columns are filled only at `φ ≡ π/2`, where they apply.

use std::f64::consts::FRAC_PI_2;

use ges_core::circuit::{self, Branch, SchemeParams};
use ges_core::measures::{
    bipartition_entropy, concurrence_closed_form, entropy_closed_form, lambda_closed_form, pair_concurrence,
    Bipartition, CALIBRATED_CUT, CALIBRATED_PAIR,
};
use ges_core::StateVector;
use serde::Serialize;

use super::Outcome;
use crate::angle::Axis;
use crate::args::SweepArgs;
use crate::error::{CliError, Result};
use crate::output::{opt_real, Format, Output};

/// Branch weights below this are treated as vanishing.
const VANISHING_WEIGHT: f64 = 1e-14;

pub const COLUMNS: [&str; 26] = [
    "phi",
    "theta1",
    "theta2",
    "theta3",
    "theta4",
    "eta",
    "gamma1",
    "gamma2",
    "weight_prime",
    "weight_double_prime",
    "p_d2",
    "p_d1",
    "lambda_plus",
    "lambda_minus",
    "concurrence_cf_prime",
    "concurrence_num_prime",
    "concurrence_diff_prime",
    "concurrence_cf_double_prime",
    "concurrence_num_double_prime",
    "concurrence_diff_double_prime",
    "entropy_cf_prime",
    "entropy_num_prime",
    "entropy_diff_prime",
    "entropy_cf_double_prime",
    "entropy_num_double_prime",
    "entropy_diff_double_prime",
];

#[derive(Debug, Serialize)]
pub struct SweepTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }
}

fn theta_axes(args: &SweepArgs) -> Vec<Axis> {
    let default = args.theta.unwrap_or(Axis::point(std::f64::consts::FRAC_PI_4));
    [args.theta1, args.theta2, args.theta3, args.theta4]
        .iter()
        .map(|a| a.unwrap_or(default))
        .collect()
}

/// All grid points `(φ, θ, η)` in output order.
pub fn grid(args: &SweepArgs) -> Result<Vec<(f64, [f64; 4], f64)>> {
    if args.eta.is_empty() {
        return Err(CliError::Usage("at least one eta value is required".into()));
    }
    let axes = theta_axes(args);
    let theta_points = if args.lock_equal {
        args.theta.map(|a| a.count).unwrap_or(1)
    } else {
        axes.iter()
            .map(|a| a.count)
            .try_fold(1usize, |acc, c| acc.checked_mul(c))
            .unwrap_or(usize::MAX)
    };
    let total = args
        .phi
        .count
        .checked_mul(theta_points)
        .and_then(|n| n.checked_mul(args.eta.len()))
        .unwrap_or(usize::MAX);
    if total > args.max_points {
        return Err(CliError::Usage(format!(
            "grid has {total} points, above the cap of {} (raise --max-points)",
            args.max_points
        )));
    }
    let thetas: Vec<[f64; 4]> = if args.lock_equal {
        args.theta
            .expect("clap requires --theta")
            .values()
            .into_iter()
            .map(|t| [t; 4])
            .collect()
    } else {
        let v: Vec<Vec<f64>> = axes.iter().map(Axis::values).collect();
        let mut out = Vec::with_capacity(theta_points);
        for &a in &v[0] {
            for &b in &v[1] {
                for &c in &v[2] {
                    for &d in &v[3] {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    };
    let mut points = Vec::with_capacity(total);
    for phi in args.phi.values() {
        for t in &thetas {
            for &eta in &args.eta {
                points.push((phi, *t, eta));
            }
        }
    }
    Ok(points)
}

fn diff(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some((a? - b?).abs())
}

/// One full row in [`COLUMNS`] order.
pub fn row(phi: f64, thetas: [f64; 4], eta: f64) -> Result<Vec<Option<f64>>> {
    let params = SchemeParams::new(phi, thetas, eta)?;
    let out = circuit::evolve(&params);
    let at_half_pi = (params.phi_reduced() - FRAC_PI_2).abs() <= 1e-12;
    let cut = Bipartition::new(&CALIBRATED_CUT)?;
    let (pa, pb) = CALIBRATED_PAIR;

    let mut weights = [0.0; 2];
    let mut conc = [[None; 3]; 2];
    let mut ent = [[None; 3]; 2];
    let mut lambda = [None; 2];
    for (k, b) in Branch::BOTH.into_iter().enumerate() {
        let chi = circuit::branch_state(&out, b)?;
        weights[k] = chi.norm_sqr();
        let state: Option<StateVector> = (weights[k] > VANISHING_WEIGHT).then(|| chi.normalized()).transpose()?;
        let cf_c = at_half_pi.then(|| concurrence_closed_form(thetas, b).ok()).flatten();
        let cf_s = at_half_pi.then(|| entropy_closed_form(thetas, b).ok()).flatten();
        lambda[k] = at_half_pi.then(|| lambda_closed_form(thetas, b).ok()).flatten();
        let num_c = state.as_ref().map(|s| pair_concurrence(s, pa, pb)).transpose()?;
        let num_s = state.as_ref().map(|s| bipartition_entropy(s, &cut)).transpose()?;
        conc[k] = [cf_c, num_c, diff(cf_c, num_c)];
        ent[k] = [cf_s, num_s, diff(cf_s, num_s)];
    }
    let gammas = Branch::BOTH.map(|b| at_half_pi.then(|| circuit::gamma(thetas, b)));
    let mut r = vec![Some(phi)];
    r.extend(thetas.iter().map(|t| Some(*t)));
    r.push(Some(eta));
    r.extend(gammas);
    r.extend(weights.map(Some));
    r.push(Some(eta * weights[0]));
    r.push(Some(eta * weights[1]));
    r.extend(lambda);
    r.extend(conc.iter().flatten().copied());
    r.extend(ent.iter().flatten().copied());
    debug_assert_eq!(r.len(), COLUMNS.len());
    Ok(r)
}

pub fn sweep(args: &SweepArgs) -> Result<SweepTable> {
    let selected: Vec<usize> = match &args.columns {
        None => (0..COLUMNS.len()).collect(),
        Some(names) => names
            .iter()
            .map(|n| {
                COLUMNS
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| CliError::Usage(format!("unknown column `{n}`; known: {}", COLUMNS.join(", "))))
            })
            .collect::<Result<_>>()?,
    };
    let mut rows = Vec::new();
    for (phi, t, eta) in grid(args)? {
        let full = row(phi, t, eta)?;
        rows.push(selected.iter().map(|&i| full[i]).collect());
    }
    Ok(SweepTable {
        columns: selected.iter().map(|&i| COLUMNS[i]).collect(),
        rows,
    })
}

pub fn run(args: &SweepArgs, out: &mut Output) -> Result<Outcome> {
    let table = sweep(args)?;
    match out.format {
        Format::Json => out.json(&table)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|x| opt_real(*x)).collect())
                .collect();
            out.csv(&table.columns, &rows)?;
        }
        Format::Text => {
            let w = out.writer();
            let width = |c: &str| c.len().max(14);
            for c in &table.columns {
                write!(w, "{:>w$} ", c, w = width(c))?;
            }
            writeln!(w)?;
            for r in &table.rows {
                for (c, x) in table.columns.iter().zip(r) {
                    let cell = x.map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into());
                    write!(w, "{:>w$} ", cell, w = width(c))?;
                }
                writeln!(w)?;
            }
        }
    }
    Ok(Outcome::Success)
}
