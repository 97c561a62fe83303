use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, HermitianEigen, SPECTRAL_TOL, STRUCTURAL_TOL};
use crate::operator::Operator;
use crate::space::HilbertSpace;
use crate::state::StateVector;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace (both within 1e-12) and a
    /// spectrum bounded below by −1e-10.
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let n = space.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        let herm = linalg::hermiticity_deviation(&matrix);
        if herm > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL_TOL || tr.im.abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}")));
        }
        let eig = linalg::eigh(&matrix)?;
        if let Some(&min) = eig.values.last() {
            if min < -SPECTRAL_TOL {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { space, matrix })
    }

    /// `|ψ⟩⟨ψ|` of a normalized state.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        state.require_normalized()?;
        let v = state.amplitudes();
        Ok(Self {
            space: state.space().clone(),
            matrix: v * v.adjoint(),
        })
    }

    /// `Σ p_k |ψ_k⟩⟨ψ_k|` for normalized states and probabilities summing to 1.
    pub fn mixture(terms: &[(f64, StateVector)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let space = first.1.space().clone();
        let n = space.dim();
        let mut m = CMatrix::zeros(n, n);
        for (p, s) in terms {
            if s.space() != &space {
                return Err(Error::SpaceMismatch);
            }
            if *p < 0.0 {
                return Err(Error::InvalidDensity(format!("negative weight {p}")));
            }
            s.require_normalized()?;
            let v = s.amplitudes();
            m += (v * v.adjoint()) * Complex64::new(*p, 0.0);
        }
        Self::new(space, m)
    }

    pub fn maximally_mixed(space: HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: CMatrix::identity(n, n) * Complex64::new(1.0 / n as f64, 0.0),
        }
    }

    pub(crate) fn from_parts_unchecked(space: HilbertSpace, matrix: CMatrix) -> Self {
        Self { space, matrix }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigen()?.values)
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        linalg::eigh(&self.matrix)
    }

    /// Reduced state on `keep`, with factors ordered as listed.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        let (space, matrix) = partial_trace_matrix(&self.space, &self.matrix, keep)?;
        Ok(Self { space, matrix })
    }
}

/// Anything backed by a square complex matrix on a labeled space.
pub trait MatrixOnSpace {
    fn space(&self) -> &HilbertSpace;
    fn matrix(&self) -> &CMatrix;
}

impl MatrixOnSpace for DensityMatrix {
    fn space(&self) -> &HilbertSpace {
        &self.space
    }
    fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

impl MatrixOnSpace for Operator {
    fn space(&self) -> &HilbertSpace {
        Operator::space(self)
    }
    fn matrix(&self) -> &CMatrix {
        Operator::matrix(self)
    }
}

/// Real eigenvalues of a Hermitian operator or density matrix, descending.
pub fn eig_hermitian<M: MatrixOnSpace>(m: &M) -> Result<Vec<f64>> {
    Ok(linalg::eigh(m.matrix())?.values)
}

/// Partial trace of an arbitrary square matrix over every factor not listed
/// in `keep`. Linear in `matrix`; works for operators as well as states.
pub fn partial_trace_matrix<S: AsRef<str>>(
    space: &HilbertSpace,
    matrix: &CMatrix,
    keep: &[S],
) -> Result<(HilbertSpace, CMatrix)> {
    let n = space.dim();
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: matrix.nrows(),
        });
    }
    let keep_pos: Vec<usize> = keep.iter().map(|l| space.position(l.as_ref())).collect::<Result<_>>()?;
    let kept = space.subspace(keep)?;
    let traced_pos: Vec<usize> = (0..space.len()).filter(|k| !keep_pos.contains(k)).collect();
    let traced_dims: Vec<usize> = traced_pos.iter().map(|&k| space.factors()[k].dim()).collect();
    let traced_dim: usize = traced_dims.iter().product();

    let m = kept.dim();
    let mut out = CMatrix::zeros(m, m);
    let mut digits = vec![0usize; space.len()];
    for r in 0..m {
        let rd = kept.to_multi_index(r);
        for c in 0..m {
            let cd = kept.to_multi_index(c);
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..traced_dim {
                let mut rest = e;
                for (slot, &d) in traced_pos.iter().zip(&traced_dims).rev() {
                    digits[*slot] = rest % d;
                    rest /= d;
                }
                for (&p, &v) in keep_pos.iter().zip(&rd) {
                    digits[p] = v;
                }
                let row = space.from_multi_index(&digits)?;
                for (&p, &v) in keep_pos.iter().zip(&cd) {
                    digits[p] = v;
                }
                let col = space.from_multi_index(&digits)?;
                acc += matrix[(row, col)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok((kept, out))
}

/// Reduced density matrix of a normalized pure state.
pub fn reduced_state<S: AsRef<str>>(state: &StateVector, keep: &[S]) -> Result<DensityMatrix> {
    let (space, matrix) = {
        state.require_normalized()?;
        let v = state.amplitudes();
        partial_trace_matrix(state.space(), &(v * v.adjoint()), keep)?
    };
    Ok(DensityMatrix::from_parts_unchecked(space, matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn two() -> HilbertSpace {
        HilbertSpace::qubits(&["q1", "q2"]).unwrap()
    }

    #[test]
    fn product_state_reduction() {
        let rho = DensityMatrix::from_pure(&StateVector::from_label(two(), "00").unwrap()).unwrap();
        let r = rho.partial_trace(&["q1"]).unwrap();
        assert_eq!(r.matrix()[(0, 0)], c(1.0));
        assert_eq!(r.matrix()[(1, 1)], c(0.0));
    }

    #[test]
    fn bell_reduction_is_maximally_mixed() {
        let h = 1.0 / 2f64.sqrt();
        let bell = StateVector::from_terms(two(), [(c(h), "00"), (c(h), "11")]).unwrap();
        let r = DensityMatrix::from_pure(&bell).unwrap().partial_trace(&["q2"]).unwrap();
        let want = DensityMatrix::maximally_mixed(HilbertSpace::qubits(&["q2"]).unwrap());
        assert!(linalg::max_abs(&(r.matrix() - want.matrix())) < 1e-15);
        assert_eq!(r.space().labels().collect::<Vec<_>>(), vec!["q2"]);
    }

    #[test]
    fn trace_everything_gives_scalar() {
        let rho = DensityMatrix::maximally_mixed(two());
        let r = rho.partial_trace::<&str>(&[]).unwrap();
        assert_eq!(r.space().dim(), 1);
        assert!((r.matrix()[(0, 0)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn keep_everything_is_identity_map() {
        let h = 1.0 / 3f64.sqrt();
        let s = StateVector::from_terms(two(), [(c(h), "00"), (Complex64::new(0.0, h), "01"), (c(-h), "11")]).unwrap();
        let rho = DensityMatrix::from_pure(&s).unwrap();
        assert_eq!(rho.partial_trace(&["q1", "q2"]).unwrap(), rho);
    }

    #[test]
    fn reordered_keep_permutes_factors() {
        let s = StateVector::from_label(HilbertSpace::qubits(&["a", "b", "c"]).unwrap(), "100").unwrap();
        let r = reduced_state(&s, &["b", "a"]).unwrap();
        // |b a⟩ = |01⟩ → index 1
        assert_eq!(r.matrix()[(1, 1)], c(1.0));
    }

    #[test]
    fn validation() {
        let bad_trace = CMatrix::identity(2, 2);
        let s = HilbertSpace::qubits(&["a"]).unwrap();
        assert!(matches!(
            DensityMatrix::new(s.clone(), bad_trace),
            Err(Error::InvalidDensity(_))
        ));
        let negative = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(matches!(
            DensityMatrix::new(s.clone(), negative),
            Err(Error::InvalidDensity(_))
        ));
        let mut skew = CMatrix::identity(2, 2) * c(0.5);
        skew[(0, 1)] = c(0.1);
        assert!(matches!(
            DensityMatrix::new(s.clone(), skew),
            Err(Error::InvalidDensity(_))
        ));
        assert!(matches!(
            rho_unknown_label(&DensityMatrix::maximally_mixed(s)),
            Err(Error::UnknownLabel(_))
        ));
    }

    fn rho_unknown_label(r: &DensityMatrix) -> Result<DensityMatrix> {
        r.partial_trace(&["zz"])
    }

    #[test]
    fn eigenvalues_of_simple_states() {
        let s = HilbertSpace::qubits(&["a"]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(s.clone());
        let vals = eig_hermitian(&mixed).unwrap();
        assert!((vals[0] - 0.5).abs() < 1e-15 && (vals[1] - 0.5).abs() < 1e-15);
        let pure = DensityMatrix::from_pure(&StateVector::basis(s, 0).unwrap()).unwrap();
        assert_eq!(eig_hermitian(&pure).unwrap(), vec![1.0, 0.0]);
        let x = Operator::pauli("a", 1).unwrap();
        let xv = eig_hermitian(&x).unwrap();
        assert!((xv[0] - 1.0).abs() < 1e-15 && (xv[1] + 1.0).abs() < 1e-15);
        let y_not_herm = x.scaled(Complex64::new(0.0, 1.0));
        assert!(matches!(eig_hermitian(&y_not_herm), Err(Error::NotHermitian(_))));
    }
}
