use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::space::HilbertSpace;
use crate::state::StateVector;

/// A dense square matrix acting on a labeled Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl Operator {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let n = space.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if matrix.nrows() != n {
                    matrix.nrows()
                } else {
                    matrix.ncols()
                },
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: CMatrix::identity(n, n),
        }
    }

    pub fn from_diagonal(space: HilbertSpace, diag: &[Complex64]) -> Result<Self> {
        let n = space.dim();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: diag.len(),
            });
        }
        Self::new(
            space,
            CMatrix::from_fn(n, n, |r, c| if r == c { diag[r] } else { Complex64::new(0.0, 0.0) }),
        )
    }

    /// Pauli `σ^mu` on a single qubit labeled `label`.
    pub fn pauli(label: &str, mu: usize) -> Result<Self> {
        if mu > 3 {
            return Err(Error::InvalidParameter(format!("Pauli index {mu} out of range 0..=3")));
        }
        Self::new(HilbertSpace::qubits(&[label])?, linalg::pauli(mu))
    }

    /// `exp(−i·angle·H)` for a Hermitian generator `H`.
    pub fn evolution(generator: &Operator, angle: f64) -> Result<Self> {
        Ok(Self {
            space: generator.space.clone(),
            matrix: linalg::exp_minus_i(&generator.matrix, angle)?,
        })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * factor,
        }
    }

    pub fn add(&self, other: &Operator) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Operator) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if &self.space != state.space() {
            return Err(Error::SpaceMismatch);
        }
        StateVector::from_dvector(self.space.clone(), &self.matrix * state.amplitudes())
    }

    pub fn tensor(&self, other: &Operator) -> Result<Self> {
        Ok(Self {
            space: self.space.concat(&other.space)?,
            matrix: linalg::kron(&self.matrix, &other.matrix),
        })
    }

    pub fn unitarity_deviation(&self) -> f64 {
        linalg::unitarity_deviation(&self.matrix)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.matrix)
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= linalg::STRUCTURAL_TOL
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= linalg::STRUCTURAL_TOL
    }

    /// Lifts this operator onto `full`, acting on the factors named in
    /// `targets` (in the order of this operator's own factors) and as the
    /// identity everywhere else.
    pub fn embed<S: AsRef<str>>(&self, targets: &[S], full: &HilbertSpace) -> Result<Operator> {
        let target_pos: Vec<usize> = targets
            .iter()
            .map(|t| full.position(t.as_ref()))
            .collect::<Result<_>>()?;
        let target_space = full.subspace(targets)?;
        if target_space.dims() != self.space.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: target_space.dim(),
            });
        }
        let n = full.dim();
        let digits: Vec<Vec<usize>> = (0..n).map(|i| full.to_multi_index(i)).collect();
        let is_target: Vec<bool> = (0..full.len()).map(|k| target_pos.contains(&k)).collect();
        let sub_index = |d: &[usize]| -> usize {
            target_pos
                .iter()
                .zip(self.space.factors())
                .fold(0, |acc, (&p, f)| acc * f.dim() + d[p])
        };
        let sub: Vec<usize> = digits.iter().map(|d| sub_index(d)).collect();
        let mut m = CMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let spectators_agree = (0..full.len()).all(|k| is_target[k] || digits[r][k] == digits[c][k]);
                if spectators_agree {
                    m[(r, c)] = self.matrix[(sub[r], sub[c])];
                }
            }
        }
        Operator::new(full.clone(), m)
    }
}

/// Tensor product shared by states and operators.
pub trait Tensor: Sized {
    fn tensor_with(&self, other: &Self) -> Result<Self>;
}

impl Tensor for StateVector {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl Tensor for Operator {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        Operator::tensor(self, other)
    }
}

/// `a ⊗ b` with `a` as the more significant factor block.
pub fn tensor<T: Tensor>(a: &T, b: &T) -> Result<T> {
    a.tensor_with(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn four_qubits() -> HilbertSpace {
        HilbertSpace::qubits(&["q1", "q2", "q3", "q4"]).unwrap()
    }

    #[test]
    fn identity_tensor_x_is_block_diagonal() {
        let i = Operator::pauli("a", 0).unwrap();
        let x = Operator::pauli("b", 1).unwrap();
        let ix = tensor(&i, &x).unwrap();
        let m = ix.matrix();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(m[(0, 1)], one);
        assert_eq!(m[(1, 0)], one);
        assert_eq!(m[(2, 3)], one);
        assert_eq!(m[(3, 2)], one);
        assert_eq!(m.iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn embed_x_on_first_qubit() {
        let full = four_qubits();
        let x1 = Operator::pauli("x", 1).unwrap().embed(&["q1"], &full).unwrap();
        let out = x1
            .apply(&StateVector::from_label(full.clone(), "0000").unwrap())
            .unwrap();
        assert_eq!(out, StateVector::from_label(full, "1000").unwrap());
    }

    #[test]
    fn embed_identity_is_identity() {
        let full = four_qubits();
        let id = Operator::pauli("x", 0).unwrap().embed(&["q3"], &full).unwrap();
        assert_eq!(id, Operator::identity(full));
    }

    #[test]
    fn embed_y_on_last_qubit() {
        let full = four_qubits();
        let y4 = Operator::pauli("x", 2).unwrap().embed(&["q4"], &full).unwrap();
        let out = y4
            .apply(&StateVector::from_label(full.clone(), "0000").unwrap())
            .unwrap();
        let want = StateVector::from_label(full, "0001")
            .unwrap()
            .scaled(Complex64::new(0.0, 1.0));
        assert_eq!(out, want);
    }

    #[test]
    fn embed_respects_target_order() {
        // CNOT with control = first listed target.
        let s = HilbertSpace::qubits(&["c", "t"]).unwrap();
        let mut m = CMatrix::zeros(4, 4);
        for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            m[(r, c)] = Complex64::new(1.0, 0.0);
        }
        let cnot = Operator::new(s, m).unwrap();
        let full = four_qubits();
        let op = cnot.embed(&["q4", "q2"], &full).unwrap();
        let out = op
            .apply(&StateVector::from_label(full.clone(), "0001").unwrap())
            .unwrap();
        assert_eq!(out, StateVector::from_label(full, "0101").unwrap());
        assert!(op.is_unitary());
    }

    #[test]
    fn embed_errors() {
        let full = four_qubits();
        let x = Operator::pauli("x", 1).unwrap();
        assert_eq!(x.embed(&["q9"], &full), Err(Error::UnknownLabel("q9".into())));
        assert!(matches!(
            x.embed(&["q1", "q2"], &full),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn evolution_is_unitary() {
        let h = Operator::pauli("a", 1)
            .unwrap()
            .add(&Operator::pauli("a", 3).unwrap())
            .unwrap();
        let u = Operator::evolution(&h, 0.9).unwrap();
        assert!(u.unitarity_deviation() < 1e-14);
        let back = u.compose(&u.adjoint()).unwrap();
        assert!(max_abs(&(back.matrix() - CMatrix::identity(2, 2))) < 1e-14);
    }
}
