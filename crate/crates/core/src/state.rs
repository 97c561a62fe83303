use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::STRUCTURAL_TOL;
use crate::space::HilbertSpace;

/// Complex amplitudes over a labeled Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: HilbertSpace,
    amps: DVector<Complex64>,
}

impl StateVector {
    pub fn new(space: HilbertSpace, amps: Vec<Complex64>) -> Result<Self> {
        Self::from_dvector(space, DVector::from_vec(amps))
    }

    pub fn from_dvector(space: HilbertSpace, amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: amps.len(),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, amps })
    }

    pub fn zeros(space: HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            amps: DVector::zeros(n),
        }
    }

    pub fn basis(space: HilbertSpace, index: usize) -> Result<Self> {
        let n = space.dim();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
        let mut s = Self::zeros(space);
        s.amps[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Computational basis ket from a digit string such as `"0110"`, one
    /// digit per factor.
    pub fn from_label(space: HilbertSpace, label: &str) -> Result<Self> {
        let digits: Vec<usize> = label
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad basis label `{label}`")))
            })
            .collect::<Result<_>>()?;
        let index = space.from_multi_index(&digits)?;
        Self::basis(space, index)
    }

    /// Builds `Σ c_k |label_k⟩` over a qubit register.
    pub fn from_terms<'a, I>(space: HilbertSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, &'a str)>,
    {
        let mut s = Self::zeros(space);
        for (coef, label) in terms {
            let k = Self::from_label(s.space.clone(), label)?;
            s.amps += k.amps * coef;
        }
        Ok(s)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= STRUCTURAL_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.norm_sqr()))
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// The same ray with the global phase chosen so that the first
    /// amplitude of modulus above `cutoff` is real and positive.
    pub fn with_canonical_phase(&self, cutoff: f64) -> Self {
        match self.amps.iter().find(|z| z.norm() > cutoff) {
            Some(z) => self.scaled(z.conj() / z.norm()),
            None => self.clone(),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            amps: &self.amps * factor,
        }
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: Complex64, other: &StateVector) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            amps: &self.amps + &other.amps * factor,
        })
    }

    fn check_space(&self, other: &StateVector) -> Result<()> {
        if self.space != other.space {
            Err(Error::SpaceMismatch)
        } else {
            Ok(())
        }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_space(other)?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// True iff `| |⟨a|b⟩| − 1 | ≤ tol`. Both states must be normalized.
    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        self.require_normalized()?;
        other.require_normalized()?;
        Ok((self.inner(other)?.norm() - 1.0).abs() <= tol)
    }

    /// The unit phase `e^{iα}` that best aligns `self` onto `other`
    /// (minimizes `‖e^{iα}·self − other‖`). `None` when the overlap vanishes.
    pub fn phase_to(&self, other: &StateVector) -> Result<Option<Complex64>> {
        let ov = self.inner(other)?;
        if ov.norm() < 1e-300 {
            return Ok(None);
        }
        Ok(Some(ov / ov.norm()))
    }

    /// Entrywise `max |e^{iα}·self − other|` after optimal phase alignment.
    pub fn max_deviation_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let phase = self.phase_to(other)?.unwrap_or(Complex64::new(1.0, 0.0));
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max))
    }

    /// Entrywise `max |self − other|`.
    pub fn max_deviation(&self, other: &StateVector) -> Result<f64> {
        self.check_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let space = self.space.concat(&other.space)?;
        let amps = self.amps.kronecker(&other.amps);
        Ok(Self { space, amps })
    }

    /// Basis label of index `i` as a digit string.
    pub fn label_of(&self, index: usize) -> String {
        self.space
            .to_multi_index(index)
            .iter()
            .map(|d| char::from_digit(*d as u32, 36).unwrap_or('?'))
            .collect()
    }

    /// Nonzero amplitudes (modulus above `cutoff`) with their basis labels.
    pub fn support(&self, cutoff: f64) -> Vec<(String, Complex64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > cutoff)
            .map(|(i, z)| (self.label_of(i), *z))
            .collect()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support(1e-12);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, z)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if z.im.abs() < 1e-12 {
                write!(f, "{:+.6}|{}⟩", z.re, label)?;
            } else {
                write!(f, "({:+.6}{:+.6}i)|{}⟩", z.re, z.im, label)?;
            }
        }
        Ok(())
    }
}
