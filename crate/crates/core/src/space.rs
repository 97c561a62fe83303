//! Labeled composite Hilbert spaces.
//!
//! A space is an ordered list of factors, each carrying a label and a
//! dimension. Basis indices use a mixed-radix convention in which the
//! first factor is the most significant digit, so the ket `|q1 q2 q3 q4⟩`
//! of four qubits maps to `q1·8 + q2·4 + q3·2 + q4`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factor {
    label: String,
    dim: usize,
}

impl Factor {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
}

impl HilbertSpace {
    /// Builds a space from `(label, dimension)` pairs. Labels must be unique
    /// and dimensions positive.
    pub fn new<I, S>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let factors: Vec<Factor> = factors
            .into_iter()
            .map(|(label, dim)| Factor {
                label: label.into(),
                dim,
            })
            .collect();
        let mut seen = HashSet::new();
        for f in &factors {
            if f.dim == 0 {
                return Err(Error::ZeroDimension(f.label.clone()));
            }
            if !seen.insert(f.label.as_str()) {
                return Err(Error::DuplicateLabel(f.label.clone()));
            }
        }
        Ok(Self { factors })
    }

    /// A register of qubits with the given labels.
    pub fn qubits<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels.iter().map(|l| (l.as_ref().to_owned(), 2)))
    }

    /// The one-dimensional space with no factors.
    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|f| f.label.as_str())
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Concatenates the factor lists (`self` first). Fails on shared labels.
    pub fn concat(&self, other: &HilbertSpace) -> Result<Self> {
        Self::new(
            self.factors
                .iter()
                .chain(other.factors.iter())
                .map(|f| (f.label.clone(), f.dim)),
        )
    }

    /// The space made of the named factors, in the order given.
    pub fn subspace<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let mut factors = Vec::with_capacity(labels.len());
        for l in labels {
            let pos = self.position(l.as_ref())?;
            factors.push((self.factors[pos].label.clone(), self.factors[pos].dim));
        }
        Self::new(factors)
    }

    /// Splits a flat basis index into per-factor digits.
    pub fn to_multi_index(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (slot, f) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        digits
    }

    pub fn from_multi_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (&d, f) in digits.iter().zip(&self.factors) {
            if d >= f.dim {
                return Err(Error::IndexOutOfRange { index: d, dim: f.dim });
            }
            index = index * f.dim + d;
        }
        Ok(index)
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}[{}]", x.label, x.dim)).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}
