//! Simulation of a four-qubit genuine-entanglement generation scheme.
//!
//! A single photon enters a Mach–Zehnder interferometer whose arms pass
//! four cavities, each holding one atom. Conditional phase shifts
//! entangle the atoms with the photon path; detecting the photon at either
//! output port heralds one of two four-qubit states. The crate covers the
//! labeled tensor-product algebra, the circuit, the detection model,
//! entanglement measures and a sixteen-state entangled basis.
//!
//! ```
//! use ges_core::circuit::SchemeParams;
//! use ges_core::detection::prepare_ges;
//!
//! let prep = prepare_ges(&SchemeParams::ges_point().with_eta(0.9).unwrap()).unwrap();
//! assert!((prep.total_probability() - 0.9).abs() < 1e-12);
//! ```

pub mod basis;
pub mod circuit;
pub mod density;
pub mod detection;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod operator;
pub mod space;
pub mod state;
pub mod verify;

pub use density::{eig_hermitian, partial_trace_matrix, reduced_state, DensityMatrix};
pub use error::{Error, Result};
pub use operator::{tensor, Operator, Tensor};
pub use space::{Factor, HilbertSpace};
pub use state::StateVector;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hilbert-spaces.md")]
    mod hilbert_spaces {}
    #[doc = include_str!("../../../book/src/circuit.md")]
    mod circuit {}
    #[doc = include_str!("../../../book/src/detection.md")]
    mod detection {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/ges-basis.md")]
    mod ges_basis {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
