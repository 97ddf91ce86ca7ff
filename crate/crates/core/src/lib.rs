//! Finite-dimensional quantum states as points of complex projective space.
//!
//! A state vector with `n + 1` amplitudes, defined up to a nonzero complex
//! factor, is a point of `CP^n`. This crate provides the canonical
//! representative of such a point, the affine chart atlas, representation
//! changes, Hermitian operators acting on points, the `SU(n+1)` action with
//! an explicit transitivity witness, generalized Gell-Mann decompositions,
//! Schrödinger/Heisenberg evolution and the spin-1/2 Bloch sphere.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod operators;
pub mod projective;
pub mod random;
pub mod serialize;

pub use bloch::{bloch_vector, from_bloch, spin_operators, su2_rotation, BlochVector};
pub use dynamics::{HamiltonianSystem, Trajectory};
pub use error::{Error, Result};
pub use operators::{
    apply_operator, apply_operator_via_eigenbasis, eigensystem, generator_basis, group_act,
    traceless_decompose, transitive_element, GeneratorBasis, HermitianOperator, SpecialUnitary,
};
pub use projective::{
    canonicalize, change_representation, chart_transition, fidelity, from_chart, inner_product,
    projectively_equal, superpose, to_chart, ChartCoordinates, ProjectivePoint,
    RepresentationBasis, StateVector,
};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

/// Tolerance for norms, orthonormality and round trips.
pub const EPS_NORM: f64 = 1e-9;

/// Amplitudes with modulus at or below this are treated as zero.
pub const EPS_ZERO: f64 = 1e-12;

/// Largest supported Hilbert space dimension.
pub const MAX_DIM: usize = 32;

#[cfg(test)]
mod tests {
    use super::*;

    fn shareable<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        shareable::<StateVector>();
        shareable::<ProjectivePoint>();
        shareable::<ChartCoordinates>();
        shareable::<RepresentationBasis>();
        shareable::<HermitianOperator>();
        shareable::<SpecialUnitary>();
        shareable::<GeneratorBasis>();
        shareable::<HamiltonianSystem>();
        shareable::<Trajectory>();
        shareable::<BlochVector>();
    }
}
