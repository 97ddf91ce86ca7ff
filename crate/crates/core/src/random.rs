//! Random states, operators and group elements for sampling-based checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, CVector};
use crate::operators::{HermitianOperator, SpecialUnitary};
use crate::projective::{canonicalize, ProjectivePoint, StateVector};

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Nonzero complex scalar with modulus in `[0.01, 100]` (log-uniform) and
/// uniform phase.
pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let modulus = 10f64.powf(rng.gen_range(-2.0..=2.0));
    Complex64::from_polar(
        modulus,
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

/// Gaussian amplitudes; uniformly distributed on `CP^n` after normalization.
pub fn state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| gaussian_complex(rng));
        if let Ok(s) = StateVector::from_vector(v) {
            return s;
        }
    }
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ProjectivePoint {
    canonicalize(&state(rng, dim))
}

/// Gaussian unitary ensemble sample, `(M + M†) / 2`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOperator {
    let m = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    HermitianOperator::new((&m + m.adjoint()).scale(0.5)).expect("Hermitian by construction")
}

/// Hermitian operator with a repeated eigenvalue: a random unitary
/// conjugate of a diagonal matrix whose spectrum takes at most two values.
pub fn degenerate_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOperator {
    let u = haar_unitary(rng, dim);
    let low: f64 = rng.sample(StandardNormal);
    let high: f64 = rng.sample(StandardNormal);
    let split = rng.gen_range(1..dim);
    let diag = CVector::from_fn(dim, |i, _| {
        Complex64::new(if i < split { low } else { high }, 0.0)
    });
    let m = &u * CMatrix::from_diagonal(&diag) * u.adjoint();
    HermitianOperator::new((&m + m.adjoint()).scale(0.5)).expect("Hermitian by construction")
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase-corrected
/// diagonal of `R`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let qr = m.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..dim {
            q[(row, k)] *= phase;
        }
    }
    q
}

pub fn special_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SpecialUnitary {
    SpecialUnitary::from_unitary(haar_unitary(rng, dim)).expect("unitary by construction")
}
