//! Small dense complex linear algebra used throughout the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::EPS_ZERO;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Largest entrywise modulus of `a - a†`.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((a[(r, c)] - a[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise modulus of `u† u - 1`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let gram = u.adjoint() * u;
    max_abs(&(gram - CMatrix::identity(u.nrows(), u.ncols())))
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// `(a + a†) / 2`.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Rotate `v` by a global phase so that its first component with modulus
/// above `threshold` is real and positive.
pub fn fix_phase(v: &mut [Complex64], threshold: f64) {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > threshold) {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues.
///
/// Each eigenvector is phase-fixed so that its first significant component
/// is real and positive.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let (diag, vecs) = jacobi_eigen(hermitian_part(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let mut values = Vec::with_capacity(n);
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(diag[src]);
        let mut col: Vec<Complex64> = vecs.column(src).iter().copied().collect();
        fix_phase(&mut col, 1e3 * EPS_ZERO);
        vectors.set_column(dst, &CVector::from_vec(col));
    }
    (values, vectors)
}

/// Cyclic complex Jacobi: annihilates each off-diagonal pair with a unitary
/// plane rotation until the off-diagonal mass is at rounding level.
fn jacobi_eigen(mut a: CMatrix) -> (Vec<f64>, CMatrix) {
    const MAX_SWEEPS: usize = 64;
    let n = a.nrows();
    let mut v = CMatrix::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // D = diag(1, e^{-iφ}) makes the block real; R is the real
                // Jacobi rotation of the resulting symmetric block.
                let phase = apq.conj() / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let (jpp, jpq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
                let (jqp, jqq) = (phase * -s, phase * c);

                for r in 0..n {
                    let (x, y) = (a[(r, p)], a[(r, q)]);
                    a[(r, p)] = x * jpp + y * jqp;
                    a[(r, q)] = x * jpq + y * jqq;
                }
                for col in 0..n {
                    let (x, y) = (a[(p, col)], a[(q, col)]);
                    a[(p, col)] = jpp.conj() * x + jqp.conj() * y;
                    a[(q, col)] = jpq.conj() * x + jqq.conj() * y;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for r in 0..n {
                    let (x, y) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = x * jpp + y * jqp;
                    v[(r, q)] = x * jpq + y * jqq;
                }
            }
        }
    }
    ((0..n).map(|k| a[(k, k)].re).collect(), v)
}

/// A unitary whose first column is the unit vector `v`.
///
/// Built from a single Householder reflection, so the result is unitary to
/// rounding error regardless of `v`.
pub fn complete_to_unitary(v: &CVector) -> CMatrix {
    let n = v.len();
    let lead = v[0];
    let phase = if lead.norm() > 0.0 {
        lead / lead.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut diag = CMatrix::identity(n, n);
    diag[(0, 0)] = phase;

    // Reflection H with H (phase e_0) = v.
    let mut w = -v.clone();
    w[0] += phase;
    let wn = w.norm_squared();
    if wn <= f64::EPSILON * f64::EPSILON {
        return diag;
    }
    let reflection = CMatrix::identity(n, n) - (&w * w.adjoint()).scale(2.0 / wn);
    reflection * diag
}

/// `V diag(f(λ)) V†`.
pub fn spectral_map(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let n = values.len();
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let fk = f(lambda);
        for r in 0..n {
            scaled[(r, k)] *= fk;
        }
    }
    scaled * vectors.adjoint()
}
