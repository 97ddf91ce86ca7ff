//! Spin-1/2: `CP^1` as the Bloch sphere.
//!
//! Conventions: `|+1/2⟩ = (1, 0)` is the north pole `(0, 0, 1)` and the
//! azimuth is measured from `+x`.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::CMatrix;
use crate::operators::{traceless_decompose, HermitianOperator, SpecialUnitary};
use crate::projective::{canonicalize, ProjectivePoint, StateVector};
use crate::{Error, Result, EPS_NORM};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !((norm - 1.0).abs() <= EPS_NORM) {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self { x, y, z })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `R · b` for a 3×3 matrix given as rows.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> [f64; 3] {
        let b = self.as_array();
        std::array::from_fn(|i| (0..3).map(|j| r[i][j] * b[j]).sum())
    }
}

pub fn bloch_vector(p: &ProjectivePoint) -> Result<BlochVector> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let (a, b) = (p.amplitudes()[0], p.amplitudes()[1]);
    let cross = a.conj() * b;
    Ok(BlochVector {
        x: 2.0 * cross.re,
        y: 2.0 * cross.im,
        z: a.norm_sqr() - b.norm_sqr(),
    })
}

/// The point `(cos(θ/2), e^{iφ} sin(θ/2))` with polar angle `θ` and azimuth `φ`.
pub fn from_bloch(b: &BlochVector) -> Result<ProjectivePoint> {
    let b = BlochVector::new(b.x, b.y, b.z)?;
    let theta = b.z.clamp(-1.0, 1.0).acos();
    let phi = b.y.atan2(b.x);
    let v = StateVector::new(vec![
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ])?;
    Ok(canonicalize(&v))
}

/// `s_i = (ħ/2) σ_i`.
pub fn spin_operators(hbar: f64) -> Result<[HermitianOperator; 3]> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }
    let half = hbar / 2.0;
    Ok(pauli().map(|s| s.scale(half)))
}

fn pauli() -> [HermitianOperator; 3] {
    let c = Complex64::new;
    let from = |e: [Complex64; 4]| {
        HermitianOperator::new(CMatrix::from_row_slice(2, 2, &e)).expect("Pauli matrix")
    };
    [
        from([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        from([c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        from([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}

/// SO(3) image of `g ∈ SU(2)` under the adjoint action: column `b` holds the
/// Pauli coefficients of `g σ_b g†`.
pub fn su2_rotation(g: &SpecialUnitary) -> Result<[[f64; 3]; 3]> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: g.dim(),
        });
    }
    let mut r = [[0.0; 3]; 3];
    for (b, sigma) in pauli().iter().enumerate() {
        let conj = HermitianOperator::new(g.matrix() * sigma.matrix() * g.matrix().adjoint())?;
        let coeffs = traceless_decompose(&conj);
        for a in 0..3 {
            r[a][b] = coeffs[a + 1];
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, max_abs, I};
    use crate::operators::{apply_operator, eigensystem};

    fn pt(a: Vec<Complex64>) -> ProjectivePoint {
        canonicalize(&StateVector::new(a).unwrap())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(b: BlochVector, e: [f64; 3]) -> bool {
        b.as_array()
            .iter()
            .zip(e)
            .all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn bloch_examples() {
        assert!(close(
            bloch_vector(&pt(vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap(),
            [0.0, 0.0, 1.0]
        ));
        assert!(close(
            bloch_vector(&pt(vec![c(1.0, 0.0), c(1.0, 0.0)])).unwrap(),
            [1.0, 0.0, 0.0]
        ));
        assert!(close(
            bloch_vector(&pt(vec![c(1.0, 0.0), c(0.0, 1.0)])).unwrap(),
            [0.0, 1.0, 0.0]
        ));
        let three = pt(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            bloch_vector(&three),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn from_bloch_poles() {
        let north = from_bloch(&BlochVector::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert!((north.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        let south = from_bloch(&BlochVector::new(0.0, 0.0, -1.0).unwrap()).unwrap();
        assert!(south.amplitudes()[0].norm() < 1e-15);
        assert!((south.amplitudes()[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            BlochVector::new(0.0, 0.0, 1.1),
            Err(Error::NotUnit { .. })
        ));
        let bad = BlochVector {
            x: 0.5,
            y: 0.0,
            z: 0.0,
        };
        assert!(matches!(from_bloch(&bad), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn spin_algebra() {
        let hbar = 0.7;
        let [sx, sy, sz] = spin_operators(hbar).unwrap();
        let unit = spin_operators(1.0).unwrap();
        assert_eq!(
            unit[2].matrix(),
            &CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)])
        );
        let ih = I * hbar;
        assert!(max_abs(&(commutator(sx.matrix(), sy.matrix()) - sz.matrix() * ih)) < 1e-15);
        assert!(max_abs(&(commutator(sy.matrix(), sz.matrix()) - sx.matrix() * ih)) < 1e-15);
        assert!(max_abs(&(commutator(sz.matrix(), sx.matrix()) - sy.matrix() * ih)) < 1e-15);
        for s in [&sx, &sy, &sz] {
            assert!(s.matrix().trace().norm() < 1e-15);
            let (vals, _) = eigensystem(s);
            assert!((vals[0] + hbar / 2.0).abs() < 1e-14 && (vals[1] - hbar / 2.0).abs() < 1e-14);
        }
        assert!(spin_operators(-1.0).is_err());
    }

    #[test]
    fn sz_fixes_poles() {
        let sz = &spin_operators(1.0).unwrap()[2];
        for p in [
            pt(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            pt(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        ] {
            assert_eq!(apply_operator(sz, &p).unwrap(), p);
        }
    }

    #[test]
    fn z_rotation_image() {
        // diag(e^{-iθ/2}, e^{iθ/2}) rotates the Bloch sphere by θ about z.
        let theta = 0.9_f64;
        let g = SpecialUnitary::new(CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::from_polar(1.0, -theta / 2.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, theta / 2.0),
            ],
        ))
        .unwrap();
        let r = su2_rotation(&g).unwrap();
        let expected = [
            [theta.cos(), -theta.sin(), 0.0],
            [theta.sin(), theta.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((r[i][j] - expected[i][j]).abs() < 1e-14);
            }
        }
    }
}
