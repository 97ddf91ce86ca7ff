//! Hermitian dynamical operators, the `SU(n+1)` action on `CP^n` and the
//! generalized Gell-Mann basis.

use num_complex::Complex64;

use crate::linalg::{self, CMatrix, I};
use crate::projective::{canonicalize_vector, ProjectivePoint, RepresentationBasis};
use crate::{Error, Result, EPS_NORM, EPS_ZERO, MAX_DIM};

fn square_dim(m: &CMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let dim = m.nrows();
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix entries must be finite".into(),
        ));
    }
    Ok(dim)
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A dynamical variable: a Hermitian matrix in the reference basis.
///
/// Input within `EPS_NORM` of Hermitian is accepted and replaced by its
/// exact Hermitian part.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        square_dim(&matrix)?;
        let deviation = linalg::hermitian_deviation(&matrix);
        if !(deviation <= EPS_NORM) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            matrix: linalg::hermitian_part(&matrix),
        })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            same_dim(n, row.len())?;
        }
        Self::new(CMatrix::from_fn(n, n, |r, c| rows[r][c]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(CMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn scale(&self, factor: f64) -> HermitianOperator {
        Self {
            matrix: self.matrix.scale(factor),
        }
    }

    /// `α·self + β·other`.
    pub fn combine(
        &self,
        alpha: f64,
        other: &HermitianOperator,
        beta: f64,
    ) -> Result<HermitianOperator> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self {
            matrix: self.matrix.scale(alpha) + other.matrix.scale(beta),
        })
    }
}

/// Eigenvalues (ascending) and the matching orthonormal eigenbasis.
pub fn eigensystem(a: &HermitianOperator) -> (Vec<f64>, RepresentationBasis) {
    let (values, vectors) = linalg::hermitian_eigen(&a.matrix);
    (values, RepresentationBasis::from_unitary_unchecked(vectors))
}

/// The point `A(p)`, computed by direct matrix action.
pub fn apply_operator(a: &HermitianOperator, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    same_dim(a.dim(), p.dim())?;
    image_point(&a.matrix * p.canonical().as_vector())
}

/// The point `A(p)` computed in the eigenbasis of `A`: each amplitude is
/// multiplied by its eigenvalue and the result transformed back.
pub fn apply_operator_via_eigenbasis(
    a: &HermitianOperator,
    p: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    same_dim(a.dim(), p.dim())?;
    let (values, basis) = eigensystem(a);
    let v = basis.matrix();
    let mut amps = v.adjoint() * p.canonical().as_vector();
    for (amp, lambda) in amps.iter_mut().zip(&values) {
        *amp *= *lambda;
    }
    image_point(v * amps)
}

fn image_point(image: linalg::CVector) -> Result<ProjectivePoint> {
    if image.iter().all(|z| z.norm() <= EPS_ZERO) {
        return Err(Error::KernelState);
    }
    canonicalize_vector(image).map_err(|_| Error::KernelState)
}

/// An element of `SU(n+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialUnitary {
    matrix: CMatrix,
}

impl SpecialUnitary {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        square_dim(&matrix)?;
        let unitarity = linalg::unitarity_deviation(&matrix);
        let det = (matrix.determinant() - Complex64::new(1.0, 0.0)).norm();
        if !(unitarity <= EPS_NORM && det <= EPS_NORM) {
            return Err(Error::NotSpecialUnitary { unitarity, det });
        }
        Ok(Self { matrix })
    }

    /// Rescale a unitary by the global phase `det^{-1/d}` (principal root)
    /// so that its determinant becomes one.
    pub fn from_unitary(matrix: CMatrix) -> Result<Self> {
        let dim = square_dim(&matrix)?;
        let unitarity = linalg::unitarity_deviation(&matrix);
        if !(unitarity <= EPS_NORM) {
            return Err(Error::NotSpecialUnitary {
                unitarity,
                det: f64::NAN,
            });
        }
        let det = matrix.determinant();
        let phase = Complex64::from_polar(1.0, -det.arg() / dim as f64);
        Self::new(matrix * phase)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &SpecialUnitary) -> Result<SpecialUnitary> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn inverse(&self) -> SpecialUnitary {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }
}

pub fn group_act(g: &SpecialUnitary, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    same_dim(g.dim(), p.dim())?;
    canonicalize_vector(&g.matrix * p.canonical().as_vector())
}

/// An element `g` of `SU(n+1)` with `g·p = q`.
///
/// Both representatives are completed to unitaries `U_p`, `U_q` with those
/// vectors as first columns; `U_q U_p†` carries `p` to `q` and the determinant
/// is then fixed by a global phase.
pub fn transitive_element(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<SpecialUnitary> {
    same_dim(p.dim(), q.dim())?;
    let up = linalg::complete_to_unitary(p.canonical().as_vector());
    let uq = linalg::complete_to_unitary(q.canonical().as_vector());
    SpecialUnitary::from_unitary(uq * up.adjoint())
}

/// The normalized identity followed by the `d² − 1` generalized Gell-Mann
/// matrices (symmetric, antisymmetric, then diagonal), all with
/// `Tr(G_i G_j) = 2 δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    elements: Vec<CMatrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σ c_i G_i`.
    pub fn reconstruct(&self, coeffs: &[f64]) -> Result<CMatrix> {
        same_dim(self.elements.len(), coeffs.len())?;
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (g, &c) in self.elements.iter().zip(coeffs) {
            acc += g.scale(c);
        }
        Ok(acc)
    }

    /// Human-readable label of element `i`, e.g. `sym(0,2)` or `diag(1)`.
    pub fn label(&self, i: usize) -> String {
        let d = self.dim;
        let pairs = d * (d - 1) / 2;
        let pair = |mut idx: usize| {
            for j in 0..d {
                let row = d - 1 - j;
                if idx < row {
                    return (j, j + 1 + idx);
                }
                idx -= row;
            }
            unreachable!()
        };
        match i {
            0 => "identity".to_string(),
            i if i <= pairs => {
                let (j, k) = pair(i - 1);
                format!("sym({j},{k})")
            }
            i if i <= 2 * pairs => {
                let (j, k) = pair(i - 1 - pairs);
                format!("asym({j},{k})")
            }
            i => format!("diag({})", i - 2 * pairs),
        }
    }
}

pub fn generator_basis(d: usize) -> Result<GeneratorBasis> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut elements = Vec::with_capacity(d * d);
    elements.push(CMatrix::identity(d, d).scale((2.0 / d as f64).sqrt()));

    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut g = CMatrix::zeros(d, d);
        g[(j, k)] = one;
        g[(k, j)] = one;
        elements.push(g);
    }
    for &(j, k) in &pairs {
        let mut g = CMatrix::zeros(d, d);
        g[(j, k)] = -I;
        g[(k, j)] = I;
        elements.push(g);
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut g = CMatrix::zeros(d, d);
        for j in 0..l {
            g[(j, j)] = Complex64::new(norm, 0.0);
        }
        g[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        elements.push(g);
    }
    Ok(GeneratorBasis { dim: d, elements })
}

/// Real coefficients `c_i = Tr(A G_i) / 2` in the generator basis.
pub fn traceless_decompose(a: &HermitianOperator) -> Vec<f64> {
    let basis = generator_basis(a.dim()).expect("operator dimension already validated");
    decompose_in(&basis, a)
}

pub fn decompose_in(basis: &GeneratorBasis, a: &HermitianOperator) -> Vec<f64> {
    basis
        .elements
        .iter()
        .map(|g| 0.5 * linalg::trace_product(&a.matrix, g).re)
        .collect()
}
