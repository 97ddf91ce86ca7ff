//! States as points of `CP^n`: representatives, equivalence, charts and
//! representation changes.

use num_complex::Complex64;

use crate::linalg::{self, CMatrix, CVector};
use crate::{Error, Result, EPS_NORM, EPS_ZERO, MAX_DIM};

fn check_dim(dim: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Amplitudes of a state in some orthonormal basis; any nonzero multiple
/// represents the same physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::from_vector(CVector::from_vec(amplitudes))
    }

    pub fn from_vector(amplitudes: CVector) -> Result<Self> {
        check_dim(amplitudes.len())?;
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument("amplitudes must be finite".into()));
        }
        if amplitudes.iter().all(|z| z.norm() <= EPS_ZERO) {
            return Err(Error::AllZero);
        }
        Ok(Self { amplitudes })
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The `k`-th standard basis vector.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} >= dimension {dim}"
            )));
        }
        let mut v = CVector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Self::from_vector(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn as_vector(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> StateVector {
        Self {
            amplitudes: self.amplitudes.unscale(self.norm()),
        }
    }

    /// `c · v`, failing with [`Error::AllZero`] when `c` annihilates the vector.
    pub fn scaled(&self, c: Complex64) -> Result<StateVector> {
        Self::from_vector(self.amplitudes.map(|z| z * c))
    }
}

/// A point of `CP^n`, stored as its canonical representative: unit norm,
/// with the first non-negligible amplitude real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    canonical: StateVector,
}

impl ProjectivePoint {
    pub fn canonical(&self) -> &StateVector {
        &self.canonical
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.canonical.amplitudes()
    }

    pub fn dim(&self) -> usize {
        self.canonical.dim()
    }
}

impl From<ProjectivePoint> for StateVector {
    fn from(p: ProjectivePoint) -> Self {
        p.canonical
    }
}

pub fn canonicalize(v: &StateVector) -> ProjectivePoint {
    let mut amps: Vec<Complex64> = v.amplitudes.unscale(v.norm()).iter().copied().collect();
    linalg::fix_phase(&mut amps, EPS_ZERO);
    ProjectivePoint {
        canonical: StateVector {
            amplitudes: CVector::from_vec(amps),
        },
    }
}

/// Canonical point of an arbitrary vector; fails when it is (numerically) zero.
pub fn canonicalize_vector(v: CVector) -> Result<ProjectivePoint> {
    Ok(canonicalize(&StateVector::from_vector(v)?))
}

/// `|⟨q|p⟩|²` on canonical representatives, clamped to `[0, 1]`.
pub fn fidelity(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    let overlap = inner_product(&p.canonical, &q.canonical)?;
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

pub fn projectively_equal(p: &ProjectivePoint, q: &ProjectivePoint, tol: f64) -> Result<bool> {
    Ok(1.0 - fidelity(p, q)? <= tol)
}

/// `⟨w|v⟩ = Σ_k conj(w_k) v_k`.
pub fn inner_product(v: &StateVector, w: &StateVector) -> Result<Complex64> {
    same_dim(v.dim(), w.dim())?;
    Ok(w.amplitudes.dotc(&v.amplitudes))
}

/// Canonical point of `Σ_i coeffs[i] · vectors[i]`.
///
/// The combination is taken on representatives: the relative phases of the
/// inputs change the result, so callers pick representatives explicitly.
pub fn superpose(coeffs: &[Complex64], vectors: &[StateVector]) -> Result<ProjectivePoint> {
    if coeffs.is_empty() || coeffs.len() != vectors.len() {
        return Err(Error::InvalidArgument(format!(
            "need equal nonempty coefficient and vector lists, got {} and {}",
            coeffs.len(),
            vectors.len()
        )));
    }
    let dim = vectors[0].dim();
    let mut acc = CVector::zeros(dim);
    for (c, v) in coeffs.iter().zip(vectors) {
        same_dim(dim, v.dim())?;
        acc.axpy(*c, &v.amplitudes, Complex64::new(1.0, 0.0));
    }
    canonicalize_vector(acc).map_err(|e| match e {
        Error::AllZero => Error::ZeroResult,
        other => other,
    })
}

/// Inhomogeneous coordinates `z^i / z^k` (pivot `k` omitted) on the chart
/// where amplitude `k` is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartCoordinates {
    chart_index: usize,
    coords: Vec<Complex64>,
}

impl ChartCoordinates {
    pub fn new(dim: usize, chart_index: usize, coords: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        same_dim(dim - 1, coords.len())?;
        if chart_index >= dim {
            return Err(Error::ChartOutOfRange {
                index: chart_index,
                dim,
            });
        }
        if coords
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument(
                "chart coordinates must be finite".into(),
            ));
        }
        Ok(Self {
            chart_index,
            coords,
        })
    }

    pub fn chart_index(&self) -> usize {
        self.chart_index
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() + 1
    }

    /// Homogeneous coordinates with `1` restored at the pivot.
    pub fn homogeneous(&self) -> CVector {
        let mut z = Vec::with_capacity(self.dim());
        z.extend_from_slice(&self.coords[..self.chart_index]);
        z.push(Complex64::new(1.0, 0.0));
        z.extend_from_slice(&self.coords[self.chart_index..]);
        CVector::from_vec(z)
    }
}

pub fn to_chart(p: &ProjectivePoint, k: usize) -> Result<ChartCoordinates> {
    let dim = p.dim();
    if k >= dim {
        return Err(Error::ChartOutOfRange { index: k, dim });
    }
    let amps = p.amplitudes();
    let pivot = amps[k];
    if pivot.norm() <= EPS_ZERO {
        return Err(Error::ZeroPivot { index: k });
    }
    let coords = amps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, z)| z / pivot)
        .collect();
    Ok(ChartCoordinates {
        chart_index: k,
        coords,
    })
}

pub fn from_chart(c: &ChartCoordinates) -> ProjectivePoint {
    // The pivot entry is exactly 1, so the vector is never zero.
    canonicalize(&StateVector {
        amplitudes: c.homogeneous(),
    })
}

pub fn chart_transition(c: &ChartCoordinates, j: usize) -> Result<ChartCoordinates> {
    if j == c.chart_index {
        return Ok(c.clone());
    }
    to_chart(&from_chart(c), j)
}

/// An orthonormal basis, stored as the unitary matrix whose columns are the
/// basis states expressed in the reference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationBasis {
    vectors: CMatrix,
}

impl RepresentationBasis {
    pub fn new(vectors: CMatrix) -> Result<Self> {
        if !vectors.is_square() {
            return Err(Error::DimensionMismatch {
                expected: vectors.nrows(),
                found: vectors.ncols(),
            });
        }
        check_dim(vectors.nrows())?;
        let deviation = linalg::unitarity_deviation(&vectors);
        if !(deviation <= EPS_NORM) {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { vectors })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub(crate) fn from_unitary_unchecked(vectors: CMatrix) -> Self {
        Self { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.vectors
    }

    /// The `k`-th basis state in reference-basis amplitudes.
    pub fn state(&self, k: usize) -> StateVector {
        StateVector {
            amplitudes: self.vectors.column(k).into_owned(),
        }
    }
}

/// Re-express amplitudes given in `from_b` as amplitudes in `to_b`:
/// `to_b† · from_b · v`.
pub fn change_representation(
    v: &StateVector,
    from_b: &RepresentationBasis,
    to_b: &RepresentationBasis,
) -> Result<StateVector> {
    same_dim(v.dim(), from_b.dim())?;
    same_dim(v.dim(), to_b.dim())?;
    let amplitudes = to_b.vectors.adjoint() * (&from_b.vectors * &v.amplitudes);
    StateVector::from_vector(amplitudes)
}
