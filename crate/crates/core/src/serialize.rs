//! Serde support: complex numbers as `[re, im]` pairs, vectors as arrays of
//! pairs, matrices as row-major arrays of rows.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::CMatrix;
use crate::operators::HermitianOperator;
use crate::projective::{ProjectivePoint, StateVector};

/// A complex number on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair(pub [f64; 2]);

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair([z.re, z.im])
    }
}

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0[0], p.0[1])
    }
}

pub fn to_pairs(amps: &[Complex64]) -> Vec<Pair> {
    amps.iter().copied().map(Pair::from).collect()
}

pub fn from_pairs(pairs: &[Pair]) -> Vec<Complex64> {
    pairs.iter().copied().map(Complex64::from).collect()
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Pair>> {
    m.row_iter()
        .map(|r| r.iter().copied().map(Pair::from).collect())
        .collect()
}

/// Square matrix from rows of pairs; ragged input is reported, not padded.
pub fn rows_to_matrix(rows: &[Vec<Pair>]) -> Result<CMatrix, String> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(format!("row {i} has {} entries, expected {n}", r.len()));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| rows[r][c].into()))
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_pairs(self.amplitudes()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<Pair>::deserialize(d)?;
        StateVector::new(from_pairs(&pairs)).map_err(D::Error::custom)
    }
}

impl Serialize for HermitianOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        matrix_to_rows(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Pair>>::deserialize(d)?;
        let m = rows_to_matrix(&rows).map_err(D::Error::custom)?;
        HermitianOperator::new(m).map_err(D::Error::custom)
    }
}

pub(crate) fn states<S: Serializer>(states: &[StateVector], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(states.len()))?;
    for v in states {
        seq.serialize_element(v)?;
    }
    seq.end()
}

pub(crate) fn points<S: Serializer>(points: &[ProjectivePoint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(points.len()))?;
    for p in points {
        seq.serialize_element(p.canonical())?;
    }
    seq.end()
}

pub(crate) fn named_series<S: Serializer>(
    series: &[(String, Vec<f64>)],
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(series.len()))?;
    for (name, values) in series {
        map.serialize_entry(name, values)?;
    }
    map.end()
}
