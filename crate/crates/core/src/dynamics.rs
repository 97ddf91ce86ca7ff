//! Time evolution in the Schrödinger and Heisenberg pictures.
//!
//! Propagators are exact: `exp(−iHt/ħ)` is formed from the eigendecomposition
//! of `H`, cached once per [`HamiltonianSystem`].

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{self, CMatrix, CVector, I};
use crate::operators::HermitianOperator;
use crate::projective::{canonicalize, ProjectivePoint, StateVector};
use crate::{Error, Result};

/// Default central-difference step for tangent checks.
pub const TANGENT_STEP: f64 = 1e-6;

/// Default central-difference step for the expectation-flow residual.
pub const FLOW_STEP: f64 = 1e-5;

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[derive(Debug, Clone)]
pub struct HamiltonianSystem {
    hamiltonian: HermitianOperator,
    hbar: f64,
    energies: Vec<f64>,
    eigenvectors: CMatrix,
}

impl HamiltonianSystem {
    pub fn new(hamiltonian: HermitianOperator, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "hbar must be positive and finite, got {hbar}"
            )));
        }
        let (energies, eigenvectors) = linalg::hermitian_eigen(hamiltonian.matrix());
        Ok(Self {
            hamiltonian,
            hbar,
            energies,
            eigenvectors,
        })
    }

    /// `ħ = 1`.
    pub fn natural(hamiltonian: HermitianOperator) -> Self {
        Self::new(hamiltonian, 1.0).expect("unit hbar is valid")
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    /// Energies in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `U(t) = exp(−iHt/ħ)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let hbar = self.hbar;
        linalg::spectral_map(&self.energies, &self.eigenvectors, |e| {
            Complex64::from_polar(1.0, -e * t / hbar)
        })
    }

    /// Amplitudes `a(t) = U(t) a(0)`, with `a(0)` normalized on entry.
    pub fn evolve_state(&self, v0: &StateVector, t: f64) -> Result<StateVector> {
        same_dim(self.dim(), v0.dim())?;
        let a0 = v0.normalized();
        StateVector::from_vector(self.propagator(t) * a0.as_vector())
    }

    /// Components `da^i/dt = (1/iħ) Σ_j H_ij a^j` of the tangent vector at `v`.
    pub fn tangent_vector(&self, v: &StateVector) -> Result<Vec<Complex64>> {
        same_dim(self.dim(), v.dim())?;
        let factor = -I / self.hbar;
        let hv: CVector = self.hamiltonian.matrix() * v.as_vector();
        Ok(hv.iter().map(|z| z * factor).collect())
    }

    /// Right-hand side of the Heisenberg equation, `[L, H] / (iħ)`.
    pub fn heisenberg_rhs(&self, l: &HermitianOperator) -> Result<HermitianOperator> {
        same_dim(self.dim(), l.dim())?;
        let comm = linalg::commutator(l.matrix(), self.hamiltonian.matrix());
        HermitianOperator::new(comm * (-I / self.hbar))
    }

    /// `L_H(t) = U(t)† L U(t)`.
    pub fn evolve_operator_heisenberg(
        &self,
        l: &HermitianOperator,
        t: f64,
    ) -> Result<HermitianOperator> {
        same_dim(self.dim(), l.dim())?;
        let u = self.propagator(t);
        HermitianOperator::new(u.adjoint() * l.matrix() * u)
    }

    /// `|d/dt ⟨L⟩(t) − ⟨[L,H]/iħ⟩(t)|`, the derivative taken by central
    /// difference with step `h` along the Schrödinger flow from `v0`.
    pub fn poisson_flow_residual(
        &self,
        l: &HermitianOperator,
        v0: &StateVector,
        t: f64,
        h: f64,
    ) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "finite-difference step must be positive, got {h}"
            )));
        }
        same_dim(self.dim(), l.dim())?;
        let at = |s: f64| -> Result<f64> { expectation(l, &self.evolve_state(v0, s)?) };
        let derivative = (at(t + h)? - at(t - h)?) / (2.0 * h);
        let bracket = expectation(&self.heisenberg_rhs(l)?, &self.evolve_state(v0, t)?)?;
        Ok((derivative - bracket).abs())
    }

    /// Evolve `v0` over `times`, recording points and observable expectations.
    pub fn sample_trajectory(
        &self,
        v0: &StateVector,
        times: &[f64],
        observables: &[(String, HermitianOperator)],
    ) -> Result<Trajectory> {
        if times.is_empty() {
            return Err(Error::InvalidArgument("time grid is empty".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "times must be finite and strictly ascending".into(),
            ));
        }
        for (_, l) in observables {
            same_dim(self.dim(), l.dim())?;
        }
        let mut states = Vec::with_capacity(times.len());
        let mut expectations: Vec<(String, Vec<f64>)> = observables
            .iter()
            .map(|(name, _)| (name.clone(), Vec::with_capacity(times.len())))
            .collect();
        for &t in times {
            let state = self.evolve_state(v0, t)?;
            for ((_, series), (_, l)) in expectations.iter_mut().zip(observables) {
                series.push(expectation(l, &state)?);
            }
            states.push(state);
        }
        let points = states.iter().map(canonicalize).collect();
        Ok(Trajectory {
            times: times.to_vec(),
            states,
            points,
            expectations,
        })
    }
}

/// `⟨v|L|v⟩ / ⟨v|v⟩`.
pub fn expectation(l: &HermitianOperator, v: &StateVector) -> Result<f64> {
    same_dim(l.dim(), v.dim())?;
    let a = v.as_vector();
    let num = a.dotc(&(l.matrix() * a));
    Ok(num.re / a.norm_squared())
}

/// Sampled evolution of one initial state.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    times: Vec<f64>,
    #[serde(serialize_with = "crate::serialize::states")]
    states: Vec<StateVector>,
    #[serde(serialize_with = "crate::serialize::points")]
    points: Vec<ProjectivePoint>,
    #[serde(serialize_with = "crate::serialize::named_series")]
    expectations: Vec<(String, Vec<f64>)>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Expectation series in the order the observables were supplied.
    pub fn expectations(&self) -> &[(String, Vec<f64>)] {
        &self.expectations
    }

    pub fn expectation_series(&self, name: &str) -> Option<&[f64]> {
        self.expectations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::fidelity;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma(k: usize) -> HermitianOperator {
        match k {
            0 => HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(),
            1 => HermitianOperator::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, -1.0)],
                vec![c(0.0, 1.0), c(0.0, 0.0)],
            ])
            .unwrap(),
            _ => HermitianOperator::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap(),
        }
    }

    fn larmor() -> HamiltonianSystem {
        HamiltonianSystem::natural(sigma(2).scale(0.5))
    }

    fn plus() -> StateVector {
        StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap()
    }

    fn max_dev(a: &CMatrix, b: &CMatrix) -> f64 {
        linalg::max_abs(&(a - b))
    }

    #[test]
    fn evolve_trivial_cases() {
        let sys = larmor();
        let v = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert_eq!(sys.evolve_state(&v, 0.0).unwrap(), v);
        let free = HamiltonianSystem::natural(HermitianOperator::zero(2).unwrap());
        assert_eq!(free.evolve_state(&v, 3.7).unwrap(), v);
        assert!(matches!(
            sys.evolve_state(&StateVector::basis(3, 0).unwrap(), 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(HamiltonianSystem::new(sigma(2), 0.0).is_err());
    }

    #[test]
    fn larmor_half_period() {
        // diag(e^{-iπ/2}, e^{iπ/2}) (1,1)/√2 = (−i, i)/√2
        let out = larmor().evolve_state(&plus(), PI).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - c(0.0, -h)).norm() < 1e-12);
        assert!((out.amplitudes()[1] - c(0.0, h)).norm() < 1e-12);
        let minus = canonicalize(&StateVector::from_real(&[1.0, -1.0]).unwrap());
        assert!(1.0 - fidelity(&canonicalize(&out), &minus).unwrap() < 1e-12);
    }

    #[test]
    fn tangent_examples() {
        let v = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.9)]).unwrap();
        let free = HamiltonianSystem::natural(HermitianOperator::zero(2).unwrap());
        assert!(free
            .tangent_vector(&v)
            .unwrap()
            .iter()
            .all(|z| z.norm() == 0.0));
        let id = HamiltonianSystem::natural(HermitianOperator::identity(2).unwrap());
        for (t, a) in id.tangent_vector(&v).unwrap().iter().zip(v.amplitudes()) {
            assert!((t - (-I * a)).norm() < 1e-15);
        }
    }

    #[test]
    fn heisenberg_rhs_examples() {
        let sys = larmor();
        let rhs = sys.heisenberg_rhs(&sigma(0)).unwrap();
        assert!(max_dev(rhs.matrix(), &(-sigma(1).matrix())) < 1e-15);
        assert!(linalg::max_abs(sys.heisenberg_rhs(sys.hamiltonian()).unwrap().matrix()) == 0.0);
        assert!(
            linalg::max_abs(
                sys.heisenberg_rhs(&HermitianOperator::identity(2).unwrap())
                    .unwrap()
                    .matrix()
            ) == 0.0
        );
    }

    #[test]
    fn heisenberg_precession() {
        let omega = 1.3;
        let sys = HamiltonianSystem::natural(sigma(2).scale(omega / 2.0));
        let sx = sigma(0);
        assert!(
            max_dev(
                sys.evolve_operator_heisenberg(&sx, 0.0).unwrap().matrix(),
                sx.matrix()
            ) < 1e-15
        );
        for &t in &[0.4, 1.0, 2.5] {
            let expected = sx
                .combine((omega * t).cos(), &sigma(1), -(omega * t).sin())
                .unwrap();
            let got = sys.evolve_operator_heisenberg(&sx, t).unwrap();
            assert!(max_dev(got.matrix(), expected.matrix()) < 1e-12);
            let h = sys
                .evolve_operator_heisenberg(sys.hamiltonian(), t)
                .unwrap();
            assert!(max_dev(h.matrix(), sys.hamiltonian().matrix()) < 1e-12);
        }
    }

    #[test]
    fn expectation_examples() {
        let e0 = StateVector::basis(2, 0).unwrap();
        assert_eq!(
            expectation(&HermitianOperator::identity(2).unwrap(), &e0).unwrap(),
            1.0
        );
        assert_eq!(expectation(&sigma(2), &e0).unwrap(), 1.0);
        assert_eq!(expectation(&sigma(0), &e0).unwrap(), 0.0);
        let v = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.9)]).unwrap();
        let w = v.scaled(c(-2.0, 5.0)).unwrap();
        assert!(
            (expectation(&sigma(1), &v).unwrap() - expectation(&sigma(1), &w).unwrap()).abs()
                < 1e-14
        );
    }

    #[test]
    fn flow_residual_conserved_quantities() {
        let sys = larmor();
        let v = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.9)]).unwrap();
        assert!(
            sys.poisson_flow_residual(sys.hamiltonian(), &v, 0.7, FLOW_STEP)
                .unwrap()
                < 1e-8
        );
        assert!(
            sys.poisson_flow_residual(&sigma(2), &v, 0.7, FLOW_STEP)
                .unwrap()
                < 1e-8
        );
        assert!(
            sys.poisson_flow_residual(&sigma(0), &v, 0.7, FLOW_STEP)
                .unwrap()
                < 1e-8
        );
        assert!(sys.poisson_flow_residual(&sigma(0), &v, 0.7, 0.0).is_err());
    }

    #[test]
    fn trajectory_examples() {
        let sys = larmor();
        let obs = vec![("sx".to_string(), sigma(0))];
        let tr = sys.sample_trajectory(&plus(), &[0.0], &obs).unwrap();
        assert_eq!(tr.len(), 1);
        assert_eq!(tr.points()[0], canonicalize(&plus()));

        let free = HamiltonianSystem::natural(HermitianOperator::zero(2).unwrap());
        let tr = free
            .sample_trajectory(&plus(), &[0.0, 1.0, 2.0], &obs)
            .unwrap();
        assert!(tr.states().iter().all(|s| s == &tr.states()[0]));

        let times: Vec<f64> = (0..=32).map(|k| k as f64 * PI / 16.0).collect();
        let tr = sys.sample_trajectory(&plus(), &times, &obs).unwrap();
        for (t, x) in times.iter().zip(tr.expectation_series("sx").unwrap()) {
            assert!((x - t.cos()).abs() < 1e-9);
        }
        assert!(tr.states().iter().all(|s| (s.norm() - 1.0).abs() < 1e-12));

        assert!(sys.sample_trajectory(&plus(), &[1.0, 1.0], &obs).is_err());
        assert!(sys.sample_trajectory(&plus(), &[], &obs).is_err());
    }
}
