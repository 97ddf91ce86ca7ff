use cpn::linalg::CMatrix;
use cpn::random;
use cpn::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unit<R: Rng>(rng: &mut R) -> BlochVector {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return BlochVector::new(v[0] / n, v[1] / n, v[2] / n).unwrap();
        }
    }
}

#[test]
fn fidelity_follows_bloch_angle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..500 {
        let p = random::point(&mut rng, 2);
        let q = random::point(&mut rng, 2);
        let (bp, bq) = (bloch_vector(&p).unwrap(), bloch_vector(&q).unwrap());
        assert!((bp.dot(&bp) - 1.0).abs() < EPS_NORM);
        let expected = (1.0 + bp.dot(&bq)) / 2.0;
        assert!((fidelity(&p, &q).unwrap() - expected).abs() < 1e-9);
    }
}

#[test]
fn bloch_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..500 {
        let b = random_unit(&mut rng);
        let back = bloch_vector(&from_bloch(&b).unwrap()).unwrap();
        for (x, y) in back.as_array().iter().zip(b.as_array()) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn bloch_vector_ignores_representative() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let v = random::state(&mut rng, 2);
        let c = random::nonzero_scalar(&mut rng);
        let a = bloch_vector(&canonicalize(&v)).unwrap();
        let b = bloch_vector(&canonicalize(&v.scaled(c).unwrap())).unwrap();
        for (x, y) in a.as_array().iter().zip(b.as_array()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn su2_action_is_rotation_of_bloch_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..500 {
        let g = random::special_unitary(&mut rng, 2);
        let p = random::point(&mut rng, 2);
        let r = su2_rotation(&g).unwrap();
        // R is orthogonal with determinant one.
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        let rotated = bloch_vector(&p).unwrap().rotated(&r);
        let direct = bloch_vector(&group_act(&g, &p).unwrap()).unwrap();
        for (x, y) in rotated.iter().zip(direct.as_array()) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}

#[test]
fn phase_rotation_about_z() {
    // diag(e^{-iπ/4}, e^{iπ/4}) turns +x into +y.
    let theta = std::f64::consts::FRAC_PI_2;
    let g = SpecialUnitary::new(CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ],
    ))
    .unwrap();
    let plus = canonicalize(&StateVector::from_real(&[1.0, 1.0]).unwrap());
    let b = bloch_vector(&group_act(&g, &plus).unwrap()).unwrap();
    assert!(b.x.abs() < 1e-12 && (b.y - 1.0).abs() < 1e-12 && b.z.abs() < 1e-12);
}

#[test]
fn transitive_witness_maps_p_to_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for dim in 2..=6 {
        for _ in 0..200 {
            let p = random::point(&mut rng, dim);
            let q = random::point(&mut rng, dim);
            let g = transitive_element(&p, &q).unwrap();
            assert!(fidelity(&group_act(&g, &p).unwrap(), &q).unwrap() > 1.0 - 1e-9);
            assert!((g.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            assert!(SpecialUnitary::new(g.matrix().clone()).is_ok());
        }
    }
    let p = random::point(&mut rng, 3);
    let q = random::point(&mut rng, 4);
    assert!(matches!(
        transitive_element(&p, &q),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn transitive_witness_for_basis_states_in_every_position() {
    for dim in 2..=5 {
        for i in 0..dim {
            for j in 0..dim {
                let p = canonicalize(&StateVector::basis(dim, i).unwrap());
                let q = canonicalize(&StateVector::basis(dim, j).unwrap());
                let g = transitive_element(&p, &q).unwrap();
                assert!(fidelity(&group_act(&g, &p).unwrap(), &q).unwrap() > 1.0 - 1e-12);
            }
        }
    }
}
