mod common;

use cliffib::duality::{
    build_a_sigma, clifford_hilbert, graded_dims, koszul_verify, quadratic_dual, quadric_hilbert,
    QuadraticPresentation, DEFAULT_AMBIENT_CAP,
};
use cliffib::exact::{rat, QMatrix};
use cliffib::Error;
use common::*;

#[test]
fn graded_dims_match_tensor_power_oracle() {
    let mut rng = rng(41);
    for n in 2..=3 {
        for _ in 0..3 {
            let g = random_gram(n, &mut rng);
            if g.is_zero() {
                continue;
            }
            for p in [build_a_sigma(&g).unwrap(), quadratic_dual(&build_a_sigma(&g).unwrap())] {
                let d = graded_dims(&p, 4, DEFAULT_AMBIENT_CAP).unwrap();
                assert_eq!(d.dims, brute_force_dims(n, p.relations(), 4));
            }
        }
    }
}

#[test]
fn hilbert_functions_of_nondegenerate_forms() {
    let mut rng = rng(42);
    for n in 2..=4usize {
        let g = random_nondegenerate_gram(n, &mut rng);
        let r = koszul_verify(&build_a_sigma(&g).unwrap(), 6, DEFAULT_AMBIENT_CAP).unwrap();
        for k in 0..=6usize {
            let (nn, kk) = (n as u64, k as u64);
            let quadric = binom(nn + kk - 1, kk) - if k >= 2 { binom(nn + kk - 3, kk - 2) } else { 0 };
            assert_eq!(r.dims[k] as u64, quadric);
            assert_eq!(quadric_hilbert(n, k), quadric);
            let clifford: u64 = (0..=kk / 2).map(|j| binom(nn, kk - 2 * j)).sum();
            assert_eq!(clifford_hilbert(n, k), clifford);
            assert_eq!(r.dual_dims[k] as u64, clifford);
        }
        assert!(r.hilbert_residual.iter().all(|c| *c == 0));
    }
}

#[test]
fn dual_is_an_involution() {
    let mut rng = rng(43);
    for n in 1..=4 {
        let g = random_gram(n, &mut rng);
        let p = build_a_sigma(&g).unwrap();
        assert!(quadratic_dual(&quadratic_dual(&p)).same_span(&p));
        assert_eq!(p.num_relations() + p.dual().num_relations(), n * n);
    }
}

#[test]
fn non_koszul_algebra_fails_the_series_test() {
    let q = QuadraticPresentation::new(3, vec![vec![(2, rat(1)), (3, rat(-1))], vec![(7, rat(1))]]).unwrap();
    let d = graded_dims(&q, 5, DEFAULT_AMBIENT_CAP).unwrap();
    assert_eq!(d.dims, brute_force_dims(3, q.relations(), 5));
    assert_eq!(d.dims, vec![1, 3, 7, 15, 32, 69]);
    let r = koszul_verify(&q, 5, DEFAULT_AMBIENT_CAP).unwrap();
    assert!(r.hilbert_residual.iter().any(|c| *c != 0));
    assert!(!r.koszul_up_to_degree);
}

#[test]
fn resource_limits() {
    let p = build_a_sigma(&QMatrix::identity(3)).unwrap();
    assert!(matches!(graded_dims(&p, 41, DEFAULT_AMBIENT_CAP), Err(Error::ResourceLimit { .. })));
    assert!(matches!(graded_dims(&p, 10, 4), Err(Error::ResourceLimit { .. })));
}

#[test]
fn dependent_relations_are_rejected() {
    let r = vec![(1, rat(1))];
    assert!(matches!(QuadraticPresentation::new(2, vec![r.clone(), r]), Err(Error::Input(_))));
    assert!(matches!(QuadraticPresentation::new(2, vec![vec![(4, rat(1))]]), Err(Error::Dimension(_))));
}
