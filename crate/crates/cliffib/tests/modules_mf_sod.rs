mod common;

use cliffib::clifford::{CliffordAlgebra, Side};
use cliffib::exact::{rat, QMatrix, Rational};
use cliffib::factorization::{periodicity_check, MatrixFactorization};
use cliffib::form::QuadraticForm;
use cliffib::modules::{build_bk, build_bk_bimodule, hom_over_b0, projectivity_check, tensor_associativity_dims, Frame};
use cliffib::sod::{double_cover_genus, fibration_sod, intersection_sod, quadric_k0_rank, Base, Count};
use cliffib::Error;
use common::*;
use num_traits::{One, Zero};
use rand::Rng;

#[test]
fn modules_over_random_forms() {
    let mut rng = rng(61);
    for n in 2..=4usize {
        let g = random_nondegenerate_gram(n, &mut rng);
        let alg = CliffordAlgebra::new(g).unwrap();
        assert!(Frame::of(&alg).verify(&alg));
        for k in -1..=1 {
            let bi = build_bk_bimodule(&alg, k);
            assert_eq!(bi.dim(), 1 << (n - 1));
            assert!(bi.side(Side::Right).verify_action(&alg, 5, &mut rng));
            assert!(bi.side(Side::Left).verify_action(&alg, 5, &mut rng));
        }
        let (a, b) = tensor_associativity_dims(&alg, 1, 1, -1);
        assert_eq!((a, b), (1 << (n - 1), 1 << (n - 1)));
        assert!(projectivity_check(&alg, &build_bk(&alg, 1, Side::Right)).unwrap().projective);
    }
}

#[test]
fn hom_sides_must_match() {
    let alg = CliffordAlgebra::new(QMatrix::identity(3)).unwrap();
    let r = hom_over_b0(&build_bk(&alg, 0, Side::Left), &build_bk(&alg, 0, Side::Right));
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn factorization_identity_and_determinant() {
    let mut rng = rng(62);
    for n in 1..=5usize {
        let g = random_nondegenerate_gram(n, &mut rng);
        let form = QuadraticForm::constant(&g).unwrap();
        for side in [Side::Left, Side::Right] {
            let mf = MatrixFactorization::build(&form, side).unwrap();
            assert_eq!(mf.size(), 1 << (n - 1));
            assert!(mf.identity_holds());
            // det φ(x) = ±q(x)^{2^{n-2}} for n >= 2, checked pointwise
            for _ in 0..3 {
                let x: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect();
                let q = g.quadratic_value(&x);
                let (dp, dq) = (mf.phi.eval(&x).determinant(), mf.psi.eval(&x).determinant());
                if n >= 2 {
                    let e = 1u32 << (n - 2);
                    let want = num_traits::pow(q.clone(), e as usize);
                    assert!(dp == want || dp == -&want, "det φ = {dp}, q^{e} = {want}");
                    assert!(dq == want || dq == -&want);
                    assert_eq!(&dp * &dq, &want * &want);
                } else {
                    assert_eq!(&dp * &dq, q);
                }
            }
        }
    }
}

#[test]
fn cokernels_on_the_quadric() {
    let mut rng = rng(63);
    for n in 2..=5usize {
        let form = QuadraticForm::diagonal(&split_diagonal(n));
        let mf = MatrixFactorization::build(&form, Side::Left).unwrap();
        let mut points = Vec::new();
        for _ in 0..4 {
            let p = split_isotropic_point(n, &mut rng);
            if p.iter().all(Zero::is_zero) {
                continue;
            }
            assert_eq!(mf.cokernel_rank_at(&p).unwrap(), 1 << (n - 2));
            points.push(p);
        }
        assert!(periodicity_check(&form, &points).unwrap().holds);
        let off: Vec<Rational> = (0..n).map(|i| if i == 0 { Rational::one() } else { Rational::zero() }).collect();
        assert!(matches!(mf.cokernel_rank_at(&off), Err(Error::NotOnQuadric { .. })));
    }
}

#[test]
fn sod_counts_against_cohomology() {
    for n in 2..=9usize {
        let r = fibration_sod(n, &Base::Point { corank: 0 }).unwrap();
        assert_eq!(r.expected_exceptional_count, Count::Known(quadric_cohomology_rank(n - 2)));
        assert_eq!(quadric_k0_rank(n - 2), quadric_cohomology_rank(n - 2));
    }
    assert!(fibration_sod(1, &Base::Point { corank: 0 }).is_err());
    // Riemann-Hurwitz for a double cover of P^1 branched at b points
    for b in [4u64, 6, 8, 10] {
        assert_eq!(double_cover_genus(b), Some((b - 2) / 2));
    }
    for n in [4usize, 6, 8] {
        let r = intersection_sod(n, 2).unwrap();
        assert_eq!(r.extras["cover"]["branch_points"], n as u64);
        assert_eq!(r.extras["cover"]["genus"], (n as u64 - 2) / 2);
    }
    assert!(intersection_sod(3, 7).is_err());
}
