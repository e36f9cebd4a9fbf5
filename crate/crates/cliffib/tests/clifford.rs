mod common;

use cliffib::clifford::{Blade, CliffordAlgebra, CliffordElement, Parity, Side};
use cliffib::exact::{rat, QMatrix, Rational};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn random_element(n: usize, terms: usize, rng: &mut impl Rng) -> CliffordElement {
    let mut x = CliffordElement::zero();
    for _ in 0..terms {
        x.add_term(Blade(rng.gen_range(0..(1u32 << n))), small_rational(rng));
    }
    x
}

/// Clifford product by expanding every blade into generator words and
/// rewriting with `e_j e_i = -e_i e_j + 2 G_ij` until sorted.
fn oracle_product(g: &QMatrix, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
    fn reduce(g: &QMatrix, word: Vec<usize>, c: Rational, out: &mut CliffordElement) {
        if c.is_zero() {
            return;
        }
        for p in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[p], word[p + 1]);
            if a == b {
                let mut w = word.clone();
                w.drain(p..p + 2);
                reduce(g, w, &c * &g[(a, a)], out);
                return;
            }
            if a > b {
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                reduce(g, swapped, -c.clone(), out);
                let mut w = word.clone();
                w.drain(p..p + 2);
                reduce(g, w, &c * &g[(a, b)] * rat(2), out);
                return;
            }
        }
        let blade = word.iter().fold(0u32, |acc, i| acc | (1 << i));
        out.add_term(Blade(blade), c);
    }
    let mut out = CliffordElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let word: Vec<usize> = a.indices().chain(b.indices()).collect();
            reduce(g, word, ca * cb, &mut out);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_rewriting_oracle(seed in 0u64..100_000, n in 1usize..5) {
        let mut rng = rng(seed);
        let g = random_gram(n, &mut rng);
        let alg = CliffordAlgebra::new(g.clone()).unwrap();
        let (x, y) = (random_element(n, 3, &mut rng), random_element(n, 3, &mut rng));
        prop_assert_eq!(alg.multiply(&x, &y), oracle_product(&g, &x, &y));
    }

    #[test]
    fn associativity(seed in 0u64..100_000, n in 1usize..6) {
        let mut rng = rng(seed);
        let alg = CliffordAlgebra::new(random_gram(n, &mut rng)).unwrap();
        let (x, y, z) = (random_element(n, 3, &mut rng), random_element(n, 3, &mut rng), random_element(n, 3, &mut rng));
        prop_assert_eq!(alg.multiply(&alg.multiply(&x, &y), &z), alg.multiply(&x, &alg.multiply(&y, &z)));
    }

    #[test]
    fn vector_squares_to_its_value(seed in 0u64..100_000, n in 1usize..7) {
        let mut rng = rng(seed);
        let g = random_gram(n, &mut rng);
        let alg = CliffordAlgebra::new(g.clone()).unwrap();
        let v: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng)).collect();
        let x = CliffordElement::vector(&v);
        prop_assert_eq!(alg.multiply(&x, &x), CliffordElement::scalar(g.quadratic_value(&v)));
    }
}

#[test]
fn multiplication_maps_agree_with_oracle_rank() {
    let mut rng = rng(31);
    for n in 2..=5 {
        for _ in 0..5 {
            let g = random_gram(n, &mut rng);
            let alg = CliffordAlgebra::new(g.clone()).unwrap();
            let v: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng)).collect();
            for side in [Side::Left, Side::Right] {
                for parity in [Parity::Even, Parity::Odd] {
                    let m = alg.mult_map_matrix(&v, side, parity).unwrap();
                    assert_eq!(m.rank(), oracle_rank(m.to_rows()));
                    // v·v = q(v), so the map is invertible exactly when q(v) ≠ 0
                    if !g.quadratic_value(&v).is_zero() {
                        assert_eq!(m.rank(), 1 << (n - 1));
                    }
                }
            }
        }
    }
}

#[test]
fn parse_and_display() {
    let alg = CliffordAlgebra::new(QMatrix::diagonal(&[rat(1), rat(-1), rat(2)])).unwrap();
    let x = alg.parse_element("2 + e2e1 - 1/2*e3").unwrap();
    let y = alg.parse_element(&x.to_string()).unwrap();
    assert_eq!(x, y);
    assert!(alg.parse_element("e4").is_err());
}
