//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

use cliffib::exact::{rat, QMatrix, Rational};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-6..=6);
    let den: i64 = rng.gen_range(1..=4);
    Rational::new(num.into(), den.into())
}

/// Random symmetric matrix with small rational entries.
pub fn random_gram(n: usize, rng: &mut impl Rng) -> QMatrix {
    let mut g = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = small_rational(rng);
            g[(i, j)] = x.clone();
            g[(j, i)] = x;
        }
    }
    g
}

pub fn random_nondegenerate_gram(n: usize, rng: &mut impl Rng) -> QMatrix {
    loop {
        let g = random_gram(n, rng);
        if !g.determinant().is_zero() {
            return g;
        }
    }
}

pub fn random_nonzero_diagonal(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n)
        .map(|_| loop {
            let x = small_rational(rng);
            if !x.is_zero() {
                break x;
            }
        })
        .collect()
}

/// diag(1, -1, 1, -1, ...).
pub fn split_diagonal(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat(if i % 2 == 0 { 1 } else { -1 })).collect()
}

/// Random nonzero isotropic vector of diag(1, -1, 1, ...): the first pair
/// is solved from `(x1 - x2)(x1 + x2) = -rest`.
pub fn split_isotropic_point(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    assert!(n >= 2);
    let mut v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
    let diag = split_diagonal(n);
    let rest: Rational = (2..n).map(|i| &diag[i] * &v[i] * &v[i]).sum();
    let u = loop {
        let u = rat(rng.gen_range(-9..=9));
        if !u.is_zero() {
            break u;
        }
    };
    let w = -rest / &u;
    v[0] = (&u + &w) / rat(2);
    v[1] = (&w - &u) / rat(2);
    v
}

pub fn diagonal_value(diag: &[Rational], v: &[Rational]) -> Rational {
    diag.iter().zip(v).map(|(a, x)| a * x * x).sum()
}

/// Dense rank over Q by plain Gaussian elimination, separate from the
/// library's elimination routines.
pub fn oracle_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|r| !rows[*r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..ncols {
                    let t = &rows[rank][k] * &f;
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim T^k(V) / (Σ_i V^i ⊗ R ⊗ V^{k-2-i})` by brute force over the full
/// tensor power, for relations given in `a·n + b` coordinates.
pub fn brute_force_dims(n: usize, relations: &[Vec<(usize, Rational)>], max_degree: usize) -> Vec<usize> {
    let mut dims = vec![1];
    for k in 1..=max_degree {
        let total = n.pow(k as u32);
        if k < 2 {
            dims.push(total);
            continue;
        }
        let mut rows = Vec::new();
        for i in 0..=k - 2 {
            let left = n.pow(i as u32);
            let right = n.pow((k - 2 - i) as u32);
            for l in 0..left {
                for r in 0..right {
                    for rel in relations {
                        let mut row = vec![Rational::zero(); total];
                        for (idx, c) in rel {
                            let pos = (l * n * n + idx) * right + r;
                            row[pos] += c;
                        }
                        rows.push(row);
                    }
                }
            }
        }
        dims.push(total - oracle_rank(rows));
    }
    dims
}

/// Betti-number count for a smooth quadric of dimension `d`: one class in
/// each even degree, plus a second middle class when `d` is even.
pub fn quadric_cohomology_rank(d: usize) -> u64 {
    let classes = (0..=2 * d).filter(|k| k % 2 == 0).count() as u64;
    classes + u64::from(d % 2 == 0)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
