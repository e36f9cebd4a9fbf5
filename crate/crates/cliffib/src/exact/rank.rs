//! Rank over the fraction field Q(s₁..s_m) by random specialization.

use rand::Rng;
use serde::Serialize;

use super::matrix::PolyMatrix;
use super::rational::{format_rational, rat, Rational};

/// Default half-width of the integer box specialization points are drawn from.
pub const DEFAULT_BOUND: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRank {
    /// Largest rank observed; a lower bound on the generic rank.
    pub rank: usize,
    /// Specialization point at which `rank` was attained.
    pub witness: Vec<Rational>,
    pub trials: usize,
    /// `min(rows, cols)` reached, so the generic rank is known exactly.
    pub full_rank_certified: bool,
}

#[derive(Serialize)]
pub struct GenericRankReport {
    pub rank: usize,
    pub witness: Vec<String>,
    pub trials: usize,
    pub full_rank_certified: bool,
}

impl GenericRank {
    pub fn report(&self) -> GenericRankReport {
        GenericRankReport {
            rank: self.rank,
            witness: self.witness.iter().map(format_rational).collect(),
            trials: self.trials,
            full_rank_certified: self.full_rank_certified,
        }
    }
}

pub fn random_point(nvars: usize, bound: i64, rng: &mut impl Rng) -> Vec<Rational> {
    (0..nvars).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Maximum exact rank over the given specialization points.
pub fn rank_at_points(m: &PolyMatrix, points: &[Vec<Rational>]) -> GenericRank {
    let cap = m.rows().min(m.cols());
    let mut best = GenericRank {
        rank: 0,
        witness: points.first().cloned().unwrap_or_default(),
        trials: 0,
        full_rank_certified: cap == 0,
    };
    for p in points {
        best.trials += 1;
        let r = m.eval(p).rank();
        if r > best.rank || best.trials == 1 {
            best.rank = r;
            best.witness = p.clone();
        }
        if best.rank == cap {
            best.full_rank_certified = true;
            break;
        }
    }
    best
}

/// Generic rank of a polynomial matrix. Each trial fails to see the
/// generic rank with probability at most deg/(2·bound+1).
pub fn generic_rank(m: &PolyMatrix, trials: usize, bound: i64, rng: &mut impl Rng) -> GenericRank {
    assert!(trials >= 1, "at least one trial");
    let points: Vec<Vec<Rational>> = (0..trials)
        .map(|_| random_point(m.vars().len(), bound, rng))
        .collect();
    rank_at_points(m, &points)
}
