//! Truncation modules `R^k` and the resolution of the diagonal bimodule.
//!
//! `R^k_j` is the kernel of the Koszul differential
//! `D_k* ⊗ A_j → D_{k-1}* ⊗ A_{j+1}`, with `R^0 = A`. In bidegree (p, q)
//! the diagonal resolution reads
//!
//! `0 → R^q_p ⊗ A_0 → … → R^1_p ⊗ A_{q-1} → R^0_p ⊗ A_q → A_{p+q} → 0`
//!
//! where `R^k_p ⊗ A_{q-k} → R^{k-1}_p ⊗ A_{q-k+1}` contracts `D_k*` against
//! a generator on the right and multiplies the last factor by that
//! generator on the left, and the last map is multiplication in A.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use super::complex::{certified_ranks, RankMethod};
use super::graded::GradedAlgebra;
use super::koszul::{koszul_complex, koszul_differential};
use super::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::exact::sparse::{collect_sparse, SparseVec};
use crate::exact::{Rational, SparseMatrix};

/// Basis of `R^k_j` inside `D_k* ⊗ A_j`, with the coordinate columns.
#[derive(Clone, Debug)]
struct Truncation {
    basis: Vec<SparseVec>,
    free: Vec<usize>,
    ambient: usize,
}

impl Truncation {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, which must lie in the span.
    fn coordinates(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut pos: HashMap<usize, usize> = HashMap::new();
        for (b, f) in self.free.iter().enumerate() {
            pos.insert(*f, b);
        }
        let coords: SparseVec = v
            .iter()
            .filter_map(|(i, c)| pos.get(i).map(|b| (*b, c.clone())))
            .collect::<Vec<_>>();
        let mut coords = coords;
        coords.sort_by_key(|(i, _)| *i);
        let rebuilt = collect_sparse(
            coords
                .iter()
                .flat_map(|(b, c)| self.basis[*b].iter().map(move |(i, x)| (*i, x * c))),
        );
        if &rebuilt != v {
            return Err(Error::Invariant(
                "image of a truncation module left the next truncation module".into(),
            ));
        }
        Ok(coords)
    }
}

fn truncation(dual: &GradedAlgebra, alg: &GradedAlgebra, k: usize, j: usize) -> Truncation {
    if k == 0 {
        let d = alg.dim(j);
        return Truncation {
            basis: (0..d).map(|i| vec![(i, Rational::one())]).collect(),
            free: (0..d).collect(),
            ambient: d,
        };
    }
    let m = koszul_differential(dual, alg, k + j, k);
    let (basis, free) = m.kernel_with_free_columns();
    Truncation {
        basis,
        free,
        ambient: m.cols(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationRow {
    pub degree: usize,
    pub dim: usize,
    /// Exactness of `0 → R^k_j → D_k*⊗A_j → … → D_0*⊗A_{j+k} → (augmentation) → 0`.
    pub right_resolution_exact: bool,
    /// Exactness of `… → D_{k+2}*⊗A_{j-2} → D_{k+1}*⊗A_{j-1} → R^k_j → 0`.
    pub left_resolution_exact: bool,
    /// `dim R^k_j` equals the alternating sum along each resolution.
    pub right_euler_ok: bool,
    pub left_euler_ok: bool,
    pub method: RankMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub k: usize,
    pub dims: Vec<usize>,
    pub rows: Vec<TruncationRow>,
    pub all_exact: bool,
    pub note: Option<String>,
}

fn alternating(terms: impl Iterator<Item = usize>) -> i64 {
    terms
        .enumerate()
        .map(|(i, d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `R^k` in degrees `0..=max_degree - k`, with both resolutions checked in
/// each degree.
pub fn truncation_module(
    p: &QuadraticPresentation,
    k: usize,
    max_degree: usize,
    ambient_cap: usize,
) -> Result<TruncationReport> {
    if k > max_degree {
        return Err(Error::Input(format!("k = {k} exceeds the working degree {max_degree}")));
    }
    let alg = GradedAlgebra::build(p, max_degree, ambient_cap)?;
    let dual = GradedAlgebra::build(&p.dual(), max_degree, ambient_cap)?;
    let mut rows = Vec::new();
    for j in 0..=max_degree - k {
        let r = truncation(&dual, &alg, k, j);
        if k == 0 {
            rows.push(TruncationRow {
                degree: j,
                dim: r.dim(),
                right_resolution_exact: true,
                left_resolution_exact: true,
                right_euler_ok: true,
                left_euler_ok: true,
                method: RankMethod::Exact,
            });
            continue;
        }
        let m = k + j;
        // positions: augmentation, K_0, …, K_m
        let (kdims, kmaps) = koszul_complex(&dual, &alg, m);
        let inclusion = SparseMatrix::from_columns(r.ambient, r.basis.clone());
        // right: aug ← K_0 ← … ← K_k ← R
        let mut rdims: Vec<usize> = kdims[..=k + 1].to_vec();
        rdims.push(r.dim());
        let mut rmaps: Vec<SparseMatrix> = kmaps[..=k].to_vec();
        rmaps.push(inclusion);
        let right = certified_ranks(&rdims, &rmaps);
        // left: R ← K_{k+1} ← … ← K_m
        let mut ldims = vec![r.dim()];
        ldims.extend_from_slice(&kdims[k + 2..]);
        let mut lmaps = Vec::new();
        if k < m {
            let first = &kmaps[k + 1];
            let cols: Result<Vec<SparseVec>> = first.columns().iter().map(|c| r.coordinates(c)).collect();
            lmaps.push(SparseMatrix::from_columns(r.dim(), cols?));
            lmaps.extend_from_slice(&kmaps[k + 2..]);
        }
        let left = certified_ranks(&ldims, &lmaps);
        let term = |i: usize| kdims[i + 1];
        // 0 → R → K_k → … → K_0 → 0  and  … → K_{k+1} → R → 0
        let right_sum = alternating((0..=k).rev().map(term));
        let left_sum = alternating((k + 1..=m).map(term));
        let method = if right.method == RankMethod::Exact || left.method == RankMethod::Exact {
            RankMethod::Exact
        } else {
            RankMethod::ModularCertified
        };
        rows.push(TruncationRow {
            degree: j,
            dim: r.dim(),
            right_resolution_exact: right.exact(),
            left_resolution_exact: left.exact(),
            right_euler_ok: right_sum == r.dim() as i64,
            left_euler_ok: left_sum == r.dim() as i64,
            method,
        });
    }
    let all_exact = rows.iter().all(|r| {
        r.right_resolution_exact && r.left_resolution_exact && r.right_euler_ok && r.left_euler_ok
    });
    Ok(TruncationReport {
        k,
        dims: rows.iter().map(|r| r.dim).collect(),
        rows,
        all_exact,
        note: (k == 0).then(|| "R^0 is the free module A; both resolutions are trivial".to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalTerm {
    pub p: usize,
    pub q: usize,
    /// `dim A_{p+q}`, then `dim R^k_p ⊗ A_{q-k}` for `k = 0..=q`.
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub exact: bool,
    pub euler_ok: bool,
    pub method: RankMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub bound: (usize, usize),
    pub terms: Vec<DiagonalTerm>,
    pub all_exact: bool,
}

/// Checks the resolution of the diagonal in every bidegree `(p, q)` with
/// `p ≤ bound.0`, `q ≤ bound.1`.
pub fn diagonal_resolution_check(
    pres: &QuadraticPresentation,
    bound: (usize, usize),
    ambient_cap: usize,
) -> Result<DiagonalReport> {
    let (pb, qb) = bound;
    let alg = GradedAlgebra::build(pres, pb + qb + 1, ambient_cap)?;
    let dual = GradedAlgebra::build(&pres.dual(), qb + 1, ambient_cap)?;
    let n = alg.gen_dim();
    let mut cache: HashMap<(usize, usize), Truncation> = HashMap::new();
    let mut terms = Vec::new();
    for p in 0..=pb {
        for k in 0..=qb {
            cache.insert((k, p), truncation(&dual, &alg, k, p));
        }
        for q in 0..=qb {
            let mut dims = vec![alg.dim(p + q)];
            let mut maps = vec![alg.multiplication(p, q)];
            dims.push(alg.dim(p) * alg.dim(q));
            for k in 1..=q {
                let src = &cache[&(k, p)];
                let dst = &cache[&(k - 1, p)];
                let a_src = alg.dim(q - k);
                let a_dst = alg.dim(q - k + 1);
                // Φ = Σ_i (right mult by y_i in D)ᵀ ⊗ id ⊗ (left mult by x_i in A)
                let contractions: Vec<SparseMatrix> = (0..n)
                    .map(|i| dual.right_mult(k - 1, i).transpose().kron(&SparseMatrix::identity(alg.dim(p))))
                    .collect();
                let mut cols = Vec::with_capacity(src.dim() * a_src);
                for r in &src.basis {
                    let contracted: Vec<SparseVec> = contractions.iter().map(|c| c.apply(r)).collect();
                    for c in 0..a_src {
                        // image in (D_{k-1}* ⊗ A_p) ⊗ A_{q-k+1}, grouped by the last factor
                        let mut by_last: Vec<SparseVec> = vec![Vec::new(); a_dst];
                        for (i, s) in contracted.iter().enumerate() {
                            for (t, x) in alg.left_mult(q - k, i).column(c) {
                                by_last[*t] = crate::exact::sparse::axpy(&by_last[*t], x, s);
                            }
                        }
                        let mut col: Vec<(usize, Rational)> = Vec::new();
                        for (t, v) in by_last.iter().enumerate() {
                            for (b, x) in dst.coordinates(v)? {
                                col.push((b * a_dst + t, x));
                            }
                        }
                        col.sort_by_key(|(i, _)| *i);
                        cols.push(col);
                    }
                }
                dims.push(src.dim() * a_src);
                maps.push(SparseMatrix::from_columns(dst.dim() * a_dst, cols));
            }
            let check = certified_ranks(&dims, &maps);
            let euler = alternating(dims[1..].iter().copied());
            terms.push(DiagonalTerm {
                p,
                q,
                euler_ok: euler == dims[0] as i64,
                exact: check.exact(),
                homology: check.homology,
                method: check.method,
                dims,
            });
        }
    }
    let all_exact = terms.iter().all(|t| t.exact && t.euler_ok);
    Ok(DiagonalReport {
        bound,
        terms,
        all_exact,
    })
}
