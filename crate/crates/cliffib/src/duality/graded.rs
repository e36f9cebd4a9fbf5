//! Graded components of a quadratic algebra, degree by degree.
//!
//! `A_k` is computed as the quotient of `A_{k-1} ⊗ V` by the image of
//! `A_{k-2} ⊗ R`, so the ambient space in degree k has dimension
//! `dim A_{k-1} · n` instead of `n^k`. Basis elements of `A_k` are the
//! free columns of that quotient; each one is a pair (basis element of
//! `A_{k-1}`, generator), hence a monomial.

use num_traits::One;
use serde::Serialize;

use super::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::exact::sparse::{Echelon, SparseMatrix, SparseVec};
use crate::exact::Rational;

/// Largest ambient dimension `dim A_{k-1} · n` built without complaint.
pub const DEFAULT_AMBIENT_CAP: usize = 200_000;

/// Largest degree accepted by any graded computation.
pub const MAX_DEGREE: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
    /// `bases[k]` lists the monomials (0-based generator words) whose
    /// classes form the chosen basis of the degree-k component.
    pub bases: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    presentation: QuadraticPresentation,
    dims: Vec<usize>,
    // words[k][i] = (u, b): basis i of A_k is (basis u of A_{k-1}) · x_b
    words: Vec<Vec<(usize, usize)>>,
    // right[k][b], left[k][i]: A_k → A_{k+1}
    right: Vec<Vec<SparseMatrix>>,
    left: Vec<Vec<SparseMatrix>>,
}

impl GradedAlgebra {
    pub fn build(p: &QuadraticPresentation, max_degree: usize, ambient_cap: usize) -> Result<Self> {
        if max_degree > MAX_DEGREE {
            return Err(Error::ResourceLimit {
                what: "degree".into(),
                needed: max_degree,
                cap: MAX_DEGREE,
            });
        }
        let n = p.gen_dim();
        let mut alg = GradedAlgebra {
            presentation: p.clone(),
            dims: vec![1],
            words: vec![vec![]],
            right: Vec::new(),
            left: Vec::new(),
        };
        for k in 1..=max_degree {
            let prev = alg.dims[k - 1];
            let ambient = prev * n;
            if ambient > ambient_cap {
                return Err(Error::ResourceLimit {
                    what: format!("ambient space of degree {k}"),
                    needed: ambient,
                    cap: ambient_cap,
                });
            }
            let mut span = Echelon::new(ambient);
            if k >= 2 {
                for u in 0..alg.dims[k - 2] {
                    let images: Vec<SparseVec> = (0..n)
                        .map(|a| alg.right[k - 2][a].column(u).clone())
                        .collect();
                    for r in p.relations() {
                        // Σ r_ab (e_u · x_a) ⊗ x_b
                        let v = crate::exact::sparse::collect_sparse(r.iter().flat_map(|(ab, c)| {
                            let (a, b) = (ab / n, ab % n);
                            images[a].iter().map(move |(t, x)| (t * n + b, x * c))
                        }));
                        span.insert(v);
                    }
                }
            }
            span.make_reduced();
            let free = span.free_columns();
            let mut pos = vec![usize::MAX; ambient];
            for (i, f) in free.iter().enumerate() {
                pos[*f] = i;
            }
            let project = |c: usize| -> SparseVec {
                let mut v: SparseVec = span
                    .normal_form(vec![(c, Rational::one())])
                    .into_iter()
                    .map(|(i, x)| (pos[i], x))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                v
            };
            let dim = free.len();
            let right: Vec<SparseMatrix> = (0..n)
                .map(|b| SparseMatrix::from_columns(dim, (0..prev).map(|u| project(u * n + b)).collect()))
                .collect();
            let left: Vec<SparseMatrix> = (0..n)
                .map(|i| {
                    let cols = (0..prev)
                        .map(|w| {
                            if k == 1 {
                                right[i].column(0).clone()
                            } else {
                                // x_i · (e_u · x_b) = (x_i · e_u) · x_b
                                let (u, b) = alg.words[k - 1][w];
                                right[b].apply(alg.left[k - 2][i].column(u))
                            }
                        })
                        .collect();
                    SparseMatrix::from_columns(dim, cols)
                })
                .collect();
            alg.dims.push(dim);
            alg.words.push(free.iter().map(|c| (c / n, c % n)).collect());
            alg.right.push(right);
            alg.left.push(left);
        }
        Ok(alg)
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    pub fn gen_dim(&self) -> usize {
        self.presentation.gen_dim()
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Right multiplication by `x_b`, from degree k to k+1.
    pub fn right_mult(&self, k: usize, b: usize) -> &SparseMatrix {
        &self.right[k][b]
    }

    /// Left multiplication by `x_i`, from degree k to k+1.
    pub fn left_mult(&self, k: usize, i: usize) -> &SparseMatrix {
        &self.left[k][i]
    }

    /// The monomial representing basis element `i` of degree `k`.
    pub fn basis_word(&self, k: usize, i: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(k);
        let (mut k, mut i) = (k, i);
        while k > 0 {
            let (u, b) = self.words[k][i];
            word.push(b);
            i = u;
            k -= 1;
        }
        word.reverse();
        word
    }

    /// `v · x_{w_1} ⋯ x_{w_r}` for `v` of degree `k`.
    pub fn times_word(&self, k: usize, v: &SparseVec, word: &[usize]) -> SparseVec {
        let mut out = v.clone();
        for (step, b) in word.iter().enumerate() {
            out = self.right[k + step][*b].apply(&out);
        }
        out
    }

    /// Matrix of the multiplication `A_p ⊗ A_q → A_{p+q}`, with
    /// `(i, j) ↦ column i·dim A_q + j`.
    pub fn multiplication(&self, p: usize, q: usize) -> SparseMatrix {
        let words: Vec<Vec<usize>> = (0..self.dim(q)).map(|j| self.basis_word(q, j)).collect();
        let mut cols = Vec::with_capacity(self.dim(p) * self.dim(q));
        for i in 0..self.dim(p) {
            let e = vec![(i, Rational::one())];
            for w in &words {
                cols.push(self.times_word(p, &e, w));
            }
        }
        SparseMatrix::from_columns(self.dim(p + q), cols)
    }

    pub fn graded_dims(&self) -> GradedDims {
        GradedDims {
            dims: self.dims.clone(),
            bases: (0..self.dims.len())
                .map(|k| (0..self.dims[k]).map(|i| self.basis_word(k, i)).collect())
                .collect(),
        }
    }
}

/// Dimensions (and monomial bases) of a quadratic algebra up to a degree.
pub fn graded_dims(p: &QuadraticPresentation, max_degree: usize, ambient_cap: usize) -> Result<GradedDims> {
    Ok(GradedAlgebra::build(p, max_degree, ambient_cap)?.graded_dims())
}
