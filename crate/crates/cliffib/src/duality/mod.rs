//! Quadratic algebras, their quadratic duals and Koszul complexes.
//!
//! A presentation has generators `x_0..x_{n-1}` and a relation space inside
//! `V ⊗ V`, with `x_a ⊗ x_b` at coordinate `a·n + b`. The dual presentation
//! lives on the dual basis and uses the pairing
//! `⟨x_a ⊗ x_b, y_c ⊗ y_d⟩ = δ_ac δ_bd`.

mod complex;
mod graded;
mod koszul;
mod resolution;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::binomial;
use crate::exact::sparse::{Echelon, SparseVec};
use crate::exact::{QMatrix, Rational};

pub use complex::{certified_ranks, ExactnessCheck, RankMethod};
pub use graded::{graded_dims, GradedAlgebra, GradedDims, DEFAULT_AMBIENT_CAP, MAX_DEGREE};
pub use koszul::{koszul_differential, koszul_verify, ComplexCheck, KoszulReport};
pub use resolution::{
    diagonal_resolution_check, truncation_module, DiagonalReport, DiagonalTerm, TruncationReport,
    TruncationRow,
};

/// Generators plus a linearly independent family of quadratic relations,
/// kept in reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticPresentation {
    gen_dim: usize,
    relations: Vec<SparseVec>,
}

impl QuadraticPresentation {
    /// Fails when the relations are dependent or out of range.
    pub fn new(gen_dim: usize, relations: Vec<SparseVec>) -> Result<Self> {
        let n2 = gen_dim * gen_dim;
        let mut span = Echelon::new(n2);
        for (k, r) in relations.iter().enumerate() {
            if r.iter().any(|(i, _)| *i >= n2) {
                return Err(Error::Dimension(format!(
                    "relation {k} has a coordinate outside the {n2}-dimensional tensor square"
                )));
            }
            if !span.insert(r.clone()) {
                return Err(Error::Input(format!(
                    "relation {k} is a linear combination of the previous ones"
                )));
            }
        }
        span.make_reduced();
        Ok(QuadraticPresentation {
            gen_dim,
            relations: span.sorted_rows(),
        })
    }

    /// Presentation from any spanning family, dropping dependent vectors.
    pub fn from_span(gen_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut span = Echelon::new(gen_dim * gen_dim);
        for v in vectors {
            span.insert(v);
        }
        span.make_reduced();
        QuadraticPresentation {
            gen_dim,
            relations: span.sorted_rows(),
        }
    }

    pub fn gen_dim(&self) -> usize {
        self.gen_dim
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    fn span(&self) -> Echelon {
        let mut e = Echelon::new(self.gen_dim * self.gen_dim);
        for r in &self.relations {
            e.insert(r.clone());
        }
        e
    }

    /// Same number of generators and the same relation space.
    pub fn same_span(&self, other: &QuadraticPresentation) -> bool {
        self.gen_dim == other.gen_dim
            && self.relations.len() == other.relations.len()
            && other.relations.iter().all(|r| self.span().contains(r))
    }

    /// The presentation whose relations annihilate these ones.
    pub fn dual(&self) -> QuadraticPresentation {
        let mut span = self.span();
        let rels = span.orthogonal_complement();
        QuadraticPresentation::from_span(self.gen_dim, rels)
    }

    /// Relation list written as `c*x1x2 + ...` strings, for reports.
    pub fn relation_strings(&self, letter: &str) -> Vec<String> {
        let n = self.gen_dim;
        self.relations
            .iter()
            .map(|r| {
                let mut s = String::new();
                for (k, (i, c)) in r.iter().enumerate() {
                    let (a, b) = (i / n + 1, i % n + 1);
                    let neg = c < &Rational::zero();
                    let abs = if neg { -c } else { c.clone() };
                    if k == 0 {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if neg { " - " } else { " + " });
                    }
                    if !abs.is_one() {
                        s.push_str(&crate::exact::rational::format_rational(&abs));
                        s.push('*');
                    }
                    s.push_str(&format!("{letter}{a}{letter}{b}"));
                }
                s
            })
            .collect()
    }
}

/// The algebra `A_σ` of a quadric at a point: commuting variables modulo
/// the single quadratic relation `Σ G_ij x_i x_j`.
pub fn build_a_sigma(gram: &QMatrix) -> Result<QuadraticPresentation> {
    let n = gram.rows();
    if !gram.is_symmetric() {
        return Err(Error::Input("gram matrix is not symmetric".into()));
    }
    if gram.is_zero() {
        return Err(Error::SigmaZero);
    }
    let mut rels: Vec<SparseVec> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(vec![(i * n + j, Rational::one()), (j * n + i, -Rational::one())]);
        }
    }
    let mut q: SparseVec = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !gram[(i, j)].is_zero() {
                q.push((i * n + j, gram[(i, j)].clone()));
            }
        }
    }
    rels.push(q);
    QuadraticPresentation::new(n, rels)
}

pub fn quadratic_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    p.dual()
}

/// `C(n+k−1, k) − C(n+k−3, k−2)`: dimension of degree-k forms on a
/// quadric hypersurface in n variables.
pub fn quadric_hilbert(n: usize, k: usize) -> u64 {
    let (n, k) = (n as i64, k as i64);
    binomial(n + k - 1, k) - binomial(n + k - 3, k - 2)
}

/// `Σ_j C(n, k−2j)`: dimension of the degree-k part of the homogeneous
/// Clifford algebra.
pub fn clifford_hilbert(n: usize, k: usize) -> u64 {
    (0..=k / 2).map(|j| binomial(n as i64, (k - 2 * j) as i64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn a_sigma_relations() {
        let g = QMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(1, 2), rat(0)]]);
        let p = build_a_sigma(&g).unwrap();
        assert_eq!(p.num_relations(), 2);
        // span{x1x2 - x2x1, x1x2 + x2x1} = span{x1x2, x2x1}
        assert!(p.same_span(&QuadraticPresentation::new(2, vec![vec![(1, rat(1))], vec![(2, rat(1))]]).unwrap()));
        assert_eq!(build_a_sigma(&QMatrix::identity(3)).unwrap().num_relations(), 4);
        assert_eq!(build_a_sigma(&QMatrix::identity(1)).unwrap().num_relations(), 1);
        assert_eq!(build_a_sigma(&QMatrix::zeros(2, 2)), Err(Error::SigmaZero));
    }

    #[test]
    fn duals() {
        let p = build_a_sigma(&QMatrix::identity(3)).unwrap();
        let d = p.dual();
        assert_eq!(d.num_relations(), 5);
        assert!(d.dual().same_span(&p));
        let empty = QuadraticPresentation::new(2, vec![]).unwrap();
        assert_eq!(empty.dual().num_relations(), 4);
    }

    #[test]
    fn dependent_relations_rejected() {
        let r = vec![(0, rat(1))];
        assert!(matches!(
            QuadraticPresentation::new(2, vec![r.clone(), r]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn hilbert_numbers() {
        assert_eq!((0..5).map(|k| quadric_hilbert(3, k)).collect::<Vec<_>>(), vec![1, 3, 5, 7, 9]);
        assert_eq!((0..5).map(|k| clifford_hilbert(4, k)).collect::<Vec<_>>(), vec![1, 4, 7, 8, 8]);
    }
}
