//! Finite-dimensional algebras over Q given by structure constants.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::rational::{format_rational, rational_sqrt};
use crate::exact::sparse::{axpy, collect_sparse, sparse_to_dense, Echelon, SparseMatrix, SparseVec};
use crate::exact::{QMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Radical 0, center Q, dimension degree²: a matrix algebra after
    /// extending scalars to the algebraic closure.
    CentralSimple(usize),
    /// Radical 0, two-dimensional center, two simple factors of dimension
    /// degree² each (possibly only after a quadratic extension).
    ProductOfTwoCentralSimple(usize),
    NotSemisimple,
    Other(String),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::CentralSimple(k) => write!(f, "CENTRAL_SIMPLE({k})"),
            Certificate::ProductOfTwoCentralSimple(k) => {
                write!(f, "PRODUCT_OF_TWO_CENTRAL_SIMPLE({k})")
            }
            Certificate::NotSemisimple => write!(f, "NOT_SEMISIMPLE"),
            Certificate::Other(s) => write!(f, "OTHER({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructureReport {
    pub dimension: usize,
    pub radical_dimension: usize,
    pub center_dimension: usize,
    /// (dimension, center dimension) of each block of the splitting over Q.
    pub block_data: Vec<(usize, usize)>,
    pub certificate: Certificate,
    /// For a two-dimensional center: whether it is Q × Q.
    pub center_split_over_q: Option<bool>,
    /// For a two-dimensional center Q[z]: the discriminant of the minimal
    /// polynomial of z.
    pub central_discriminant: Option<Rational>,
}

impl AlgebraStructureReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension,
            "radical_dimension": self.radical_dimension,
            "center_dimension": self.center_dimension,
            "block_data": self.block_data.iter().map(|(d, c)| serde_json::json!({
                "dimension": d,
                "center_dimension": c,
            })).collect::<Vec<_>>(),
            "certificate": self.certificate.to_string(),
            "center_split_over_q": self.center_split_over_q,
            "central_discriminant": self.central_discriminant.as_ref().map(format_rational),
        })
    }
}

fn is_perfect_square(d: usize) -> Option<usize> {
    let r = (d as f64).sqrt().round() as usize;
    (r * r == d).then_some(r)
}

/// Associative unital algebra with basis `b_0..b_{dim-1}`, products
/// `table[i][j] = b_i b_j`, and a list of algebra generators.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    table: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    generators: Vec<SparseVec>,
}

impl FiniteAlgebra {
    pub fn new(table: Vec<Vec<SparseVec>>, unit: SparseVec, generators: Vec<SparseVec>) -> Self {
        debug_assert!(table.iter().all(|r| r.len() == table.len()));
        FiniteAlgebra {
            table,
            unit,
            generators,
        }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        collect_sparse(x.iter().flat_map(|(i, a)| {
            y.iter().flat_map(move |(j, b)| {
                let ab = a * b;
                self.table[*i][*j]
                    .iter()
                    .map(move |(k, c)| (*k, c * &ab))
            })
        }))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_matrix(&self, x: &SparseVec) -> SparseMatrix {
        let cols = (0..self.dim())
            .map(|j| self.multiply(x, &vec![(j, Rational::one())]))
            .collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// Gram matrix of `(x, y) ↦ tr(L_{xy})`.
    pub fn trace_form(&self) -> QMatrix {
        let n = self.dim();
        // tr(L_{b_k}) = Σ_i coefficient of b_i in b_k b_i
        let tau: Vec<Rational> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        self.table[k][i]
                            .iter()
                            .find(|(t, _)| *t == i)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rational::zero)
                    })
                    .sum()
            })
            .collect();
        let mut t = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                t[(i, j)] = self.table[i][j]
                    .iter()
                    .map(|(k, c)| c * &tau[*k])
                    .sum();
            }
        }
        t
    }

    /// Radical, as the kernel of the trace form (characteristic zero).
    pub fn radical(&self) -> Vec<SparseVec> {
        SparseMatrix::from_dense(&self.trace_form()).kernel()
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<SparseVec> {
        let n = self.dim();
        if self.generators.is_empty() {
            return (0..n).map(|i| vec![(i, Rational::one())]).collect();
        }
        let cols: Vec<SparseVec> = (0..n)
            .map(|i| {
                let b = vec![(i, Rational::one())];
                let mut col = Vec::new();
                for (g, gen) in self.generators.iter().enumerate() {
                    let c = axpy(&self.multiply(&b, gen), &-Rational::one(), &self.multiply(gen, &b));
                    col.extend(c.into_iter().map(|(k, x)| (g * n + k, x)));
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(n * self.generators.len(), cols).kernel()
    }

    /// Two-sided ideal generated by the given elements, as an echelon form
    /// of its span.
    pub fn two_sided_ideal(&self, seeds: &[SparseVec]) -> Echelon {
        let mut span = Echelon::new(self.dim());
        let mut queue: Vec<SparseVec> = Vec::new();
        for s in seeds {
            if span.insert(s.clone()) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &self.generators {
                for w in [self.multiply(g, &v), self.multiply(&v, g)] {
                    if span.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        span.make_reduced();
        span
    }

    /// Quotient by a two-sided ideal; its basis is the images of the free
    /// columns of the ideal's echelon form.
    pub fn quotient(&self, ideal: &Echelon) -> FiniteAlgebra {
        let free = ideal.free_columns();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, f) in free.iter().enumerate() {
            pos[*f] = k;
        }
        let project = |v: &SparseVec| -> SparseVec {
            let r = ideal.normal_form(v.clone());
            let mut out: SparseVec = r.into_iter().map(|(i, c)| (pos[i], c)).collect();
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let table = free
            .iter()
            .map(|&i| free.iter().map(|&j| project(&self.table[i][j])).collect())
            .collect();
        FiniteAlgebra {
            table,
            unit: project(&self.unit),
            generators: self.generators.iter().map(project).collect(),
        }
    }

    pub fn structure_report(&self) -> AlgebraStructureReport {
        let dimension = self.dim();
        let radical_dimension = self.radical().len();
        let center = self.center();
        let center_dimension = center.len();
        let mut report = AlgebraStructureReport {
            dimension,
            radical_dimension,
            center_dimension,
            block_data: Vec::new(),
            certificate: Certificate::NotSemisimple,
            center_split_over_q: None,
            central_discriminant: None,
        };
        if radical_dimension > 0 {
            return report;
        }
        match center_dimension {
            1 => {
                report.block_data = vec![(dimension, 1)];
                report.certificate = match is_perfect_square(dimension) {
                    Some(k) => Certificate::CentralSimple(k),
                    None => Certificate::Other(format!(
                        "simple with center Q but dimension {dimension} is not a square"
                    )),
                };
            }
            2 => self.split_two_dimensional_center(&center, &mut report),
            c => {
                report.certificate =
                    Certificate::Other(format!("semisimple with center of dimension {c}"));
            }
        }
        report
    }

    fn split_two_dimensional_center(&self, center: &[SparseVec], report: &mut AlgebraStructureReport) {
        let n = self.dim();
        let unit = sparse_to_dense(&self.unit, n);
        // a central element not proportional to 1
        let z = center
            .iter()
            .find(|c| {
                let m = QMatrix::from_columns(n, &[unit.clone(), sparse_to_dense(c, n)]);
                m.rank() == 2
            })
            .expect("two-dimensional center contains a non-scalar")
            .clone();
        let z2 = sparse_to_dense(&self.multiply(&z, &z), n);
        let m = QMatrix::from_columns(n, &[sparse_to_dense(&z, n), unit]);
        let sol = m.solve(&z2).expect("z² lies in the center spanned by 1 and z");
        let (alpha, beta) = (sol[0].clone(), sol[1].clone());
        // z² = αz + β
        let disc = &alpha * &alpha + Rational::from_integer(4.into()) * &beta;
        report.central_discriminant = Some(disc.clone());
        let half_dim = self.dim() / 2;
        match rational_sqrt(&disc) {
            Some(r) if r.is_zero() => {
                report.certificate =
                    Certificate::Other("center has a nilpotent element".into());
            }
            Some(r) => {
                report.center_split_over_q = Some(true);
                let two = Rational::from_integer(2.into());
                let hi = (&alpha + &r) / &two;
                let lo = (&alpha - &r) / &two;
                // e = (z − lo)/(hi − lo) is the idempotent with z·e = hi·e
                let e = axpy(&z, &-lo.clone(), &self.unit);
                let e: SparseVec = e.into_iter().map(|(i, c)| (i, c / (&hi - &lo))).collect();
                let f = axpy(&self.unit, &-Rational::one(), &e);
                let d1 = self.left_matrix(&e).rank();
                let d2 = self.left_matrix(&f).rank();
                report.block_data = vec![(d1, 1), (d2, 1)];
                report.certificate = match (is_perfect_square(d1), d1 == d2) {
                    (Some(k), true) => Certificate::ProductOfTwoCentralSimple(k),
                    _ => Certificate::Other(format!("two simple blocks of dimensions {d1} and {d2}")),
                };
            }
            None => {
                report.center_split_over_q = Some(false);
                report.block_data = vec![(self.dim(), 2)];
                report.certificate = match (self.dim() % 2 == 0, is_perfect_square(half_dim)) {
                    (true, Some(k)) => Certificate::ProductOfTwoCentralSimple(k),
                    _ => Certificate::Other(format!(
                        "simple over a quadratic field, dimension {}",
                        self.dim()
                    )),
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// Q × Q with basis (1, 0), (0, 1).
    fn split_pair() -> FiniteAlgebra {
        let e = |i: usize| vec![(i, rat(1))];
        FiniteAlgebra::new(
            vec![vec![e(0), vec![]], vec![vec![], e(1)]],
            vec![(0, rat(1)), (1, rat(1))],
            vec![e(0)],
        )
    }

    #[test]
    fn product_of_fields() {
        let r = split_pair().structure_report();
        assert_eq!(r.center_dimension, 2);
        assert_eq!(r.certificate, Certificate::ProductOfTwoCentralSimple(1));
        assert_eq!(r.block_data, vec![(1, 1), (1, 1)]);
        assert_eq!(r.center_split_over_q, Some(true));
    }

    #[test]
    fn dual_numbers_not_semisimple() {
        // Q[t]/t²
        let a = FiniteAlgebra::new(
            vec![
                vec![vec![(0, rat(1))], vec![(1, rat(1))]],
                vec![vec![(1, rat(1))], vec![]],
            ],
            vec![(0, rat(1))],
            vec![vec![(1, rat(1))]],
        );
        let r = a.structure_report();
        assert_eq!(r.radical_dimension, 1);
        assert_eq!(r.certificate, Certificate::NotSemisimple);
        let ideal = a.two_sided_ideal(&[vec![(1, rat(1))]]);
        let q = a.quotient(&ideal);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.structure_report().certificate, Certificate::CentralSimple(1));
    }

    #[test]
    fn quadratic_field_center() {
        // Q(√2) with basis 1, s
        let a = FiniteAlgebra::new(
            vec![
                vec![vec![(0, rat(1))], vec![(1, rat(1))]],
                vec![vec![(1, rat(1))], vec![(0, rat(2))]],
            ],
            vec![(0, rat(1))],
            vec![vec![(1, rat(1))]],
        );
        let r = a.structure_report();
        assert_eq!(r.center_split_over_q, Some(false));
        assert_eq!(r.central_discriminant, Some(rat(8)));
        assert_eq!(r.certificate, Certificate::ProductOfTwoCentralSimple(1));
    }
}
