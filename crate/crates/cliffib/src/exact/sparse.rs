//! Sparse vectors, sparse linear maps and incremental echelon forms.
//!
//! Every graded computation in the crate (quotients of tensor spaces,
//! Koszul differentials, ideal closures) reduces to "insert vectors into a
//! row space, then project onto a complement", which `Echelon` provides for
//! any exact scalar field.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::matrix::QMatrix;
use super::rational::{rational_mod_p, Rational};

/// Minimal exact field interface shared by Q and a word-sized prime field.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Self;
}

impl Scalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
}

/// The Mersenne prime 2⁶¹ − 1.
pub const MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp(pub u64);

impl Fp {
    pub fn from_rational(q: &Rational) -> Option<Fp> {
        rational_mod_p(q, MODULUS).map(Fp)
    }
}

impl Scalar for Fp {
    fn nil() -> Self {
        Fp(0)
    }
    fn unit() -> Self {
        Fp(1)
    }
    fn is_nil(&self) -> bool {
        self.0 == 0
    }
    fn plus(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
    fn times(&self, other: &Self) -> Self {
        Fp(super::rational::mul_mod(self.0, other.0, MODULUS))
    }
    fn negated(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
    fn inverse(&self) -> Self {
        Fp(super::rational::inv_mod(self.0, MODULUS))
    }
}

/// Reduction of a rational sparse vector modulo 2⁶¹ − 1; `None` if a
/// denominator vanishes there.
pub fn reduce_mod_p(v: &SparseVec) -> Option<SparseVec<Fp>> {
    let mut out = Vec::with_capacity(v.len());
    for (i, x) in v {
        let f = Fp::from_rational(x)?;
        if f.0 != 0 {
            out.push((*i, f));
        }
    }
    Some(out)
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F = Rational> = Vec<(usize, F)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !Zero::is_zero(*x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c·b` for sorted sparse vectors.
pub fn axpy<F: Scalar>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.times(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.plus(&c.times(&b[j].1));
            if !v.is_nil() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Accumulates `(index, value)` contributions into a sorted sparse vector.
pub fn collect_sparse<F: Scalar>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut map: BTreeMap<usize, F> = BTreeMap::new();
    for (i, v) in entries {
        if v.is_nil() {
            continue;
        }
        match map.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&v);
                if s.is_nil() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
    map.into_iter().collect()
}

/// Row space kept in echelon form: every stored row is monic at its
/// pivot (its smallest index) and no two rows share a pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Scalar = Rational> {
    dim: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
    reduced: bool,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
            reduced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Columns that are not pivots, in increasing order: a basis of the
    /// quotient by the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Reduces `v` until its leading entry is not a pivot (or it vanishes).
    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        loop {
            let Some((lead, coef)) = v.first().cloned() else {
                return v;
            };
            match self.pivot_row.get(&lead) {
                Some(&r) => v = axpy(&v, &coef.negated(), &self.rows[r]),
                None => return v,
            }
        }
    }

    /// Inserts `v`; returns `true` when it was independent of the rows.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.dim));
        let v = self.reduce_leading(v);
        let Some((lead, coef)) = v.first().cloned() else {
            return false;
        };
        let inv = coef.inverse();
        let row: SparseVec<F> = v.into_iter().map(|(i, x)| (i, x.times(&inv))).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        self.reduced = false;
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_full_unchecked(v.clone()).is_empty()
    }

    /// Brings the stored rows to reduced echelon form, so that no row has a
    /// nonzero entry at another row's pivot.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = self.pivots();
        order.reverse();
        for &p in &order {
            let r = self.pivot_row[&p];
            let mut row = std::mem::take(&mut self.rows[r]);
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(i, _)| self.pivot_row.contains_key(i))
                    .cloned();
                match hit {
                    Some((c, x)) => {
                        let other = self.pivot_row[&c];
                        row = axpy(&row, &x.negated(), &self.rows[other]);
                    }
                    None => break,
                }
            }
            self.rows[r] = row;
        }
        self.reduced = true;
    }

    fn reduce_full_unchecked(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        // repeated sweeps: correct for any echelon state, a single sweep
        // suffices once the rows are reduced
        loop {
            let hit = v
                .iter()
                .find(|(i, _)| self.pivot_row.contains_key(i))
                .cloned();
            match hit {
                Some((c, x)) => v = axpy(&v, &x.negated(), &self.rows[self.pivot_row[&c]]),
                None => return v,
            }
        }
    }

    /// Normal form of `v` modulo the row space, supported on free columns.
    pub fn normal_form(&self, v: SparseVec<F>) -> SparseVec<F> {
        self.reduce_full_unchecked(v)
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<SparseVec<F>> {
        self.pivots()
            .into_iter()
            .map(|p| self.rows[self.pivot_row[&p]].clone())
            .collect()
    }
}

impl Echelon<Rational> {
    /// Basis of the annihilator of the row space under the standard dot
    /// product, one vector per free column.
    pub fn orthogonal_complement(&mut self) -> Vec<SparseVec> {
        self.make_reduced();
        let free = self.free_columns();
        let pivots = self.pivots();
        free.iter()
            .map(|&f| {
                let mut entries: Vec<(usize, Rational)> = vec![(f, Rational::one())];
                for &p in &pivots {
                    let row = &self.rows[self.pivot_row[&p]];
                    if let Ok(k) = row.binary_search_by_key(&f, |(i, _)| *i) {
                        entries.push((p, -row[k].1.clone()));
                    }
                }
                entries.sort_by_key(|(i, _)| *i);
                entries
            })
            .collect()
    }
}

/// Sparse linear map stored by columns: `columns[j]` is the image of the
/// j-th source basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().flatten().all(|(i, _)| *i < rows));
        SparseMatrix { rows, columns }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            columns: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn from_dense(m: &QMatrix) -> Self {
        Self::from_columns(
            m.rows(),
            (0..m.cols()).map(|j| sparse_from_dense(&m.column(j))).collect(),
        )
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_nil(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        collect_sparse(
            v.iter()
                .flat_map(|(j, x)| self.columns[*j].iter().map(move |(i, y)| (*i, x * y))),
        )
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), rhs.rows, "composition shapes");
        SparseMatrix {
            rows: self.rows,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                cols[*i].push((j, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols(),
            columns: cols,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| axpy(a, &Rational::one(), b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if Zero::is_zero(c) {
            return SparseMatrix::zeros(self.rows, self.cols());
        }
        SparseMatrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(i, x)| (*i, x * c)).collect())
                .collect(),
        }
    }

    /// Kronecker product `self ⊗ other`; basis index of `(a, b)` is
    /// `a·dim(other) + b` on both sides.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols() * other.cols());
        for ca in &self.columns {
            for cb in &other.columns {
                let mut col = Vec::with_capacity(ca.len() * cb.len());
                for (i, x) in ca {
                    for (k, y) in cb {
                        col.push((i * other.rows + k, x * y));
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            columns,
        }
    }

    /// Restriction to a subspace given by basis vectors of the source.
    pub fn restrict(&self, basis: &[SparseVec]) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: basis.iter().map(|v| self.apply(v)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::<Rational>::new(self.rows);
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Rank over F_p with p = 2⁶¹ − 1, a lower bound for the rank over Q.
    /// `None` if some denominator vanishes modulo p.
    pub fn rank_mod_p(&self) -> Option<usize> {
        let mut e = Echelon::<Fp>::new(self.rows);
        for c in &self.columns {
            e.insert(reduce_mod_p(c)?);
        }
        Some(e.rank())
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.kernel_with_free_columns().0
    }

    /// Kernel basis together with its free columns: basis vector `b` has
    /// entry 1 at `free[b]` and every other basis vector vanishes there, so
    /// the coordinates of a kernel element are its entries at `free`.
    pub fn kernel_with_free_columns(&self) -> (Vec<SparseVec>, Vec<usize>) {
        // echelonize the rows (= columns of the transpose), then read off
        // the orthogonal complement of the row space
        let t = self.transpose();
        let mut e = Echelon::<Rational>::new(self.cols());
        for row in t.columns {
            e.insert(row);
        }
        let basis = e.orthogonal_complement();
        (basis, e.free_columns())
    }
}
