//! Dense matrices over Q and over Q[vars].
//!
//! Rank, determinant and kernel go through fraction-free (Bareiss)
//! elimination on an integer copy of the matrix: every row is scaled by the
//! lcm of its denominators first, which does not change the row space.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use super::rational::{lcm_of_denominators, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Quadratic form value vᵀ M v.
    pub fn quadratic_value(&self, v: &[Rational]) -> Rational {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = lcm_of_denominators(row);
                row.iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self.integer_rows(), self.cols).pivots.len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        // undo the per-row integer scaling at the end
        let mut scale = Rational::one();
        for i in 0..n {
            scale *= Rational::from_integer(lcm_of_denominators(self.row(i)));
        }
        let ech = bareiss_echelon(self.integer_rows(), n);
        if ech.pivots.len() < n {
            return Rational::zero();
        }
        let det = Rational::from_integer(ech.rows[n - 1][n - 1].clone());
        let det = if ech.swaps % 2 == 1 { -det } else { det };
        det / scale
    }

    /// Exact basis of the right kernel. Each basis vector has a 1 in one
    /// free column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = bareiss_echelon(self.integer_rows(), self.cols);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| pivot_set[c].is_none()) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (r, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[r];
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Rational::from_integer(row[pc].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// Reduced row echelon form over Q together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let t = &f * &m[(r, j)];
                            m[(i, j)] -= t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shapes");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(super::rational::format_rational)
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free row echelon form. Every intermediate entry is a minor of
/// the input, so the divisions by the previous pivot are exact.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> IntEchelon {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    IntEchelon {
        rows: m,
        pivots,
        swaps,
    }
}

/// Dense matrix of polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        assert!(rows.iter().flatten().all(|p| p.vars() == vars));
        PolyMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_rational(vars: &Vars, m: &QMatrix) -> Self {
        let mut out = Self::zeros(vars, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = MultiPoly::constant(vars, m[(i, j)].clone());
            }
        }
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].eval(point);
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        let data: Vec<MultiPoly> = self.data.iter().map(f).collect();
        let vars = data.first().map_or(self.vars.clone(), |p| p.vars().clone());
        PolyMatrix {
            vars,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_scalar_multiple_of_identity(&self, c: &MultiPoly) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        &self[(i, j)] == c
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Determinant by Laplace expansion over column subsets (division-free,
    /// `O(n·2ⁿ)` polynomial products).
    pub fn determinant(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor(&rows, &cols)
    }

    /// Determinant of the submatrix on the given (sorted) rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        if k == 0 {
            return MultiPoly::one(&self.vars);
        }
        // dp[mask] = minor on the first popcount(mask) rows and the columns in mask
        let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << k];
        dp[0] = Some(MultiPoly::one(&self.vars));
        for mask in 1usize..(1 << k) {
            let r = mask.count_ones() as usize - 1;
            let mut acc = MultiPoly::zero(&self.vars);
            for c in 0..k {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let entry = &self[(rows[r], cols[c])];
                // position of c among the chosen columns
                let below = (mask & ((1 << c) - 1)).count_ones() as usize;
                if !entry.is_zero() {
                    if let Some(sub) = &dp[mask ^ (1 << c)] {
                        let t = entry * sub;
                        let sign_neg = (r + below) % 2 == 1;
                        acc = if sign_neg { &acc - &t } else { &acc + &t };
                    }
                }
            }
            dp[mask] = Some(acc);
        }
        dp[(1 << k) - 1].take().unwrap()
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = MultiPoly;
    fn index(&self, (i, j): (usize, usize)) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MultiPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shapes");
        let mut out = PolyMatrix::zeros(&self.vars, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;
    use crate::exact::poly::vars;
    use crate::exact::rational::{frac, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(QMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn ones_kernel() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(&k[0][0] + &k[0][1], rat(0));
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant_with_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![frac(1, 2), rat(3), rat(0)],
            vec![rat(1), frac(-1, 3), rat(2)],
            vec![rat(0), rat(4), frac(5, 7)],
        ]);
        // cofactor expansion by hand:
        // 1/2 * (-1/3*5/7 - 8) - 3 * (5/7 - 0) = -181/42 - 15/7
        let expected = frac(1, 2) * (frac(-5, 21) - rat(8)) - rat(3) * frac(5, 7);
        assert_eq!(m.determinant(), expected);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(3));
    }

    #[test]
    fn rank_skips_zero_columns() {
        let m = QMatrix::from_i64(&[&[0, 2, 4, 1], &[0, 1, 2, 0], &[0, 3, 6, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[rat(1), rat(3)]).is_none());
        let x = m.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(1), rat(2)]);
    }

    #[test]
    fn poly_determinant() {
        let v = vars(&["s"]);
        let m = PolyMatrix::from_rows(
            &v,
            vec![
                vec![parse_poly("s", &v).unwrap(), parse_poly("1", &v).unwrap()],
                vec![parse_poly("1", &v).unwrap(), parse_poly("s", &v).unwrap()],
            ],
        );
        assert_eq!(m.determinant().to_string(), "s^2 - 1");
    }
}
