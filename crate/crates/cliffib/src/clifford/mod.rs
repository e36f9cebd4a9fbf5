//! Clifford algebras of rational quadratic forms.
//!
//! `CliffordAlgebra` holds an n×n symmetric rational gram matrix `G` and
//! multiplies in the basis of increasing monomials `e_I`, with
//! `e_i e_j + e_j e_i = 2 G_ij` and `e_i² = G_ii`.

mod fastmul;
mod rewrite;
mod structure;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, gcd_of_numerators, lcm_of_denominators};
use crate::exact::sparse::SparseVec;
use crate::exact::{QMatrix, Rational};
use crate::form::orthogonalize;

pub use rewrite::{
    basis_order, blade_times_generator, generator_times_blade, parity_basis, GramCoeff, GramTerm,
};
pub use structure::{AlgebraStructureReport, Certificate, FiniteAlgebra};

/// Largest number of generators accepted; the algebra has dimension 2ⁿ.
pub const MAX_GENERATORS: usize = 16;

/// A basis monomial, ordered by (number of generators, bit value).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices, 0-based and increasing.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.grade(), self.0).cmp(&(other.grade(), other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    Full,
    Even,
}

impl std::str::FromStr for Subalgebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "FULL" => Ok(Subalgebra::Full),
            "EVEN" => Ok(Subalgebra::Even),
            _ => Err(Error::Input(format!("unknown subalgebra `{s}`"))),
        }
    }
}

/// Element of a Clifford algebra; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordElement {
    terms: BTreeMap<Blade, Rational>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(Blade(0), c)
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn term(blade: Blade, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(blade, c);
        }
        CliffordElement { terms }
    }

    /// The generator `e_{i+1}` (0-based index).
    pub fn generator(i: usize) -> Self {
        Self::term(Blade(1 << i), Rational::one())
    }

    /// `Σ v_i e_i`.
    pub fn vector(v: &[Rational]) -> Self {
        let mut x = Self::zero();
        for (i, c) in v.iter().enumerate() {
            x.add_term(Blade(1 << i), c.clone());
        }
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Blade, Rational)>) -> Self {
        let mut x = Self::zero();
        for (b, c) in terms {
            x.add_term(b, c);
        }
        x
    }

    pub fn add_term(&mut self, blade: Blade, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(blade).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&blade);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CliffordElement {
            terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect(),
        }
    }

    /// `Some(parity)` when every term has the same parity; `None` for zero
    /// or mixed elements.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|b| b.grade() % 2);
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(if first == 0 { Parity::Even } else { Parity::Odd })
        } else {
            None
        }
    }

    /// Coordinates in the given list of blades; `None` if some term lies
    /// outside it.
    pub fn coordinates(&self, basis: &[u32]) -> Option<SparseVec> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            let pos = basis.iter().position(|x| *x == b.0)?;
            out.push((pos, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    pub fn from_coordinates(basis: &[u32], v: &SparseVec) -> Self {
        Self::from_terms(v.iter().map(|(i, c)| (Blade(basis[*i]), c.clone())))
    }
}

impl std::ops::Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -c);
        }
        out
    }
}

impl std::ops::Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if b.0 == 0 {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{}*{b}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// The element `d`, product of an orthogonal basis, together with the data
/// it was built from.
#[derive(Clone, Debug)]
pub struct CentralElement {
    /// Primitive integral multiple of the raw product with positive
    /// coefficient on the top monomial.
    pub element: CliffordElement,
    /// `element = scale · w_1 ⋯ w_n`.
    pub scale: Rational,
    /// Columns are the orthogonal basis vectors `w_k`.
    pub basis: QMatrix,
    /// `q(w_k)`.
    pub diagonal: Vec<Rational>,
}

impl CentralElement {
    /// The value of `d²` predicted from the orthogonal basis:
    /// `(-1)^{n(n-1)/2} · Π q(w_k) · scale²`.
    pub fn expected_square(&self) -> Rational {
        let n = self.diagonal.len();
        let mut v: Rational = self.diagonal.iter().product();
        v *= &self.scale * &self.scale;
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            v = -v;
        }
        v
    }
}

/// Clifford algebra of a rational symmetric gram matrix.
#[derive(Debug)]
pub struct CliffordAlgebra {
    gram: QMatrix,
    // right[blade][j] = e_blade · e_j
    right: OnceLock<Vec<Vec<Vec<(u32, Rational)>>>>,
    // the same table over machine-size fractions, when every entry fits
    right_small: OnceLock<Option<fastmul::Table<fastmul::Small>>>,
}

impl Clone for CliffordAlgebra {
    fn clone(&self) -> Self {
        CliffordAlgebra {
            gram: self.gram.clone(),
            right: OnceLock::new(),
            right_small: OnceLock::new(),
        }
    }
}

fn evaluate(terms: Vec<GramTerm>, gram: &QMatrix) -> Vec<(u32, Rational)> {
    terms
        .into_iter()
        .filter_map(|(b, c)| {
            let v = match c.entry {
                None => Rational::from_integer(BigInt::from(c.factor)),
                Some((a, b2)) => {
                    let g = &gram[(a as usize, b2 as usize)];
                    if g.is_zero() {
                        return None;
                    }
                    g * Rational::from_integer(BigInt::from(c.factor))
                }
            };
            Some((b, v))
        })
        .collect()
}

impl CliffordAlgebra {
    pub fn new(gram: QMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!(
                "gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let n = gram.rows();
        for i in 0..n {
            for j in i + 1..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::AsymmetricGram {
                        i: i + 1,
                        j: j + 1,
                        a: format_rational(&gram[(i, j)]),
                        b: format_rational(&gram[(j, i)]),
                    });
                }
            }
        }
        if n > MAX_GENERATORS {
            return Err(Error::ResourceLimit {
                what: "Clifford algebra generators".into(),
                needed: n,
                cap: MAX_GENERATORS,
            });
        }
        Ok(CliffordAlgebra {
            gram,
            right: OnceLock::new(),
            right_small: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    fn right_table(&self) -> &Vec<Vec<Vec<(u32, Rational)>>> {
        self.right.get_or_init(|| {
            let n = self.n();
            (0..1u32 << n)
                .map(|b| {
                    (0..n)
                        .map(|j| evaluate(blade_times_generator(b, j), &self.gram))
                        .collect()
                })
                .collect()
        })
    }

    /// `x · e_j`.
    pub fn times_generator(&self, x: &CliffordElement, j: usize) -> CliffordElement {
        let table = self.right_table();
        let mut out = CliffordElement::zero();
        for (b, c) in x.terms() {
            for (t, v) in &table[b.0 as usize][j] {
                out.add_term(Blade(*t), c * v);
            }
        }
        out
    }

    /// `e_i · x`.
    pub fn generator_times(&self, i: usize, x: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (b, c) in x.terms() {
            for (t, v) in evaluate(generator_times_blade(i, b.0), &self.gram) {
                out.add_term(Blade(t), c * v);
            }
        }
        out
    }

    fn small_table(&self) -> Option<&fastmul::Table<fastmul::Small>> {
        self.right_small
            .get_or_init(|| {
                self.right_table()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|entry| {
                                entry
                                    .iter()
                                    .map(|(b, c)| fastmul::to_small(c).map(|c| (*b, c)))
                                    .collect::<Option<Vec<_>>>()
                            })
                            .collect::<Option<Vec<_>>>()
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .as_ref()
    }

    pub fn multiply(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        if x.is_zero() || y.is_zero() {
            return CliffordElement::zero();
        }
        if let Some(table) = self.small_table() {
            let small = |e: &CliffordElement| {
                e.terms()
                    .map(|(b, c)| fastmul::to_small(c).map(|c| (b.0, c)))
                    .collect::<Option<Vec<_>>>()
            };
            if let (Some(xs), Some(ys)) = (small(x), small(y)) {
                if let Some(out) = fastmul::multiply(table, &xs, &ys) {
                    return CliffordElement::from_terms(
                        out.iter().map(|(b, c)| (Blade(*b), fastmul::from_small(c))),
                    );
                }
            }
        }
        let xs: Vec<(u32, Rational)> = x.terms().map(|(b, c)| (b.0, c.clone())).collect();
        let ys: Vec<(u32, Rational)> = y.terms().map(|(b, c)| (b.0, c.clone())).collect();
        let out = fastmul::multiply(self.right_table(), &xs, &ys).expect("big rationals do not overflow");
        CliffordElement::from_terms(out.into_iter().map(|(b, c)| (Blade(b), c)))
    }

    /// Product of several elements, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a CliffordElement>) -> CliffordElement {
        factors
            .into_iter()
            .fold(CliffordElement::one(), |acc, x| self.multiply(&acc, x))
    }

    /// `x·y − y·x`.
    pub fn commutator(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        &self.multiply(x, y) - &self.multiply(y, x)
    }

    /// Matrix of multiplication by `Σ v_i e_i` from the given parity part to
    /// the opposite one, in the ordered monomial bases.
    pub fn mult_map_matrix(&self, v: &[Rational], side: Side, source: Parity) -> Result<QMatrix> {
        let n = self.n();
        if v.len() != n {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} generators",
                v.len(),
                n
            )));
        }
        let src = parity_basis(n, source.bit());
        let dst = parity_basis(n, source.flip().bit());
        let mut pos = vec![usize::MAX; 1 << n];
        for (k, b) in dst.iter().enumerate() {
            pos[*b as usize] = k;
        }
        let w = CliffordElement::vector(v);
        let mut m = QMatrix::zeros(dst.len(), src.len());
        for (col, b) in src.iter().enumerate() {
            let e = CliffordElement::term(Blade(*b), Rational::one());
            let image = match side {
                Side::Left => self.multiply(&w, &e),
                Side::Right => self.multiply(&e, &w),
            };
            for (t, c) in image.terms() {
                m[(pos[t.0 as usize], col)] = c.clone();
            }
        }
        Ok(m)
    }

    /// The element `d = w_1 ⋯ w_n` for the orthogonal basis produced by
    /// symmetric elimination, made primitive and integral.
    pub fn central_element(&self) -> CentralElement {
        let orth = orthogonalize(&self.gram);
        let n = self.n();
        let factors: Vec<CliffordElement> = (0..n)
            .map(|k| CliffordElement::vector(&orth.change_of_basis.column(k)))
            .collect();
        let raw = self.product(&factors);
        let coeffs: Vec<Rational> = raw.terms().map(|(_, c)| c.clone()).collect();
        let lcm = lcm_of_denominators(&coeffs);
        let integral: Vec<Rational> = coeffs
            .iter()
            .map(|c| c * Rational::from_integer(lcm.clone()))
            .collect();
        let gcd = gcd_of_numerators(&integral);
        let mut scale = Rational::new(lcm, if gcd.is_zero() { BigInt::one() } else { gcd });
        let top = raw.terms().last().map(|(_, c)| c.clone());
        if top.is_some_and(|c| c.is_negative()) {
            scale = -scale;
        }
        CentralElement {
            element: raw.scale(&scale),
            scale,
            basis: orth.change_of_basis,
            diagonal: orth.diagonal,
        }
    }

    /// Monomial basis of the chosen subalgebra, in canonical order.
    pub fn subalgebra_basis(&self, which: Subalgebra) -> Vec<u32> {
        match which {
            Subalgebra::Full => basis_order(self.n()),
            Subalgebra::Even => parity_basis(self.n(), 0),
        }
    }

    /// Algebra generators of the chosen subalgebra: the `e_i`, or the
    /// products `e_i e_j` with `i < j`.
    pub fn subalgebra_generators(&self, which: Subalgebra) -> Vec<CliffordElement> {
        let n = self.n();
        match which {
            Subalgebra::Full => (0..n).map(CliffordElement::generator).collect(),
            Subalgebra::Even => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| CliffordElement::term(Blade(1 << i | 1 << j), Rational::one()))
                .collect(),
        }
    }

    /// Structure constants of the chosen subalgebra.
    pub fn to_finite_algebra(&self, which: Subalgebra) -> FiniteAlgebra {
        let basis = self.subalgebra_basis(which);
        let coords = |x: &CliffordElement| {
            x.coordinates(&basis)
                .expect("product stays in the subalgebra")
        };
        let elems: Vec<CliffordElement> = basis
            .iter()
            .map(|b| CliffordElement::term(Blade(*b), Rational::one()))
            .collect();
        let table: Vec<Vec<SparseVec>> = elems
            .iter()
            .map(|x| elems.iter().map(|y| coords(&self.multiply(x, y))).collect())
            .collect();
        let generators = self
            .subalgebra_generators(which)
            .iter()
            .map(coords)
            .collect();
        FiniteAlgebra::new(table, coords(&CliffordElement::one()), generators)
    }

    pub fn structure_report(&self, which: Subalgebra) -> AlgebraStructureReport {
        self.to_finite_algebra(which).structure_report()
    }

    /// Structure of the quotient of the chosen subalgebra by the two-sided
    /// ideal generated by `d`. Requires corank exactly one; the even part is
    /// only accepted for an even number of generators, where `d` is even.
    pub fn quotient_by_d(&self, which: Subalgebra) -> Result<AlgebraStructureReport> {
        Ok(self.quotient_algebra_by_d(which)?.structure_report())
    }

    pub fn quotient_algebra_by_d(&self, which: Subalgebra) -> Result<FiniteAlgebra> {
        let corank = self.n() - self.gram.rank();
        if corank != 1 {
            return Err(Error::CorankMismatch {
                expected: 1,
                found: corank,
            });
        }
        if which == Subalgebra::Even && self.n() % 2 == 1 {
            return Err(Error::Precondition(
                "d is odd for an odd number of generators; use the full algebra".into(),
            ));
        }
        let d = self.central_element().element;
        let basis = self.subalgebra_basis(which);
        let alg = self.to_finite_algebra(which);
        let dv = d.coordinates(&basis).expect("d lies in the subalgebra");
        let ideal = alg.two_sided_ideal(&[dv]);
        Ok(alg.quotient(&ideal))
    }

    /// Parses the text form: a sum of terms `c*e1e3`, `e2`, `-1/2*e1e2`,
    /// `3`. Words need not be increasing; they are multiplied out.
    pub fn parse_element(&self, text: &str) -> Result<CliffordElement> {
        let n = self.n();
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut result = CliffordElement::zero();
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(Error::Syntax {
                        pos,
                        msg: "empty expression".into(),
                    });
                }
                break;
            }
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected `+` or `-`".into(),
                });
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let mut coeff = Rational::one();
            let mut had_coeff = false;
            if pos > start {
                coeff = crate::exact::rational::parse_rational(&text[start..pos]).ok_or(
                    Error::Syntax {
                        pos: start,
                        msg: format!("bad coefficient `{}`", &text[start..pos]),
                    },
                )?;
                had_coeff = true;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                } else {
                    result = &result + &CliffordElement::scalar(if negative { -coeff } else { coeff });
                    continue;
                }
            }
            let mut word = CliffordElement::one();
            let mut letters = 0;
            while pos < bytes.len() && bytes[pos] == b'e' {
                let at = pos;
                pos += 1;
                let s = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let idx: usize = text[s..pos].parse().map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "expected generator index after `e`".into(),
                })?;
                if idx == 0 || idx > n {
                    return Err(Error::Input(format!(
                        "generator e{idx} out of range 1..{n} at position {at}"
                    )));
                }
                word = self.times_generator(&word, idx - 1);
                letters += 1;
            }
            if letters == 0 {
                return Err(Error::Syntax {
                    pos,
                    msg: if had_coeff {
                        "expected a monomial after `*`".into()
                    } else {
                        "expected a coefficient or a monomial".into()
                    },
                });
            }
            if negative {
                coeff = -coeff;
            }
            result = &result + &word.scale(&coeff);
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn alg(rows: &[&[i64]]) -> CliffordAlgebra {
        CliffordAlgebra::new(QMatrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn small_products() {
        let a = alg(&[&[1, 0], &[0, 1]]);
        let e1 = CliffordElement::generator(0);
        let e2 = CliffordElement::generator(1);
        let e12 = a.multiply(&e1, &e2);
        assert_eq!(a.multiply(&e1, &e12), e2);
        assert_eq!(a.multiply(&e2, &e1), -&e12);
    }

    #[test]
    fn hyperbolic_square() {
        let g = QMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(1, 2), rat(0)]]);
        let a = CliffordAlgebra::new(g).unwrap();
        let x = a.parse_element("e1e2").unwrap();
        assert_eq!(a.multiply(&x, &x), x);
        let y = a.parse_element("e2e1").unwrap();
        assert_eq!(a.multiply(&x, &y), CliffordElement::zero());
    }

    #[test]
    fn text_round_trip() {
        let a = alg(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let x = a.parse_element("-1/2*e1e3 + 3 - e2 + 2*e3e1").unwrap();
        assert_eq!(x.to_string(), "3 - e2 - 5/2*e1e3");
        assert_eq!(a.parse_element(&x.to_string()).unwrap(), x);
        assert_eq!(a.parse_element("0").unwrap().to_string(), "0");
        assert!(matches!(a.parse_element("e4"), Err(Error::Input(_))));
        assert!(matches!(a.parse_element("2*"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn central_element_diag() {
        let a = alg(&[&[1, 0], &[0, 1]]);
        let d = a.central_element();
        assert_eq!(d.element.to_string(), "e1e2");
        assert_eq!(a.multiply(&d.element, &d.element), CliffordElement::scalar(rat(-1)));
        assert_eq!(d.expected_square(), rat(-1));
    }

    #[test]
    fn mult_maps() {
        let g = QMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(1, 2), rat(0)]]);
        let a = CliffordAlgebra::new(g).unwrap();
        let m = a
            .mult_map_matrix(&[rat(1), rat(0)], Side::Left, Parity::Even)
            .unwrap();
        assert_eq!(m.rank(), 1);
        let b = alg(&[&[1, 0], &[0, 1]]);
        let m = b
            .mult_map_matrix(&[rat(1), rat(0)], Side::Left, Parity::Even)
            .unwrap();
        assert_eq!(m.rank(), 2);
        let z = b
            .mult_map_matrix(&[rat(0), rat(0)], Side::Right, Parity::Odd)
            .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn asymmetric_rejected() {
        let g = QMatrix::from_i64(&[&[1, 2], &[3, 1]]);
        assert!(matches!(
            CliffordAlgebra::new(g),
            Err(Error::AsymmetricGram { .. })
        ));
    }
}

#[cfg(test)]
mod structure_tests {
    use super::*;
    use crate::exact::rat;

    fn alg(diag: &[i64]) -> CliffordAlgebra {
        CliffordAlgebra::new(QMatrix::diagonal(&diag.iter().map(|&x| rat(x)).collect::<Vec<_>>())).unwrap()
    }

    #[test]
    fn reports() {
        let r = alg(&[1, 1, 1]).structure_report(Subalgebra::Even);
        assert_eq!((r.dimension, r.radical_dimension, r.center_dimension), (4, 0, 1));
        assert_eq!(r.certificate, Certificate::CentralSimple(2));
        let r = alg(&[0, 0, 0]).structure_report(Subalgebra::Full);
        assert_eq!(r.radical_dimension, 7);
        assert_eq!(r.certificate, Certificate::NotSemisimple);
        let r = alg(&[1, 1, 1, 1]).structure_report(Subalgebra::Even);
        assert_eq!((r.dimension, r.center_dimension), (8, 2));
        assert_eq!(r.certificate, Certificate::ProductOfTwoCentralSimple(2));
        assert_eq!(r.center_split_over_q, Some(true));
        let r = alg(&[1, 1, 1, -1]).structure_report(Subalgebra::Even);
        assert_eq!(r.center_split_over_q, Some(false));
        assert_eq!(r.certificate, Certificate::ProductOfTwoCentralSimple(2));
    }

    #[test]
    fn quotients() {
        let r = alg(&[1, 1, 0]).quotient_by_d(Subalgebra::Full).unwrap();
        assert_eq!(r.dimension, 4);
        assert_eq!(r.certificate, Certificate::CentralSimple(2));
        let r = alg(&[1, 1, 1, 0]).quotient_by_d(Subalgebra::Even).unwrap();
        assert_eq!(r.dimension, 4);
        assert_eq!(r.certificate, Certificate::CentralSimple(2));
        assert_eq!(
            alg(&[1, 1, 1]).quotient_by_d(Subalgebra::Full),
            Err(Error::CorankMismatch { expected: 1, found: 0 })
        );
    }
}
