//! Sparse multivariate polynomials over Q.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, gcd_of_numerators, lcm_of_denominators, Rational};

/// Exponent vector. Ordered graded-lexicographically with respect to the
/// declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "evaluation point length");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes values for the variables whose entry in `values` is
    /// `Some`, keeping the variable list unchanged.
    pub fn partial_eval(&self, values: &[Option<Rational>]) -> MultiPoly {
        assert_eq!(values.len(), self.nvars());
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut e = m.0.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if e[i] > 0 {
                        coef *= num_traits::pow(v.clone(), e[i] as usize);
                        e[i] = 0;
                    }
                }
            }
            out.add_term(Monomial(e), coef);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                out.add_term(Monomial(e), c * Rational::from_integer(k.into()));
            }
        }
        out
    }

    /// Re-expresses the polynomial over a different variable list. Every
    /// variable that actually occurs must be present (by name) in `target`.
    pub fn embed(&self, target: &Vars) -> Option<MultiPoly> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i]?] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Scales by a nonzero rational so that coefficients are coprime
    /// integers and the leading coefficient is positive.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_of_denominators(self.terms.values());
        let g = gcd_of_numerators(self.terms.values());
        let mut s = Rational::new(l, g);
        if self.leading_coefficient().unwrap().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Sign-normalized copy: leading coefficient positive.
    pub fn sign_normalized(&self) -> MultiPoly {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Coefficients of a polynomial in at most one variable `i`, lowest
    /// degree first. `None` if another variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            let d = m.0[i] as usize;
            if out.len() <= d {
                out.resize(d + 1, Rational::zero());
            }
            out[d] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Dense univariate helpers (coefficients lowest degree first) used for
/// square-freeness tests of binary forms.
pub mod univariate {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn degree(p: &[Rational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn derivative(p: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
            .collect();
        trim(&mut d);
        d
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let f = &r[dr] / &b[db];
            for i in 0..=db {
                let t = &f * &b[i];
                r[dr - db + i] -= t;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd; the zero polynomial is returned as an empty vector.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while degree(&y).is_some() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(d) = degree(&x) {
            let lc = x[d].clone();
            for c in x.iter_mut() {
                *c /= &lc;
            }
        }
        x
    }

    pub fn is_squarefree(p: &[Rational]) -> bool {
        match degree(p) {
            None => false,
            Some(0) => true,
            Some(_) => degree(&gcd(p, &derivative(p))) == Some(0),
        }
    }
}
