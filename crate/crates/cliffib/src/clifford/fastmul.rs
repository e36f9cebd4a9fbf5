//! Products of Clifford elements through the right-multiplication table,
//! sharing the partial products `x · e_p` between monomials of `y` with a
//! common prefix. Runs over machine-size fractions first and redoes the
//! computation over big rationals if anything overflows.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};

use crate::exact::Rational;

pub(crate) type Small = Ratio<i64>;

pub(crate) trait Coef: Clone {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
}

impl Coef for Rational {
    fn nil() -> Self {
        Rational::zero()
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

impl Coef for Small {
    fn nil() -> Self {
        Small::zero()
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }
}

pub(crate) fn to_small(x: &Rational) -> Option<Small> {
    let (n, d) = (x.numer().to_i64()?, x.denom().to_i64()?);
    // keep headroom so that checked operations rarely hit the edge
    (n.unsigned_abs() < 1 << 62 && d < 1 << 62).then(|| Small::new_raw(n, d))
}

pub(crate) fn from_small(x: &Small) -> Rational {
    Rational::new((*x.numer()).into(), (*x.denom()).into())
}

/// Table lookups `table[blade][j]` for `e_blade · e_j`.
pub(crate) type Table<T> = Vec<Vec<Vec<(u32, T)>>>;

struct Scratch<T> {
    dense: Vec<T>,
    touched: Vec<u32>,
}

impl<T: Coef> Scratch<T> {
    fn new(size: usize) -> Self {
        Scratch {
            dense: vec![T::nil(); size],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, at: u32, v: &T) -> Option<()> {
        let slot = &mut self.dense[at as usize];
        if slot.is_nil() {
            self.touched.push(at);
            *slot = v.clone();
        } else {
            *slot = slot.add(v)?;
        }
        Some(())
    }

    fn drain(&mut self) -> Vec<(u32, T)> {
        let mut out = Vec::with_capacity(self.touched.len());
        for t in self.touched.drain(..) {
            let v = std::mem::replace(&mut self.dense[t as usize], T::nil());
            if !v.is_nil() {
                out.push((t, v));
            }
        }
        out
    }
}

fn times_generator<T: Coef>(table: &Table<T>, x: &[(u32, T)], j: usize, scratch: &mut Scratch<T>) -> Option<Vec<(u32, T)>> {
    for (b, c) in x {
        for (t, v) in &table[*b as usize][j] {
            scratch.add(*t, &c.mul(v)?)?;
        }
    }
    Some(scratch.drain())
}

/// `x · y` as a list of (blade, coefficient) pairs in no particular order.
pub(crate) fn multiply<T: Coef>(table: &Table<T>, x: &[(u32, T)], y: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let size = table.len();
    let mut scratch = Scratch::new(size);
    let mut prefixes: HashMap<u32, Vec<(u32, T)>> = HashMap::new();
    prefixes.insert(0, x.to_vec());
    let mut out = Scratch::new(size);
    for (b, c) in y {
        let part = prefix_product(table, &mut prefixes, *b, &mut scratch)?;
        for (t, v) in part.iter() {
            out.add(*t, &v.mul(c)?)?;
        }
    }
    Some(out.drain())
}

fn prefix_product<'a, T: Coef>(
    table: &Table<T>,
    memo: &'a mut HashMap<u32, Vec<(u32, T)>>,
    blade: u32,
    scratch: &mut Scratch<T>,
) -> Option<&'a Vec<(u32, T)>> {
    if !memo.contains_key(&blade) {
        // build the chain of missing prefixes from the shortest one up
        let mut chain = vec![blade];
        let mut p = blade;
        while p != 0 {
            p &= !(1u32 << (31 - p.leading_zeros()));
            if memo.contains_key(&p) {
                break;
            }
            chain.push(p);
        }
        for q in chain.into_iter().rev() {
            let top = 31 - q.leading_zeros() as usize;
            let base = q & !(1u32 << top);
            let next = times_generator(table, &memo[&base], top, scratch)?;
            memo.insert(q, next);
        }
    }
    memo.get(&blade)
}
