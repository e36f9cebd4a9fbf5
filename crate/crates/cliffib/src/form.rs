//! Quadratic forms with polynomial coefficients: the gram matrix of a
//! family of quadrics over a parameter space, its discriminant, corank
//! strata, pointwise orthogonalization and isotropic vectors.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::univariate;
use crate::exact::rational::{format_rational, rational_sqrt};
use crate::exact::{parse_poly, vars, MultiPoly, PolyMatrix, QMatrix, Rational, Vars};

/// On-disk form description. Entries use the polynomial text grammar.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormFile {
    pub n: usize,
    pub base_vars: Vec<String>,
    pub gram: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    base_vars: Vars,
    gram: PolyMatrix,
}

/// Result of diagonalizing a rational symmetric matrix by congruence:
/// `change_of_basisᵀ · G · change_of_basis = diag(diagonal)`, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orthogonalization {
    pub diagonal: Vec<Rational>,
    pub change_of_basis: QMatrix,
}

impl Orthogonalization {
    pub fn corank(&self) -> usize {
        self.diagonal.iter().filter(|a| a.is_zero()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleDegenerations {
    /// `None` when no exact test applies to this base.
    pub verdict: Option<bool>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataReport {
    pub discriminant: MultiPoly,
    /// `corank_ideals[d-1]` generates the ideal of the locus of corank ≥ d.
    pub corank_ideals: Vec<Vec<MultiPoly>>,
    pub simple_degenerations: SimpleDegenerations,
    /// Sample-point check that the strata are nested and cut out by the
    /// minors: at every sample point, corank ≥ d exactly when all level-d
    /// generators vanish.
    pub nesting_verified: bool,
    pub sample_coranks: Vec<(Vec<Rational>, usize)>,
}

impl QuadraticForm {
    pub fn new(base_vars: Vars, gram: PolyMatrix) -> Result<Self> {
        if gram.rows() == 0 || gram.rows() != gram.cols() {
            return Err(Error::Dimension(format!(
                "gram must be a nonempty square matrix, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if gram.vars() != &base_vars {
            return Err(Error::Input("gram entries use a different variable list".into()));
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::AsymmetricGram {
                        i: j,
                        j: i,
                        a: gram[(j, i)].to_string(),
                        b: gram[(i, j)].to_string(),
                    });
                }
            }
        }
        Ok(QuadraticForm { base_vars, gram })
    }

    /// Form over a point base.
    pub fn constant(gram: &QMatrix) -> Result<Self> {
        let v = vars::<&str>(&[]);
        Self::new(v.clone(), PolyMatrix::from_rational(&v, gram))
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        Self::constant(&QMatrix::diagonal(values)).expect("diagonal gram is symmetric")
    }

    pub fn from_file(file: &FormFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        if file.gram.len() != file.n || file.gram.iter().any(|r| r.len() != file.n) {
            return Err(Error::Dimension(format!(
                "gram must be {0}x{0} to match n = {0}",
                file.n
            )));
        }
        let v = vars(&file.base_vars);
        for (i, name) in file.base_vars.iter().enumerate() {
            let ok = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || file.base_vars[..i].contains(name) {
                return Err(Error::Input(format!("invalid or duplicate variable name `{name}`")));
            }
        }
        let mut rows = Vec::with_capacity(file.n);
        for (i, row) in file.gram.iter().enumerate() {
            let mut out = Vec::with_capacity(file.n);
            for (j, text) in row.iter().enumerate() {
                let p = parse_poly(text, &v).map_err(|e| match e {
                    Error::Syntax { pos, msg } => Error::Syntax {
                        pos,
                        msg: format!("{msg} in gram entry ({i},{j})"),
                    },
                    other => other,
                })?;
                out.push(p);
            }
            rows.push(out);
        }
        Self::new(v.clone(), PolyMatrix::from_rows(&v, rows))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FormFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
        Self::from_file(&file)
    }

    /// Canonical file form: polynomials printed in normal form.
    pub fn to_file(&self) -> FormFile {
        FormFile {
            n: self.n(),
            base_vars: self.base_vars.to_vec(),
            gram: (0..self.n())
                .map(|i| (0..self.n()).map(|j| self.gram[(i, j)].to_string()).collect())
                .collect(),
        }
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn canonical_hash(&self) -> String {
        let json = serde_json::to_string(&self.to_file()).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn base_vars(&self) -> &Vars {
        &self.base_vars
    }

    pub fn gram(&self) -> &PolyMatrix {
        &self.gram
    }

    pub fn is_point_base(&self) -> bool {
        self.base_vars.is_empty()
    }

    fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.base_vars.len() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, base has {} variables",
                point.len(),
                self.base_vars.len()
            )));
        }
        Ok(())
    }

    pub fn gram_at(&self, point: &[Rational]) -> Result<QMatrix> {
        self.check_point(point)?;
        Ok(self.gram.eval(point))
    }

    pub fn discriminant(&self) -> MultiPoly {
        self.gram.determinant()
    }

    pub fn corank_at(&self, point: &[Rational]) -> Result<usize> {
        let g = self.gram_at(point)?;
        Ok(self.n() - g.rank())
    }

    /// Generators of the ideal of the locus where the corank is at least
    /// `d`: all `(n+1-d)`-minors, deduplicated up to sign, zeros dropped.
    pub fn degeneration_ideal(&self, d: usize) -> Result<Vec<MultiPoly>> {
        let n = self.n();
        if d == 0 || d > n {
            return Err(Error::Precondition(format!("degeneration level must be in 1..={n}")));
        }
        let k = n + 1 - d;
        let subsets = k_subsets(n, k);
        let mut out: Vec<MultiPoly> = Vec::new();
        for rows in &subsets {
            for cols in &subsets {
                let m = self.gram.minor(rows, cols);
                if m.is_zero() {
                    continue;
                }
                let m = m.sign_normalized();
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    pub fn orthogonalize_at(&self, point: &[Rational]) -> Result<Orthogonalization> {
        Ok(orthogonalize(&self.gram_at(point)?))
    }

    pub fn find_isotropic(&self, point: &[Rational]) -> Result<Option<Vec<Rational>>> {
        Ok(find_isotropic_vector(&self.gram_at(point)?))
    }

    /// Square-freeness verdict for the discriminant on one-parameter bases
    /// and on pencils (two homogeneous base variables, linear entries).
    pub fn simple_degenerations(&self) -> SimpleDegenerations {
        let disc = self.discriminant();
        match self.base_vars.len() {
            0 => SimpleDegenerations {
                verdict: None,
                witness: "point base: no degeneration locus".into(),
            },
            1 => {
                let f = disc.to_univariate(0).unwrap_or_default();
                squarefree_verdict(&f, None, &self.base_vars[0])
            }
            2 if self.is_pencil() => {
                // f(s, t) squarefree iff f(s, 1) squarefree and t² ∤ f
                let n = self.n();
                let dehom = disc.partial_eval(&[None, Some(Rational::one())]);
                let f = dehom.to_univariate(0).unwrap_or_default();
                squarefree_verdict(&f, Some(n), &self.base_vars[0])
            }
            _ => SimpleDegenerations {
                verdict: None,
                witness: "not verified: no exact smoothness test for this base".into(),
            },
        }
    }

    /// Two base variables and every gram entry a linear form in them.
    pub fn is_pencil(&self) -> bool {
        self.base_vars.len() == 2
            && (0..self.n()).all(|i| {
                (0..self.n()).all(|j| {
                    let p = &self.gram[(i, j)];
                    p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(1))
                })
            })
    }

    pub fn strata_report(&self, sample_points: &[Vec<Rational>]) -> Result<StrataReport> {
        let n = self.n();
        let mut corank_ideals = Vec::with_capacity(n);
        for d in 1..=n {
            corank_ideals.push(self.degeneration_ideal(d)?);
        }
        let mut nesting_verified = true;
        let mut sample_coranks = Vec::new();
        for p in sample_points {
            let c = self.corank_at(p)?;
            let vanishes: Vec<bool> = corank_ideals
                .iter()
                .map(|gens| gens.iter().all(|g| g.eval(p).is_zero()))
                .collect();
            for d in 1..=n {
                if vanishes[d - 1] != (c >= d) {
                    nesting_verified = false;
                }
                if d < n && vanishes[d] && !vanishes[d - 1] {
                    nesting_verified = false;
                }
            }
            sample_coranks.push((p.clone(), c));
        }
        Ok(StrataReport {
            discriminant: self.discriminant(),
            corank_ideals,
            simple_degenerations: self.simple_degenerations(),
            nesting_verified,
            sample_coranks,
        })
    }

    /// q(x) = Σ G_ij x_i x_j as a polynomial in `base_vars ++ x_names`.
    pub fn quadric_polynomial(&self, x_names: &[String]) -> MultiPoly {
        let all = self.extended_vars(x_names);
        let n = self.n();
        let mut q = MultiPoly::zero(&all);
        for i in 0..n {
            for j in 0..n {
                let g = self.gram[(i, j)].embed(&all).expect("base variables embed");
                let xi = MultiPoly::var(&all, self.base_vars.len() + i);
                let xj = MultiPoly::var(&all, self.base_vars.len() + j);
                q = &q + &(&g * &(&xi * &xj));
            }
        }
        q
    }

    pub fn extended_vars(&self, x_names: &[String]) -> Vars {
        self.base_vars
            .iter()
            .cloned()
            .chain(x_names.iter().cloned())
            .collect()
    }
}

fn squarefree_verdict(f: &[Rational], homogeneous_degree: Option<usize>, var: &str) -> SimpleDegenerations {
    let deg = univariate::degree(f);
    let Some(deg) = deg else {
        return SimpleDegenerations {
            verdict: Some(false),
            witness: "discriminant vanishes identically".into(),
        };
    };
    if let Some(n) = homogeneous_degree {
        if deg + 1 < n {
            return SimpleDegenerations {
                verdict: Some(false),
                witness: format!("multiple root at infinity: degree in {var} drops to {deg} < {}", n - 1),
            };
        }
    }
    let g = univariate::gcd(f, &univariate::derivative(f));
    let gdeg = univariate::degree(&g).unwrap_or(0);
    SimpleDegenerations {
        verdict: Some(gdeg == 0),
        witness: format!("degree of gcd(f, f') in {var} is {gdeg}"),
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Symmetric Gaussian elimination. When every remaining diagonal entry
/// vanishes but some off-diagonal entry does not, the basis vector `i` is
/// replaced by `v_i + v_j`, whose square is `2·G_ij ≠ 0`.
pub fn orthogonalize(g: &QMatrix) -> Orthogonalization {
    assert!(g.is_symmetric(), "orthogonalize needs a symmetric matrix");
    let n = g.rows();
    let mut a = g.clone();
    let mut p = QMatrix::identity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[(i, i)].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                add_basis_vector(&mut a, &mut p, i, j, &Rational::one());
                i
            }
        };
        swap_basis(&mut a, &mut p, k, pivot);
        let akk = a[(k, k)].clone();
        for j in k + 1..n {
            if !a[(k, j)].is_zero() {
                let f = -(&a[(k, j)] / &akk);
                add_basis_vector(&mut a, &mut p, j, k, &f);
            }
        }
    }
    Orthogonalization {
        diagonal: (0..n).map(|i| a[(i, i)].clone()).collect(),
        change_of_basis: p,
    }
}

/// v_i ← v_i + f·v_j, updating the congruent matrix.
fn add_basis_vector(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize, f: &Rational) {
    let n = a.rows();
    for r in 0..n {
        let t = f * &p[(r, j)];
        p[(r, i)] += t;
    }
    // column op then row op
    for r in 0..n {
        let t = f * &a[(r, j)];
        a[(r, i)] += t;
    }
    for c in 0..n {
        let t = f * &a[(j, c)];
        a[(i, c)] += t;
    }
}

fn swap_basis(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for r in 0..n {
        let t = p[(r, i)].clone();
        p[(r, i)] = p[(r, j)].clone();
        p[(r, j)] = t;
    }
    a.swap_rows(i, j);
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Nonzero rational isotropic vector, searched over: a zero diagonal entry
/// of the gram matrix, a kernel vector, or a pair of orthogonal diagonal
/// values `a_i, a_j` with `-a_j/a_i` a rational square.
pub fn find_isotropic_vector(g: &QMatrix) -> Option<Vec<Rational>> {
    let n = g.rows();
    if let Some(i) = (0..n).find(|&i| g[(i, i)].is_zero()) {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        return Some(v);
    }
    let orth = orthogonalize(g);
    let p = &orth.change_of_basis;
    if let Some(k) = orth.diagonal.iter().position(Zero::is_zero) {
        return Some(p.column(k));
    }
    for i in 0..n {
        for j in i + 1..n {
            let ratio = -(&orth.diagonal[j] / &orth.diagonal[i]);
            if let Some(r) = rational_sqrt(&ratio) {
                let mut w = vec![Rational::zero(); n];
                w[i] = r;
                w[j] = Rational::one();
                return Some(p.mul_vec(&w));
            }
        }
    }
    None
}

impl StrataReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "discriminant": self.discriminant.to_string(),
            "corank_ideals": self.corank_ideals.iter().enumerate().map(|(d, gens)| {
                serde_json::json!({
                    "corank_at_least": d + 1,
                    "minor_size": self.corank_ideals.len() - d,
                    "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
            "simple_degenerations": self.simple_degenerations,
            "nesting_verified_at_samples": self.nesting_verified,
            "sample_coranks": self.sample_coranks.iter().map(|(p, c)| serde_json::json!({
                "point": p.iter().map(format_rational).collect::<Vec<_>>(),
                "corank": c,
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};

    fn form(base: &[&str], rows: &[&[&str]]) -> QuadraticForm {
        QuadraticForm::from_file(&FormFile {
            n: rows.len(),
            base_vars: base.iter().map(|s| s.to_string()).collect(),
            gram: rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn discriminant_examples() {
        let q = form(&["s"], &[&["s", "1"], &["1", "s"]]);
        assert_eq!(q.discriminant().to_string(), "s^2 - 1");
        let q = form(&["s"], &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "s"]]);
        assert_eq!(q.discriminant().to_string(), "s");
    }

    #[test]
    fn pencil_discriminant_is_product() {
        let q = form(
            &["s", "t"],
            &[
                &["s+t", "0", "0", "0"],
                &["0", "s+2*t", "0", "0"],
                &["0", "0", "s+3*t", "0"],
                &["0", "0", "0", "s+4*t"],
            ],
        );
        // oracle: expand the product of the diagonal entries term by term
        let v = q.base_vars().clone();
        let mut prod = MultiPoly::one(&v);
        for k in 1..=4 {
            let lin = &MultiPoly::var(&v, 0) + &MultiPoly::var(&v, 1).scale(&rat(k));
            prod = &prod * &lin;
        }
        assert_eq!(q.discriminant(), prod);
        assert!(q.is_pencil());
        assert_eq!(q.simple_degenerations().verdict, Some(true));
        assert_eq!(q.corank_at(&[rat(-2), rat(1)]).unwrap(), 1);
    }

    #[test]
    fn coranks() {
        let q = QuadraticForm::diagonal(&[rat(1), rat(1), rat(0)]);
        assert_eq!(q.corank_at(&[]).unwrap(), 1);
        let q = form(&["s"], &[&["s", "1"], &["1", "s"]]);
        assert_eq!(q.corank_at(&[rat(1)]).unwrap(), 1);
        assert!(q.corank_at(&[]).is_err());
    }

    #[test]
    fn degeneration_ideals() {
        let q = form(&["s", "t"], &[&["s", "0", "0"], &["0", "t", "0"], &["0", "0", "1"]]);
        let gens: Vec<String> = q.degeneration_ideal(2).unwrap().iter().map(ToString::to_string).collect();
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["s", "s*t", "t"]);
        let top = q.degeneration_ideal(3).unwrap();
        assert_eq!(top.len(), 3); // s, t, 1
        assert!(q.degeneration_ideal(0).is_err());
        let r = q
            .strata_report(&[vec![rat(0), rat(0)], vec![rat(0), rat(2)], vec![rat(1), rat(1)]])
            .unwrap();
        assert!(r.nesting_verified);
        assert_eq!(r.sample_coranks[0].1, 2);
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        let err = QuadraticForm::from_file(&FormFile {
            n: 2,
            base_vars: vec!["s".into()],
            gram: vec![vec!["1".into(), "s".into()], vec!["0".into(), "1".into()]],
        })
        .unwrap_err();
        assert!(matches!(err, Error::AsymmetricGram { i: 0, j: 1, .. }));
    }

    #[test]
    fn orthogonalization_examples() {
        let o = orthogonalize(&QMatrix::identity(3));
        assert_eq!(o.diagonal, vec![rat(1); 3]);
        assert_eq!(o.change_of_basis, QMatrix::identity(3));

        let hyp = QMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(1, 2), rat(0)]]);
        let o = orthogonalize(&hyp);
        let p = &o.change_of_basis;
        assert_eq!(&(&p.transpose() * &hyp) * p, QMatrix::diagonal(&o.diagonal));
        // square classes {1, -1}: a hyperbolic plane
        assert!(crate::exact::rational::is_square(&o.diagonal[0]));
        assert!(crate::exact::rational::is_square(&(-&o.diagonal[1])));

        let o = orthogonalize(&QMatrix::diagonal(&[rat(1), rat(1), rat(0)]));
        assert_eq!(o.diagonal, vec![rat(1), rat(1), rat(0)]);
        assert_eq!(o.corank(), 1);
    }

    #[test]
    fn isotropic_vectors() {
        let hyp = QMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(1, 2), rat(0)]]);
        assert_eq!(find_isotropic_vector(&hyp), Some(vec![rat(1), rat(0)]));
        let g = QMatrix::diagonal(&[rat(1), rat(-1), rat(5)]);
        assert_eq!(find_isotropic_vector(&g), Some(vec![rat(1), rat(1), rat(0)]));
        assert_eq!(find_isotropic_vector(&QMatrix::identity(2)), None);
    }
}
