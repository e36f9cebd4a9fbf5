//! Modules `B_k` over the even Clifford algebra `B_0` at a point.
//!
//! Over a point with the line bundle trivialized, `B_k` is the even part of
//! the Clifford algebra for even k and the odd part for odd k; the integer
//! label only records the twist. Both parts are `B_0`-bimodules by Clifford
//! multiplication, and a `B0Module` is one side of that structure.
//!
//! Modules are written in the blade basis of an orthogonal frame
//! `f_i = Σ_r P[r][i] e_r` (see [`Frame`]). There every basis element of
//! `B_0` acts by a signed, scaled permutation, which keeps exact elimination
//! on tensor products and Hom spaces small. Dimensions and isomorphism
//! verdicts do not depend on the basis.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::clifford::{parity_basis, Blade, CliffordAlgebra, CliffordElement, Side};
use crate::error::{Error, Result};
use crate::exact::rational::binomial;
use crate::exact::sparse::{collect_sparse, Echelon, SparseVec};
use crate::exact::{QMatrix, Rational, SparseMatrix};
use crate::form::orthogonalize;

/// Orthogonal generators of a Clifford algebra and the diagonal algebra
/// they generate.
#[derive(Clone, Debug)]
pub struct Frame {
    /// Column i holds the coordinates of `f_i` in the `e` basis.
    pub change_of_basis: QMatrix,
    pub diagonal: Vec<Rational>,
    pub algebra: CliffordAlgebra,
}

impl Frame {
    pub fn of(alg: &CliffordAlgebra) -> Self {
        let o = orthogonalize(alg.gram());
        let algebra = CliffordAlgebra::new(QMatrix::diagonal(&o.diagonal)).expect("diagonal gram is symmetric");
        Frame {
            change_of_basis: o.change_of_basis,
            diagonal: o.diagonal,
            algebra,
        }
    }

    fn generator(&self, i: usize) -> CliffordElement {
        let p = &self.change_of_basis;
        CliffordElement::vector(&(0..p.rows()).map(|r| p[(r, i)].clone()).collect::<Vec<_>>())
    }

    /// `f_i f_j + f_j f_i = 2 δ_ij d_i` inside `alg`, and the `f_i` are
    /// linearly independent.
    pub fn verify(&self, alg: &CliffordAlgebra) -> bool {
        let n = alg.n();
        let f: Vec<CliffordElement> = (0..n).map(|i| self.generator(i)).collect();
        let relations = (0..n).all(|i| {
            (i..n).all(|j| {
                let s = &alg.multiply(&f[i], &f[j]) + &alg.multiply(&f[j], &f[i]);
                let want = if i == j { &self.diagonal[i] * Rational::from_integer(2.into()) } else { Rational::zero() };
                s == CliffordElement::scalar(want)
            })
        });
        relations && !self.change_of_basis.determinant().is_zero()
    }
}

/// Basis of `B_0` and the positions of its generators `e_i e_j`.
#[derive(Clone, Debug)]
pub struct EvenBasis {
    pub blades: Vec<u32>,
    pub generators: Vec<usize>,
}

impl EvenBasis {
    pub fn new(n: usize) -> Self {
        let blades = parity_basis(n, 0);
        let generators = blades
            .iter()
            .enumerate()
            .filter(|(_, b)| b.count_ones() == 2)
            .map(|(i, _)| i)
            .collect();
        EvenBasis { blades, generators }
    }

    pub fn dim(&self) -> usize {
        self.blades.len()
    }
}

fn twist_parity(k: i64) -> u32 {
    k.rem_euclid(2) as u32
}

/// One-sided module over `B_0`: `actions[b]` is the matrix of the b-th
/// basis element of `B_0`, acting on the right (`m ↦ m·b`) or on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct B0Module {
    pub side: Side,
    pub label: i64,
    dim: usize,
    actions: Vec<SparseMatrix>,
    generators: Vec<usize>,
}

/// Both actions of `B_0` on the same space.
#[derive(Clone, Debug, PartialEq)]
pub struct B0Bimodule {
    pub label: i64,
    dim: usize,
    left: Vec<SparseMatrix>,
    right: Vec<SparseMatrix>,
    generators: Vec<usize>,
}

impl B0Bimodule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self, side: Side) -> B0Module {
        B0Module {
            side,
            label: self.label,
            dim: self.dim,
            actions: match side {
                Side::Left => self.left.clone(),
                Side::Right => self.right.clone(),
            },
            generators: self.generators.clone(),
        }
    }
}

impl B0Module {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.actions
    }

    /// Matrix of an arbitrary element of `B_0` given by coordinates.
    pub fn action_of(&self, b: &SparseVec) -> SparseMatrix {
        b.iter().fold(SparseMatrix::zeros(self.dim, self.dim), |acc, (i, c)| {
            acc.add(&self.actions[*i].scale(c))
        })
    }

    /// The frame of `alg` is orthogonal, the unit acts as the identity and
    /// `act(b1 b2)` agrees with the composition of `act(b1)` and `act(b2)`
    /// on all generator pairs and on `samples` random pairs of basis
    /// elements.
    pub fn verify_action(&self, alg: &CliffordAlgebra, samples: usize, rng: &mut impl Rng) -> bool {
        let frame = Frame::of(alg);
        if !frame.verify(alg) {
            return false;
        }
        let alg = &frame.algebra;
        let even = EvenBasis::new(alg.n());
        if self.actions[0] != SparseMatrix::identity(self.dim) {
            return false;
        }
        let mut pairs: Vec<(usize, usize)> = even
            .generators
            .iter()
            .flat_map(|a| even.generators.iter().map(move |b| (*a, *b)))
            .collect();
        for _ in 0..samples {
            pairs.push((rng.gen_range(0..even.dim()), rng.gen_range(0..even.dim())));
        }
        pairs.into_iter().all(|(a, b)| {
            let x = CliffordElement::term(Blade(even.blades[a]), Rational::one());
            let y = CliffordElement::term(Blade(even.blades[b]), Rational::one());
            let xy = alg.multiply(&x, &y).coordinates(&even.blades).expect("even product");
            let lhs = self.action_of(&xy);
            let rhs = match self.side {
                Side::Right => self.actions[b].compose(&self.actions[a]),
                Side::Left => self.actions[a].compose(&self.actions[b]),
            };
            lhs == rhs
        })
    }
}

/// `B_k` with both of its `B_0`-actions.
pub fn build_bk_bimodule(alg: &CliffordAlgebra, k: i64) -> B0Bimodule {
    bimodule_in_frame(&Frame::of(alg).algebra, k)
}

fn bimodule_in_frame(alg: &CliffordAlgebra, k: i64) -> B0Bimodule {
    let n = alg.n();
    let even = EvenBasis::new(n);
    let space = parity_basis(n, twist_parity(k));
    let elems: Vec<CliffordElement> = space
        .iter()
        .map(|b| CliffordElement::term(Blade(*b), Rational::one()))
        .collect();
    let action = |side: Side| -> Vec<SparseMatrix> {
        even.blades
            .iter()
            .map(|b| {
                let e = CliffordElement::term(Blade(*b), Rational::one());
                let cols = elems
                    .iter()
                    .map(|m| {
                        let p = match side {
                            Side::Right => alg.multiply(m, &e),
                            Side::Left => alg.multiply(&e, m),
                        };
                        p.coordinates(&space).expect("parity is preserved")
                    })
                    .collect();
                SparseMatrix::from_columns(space.len(), cols)
            })
            .collect()
    };
    B0Bimodule {
        label: k,
        dim: space.len(),
        left: action(Side::Left),
        right: action(Side::Right),
        generators: even.generators,
    }
}

pub fn build_bk(alg: &CliffordAlgebra, k: i64, side: Side) -> B0Module {
    build_bk_bimodule(alg, k).side(side)
}

/// The zero module.
pub fn zero_module(alg: &CliffordAlgebra, side: Side) -> B0Module {
    let even = EvenBasis::new(alg.n());
    B0Module {
        side,
        label: 0,
        dim: 0,
        actions: vec![SparseMatrix::zeros(0, 0); even.dim()],
        generators: even.generators,
    }
}

/// Direct sum of `r` copies of the right regular module.
fn free_module(alg: &CliffordAlgebra, r: usize) -> B0Module {
    let regular = build_bk(alg, 0, Side::Right);
    let d = regular.dim;
    let actions = regular
        .actions
        .iter()
        .map(|a| {
            let cols = (0..r * d)
                .map(|c| {
                    let (copy, j) = (c / d, c % d);
                    a.column(j).iter().map(|(i, x)| (copy * d + i, x.clone())).collect()
                })
                .collect();
            SparseMatrix::from_columns(r * d, cols)
        })
        .collect();
    B0Module {
        side: Side::Right,
        label: 0,
        dim: r * d,
        actions,
        generators: regular.generators,
    }
}

/// `M ⊗ N` modulo `m·b ⊗ n − m ⊗ b·n`, indices `i·dim N + j`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub dim: usize,
    pub ambient: usize,
    relations: Echelon,
}

impl TensorProduct {
    fn free(&self) -> Vec<usize> {
        self.relations.free_columns()
    }

    /// Image of an ambient vector in the quotient basis.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let free = self.free();
        let mut out: SparseVec = self
            .relations
            .normal_form(v.clone())
            .into_iter()
            .map(|(i, c)| (free.binary_search(&i).expect("normal form is free"), c))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Induced map of `f ⊗ g` on the quotient.
    fn induced(&self, f: &SparseMatrix, g: &SparseMatrix) -> SparseMatrix {
        let fg = f.kron(g);
        let cols = self.free().iter().map(|c| self.project(fg.column(*c))).collect();
        SparseMatrix::from_columns(self.dim, cols)
    }
}

fn coequalizer(m_right: &[SparseMatrix], n_left: &[SparseMatrix], gens: &[usize], dm: usize, dn: usize) -> TensorProduct {
    let mut rel = Echelon::new(dm * dn);
    let (im, in_) = (SparseMatrix::identity(dm), SparseMatrix::identity(dn));
    for g in gens {
        let a = m_right[*g].kron(&in_);
        let b = im.kron(&n_left[*g]);
        let diff = a.add(&b.scale(&-Rational::one()));
        for c in diff.columns() {
            rel.insert(c.clone());
        }
    }
    rel.make_reduced();
    TensorProduct {
        dim: dm * dn - rel.rank(),
        ambient: dm * dn,
        relations: rel,
    }
}

pub fn tensor_over_b0(m: &B0Module, n: &B0Module) -> Result<TensorProduct> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Precondition(
            "tensor over B0 needs a right module on the left and a left module on the right".into(),
        ));
    }
    Ok(coequalizer(&m.actions, &n.actions, &m.generators, m.dim, n.dim))
}

/// `M ⊗_{B_0} N` as a bimodule, from the outer actions.
pub fn tensor_bimodules(m: &B0Bimodule, n: &B0Bimodule) -> (TensorProduct, B0Bimodule) {
    let t = coequalizer(&m.right, &n.left, &m.generators, m.dim, n.dim);
    let (im, in_) = (SparseMatrix::identity(m.dim), SparseMatrix::identity(n.dim));
    let left = m.left.iter().map(|a| t.induced(a, &in_)).collect();
    let right = n.right.iter().map(|a| t.induced(&im, a)).collect();
    let out = B0Bimodule {
        label: m.label + n.label,
        dim: t.dim,
        left,
        right,
        generators: m.generators.clone(),
    };
    (t, out)
}

/// Basis of `Hom_{B_0}(M, N)`; each map is a `dim N × dim M` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<SparseMatrix>,
}

pub fn hom_over_b0(m: &B0Module, n: &B0Module) -> Result<HomSpace> {
    if m.side != n.side {
        return Err(Error::Precondition(
            "Hom over B0 between modules acting on different sides".into(),
        ));
    }
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(HomSpace { dim: 0, basis: vec![] });
    }
    // unknown φ with φ[r][c] at index r·dm + c; equations A^N_g φ − φ A^M_g = 0
    let gens = &m.generators;
    let rows = gens.len() * dn * dm;
    let mut cols: Vec<SparseVec> = Vec::with_capacity(dn * dm);
    for r in 0..dn {
        for c in 0..dm {
            // φ = E_rc
            let entries = gens.iter().enumerate().flat_map(|(gi, g)| {
                let an = &n.actions[*g];
                let am = &m.actions[*g];
                let off = gi * dn * dm;
                // (A^N E_rc)[i][c] = A^N[i][r]
                let a = (0..0).map(|_| (0, Rational::zero()));
                let left_part: Vec<(usize, Rational)> = an
                    .column(r)
                    .iter()
                    .map(|(i, x)| (off + i * dm + c, x.clone()))
                    .collect();
                // (E_rc A^M)[r][j] = A^M[c][j]
                let right_part: Vec<(usize, Rational)> = (0..dm)
                    .filter_map(|j| {
                        am.column(j)
                            .iter()
                            .find(|(i, _)| *i == c)
                            .map(|(_, x)| (off + r * dm + j, -x.clone()))
                    })
                    .collect();
                a.chain(left_part).chain(right_part)
            });
            cols.push(collect_sparse(entries));
        }
    }
    let system = SparseMatrix::from_columns(rows.max(1), cols);
    let kernel = if gens.is_empty() {
        (0..dn * dm).map(|i| vec![(i, Rational::one())]).collect()
    } else {
        system.kernel()
    };
    let basis: Vec<SparseMatrix> = kernel
        .iter()
        .map(|v| {
            let mut mcols: Vec<SparseVec> = vec![Vec::new(); dm];
            for (idx, x) in v {
                mcols[idx % dm].push((idx / dm, x.clone()));
            }
            for col in &mut mcols {
                col.sort_by_key(|(i, _)| *i);
            }
            SparseMatrix::from_columns(dn, mcols)
        })
        .collect();
    Ok(HomSpace {
        dim: basis.len(),
        basis,
    })
}

fn intertwines(phi: &SparseMatrix, m: &B0Module, n: &B0Module) -> bool {
    (0..m.actions.len()).all(|b| phi.compose(&m.actions[b]) == n.actions[b].compose(phi))
}

const ISO_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorIsoReport {
    pub k: i64,
    pub l: i64,
    pub dim: usize,
    pub expected_dim: usize,
    pub hom_dim: usize,
    /// One of up to `ISO_ATTEMPTS` random combinations of intertwiners is
    /// invertible.
    pub isomorphism_found: bool,
    /// Clifford multiplication `B_k ⊗ B_l → B_{k+l}` descends to the
    /// tensor product over `B_0` and is bijective there.
    pub multiplication_is_isomorphism: bool,
}

/// `B_k ⊗_{B_0} B_l` against `B_{k+l}` as right modules.
pub fn tensor_iso_report(alg: &CliffordAlgebra, k: i64, l: i64, rng: &mut impl Rng) -> Result<TensorIsoReport> {
    let frame = Frame::of(alg);
    let alg = &frame.algebra;
    let bk = bimodule_in_frame(alg, k);
    let bl = bimodule_in_frame(alg, l);
    let (t, tb) = tensor_bimodules(&bk, &bl);
    let target = bimodule_in_frame(alg, k + l).side(Side::Right);
    let source = tb.side(Side::Right);
    let hom = hom_over_b0(&source, &target)?;
    // singular combinations lie on a hypersurface, so a few draws suffice
    let isomorphism_found = hom.dim > 0
        && source.dim == target.dim
        && (0..ISO_ATTEMPTS).any(|_| {
            let phi = hom.basis.iter().fold(SparseMatrix::zeros(target.dim, source.dim), |acc, b| {
                acc.add(&b.scale(&Rational::from_integer(rng.gen_range(-9i64..=9).into())))
            });
            phi.rank() == target.dim && intertwines(&phi, &source, &target)
        });
    // multiplication map on the ambient tensor product
    let n = alg.n();
    let sk = parity_basis(n, twist_parity(k));
    let sl = parity_basis(n, twist_parity(l));
    let skl = parity_basis(n, twist_parity(k + l));
    let mut cols = Vec::with_capacity(sk.len() * sl.len());
    for a in &sk {
        for b in &sl {
            let x = alg.multiply(
                &CliffordElement::term(Blade(*a), Rational::one()),
                &CliffordElement::term(Blade(*b), Rational::one()),
            );
            cols.push(x.coordinates(&skl).expect("parity adds"));
        }
    }
    let mu = SparseMatrix::from_columns(skl.len(), cols);
    let descends = t.relations.rows().iter().all(|r| mu.apply(r).is_empty());
    let induced = SparseMatrix::from_columns(skl.len(), t.free().iter().map(|c| mu.column(*c).clone()).collect());
    let multiplication_is_isomorphism =
        descends && t.dim == skl.len() && induced.rank() == t.dim && intertwines(&induced, &source, &target);
    Ok(TensorIsoReport {
        k,
        l,
        dim: t.dim,
        expected_dim: 1 << (n - 1),
        hom_dim: hom.dim,
        isomorphism_found,
        multiplication_is_isomorphism,
    })
}

/// Dimensions of `(B_k ⊗ B_l) ⊗ B_m` and `B_k ⊗ (B_l ⊗ B_m)`.
pub fn tensor_associativity_dims(alg: &CliffordAlgebra, k: i64, l: i64, m: i64) -> (usize, usize) {
    let (bk, bl, bm) = (build_bk_bimodule(alg, k), build_bk_bimodule(alg, l), build_bk_bimodule(alg, m));
    let (_, kl) = tensor_bimodules(&bk, &bl);
    let (left, _) = tensor_bimodules(&kl, &bm);
    let (_, lm) = tensor_bimodules(&bl, &bm);
    let (right, _) = tensor_bimodules(&bk, &lm);
    (left.dim, right.dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaPiece {
    /// `Λ^i` in `B_k`, matched with `Λ^{n-i}` in the degree `n-k` part.
    pub exterior_degree: usize,
    pub dual_exterior_degree: usize,
    pub dim: u64,
    pub dual_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvkReport {
    pub n: usize,
    pub k: i64,
    pub dim_bk: u64,
    pub dim_graded_piece: u64,
    pub pieces: Vec<LambdaPiece>,
    pub holds: bool,
}

/// `dim B_k = dim FB_{n-k}` for `k ≤ 1`, matched piece by piece through
/// `Λ^i E ⊗ det E* ≅ Λ^{n-i} E*`.
pub fn convk_identity(n: usize, k: i64) -> Result<ConvkReport> {
    if k > 1 {
        return Err(Error::Precondition(format!("the identity needs k <= 1, got {k}")));
    }
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let ni = n as i64;
    let m = ni - k;
    let dim_graded_piece: u64 = (0..=m / 2).map(|j| binomial(ni, m - 2 * j)).sum();
    let pieces: Vec<LambdaPiece> = (0..=n)
        .filter(|i| (*i as i64 - k).rem_euclid(2) == 0)
        .map(|i| LambdaPiece {
            exterior_degree: i,
            dual_exterior_degree: n - i,
            dim: binomial(ni, i as i64),
            dual_dim: binomial(ni, (n - i) as i64),
        })
        .collect();
    let dim_bk = 1u64 << (n - 1);
    let piece_sum: u64 = pieces.iter().map(|p| p.dual_dim).sum();
    let pieces_match = pieces.iter().all(|p| {
        p.dim == p.dual_dim && {
            let d = m - p.dual_exterior_degree as i64;
            d >= 0 && d % 2 == 0
        }
    });
    Ok(ConvkReport {
        n,
        k,
        dim_bk,
        dim_graded_piece,
        holds: dim_bk == dim_graded_piece && piece_sum == dim_graded_piece && pieces_match,
        pieces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivityReport {
    pub module_dim: usize,
    /// Size of the generating set used for the free cover.
    pub generators: usize,
    pub projective: bool,
}

/// Projectivity of a right module: a surjection from a free module onto
/// `M` splits iff `M` is projective.
pub fn projectivity_check(alg: &CliffordAlgebra, m: &B0Module) -> Result<ProjectivityReport> {
    if m.side != Side::Right {
        return Err(Error::Precondition("projectivity is tested for right modules".into()));
    }
    let d = m.dim;
    if d == 0 {
        return Ok(ProjectivityReport {
            module_dim: 0,
            generators: 0,
            projective: true,
        });
    }
    let even = EvenBasis::new(alg.n());
    // greedy generating set
    let mut span = Echelon::new(d);
    let mut gens: Vec<usize> = Vec::new();
    for c in 0..d {
        let v = vec![(c, Rational::one())];
        if span.contains(&v) {
            continue;
        }
        gens.push(c);
        for a in &m.actions {
            span.insert(a.apply(&v));
        }
        if span.rank() == d {
            break;
        }
    }
    let r = gens.len();
    let free = free_module(alg, r);
    // π(f_1..f_r) = Σ g_i · f_i
    let mut pcols = Vec::with_capacity(r * even.dim());
    for g in &gens {
        for b in 0..even.dim() {
            pcols.push(m.actions[b].apply(&vec![(*g, Rational::one())]));
        }
    }
    let pi = SparseMatrix::from_columns(d, pcols);
    let hom = hom_over_b0(m, &free)?;
    // Σ c_t π s_t = id
    let columns: Vec<Vec<Rational>> = hom
        .basis
        .iter()
        .map(|s| crate::exact::sparse::sparse_to_dense(&flatten(&pi.compose(s)), d * d))
        .collect();
    let target = crate::exact::sparse::sparse_to_dense(&flatten(&SparseMatrix::identity(d)), d * d);
    let projective = if columns.is_empty() {
        false
    } else {
        QMatrix::from_columns(d * d, &columns).solve(&target).is_some()
    };
    Ok(ProjectivityReport {
        module_dim: d,
        generators: r,
        projective,
    })
}

fn flatten(m: &SparseMatrix) -> SparseVec {
    let r = m.rows();
    let mut out: SparseVec = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        for (i, x) in col {
            out.push((j * r + i, x.clone()));
        }
    }
    out.sort_by_key(|(i, _)| *i);
    out
}
