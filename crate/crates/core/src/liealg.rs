//! Structure-constant Lie algebras over ℚ: `gl_n`, centralizers,
//! sl₂-triples, good gradings and invariant bilinear forms.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foundations::{frac, q, Ctx, QMatrix, Rational};
use crate::sampling::random_values;

/// Sparse coordinate vector in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    dim: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement { dim, coeffs: BTreeMap::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        LieElement::from_pairs(dim, [(i, Rational::one())])
    }

    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = LieElement::zero(dim);
        for (i, c) in pairs {
            out.add_at(i, c);
        }
        out
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        LieElement::from_pairs(v.len(), v.iter().cloned().enumerate())
    }

    fn add_at(&mut self, i: usize, c: Rational) {
        assert!(i < self.dim, "basis index {i} out of range {}", self.dim);
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.coeff(i)).collect()
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_at(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement::from_pairs(self.dim, self.iter().map(|(i, a)| (i, a * c)))
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&q(-1)))
    }
}

/// Finite-dimensional Lie algebra given by labeled basis and structure
/// constants. Antisymmetry and the Jacobi identity are checked on
/// construction.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `[b_i, b_j]` for `i < j`, nonzero brackets only.
    structure: BTreeMap<(usize, usize), LieElement>,
    matrices: Option<Vec<QMatrix>>,
    ctx: Ctx,
}

impl LieAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Rational)>)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut structure: BTreeMap<(usize, usize), LieElement> = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::AxiomViolation(format!("bracket index ({i},{j}) out of range")));
            }
            let v = LieElement::from_pairs(dim, v);
            if i == j {
                if !v.is_zero() {
                    return Err(Error::AxiomViolation(format!("[{0},{0}] != 0", labels[i])));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.scale(&q(-1))) };
            if let Some(prev) = structure.get(&key) {
                if *prev != v {
                    return Err(Error::AxiomViolation(format!(
                        "antisymmetry fails for [{}, {}]",
                        labels[key.0], labels[key.1]
                    )));
                }
            }
            if !v.is_zero() {
                structure.insert(key, v);
            }
        }
        let name = name.into();
        let ctx = fingerprint(&name, &labels, &structure);
        let alg = LieAlgebra { name, labels, structure, matrices: None, ctx };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("a{i}")).collect();
        LieAlgebra::new(format!("abelian({dim})"), labels, []).expect("abelian algebra")
    }

    /// Attaches a faithful matrix realization, checking that commutators
    /// of the matrices reproduce the structure constants.
    pub fn with_matrices(mut self, mats: Vec<QMatrix>) -> Result<Self> {
        if mats.len() != self.dim() {
            return Err(Error::ContextMismatch);
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let comm = matrix_commutator(&mats[i], &mats[j]);
                let expected = combine_matrices(&mats, &self.bracket_basis(i, j));
                if comm != expected {
                    return Err(Error::AxiomViolation(format!(
                        "matrix realization disagrees on [{}, {}]",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        self.matrices = Some(mats);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn matrices(&self) -> Option<&[QMatrix]> {
        self.matrices.as_deref()
    }

    pub fn basis(&self, i: usize) -> LieElement {
        LieElement::basis(self.dim(), i)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> LieElement {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.structure.get(&(i, j)).cloned(),
            std::cmp::Ordering::Greater => self.structure.get(&(j, i)).map(|v| v.scale(&q(-1))),
            std::cmp::Ordering::Equal => None,
        }
        .unwrap_or_else(|| LieElement::zero(self.dim()))
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j).iter() {
                    out.add_at(k, &ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &LieElement) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for (i, c) in self.bracket(x, &self.basis(j)).iter() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    /// The matrix `χ([b_i, b_j])` for a functional given by its values on the basis.
    pub fn structure_matrix_at(&self, chi: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (&(i, j), v) in &self.structure {
            let val: Rational = v.iter().map(|(k, c)| c * &chi[k]).sum();
            m[(j, i)] = -val.clone();
            m[(i, j)] = val;
        }
        m
    }

    /// Dimension of the coadjoint stabilizer of `χ`.
    pub fn stabilizer_dim(&self, chi: &[Rational]) -> usize {
        self.dim() - self.structure_matrix_at(chi).rank()
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let s = self
                        .bracket(&x, &self.bracket(&y, &z))
                        .add(&self.bracket(&y, &self.bracket(&z, &x)))
                        .add(&self.bracket(&z, &self.bracket(&x, &y)));
                    if !s.is_zero() {
                        return Err(Error::AxiomViolation(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    /// Human-readable form of an element, e.g. `e22 + e33`.
    pub fn format_element(&self, x: &LieElement) -> String {
        format_combination(x.iter().map(|(i, c)| (self.labels[i].as_str(), c)))
    }
}

fn format_combination<'a>(terms: impl Iterator<Item = (&'a str, &'a Rational)>) -> String {
    let mut s = String::new();
    for (k, (label, c)) in terms.enumerate() {
        let (neg, abs) = crate::foundations::rational::sign_and_abs(c);
        s.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if !abs.is_one() {
            s.push_str(&crate::foundations::rational::to_string(&abs));
            s.push('*');
        }
        s.push_str(label);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn fingerprint(name: &str, labels: &[String], structure: &BTreeMap<(usize, usize), LieElement>) -> Ctx {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    labels.hash(&mut h);
    for (k, v) in structure {
        k.hash(&mut h);
        for (i, c) in v.iter() {
            i.hash(&mut h);
            c.to_string().hash(&mut h);
        }
    }
    Ctx(h.finish())
}

fn matrix_commutator(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let mut out = QMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = &ab[(i, j)] - &ba[(i, j)];
        }
    }
    out
}

fn combine_matrices(mats: &[QMatrix], x: &LieElement) -> QMatrix {
    let mut out = QMatrix::zeros(mats[0].rows(), mats[0].cols());
    for (k, c) in x.iter() {
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                let d = c * &mats[k][(i, j)];
                out[(i, j)] += d;
            }
        }
    }
    out
}

/// Index of the matrix unit `e_{ij}` (1-based `i, j`) in the basis of `gl_n`.
pub fn gl_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

pub fn gl_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("e{i}{j}")
    } else {
        format!("e_{{{i},{j}}}")
    }
}

/// `gl_n` in the basis of matrix units, row-major.
pub fn build_gl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n));
    }
    let mut labels = Vec::with_capacity(n * n);
    let mut mats = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            labels.push(gl_label(n, i, j));
            let mut m = QMatrix::zeros(n, n);
            m[(i - 1, j - 1)] = Rational::one();
            mats.push(m);
        }
    }
    // [e_ij, e_kl] = δ_jk e_il − δ_li e_kj
    let mut brackets = Vec::new();
    for (i, j, k, l) in itertools::iproduct!(1..=n, 1..=n, 1..=n, 1..=n) {
        let (a, b) = (gl_index(n, i, j), gl_index(n, k, l));
        if a >= b {
            continue;
        }
        let mut v = Vec::new();
        if j == k {
            v.push((gl_index(n, i, l), q(1)));
        }
        if l == i {
            v.push((gl_index(n, k, j), q(-1)));
        }
        brackets.push(((a, b), v));
    }
    LieAlgebra::new(format!("gl_{n}"), labels, brackets)?.with_matrices(mats)
}

/// A Lie algebra together with its embedding into an ambient algebra.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: LieAlgebra,
    /// Image of each basis element in the ambient algebra.
    pub inclusion: Vec<LieElement>,
}

impl Subalgebra {
    /// Builds the subalgebra spanned by linearly independent `basis`,
    /// failing if the span is not closed under the bracket.
    pub fn from_basis(
        ambient: &LieAlgebra,
        name: impl Into<String>,
        basis: Vec<LieElement>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let d = basis.len();
        let cols: Vec<Vec<Rational>> = basis.iter().map(LieElement::to_dense).collect();
        let coord = QMatrix::from_rows(cols).transpose();
        if coord.rank() != d {
            return Err(Error::NotClosed("basis is linearly dependent".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let b = ambient.bracket(&basis[i], &basis[j]);
                let x = coord
                    .solve(&b.to_dense())
                    .ok_or_else(|| Error::NotClosed(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
                brackets.push(((i, j), x.into_iter().enumerate().collect()));
            }
        }
        let mut algebra = LieAlgebra::new(name, labels, brackets)?;
        if let Some(mats) = ambient.matrices() {
            let sub_mats = basis.iter().map(|x| combine_matrices(mats, x)).collect();
            algebra = algebra.with_matrices(sub_mats)?;
        }
        Ok(Subalgebra { algebra, inclusion: basis })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Image of a subalgebra element in the ambient algebra.
    pub fn include(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.inclusion[0].dim());
        for (i, c) in x.iter() {
            out = out.add(&self.inclusion[i].scale(c));
        }
        out
    }
}

/// Centralizer `g^x = ker(ad x)` with a kernel basis read off from the
/// reduced echelon form.
pub fn centralizer(g: &LieAlgebra, x: &LieElement) -> Result<Subalgebra> {
    let (_, kernel) = g.ad_matrix(x).rank_kernel();
    let basis: Vec<LieElement> = kernel.iter().map(|v| LieElement::from_dense(v)).collect();
    let labels = basis.iter().map(|b| g.format_element(b)).collect();
    Subalgebra::from_basis(g, format!("{}^x", g.name()), basis, labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

impl Sl2Triple {
    pub fn new(g: &LieAlgebra, e: LieElement, h: LieElement, f: LieElement) -> Result<Self> {
        let ok = g.bracket(&e, &f) == h && g.bracket(&h, &e) == e.scale(&q(2)) && g.bracket(&h, &f) == f.scale(&q(-2));
        if !ok {
            return Err(Error::AxiomViolation("sl2 relations fail".into()));
        }
        Ok(Sl2Triple { e, h, f })
    }
}

/// `e = e_{n,n-1}`, `f = e_{n-1,n}`, `h = e_{nn} - e_{n-1,n-1}`.
pub fn minimal_sl2_triple(n: usize) -> Result<Sl2Triple> {
    let g = build_gl(n)?;
    minimal_sl2_in(&g, n)
}

fn minimal_sl2_in(g: &LieAlgebra, n: usize) -> Result<Sl2Triple> {
    let d = g.dim();
    let e = LieElement::basis(d, gl_index(n, n, n - 1));
    let f = LieElement::basis(d, gl_index(n, n - 1, n));
    let h = LieElement::from_pairs(d, [(gl_index(n, n, n), q(1)), (gl_index(n, n - 1, n - 1), q(-1))]);
    Sl2Triple::new(g, e, h, f)
}

/// A ℤ-grading by basis degrees, checked to be bracket-compatible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    degrees: Vec<i32>,
}

impl Grading {
    pub fn new(g: &LieAlgebra, degrees: Vec<i32>) -> Result<Self> {
        if degrees.len() != g.dim() {
            return Err(Error::ContextMismatch);
        }
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for (k, _) in g.bracket_basis(i, j).iter() {
                    if degrees[k] != degrees[i] + degrees[j] {
                        return Err(Error::AxiomViolation(format!(
                            "grading incompatible with [{}, {}]",
                            g.label(i),
                            g.label(j)
                        )));
                    }
                }
            }
        }
        Ok(Grading { degrees })
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Basis indices of `g(d)`.
    pub fn component(&self, d: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Degree of `x` if it is homogeneous and nonzero.
    pub fn degree_of(&self, x: &LieElement) -> Option<i32> {
        let mut degs = x.iter().map(|(i, _)| self.degrees[i]);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// The even good grading for `e_{n,n-1}`: `g_2 = span{e_{n,i}}`,
/// `g_{-2} = span{e_{i,n}}` (`i < n`), everything else in degree 0.
pub fn good_grading_minimal(n: usize) -> Result<Grading> {
    let g = build_gl(n)?;
    good_grading_in(&g, n)
}

fn good_grading_in(g: &LieAlgebra, n: usize) -> Result<Grading> {
    let mut degrees = vec![0; n * n];
    for i in 1..n {
        degrees[gl_index(n, n, i)] = 2;
        degrees[gl_index(n, i, n)] = -2;
    }
    Grading::new(g, degrees)
}

/// Symmetric bilinear form given by its Gram matrix in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: QMatrix,
}

impl BilinearForm {
    pub fn from_gram(gram: QMatrix) -> Self {
        BilinearForm { gram }
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn on_basis(&self, i: usize, j: usize) -> &Rational {
        &self.gram[(i, j)]
    }

    pub fn eval(&self, x: &LieElement, y: &LieElement) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                s += a * b * &self.gram[(i, j)];
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// `κ([x,y],z) = κ(x,[y,z])` on all basis triples.
    pub fn is_invariant(&self, g: &LieAlgebra) -> bool {
        let n = g.dim();
        itertools::iproduct!(0..n, 0..n, 0..n).all(|(i, j, k)| {
            let (x, y, z) = (g.basis(i), g.basis(j), g.basis(k));
            self.eval(&g.bracket(&x, &y), &z) == self.eval(&x, &g.bracket(&y, &z))
        })
    }

    pub fn scale(&self, c: &Rational) -> BilinearForm {
        let mut gram = self.gram.clone();
        for i in 0..gram.rows() {
            for j in 0..gram.cols() {
                gram[(i, j)] = &gram[(i, j)] * c;
            }
        }
        BilinearForm { gram }
    }
}

pub enum FormKind<'a> {
    /// `tr(xy)` in the attached matrix realization.
    Trace,
    /// `tr(ad x ad y)`.
    Killing,
    /// `-½ tr(ad x ad y)`.
    KappaC,
    /// `-½ tr_{g_0}(ad x ad y)` on `g^e(0)`, zero elsewhere.
    KappaEc { ambient: &'a LieAlgebra, grading: &'a Grading, centralizer: &'a Subalgebra },
}

pub fn form(g: &LieAlgebra, kind: FormKind<'_>) -> Result<BilinearForm> {
    let n = g.dim();
    let mut gram = QMatrix::zeros(n, n);
    match kind {
        FormKind::Trace => {
            let mats = g.matrices().ok_or(Error::UndefinedInput("trace form needs a matrix realization"))?;
            for i in 0..n {
                for j in 0..n {
                    gram[(i, j)] = mats[i].mul(&mats[j]).trace();
                }
            }
        }
        FormKind::Killing | FormKind::KappaC => {
            let ads: Vec<QMatrix> = (0..n).map(|i| g.ad_matrix(&g.basis(i))).collect();
            let c = if matches!(kind, FormKind::KappaC) { frac(-1, 2) } else { q(1) };
            for i in 0..n {
                for j in 0..n {
                    gram[(i, j)] = &c * ads[i].mul(&ads[j]).trace();
                }
            }
        }
        FormKind::KappaEc { ambient, grading, centralizer } => {
            return kappa_ec(g, ambient, grading, centralizer);
        }
    }
    Ok(BilinearForm { gram })
}

fn kappa_ec(g: &LieAlgebra, ambient: &LieAlgebra, grading: &Grading, ge: &Subalgebra) -> Result<BilinearForm> {
    if ge.algebra.ctx() != g.ctx()
        || grading.degrees().len() != ambient.dim()
        || ge.inclusion.iter().any(|x| x.dim() != ambient.dim())
    {
        return Err(Error::ContextMismatch);
    }
    let g0 = grading.component(0);
    let mut degree_zero = Vec::with_capacity(ge.dim());
    for x in &ge.inclusion {
        let d = grading.degree_of(x).ok_or(Error::ContextMismatch)?;
        degree_zero.push(d == 0);
    }
    // ad x restricted to g_0, for x in g^e(0)
    let restricted: Vec<Option<QMatrix>> = ge
        .inclusion
        .iter()
        .zip(&degree_zero)
        .map(|(x, &zero)| {
            zero.then(|| {
                let ad = ambient.ad_matrix(x);
                let mut r = QMatrix::zeros(g0.len(), g0.len());
                for (a, &i) in g0.iter().enumerate() {
                    for (b, &j) in g0.iter().enumerate() {
                        r[(a, b)] = ad[(i, j)].clone();
                    }
                }
                r
            })
        })
        .collect();
    let n = ge.dim();
    let mut gram = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if let (Some(a), Some(b)) = (&restricted[i], &restricted[j]) {
                gram[(i, j)] = frac(-1, 2) * a.mul(b).trace();
            }
        }
    }
    Ok(BilinearForm { gram })
}

/// Minimum over `trials` seeded functionals of the coadjoint stabilizer
/// dimension. An upper bound for the index, sharp for generic samples.
pub fn index_estimate(g: &LieAlgebra, trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).map(|_| g.stabilizer_dim(&random_values(&mut rng, g.dim()))).min().unwrap_or(g.dim())
}

/// Everything attached to the minimal nilpotent `e = e_{n,n-1}` of `gl_n`.
#[derive(Clone, Debug)]
pub struct GlMinimal {
    pub n: usize,
    pub gl: LieAlgebra,
    pub sl2: Sl2Triple,
    pub grading: Grading,
    /// `g^e` in the basis `e_{ij}` (`i ≤ n-2`, `j ≤ n-1`, row-major),
    /// then `e_{n,j}`, then `I`.
    pub ge: Subalgebra,
    /// The level `κ_{e,c}` on `g^e`.
    pub kappa: BilinearForm,
}

impl GlMinimal {
    pub fn new(n: usize) -> Result<Self> {
        let gl = build_gl(n)?;
        let sl2 = minimal_sl2_in(&gl, n)?;
        let grading = good_grading_in(&gl, n)?;
        let ge = minimal_centralizer_in(&gl, n)?;
        let kappa = form(&ge.algebra, FormKind::KappaEc { ambient: &gl, grading: &grading, centralizer: &ge })?;
        Ok(GlMinimal { n, gl, sl2, grading, ge, kappa })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Index of `e_{ij}` in the `g^e` basis, if it is a basis element.
    pub fn ge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.ge.algebra.index_of(&gl_label(self.n, i, j))
    }

    pub fn identity_index(&self) -> usize {
        self.ge.dim() - 1
    }

    /// Index of `e` itself in the `g^e` basis.
    pub fn e_index(&self) -> usize {
        self.ge_index(self.n, self.n - 1).expect("e lies in g^e")
    }
}

/// `g^e` for `e = e_{n,n-1}` in the fixed basis order; the basis is
/// checked to span `ker(ad e)`.
pub fn minimal_centralizer(n: usize) -> Result<Subalgebra> {
    let gl = build_gl(n)?;
    minimal_centralizer_in(&gl, n)
}

fn minimal_centralizer_in(gl: &LieAlgebra, n: usize) -> Result<Subalgebra> {
    let d = gl.dim();
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        for j in 1..n {
            basis.push(LieElement::basis(d, gl_index(n, i, j)));
            labels.push(gl_label(n, i, j));
        }
    }
    for j in 1..n {
        basis.push(LieElement::basis(d, gl_index(n, n, j)));
        labels.push(gl_label(n, n, j));
    }
    basis.push(LieElement::from_pairs(d, (1..=n).map(|i| (gl_index(n, i, i), q(1)))));
    labels.push("I".to_string());
    let e = LieElement::basis(d, gl_index(n, n, n - 1));
    if basis.iter().any(|b| !gl.bracket(&e, b).is_zero()) {
        return Err(Error::NotClosed("basis element outside the centralizer".into()));
    }
    let kernel_dim = d - gl.ad_matrix(&e).rank();
    if kernel_dim != basis.len() {
        return Err(Error::NotClosed(format!("centralizer has dim {kernel_dim}, basis has {}", basis.len())));
    }
    Subalgebra::from_basis(gl, format!("gl_{n}^e"), basis, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &LieAlgebra, label: &str) -> LieElement {
        g.basis(g.index_of(label).unwrap())
    }

    #[test]
    fn gl_brackets() {
        let g2 = build_gl(2).unwrap();
        assert_eq!(g2.bracket(&el(&g2, "e11"), &el(&g2, "e12")), el(&g2, "e12"));
        let g3 = build_gl(3).unwrap();
        assert_eq!(g3.bracket(&el(&g3, "e12"), &el(&g3, "e31")), el(&g3, "e32").scale(&q(-1)));
        assert!(matches!(build_gl(1), Err(Error::UnsupportedRank(1))));
    }

    #[test]
    fn jacobi_failure_is_rejected() {
        // [a,b] = c, [a,c] = a, [b,c] = 0 violates Jacobi on (a,b,c)
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let r = LieAlgebra::new("bad", labels, [((0, 1), vec![(2, q(1))]), ((0, 2), vec![(0, q(1))])]);
        assert!(matches!(r, Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn antisymmetry_conflict_is_rejected() {
        let labels = vec!["a".into(), "b".into()];
        let r = LieAlgebra::new("bad", labels, [((0, 1), vec![(0, q(1))]), ((1, 0), vec![(0, q(1))])]);
        assert!(matches!(r, Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn centralizer_of_e32() {
        let g = build_gl(3).unwrap();
        let c = centralizer(&g, &el(&g, "e32")).unwrap();
        assert_eq!(c.dim(), 5);
        let fixed = minimal_centralizer(3).unwrap();
        assert_eq!(fixed.algebra.labels(), ["e11", "e12", "e31", "e32", "I"]);
        // both bases span the same subspace of gl_3
        let rows: Vec<Vec<Rational>> = c.inclusion.iter().chain(&fixed.inclusion).map(LieElement::to_dense).collect();
        assert_eq!(QMatrix::from_rows(rows).rank(), 5);
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let g = build_gl(3).unwrap();
        assert_eq!(centralizer(&g, &LieElement::zero(9)).unwrap().dim(), 9);
    }

    #[test]
    fn centralizer_dimensions() {
        for n in 2..=5 {
            assert_eq!(minimal_centralizer(n).unwrap().dim(), (n - 1) * (n - 1) + 1);
        }
    }

    #[test]
    fn sl2_triples() {
        let t = minimal_sl2_triple(3).unwrap();
        let g = build_gl(3).unwrap();
        assert_eq!(t.e, el(&g, "e32"));
        assert_eq!(t.f, el(&g, "e23"));
        assert_eq!(t.h, el(&g, "e33").sub(&el(&g, "e22")));
        let t4 = minimal_sl2_triple(4).unwrap();
        let g4 = build_gl(4).unwrap();
        assert_eq!(t4.h, el(&g4, "e44").sub(&el(&g4, "e33")));
        assert!(minimal_sl2_triple(2).is_ok());
        assert!(minimal_sl2_triple(1).is_err());
    }

    #[test]
    fn minimal_grading() {
        let g = build_gl(3).unwrap();
        let gr = good_grading_minimal(3).unwrap();
        assert_eq!(gr.degree(g.index_of("e31").unwrap()), 2);
        assert_eq!(gr.degree(g.index_of("e13").unwrap()), -2);
        assert_eq!(gr.degree(g.index_of("e12").unwrap()), 0);
        for &i in &gr.component(2) {
            for &j in &gr.component(2) {
                assert!(g.bracket_basis(i, j).is_zero());
            }
        }
    }

    #[test]
    fn centralizer_splits_into_degree_zero_and_two() {
        for n in [3, 4] {
            let m = GlMinimal::new(n).unwrap();
            let degs: Vec<i32> = m.ge.inclusion.iter().map(|x| m.grading.degree_of(x).unwrap()).collect();
            let g2 = degs.iter().filter(|&&d| d == 2).count();
            let g0 = degs.iter().filter(|&&d| d == 0).count();
            assert_eq!(g2, n - 1);
            assert_eq!(g0 + g2, m.ge.dim());
            assert_eq!(g2, m.grading.component(2).len());
        }
    }

    #[test]
    fn trace_form_values() {
        let g = build_gl(3).unwrap();
        let t = form(&g, FormKind::Trace).unwrap();
        let (a, b) = (g.index_of("e12").unwrap(), g.index_of("e21").unwrap());
        assert_eq!(*t.on_basis(a, b), q(1));
        assert_eq!(*t.on_basis(a, a), q(0));
        assert!(t.is_invariant(&g));
        assert!(form(&LieAlgebra::abelian(2), FormKind::Trace).is_err());
    }

    #[test]
    fn kappa_ec_values() {
        let m = GlMinimal::new(3).unwrap();
        let e31 = m.ge_index(3, 1).unwrap();
        for j in 0..m.ge.dim() {
            assert!(m.kappa.on_basis(e31, j).is_zero());
        }
        assert!(m.kappa.is_symmetric());
        assert!(m.kappa.is_invariant(&m.ge.algebra));
    }

    #[test]
    fn kappa_ec_of_e11_two_ways() {
        // Route 1: the form. Route 2: ad e11 is diagonal on g_0 = span{e_ij (i,j<=2), e33},
        // with eigenvalue δ_i1 − δ_j1 on e_ij; sum the squared eigenvalues.
        let m = GlMinimal::new(3).unwrap();
        let e11 = m.ge_index(1, 1).unwrap();
        let g0 = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)];
        let sum_sq: i64 = g0
            .iter()
            .map(|&(i, j)| {
                let ev = (i == 1) as i64 - (j == 1) as i64;
                ev * ev
            })
            .sum();
        assert_eq!(*m.kappa.on_basis(e11, e11), frac(-sum_sq, 2));
    }

    #[test]
    fn killing_form_of_gl_is_degenerate_on_center() {
        let g = build_gl(2).unwrap();
        let k = form(&g, FormKind::Killing).unwrap();
        let id = LieElement::from_pairs(4, [(0, q(1)), (3, q(1))]);
        for i in 0..4 {
            assert!(k.eval(&id, &g.basis(i)).is_zero());
        }
        let kc = form(&g, FormKind::KappaC).unwrap();
        assert_eq!(kc, k.scale(&frac(-1, 2)));
    }

    #[test]
    fn index_of_small_algebras() {
        assert_eq!(index_estimate(&LieAlgebra::abelian(4), 3, 1), 4);
        assert_eq!(index_estimate(&build_gl(3).unwrap(), 3, 1), 3);
    }
}
