//! Noncommutative rings, Ore extensions by a derivation, and column
//! determinants.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foundations::rational::binomial;
use crate::foundations::{q, Poly, Rational};
use crate::loopv::{translation_uea, InvLaurent, PbwAlgebra, Uea};
use crate::poisson_inv::permutation_sign;

/// Largest matrix accepted by [`cdet`]; the expansion has `n!` terms.
pub const CDET_LIMIT: usize = 6;

/// A ring whose elements need a context (structure constants) to multiply.
pub trait NcRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &q(-1)))
    }
}

/// A ring with a distinguished derivation `δ`.
pub trait DiffRing: NcRing {
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
}

/// Commutative polynomials; used for sanity checks of [`cdet`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PolyRing;

impl NcRing for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(Rational::one())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn scale(&self, a: &Poly, c: &Rational) -> Poly {
        a.scale(c)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// `U(q̂_-)` with the translation operator `T` as derivation.
#[derive(Clone, Copy, Debug)]
pub struct LoopRing<'a> {
    pub pbw: PbwAlgebra<'a>,
}

impl NcRing for LoopRing<'_> {
    type Elem = Uea;

    fn zero(&self) -> Uea {
        Uea::zero()
    }
    fn one(&self) -> Uea {
        Uea::one()
    }
    fn add(&self, a: &Uea, b: &Uea) -> Uea {
        a.add(b)
    }
    fn mul(&self, a: &Uea, b: &Uea) -> Uea {
        self.pbw.mul(a, b)
    }
    fn scale(&self, a: &Uea, c: &Rational) -> Uea {
        a.scale(c)
    }
    fn is_zero(&self, a: &Uea) -> bool {
        a.is_zero()
    }
}

impl DiffRing for LoopRing<'_> {
    fn derive(&self, a: &Uea) -> Uea {
        translation_uea(&self.pbw, a)
    }
}

/// Elements of `U(q) ⊗ ℂ[u^{-1}]`; `coeffs[p]` multiplies `u^{-p}`.
pub type LaurentUea = InvLaurent<Uea>;

/// `U(q)[u^{-1}]` with the derivation `-∂_u`, i.e. `u^{-p} ↦ p u^{-p-1}`.
#[derive(Clone, Copy, Debug)]
pub struct LaurentRing<'a> {
    pub pbw: PbwAlgebra<'a>,
}

fn laurent_insert(out: &mut LaurentUea, p: u32, x: &Uea, c: &Rational) {
    let slot = out.coeffs.entry(p).or_default();
    let sum = slot.add(&x.scale(c));
    if sum.is_zero() {
        out.coeffs.remove(&p);
    } else {
        *slot = sum;
    }
}

impl NcRing for LaurentRing<'_> {
    type Elem = LaurentUea;

    fn zero(&self) -> LaurentUea {
        InvLaurent::default()
    }
    fn one(&self) -> LaurentUea {
        InvLaurent { coeffs: BTreeMap::from([(0, Uea::one())]) }
    }
    fn add(&self, a: &LaurentUea, b: &LaurentUea) -> LaurentUea {
        let mut out = a.clone();
        for (&p, x) in &b.coeffs {
            laurent_insert(&mut out, p, x, &Rational::one());
        }
        out
    }
    fn mul(&self, a: &LaurentUea, b: &LaurentUea) -> LaurentUea {
        let mut out = self.zero();
        for (&p, x) in &a.coeffs {
            for (&r, y) in &b.coeffs {
                laurent_insert(&mut out, p + r, &self.pbw.mul(x, y), &Rational::one());
            }
        }
        out
    }
    fn scale(&self, a: &LaurentUea, c: &Rational) -> LaurentUea {
        if c.is_zero() {
            return self.zero();
        }
        InvLaurent { coeffs: a.coeffs.iter().map(|(&p, x)| (p, x.scale(c))).collect() }
    }
    fn is_zero(&self, a: &LaurentUea) -> bool {
        a.coeffs.is_empty()
    }
}

impl DiffRing for LaurentRing<'_> {
    fn derive(&self, a: &LaurentUea) -> LaurentUea {
        let mut out = self.zero();
        for (&p, x) in &a.coeffs {
            if p > 0 {
                laurent_insert(&mut out, p + 1, x, &q(p as i64));
            }
        }
        out
    }
}

/// `Σ_k c_k D^k` with `D` collected on the right, in the Ore extension
/// where `D c = c D + δ(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePoly<E> {
    pub coeffs: BTreeMap<u32, E>,
}

impl<E> Default for OrePoly<E> {
    fn default() -> Self {
        OrePoly { coeffs: BTreeMap::new() }
    }
}

impl<E> OrePoly<E> {
    pub fn coeff(&self, k: u32) -> Option<&E> {
        self.coeffs.get(&k)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }
}

/// `R[D; δ]` over a differential ring `R`.
#[derive(Clone, Copy, Debug)]
pub struct OreRing<R> {
    pub base: R,
}

impl<R: DiffRing> OreRing<R> {
    /// `c` as a polynomial of degree zero.
    pub fn constant(&self, c: R::Elem) -> OrePoly<R::Elem> {
        let mut out = OrePoly::default();
        if !self.base.is_zero(&c) {
            out.coeffs.insert(0, c);
        }
        out
    }

    /// `D^k`.
    pub fn d_power(&self, k: u32) -> OrePoly<R::Elem> {
        OrePoly { coeffs: BTreeMap::from([(k, self.base.one())]) }
    }

    fn insert(&self, out: &mut OrePoly<R::Elem>, k: u32, c: &R::Elem) {
        let sum = match out.coeffs.get(&k) {
            Some(prev) => self.base.add(prev, c),
            None => c.clone(),
        };
        if self.base.is_zero(&sum) {
            out.coeffs.remove(&k);
        } else {
            out.coeffs.insert(k, sum);
        }
    }
}

impl<R: DiffRing> NcRing for OreRing<R> {
    type Elem = OrePoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        OrePoly::default()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (&k, c) in &b.coeffs {
            self.insert(&mut out, k, c);
        }
        out
    }
    /// `(a D^k)(b D^l) = Σ_i C(k,i) a δ^i(b) D^{k-i+l}`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = OrePoly::default();
        let top = a.degree().unwrap_or(0);
        for (&l, cb) in &b.coeffs {
            let mut derivs = vec![cb.clone()];
            for i in 1..=top as usize {
                let next = self.base.derive(&derivs[i - 1]);
                derivs.push(next);
            }
            for (&k, ca) in &a.coeffs {
                for (i, d) in derivs.iter().enumerate().take(k as usize + 1) {
                    if self.base.is_zero(d) {
                        continue;
                    }
                    let term = self.base.scale(&self.base.mul(ca, d), &binomial(k, i as u32));
                    self.insert(&mut out, k - i as u32 + l, &term);
                }
            }
        }
        out
    }
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
        let mut out = OrePoly::default();
        for (&k, x) in &a.coeffs {
            self.insert(&mut out, k, &self.base.scale(x, c));
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }
}

/// A square matrix over some ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMatrix<E> {
    entries: Vec<Vec<E>>,
}

impl<E> NCMatrix<E> {
    pub fn from_rows(entries: Vec<Vec<E>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::UndefinedInput("matrix must be square"));
        }
        Ok(NCMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.entries
    }

    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> NCMatrix<F> {
        NCMatrix { entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

/// `Σ_σ sgn(σ) a_{σ(1)1} ⋯ a_{σ(n)n}`, products taken left to right.
pub fn cdet<R: NcRing>(ring: &R, m: &NCMatrix<R::Elem>) -> Result<R::Elem> {
    let n = m.size();
    if n > CDET_LIMIT {
        return Err(Error::SizeLimit { size: n, limit: CDET_LIMIT });
    }
    let mut out = ring.zero();
    for perm in itertools::Itertools::permutations(0..n, n) {
        let mut term = ring.one();
        for (col, &row) in perm.iter().enumerate() {
            term = ring.mul(&term, m.get(row, col));
            if ring.is_zero(&term) {
                break;
            }
        }
        if !ring.is_zero(&term) {
            out = ring.add(&out, &ring.scale(&term, &q(permutation_sign(&perm))));
        }
    }
    Ok(out)
}
