//! Sparse commutative polynomials over ℚ whose variables are loop
//! generators `x_{(-m)}`; depth-1 variables alone give `S(q)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, q, Rational};
use crate::error::{Error, Result};

/// A variable `x_{(-depth)}` where `x` is the basis element `generator`.
///
/// Field order makes the derived ordering depth-major, then by generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub depth: u32,
    pub generator: usize,
}

impl VarId {
    pub fn new(generator: usize, depth: u32) -> Self {
        assert!(depth >= 1, "loop variables have depth >= 1");
        VarId { depth, generator }
    }

    /// Depth-1 variable, i.e. `x t^{-1}`, which is how `S(q)` sits inside `S(q̂_-)`.
    pub fn linear(generator: usize) -> Self {
        VarId::new(generator, 1)
    }
}

/// Exponent vector stored as sorted `(variable, exponent)` pairs, exponents > 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut acc: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Commutative image of a word of variables.
    pub fn from_word(word: &[VarId]) -> Self {
        Monomial::from_pairs(word.iter().map(|&v| (v, 1)))
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Σ depth·exponent.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&(v, e)| v.depth * e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Divides out one power of `v`; `None` if `v` does not occur.
    fn lower(&self, v: VarId) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some((e, Monomial(out)))
    }
}

/// Identifies the Lie algebra a polynomial's variables refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx(pub u64);

fn join_ctx(a: Option<Ctx>, b: Option<Ctx>) -> Result<Option<Ctx>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::ContextMismatch),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

/// A rational point, i.e. an assignment of values to variables.
pub type Point = BTreeMap<VarId, Rational>;

/// Sparse polynomial in canonical form: no zero coefficients, monomials
/// kept in a `BTreeMap` so iteration order is the canonical term order.
///
/// A polynomial without a context (`ctx == None`) is compatible with any
/// context; constants built with [`Poly::constant`] are like that.
/// Arithmetic operators panic on a context mismatch; the `checked_*`
/// methods report it as [`Error::ContextMismatch`].
#[derive(Clone, Debug, Default)]
pub struct Poly {
    ctx: Option<Ctx>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        join_ctx(self.ctx, other.ctx).is_ok() && self.terms == other.terms
    }
}

impl Eq for Poly {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// `a op b` with the context check surfaced as an error.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_terms(None, [(Monomial::one(), c)])
    }

    pub fn var(ctx: Option<Ctx>, v: VarId) -> Self {
        Poly::from_terms(ctx, [(Monomial::var(v), Rational::one())])
    }

    pub fn from_terms(ctx: Option<Ctx>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Poly { ctx, terms: BTreeMap::new() };
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn with_ctx(mut self, ctx: Option<Ctx>) -> Self {
        self.ctx = ctx;
        self
    }

    pub fn ctx(&self) -> Option<Ctx> {
        self.ctx
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn max_depth(&self) -> u32 {
        self.variables().iter().map(|v| v.depth).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        let mut out = Poly { ctx: join_ctx(self.ctx, other.ctx)?, terms: self.terms.clone() };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        let mut out = Poly { ctx: join_ctx(self.ctx, other.ctx)?, terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly { ctx: self.ctx, terms: BTreeMap::new() };
        }
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(Rational::one()).with_ctx(self.ctx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    pub fn weight_component(&self, w: u32) -> Poly {
        self.filter(|m| m.weight() == w)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Sum of the terms of minimal total degree.
    pub fn min_degree_component(&self) -> Result<Poly> {
        let d = self.min_degree().ok_or(Error::UndefinedInput("minimal degree component of 0"))?;
        Ok(self.homogeneous_component(d))
    }

    pub fn partial_derivative(&self, v: VarId) -> Poly {
        let mut out = Poly { ctx: self.ctx, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * q(e as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x =
                    point.get(&v).ok_or_else(|| Error::MissingAssignment(format!("{}@{}", v.generator, v.depth)))?;
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Ring homomorphism determined by the images of the variables.
    /// The result takes the context of the images.
    pub fn substitute(&self, mut image: impl FnMut(VarId) -> Poly) -> Poly {
        let mut powers: HashMap<VarId, Vec<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let cache = powers.entry(v).or_insert_with(|| {
                    let base = image(v);
                    vec![Poly::constant(Rational::one()).with_ctx(base.ctx), base]
                });
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Formats the polynomial with a label for each generator index.
    pub fn display_with<'a>(&'a self, label: &'a dyn Fn(usize) -> String) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, label }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    label: &'a dyn Fn(usize) -> String,
}

pub(crate) fn fmt_var(label: &dyn Fn(usize) -> String, v: VarId) -> String {
    if v.depth == 1 {
        label(v.generator)
    } else {
        format!("({})_{{(-{})}}", label(v.generator), v.depth)
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let (neg, abs) = rational::sign_and_abs(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(v, e)| {
                    let s = fmt_var(self.label, v);
                    if e == 1 {
                        s
                    } else {
                        format!("{s}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", rational::to_string(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", rational::to_string(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(None, VarId::linear(0))
    }
    fn y() -> Poly {
        Poly::var(None, VarId::linear(1))
    }
    fn label(i: usize) -> String {
        ["x", "y", "z"][i].to_string()
    }

    #[test]
    fn cancellation_and_annihilator() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&q(2)));
        assert!((&x() * &Poly::zero()).is_zero());
    }

    #[test]
    fn binomial_square() {
        let s = (&x() + &y()).pow(2);
        assert_eq!(s.len(), 3);
        assert_eq!(s.display_with(&label).to_string(), "2*x*y + x^2 + y^2");
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = x().with_ctx(Some(Ctx(1)));
        let b = y().with_ctx(Some(Ctx(2)));
        assert_eq!(poly_arith(&a, &b, PolyOp::Add), Err(Error::ContextMismatch));
        assert_eq!(poly_arith(&a, &b, PolyOp::Mul), Err(Error::ContextMismatch));
        // context-free constants mix with anything
        assert!(poly_arith(&a, &Poly::constant(q(3)), PolyOp::Mul).is_ok());
    }

    #[test]
    fn derivatives() {
        let p = &x().pow(2) * &y();
        assert_eq!(p.partial_derivative(VarId::linear(0)), (&x() * &y()).scale(&q(2)));
        assert!(y().pow(3).partial_derivative(VarId::linear(0)).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = &x().pow(2) * &y();
        let pt: Point = [(VarId::linear(0), q(2)), (VarId::linear(1), q(3))].into();
        assert_eq!(p.evaluate(&pt).unwrap(), q(12));
        let p = &p + &Poly::constant(q(5));
        let zero: Point = [(VarId::linear(0), q(0)), (VarId::linear(1), q(0))].into();
        assert_eq!(p.evaluate(&zero).unwrap(), q(5));
        let partial: Point = [(VarId::linear(0), q(1))].into();
        assert!(matches!(p.evaluate(&partial), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn minimal_degree_component() {
        let p = &x().scale(&q(3)) + &(&x().pow(2) * &y());
        assert_eq!(p.min_degree_component().unwrap(), x().scale(&q(3)));
        let h = &x() * &y();
        assert_eq!(h.min_degree_component().unwrap(), h);
        assert!(Poly::zero().min_degree_component().is_err());
    }

    #[test]
    fn degree_and_weight() {
        let deep = Poly::var(None, VarId::new(0, 3));
        let p = &deep * &x();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.max_weight(), Some(4));
        assert_eq!(p.display_with(&label).to_string(), "x*(x)_{(-3)}");
    }
}
