//! PBW-ordered enveloping algebras: `U(q̂_-)` with letters `x_{(-m)}`, and
//! `U(q)` with all letters of depth 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::foundations::poly::fmt_var;
use crate::foundations::rational::{self, q, Rational};
use crate::foundations::{Monomial, Poly, VarId};
use crate::liealg::LieAlgebra;

/// Loop generator `x_{(-m)} = x t^{-m}`; same ordering as [`VarId`]
/// (depth-major, then basis index).
pub type LoopGen = VarId;

pub type Word = Vec<LoopGen>;

/// Rational combination of words. Elements produced by [`PbwAlgebra`]
/// hold nondecreasing words only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Uea {
    terms: BTreeMap<Word, Rational>,
}

impl Uea {
    pub fn zero() -> Self {
        Uea::default()
    }

    /// The unit, i.e. the vacuum vector 𝕀 on the vertex-algebra side.
    pub fn one() -> Self {
        Uea::monomial(Vec::new(), Rational::one())
    }

    /// A single word taken as is; the caller guarantees it is ordered.
    pub(crate) fn monomial(word: Word, c: Rational) -> Self {
        let mut u = Uea::zero();
        u.add_term(word, c);
        u
    }

    /// Raw combination of words; words are not reordered, so the result
    /// may need [`PbwAlgebra::normalize`].
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = Uea::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn scalar(c: Rational) -> Self {
        Uea::monomial(Vec::new(), c)
    }

    pub(crate) fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
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

    pub fn coefficient(&self, word: &[LoopGen]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Uea) -> Uea {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Uea) -> Uea {
        let mut out = self.clone();
        out.add_assign_scaled(other, &q(-1));
        out
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &Uea, c: &Rational) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Uea {
        let mut out = Uea::zero();
        out.add_assign_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Uea {
        self.scale(&q(-1))
    }

    /// Largest word weight (sum of depths); `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|w| word_weight(w)).max()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|w| word_weight(w));
        match ws.next() {
            Some(first) => ws.all(|w| w == first),
            None => true,
        }
    }

    pub fn weight_component(&self, w: u32) -> Uea {
        self.filter(|word| word_weight(word) == w)
    }

    pub fn len_component(&self, len: usize) -> Uea {
        self.filter(|word| word.len() == len)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> Uea {
        Uea { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(|w| word_weight(w)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn display_with<'a>(&'a self, label: &'a dyn Fn(usize) -> String, style: LetterStyle) -> UeaDisplay<'a> {
        UeaDisplay { u: self, label, style }
    }
}

pub fn word_weight(w: &[LoopGen]) -> u32 {
    w.iter().map(|g| g.depth).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterStyle {
    /// `(e32)_{(-1)}(e11)_{(-2)}`
    Loop,
    /// `e32*e11`
    Finite,
}

pub struct UeaDisplay<'a> {
    u: &'a Uea,
    label: &'a dyn Fn(usize) -> String,
    style: LetterStyle,
}

impl fmt::Display for UeaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.u.terms.iter().enumerate() {
            let (neg, abs) = rational::sign_and_abs(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let letters: Vec<String> = w
                .iter()
                .map(|&g| match self.style {
                    LetterStyle::Loop => format!("({})_{{(-{})}}", (self.label)(g.generator), g.depth),
                    LetterStyle::Finite => fmt_var(self.label, g),
                })
                .collect();
            let sep = if self.style == LetterStyle::Finite { "*" } else { "" };
            let coeff = rational::to_string(&abs);
            match (letters.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", letters.join(sep))?,
                (false, false) if self.style == LetterStyle::Finite => write!(f, "{coeff}*{}", letters.join(sep))?,
                (false, false) => write!(f, "{coeff}{}", letters.join(sep))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwKind {
    /// `U(q̂_-)`: `[x_{(-a)}, y_{(-b)}] = [x,y]_{(-a-b)}`.
    Loop,
    /// `U(q)`: every letter has depth 1 and brackets stay in depth 1.
    Finite,
}

/// Multiplication and normal ordering in an enveloping algebra over a
/// structure-constant Lie algebra.
#[derive(Clone, Copy, Debug)]
pub struct PbwAlgebra<'a> {
    lie: &'a LieAlgebra,
    kind: PbwKind,
}

impl<'a> PbwAlgebra<'a> {
    pub fn new(lie: &'a LieAlgebra, kind: PbwKind) -> Self {
        PbwAlgebra { lie, kind }
    }

    pub fn lie(&self) -> &'a LieAlgebra {
        self.lie
    }

    pub fn kind(&self) -> PbwKind {
        self.kind
    }

    pub fn letter(&self, generator: usize, depth: u32) -> Uea {
        assert!(generator < self.lie.dim());
        assert!(self.kind == PbwKind::Loop || depth == 1, "finite enveloping algebra has depth-1 letters only");
        Uea::monomial(vec![VarId::new(generator, depth)], Rational::one())
    }

    /// `[a, b]` for single letters, as a combination of letters.
    pub fn letter_bracket(&self, a: LoopGen, b: LoopGen) -> Vec<(LoopGen, Rational)> {
        let depth = match self.kind {
            PbwKind::Loop => a.depth + b.depth,
            PbwKind::Finite => 1,
        };
        self.lie
            .bracket_basis(a.generator, b.generator)
            .iter()
            .map(|(k, c)| (VarId::new(k, depth), c.clone()))
            .collect()
    }

    /// Normal form of `coeff · word` for an arbitrary word.
    pub fn normal_form(&self, word: &[LoopGen], coeff: Rational) -> Uea {
        let mut cur = Uea::scalar(coeff);
        for &g in word {
            cur = self.mul_letter(&cur, g);
        }
        cur
    }

    /// Normalizes every word of a possibly unordered combination.
    pub fn normalize(&self, u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (w, c) in u.terms() {
            out.add_assign_scaled(&self.normal_form(w, c.clone()), &Rational::one());
        }
        out
    }

    /// Normal form by repeatedly swapping a randomly chosen adjacent
    /// inversion `… l g …` into `… g l … + … [l,g] …`. Independent of the
    /// choices made, which is what the confluence checks exercise.
    pub fn normal_form_randomized<R: Rng>(&self, word: &[LoopGen], coeff: Rational, rng: &mut R) -> Uea {
        let mut out = Uea::zero();
        let mut pending = vec![(word.to_vec(), coeff)];
        while let Some((w, c)) = pending.pop() {
            if c.is_zero() {
                continue;
            }
            let inversions: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
            if inversions.is_empty() {
                out.add_term(w, c);
                continue;
            }
            let i = inversions[rng.gen_range(0..inversions.len())];
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            pending.push((swapped, c.clone()));
            for (h, ch) in self.letter_bracket(w[i], w[i + 1]) {
                let mut shorter = w[..i].to_vec();
                shorter.push(h);
                shorter.extend_from_slice(&w[i + 2..]);
                pending.push((shorter, &c * ch));
            }
        }
        out
    }

    fn mul_letter(&self, a: &Uea, g: LoopGen) -> Uea {
        let mut out = Uea::zero();
        for (w, c) in a.terms() {
            self.push_letter(w, g, c.clone(), &mut out);
        }
        out
    }

    /// Adds `c · w · g` in normal form to `out`, for an ordered word `w`.
    fn push_letter(&self, w: &[LoopGen], g: LoopGen, c: Rational, out: &mut Uea) {
        match w.last() {
            Some(&l) if l > g => {
                // w' l g = (w' g) l + w' [l, g]
                let prefix = &w[..w.len() - 1];
                let mut head = Uea::zero();
                self.push_letter(prefix, g, c.clone(), &mut head);
                for (u, cu) in head.terms() {
                    self.push_letter(u, l, cu.clone(), out);
                }
                for (h, ch) in self.letter_bracket(l, g) {
                    self.push_letter(prefix, h, &c * ch, out);
                }
            }
            _ => {
                let mut word = w.to_vec();
                word.push(g);
                out.add_term(word, c);
            }
        }
    }

    pub fn mul(&self, a: &Uea, b: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (wb, cb) in b.terms() {
            let mut cur = a.scale(cb);
            for &g in wb {
                cur = self.mul_letter(&cur, g);
            }
            out.add_assign_scaled(&cur, &Rational::one());
        }
        out
    }

    pub fn commutator(&self, a: &Uea, b: &Uea) -> Uea {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Commutative image of the maximal word-length part.
    pub fn top_symbol(&self, a: &Uea) -> Poly {
        let ctx = Some(self.lie.ctx());
        let Some(len) = a.max_len() else {
            return Poly::zero().with_ctx(ctx);
        };
        Poly::from_terms(ctx, a.len_component(len).terms().map(|(w, c)| (Monomial::from_word(w), c.clone())))
    }

    pub fn display(&self, u: &'a Uea) -> String {
        let label = |i: usize| self.lie.label(i);
        let style = match self.kind {
            PbwKind::Loop => LetterStyle::Loop,
            PbwKind::Finite => LetterStyle::Finite,
        };
        u.display_with(&label, style).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::minimal_centralizer;

    #[test]
    fn ordered_word_is_fixed() {
        let ge = minimal_centralizer(3).unwrap().algebra;
        let p = PbwAlgebra::new(&ge, PbwKind::Loop);
        let w = vec![VarId::new(0, 1), VarId::new(3, 1), VarId::new(1, 2)];
        assert_eq!(p.normal_form(&w, q(2)), Uea::monomial(w, q(2)));
    }

    #[test]
    fn randomized_order_agrees() {
        use rand::SeedableRng;
        let ge = minimal_centralizer(3).unwrap().algebra;
        let p = PbwAlgebra::new(&ge, PbwKind::Loop);
        let w = vec![VarId::new(3, 1), VarId::new(2, 2), VarId::new(1, 1), VarId::new(0, 1)];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            assert_eq!(p.normal_form_randomized(&w, q(3), &mut rng), p.normal_form(&w, q(3)));
        }
    }

    #[test]
    fn single_swap_adds_depths() {
        // e31 e12 = e12 e31 + [e31, e12]_{(-2)} = e12 e31 + (e32)_{(-2)}
        let ge = minimal_centralizer(3).unwrap().algebra;
        let (e12, e31, e32) = (1, 2, 3);
        let p = PbwAlgebra::new(&ge, PbwKind::Loop);
        let got = p.normal_form(&[VarId::new(e31, 1), VarId::new(e12, 1)], q(1));
        let mut want = Uea::monomial(vec![VarId::new(e12, 1), VarId::new(e31, 1)], q(1));
        want.add_term(vec![VarId::new(e32, 2)], q(1));
        assert_eq!(got, want);
        assert_eq!(p.display(&got), "(e12)_{(-1)}(e31)_{(-1)} + (e32)_{(-2)}");
        // the negated product carries −(e32)_{(-2)}
        assert_eq!(p.display(&got.neg()), "-(e12)_{(-1)}(e31)_{(-1)} - (e32)_{(-2)}");
    }

    #[test]
    fn finite_kind_keeps_depth_one() {
        let ge = minimal_centralizer(3).unwrap().algebra;
        let p = PbwAlgebra::new(&ge, PbwKind::Finite);
        let got = p.commutator(&p.letter(2, 1), &p.letter(1, 1));
        assert_eq!(got, p.letter(3, 1));
        assert_eq!(p.display(&p.mul(&p.letter(2, 1), &p.letter(1, 1))), "e12*e31 + e32");
    }

    #[test]
    fn top_symbol_takes_longest_words() {
        let ge = minimal_centralizer(3).unwrap().algebra;
        let p = PbwAlgebra::new(&ge, PbwKind::Loop);
        let x = p.normal_form(&[VarId::new(2, 1), VarId::new(1, 1)], q(1));
        let s = p.top_symbol(&x);
        assert_eq!(s.len(), 1);
        assert_eq!(s.degree(), Some(2));
    }
}
