//! The loop side: `U(q̂_-)` and the vacuum module, the translation
//! operator `T`, the weight grading, Li-filtration symbols, the classical
//! `q̂_+`-action on `S(q̂_-)` and the shift homomorphism `Φ̄_χ`.

pub mod pbw;
pub mod vacuum;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use pbw::{word_weight, LetterStyle, LoopGen, PbwAlgebra, PbwKind, Uea, Word};
pub use vacuum::VacuumModule;

use crate::foundations::{q, Monomial, Poly, Rational, VarId};
use crate::liealg::LieAlgebra;
use crate::mfshift::Functional;

/// `T x_{(-m)} = m x_{(-m-1)}` on a letter.
fn shift_letter(g: LoopGen) -> (LoopGen, Rational) {
    (VarId::new(g.generator, g.depth + 1), q(g.depth as i64))
}

/// `T` on `U(q̂_-)`: the derivation extending the rule on letters.
pub fn translation_uea(pbw: &PbwAlgebra<'_>, a: &Uea) -> Uea {
    assert_eq!(pbw.kind(), PbwKind::Loop);
    let mut out = Uea::zero();
    for (w, c) in a.terms() {
        for i in 0..w.len() {
            let (g, m) = shift_letter(w[i]);
            let mut word = w.clone();
            word[i] = g;
            out.add_assign_scaled(&pbw.normal_form(&word, c * m), &Rational::one());
        }
    }
    out
}

/// `T` on `S(q̂_-)`.
pub fn translation_poly(p: &Poly) -> Poly {
    let mut out = Poly::zero().with_ctx(p.ctx());
    for v in p.variables() {
        let (g, m) = shift_letter(v);
        let image = Poly::var(p.ctx(), g).scale(&m);
        out = &out + &(&p.partial_derivative(v) * &image);
    }
    out
}

/// Symbol in `gr V ≅ S(q̂_-)`: on each weight component, the commutative
/// image of its longest PBW words.
pub fn li_symbol(pbw: &PbwAlgebra<'_>, v: &Uea) -> Poly {
    let mut out = Poly::zero().with_ctx(Some(pbw.lie().ctx()));
    for w in v.weights() {
        out = &out + &pbw.top_symbol(&v.weight_component(w));
    }
    out
}

/// Action of `x t^n` (`n ≥ 0`) on `S(q̂_-)` by derivations, through
/// `q̂_- ≅ q̂/q̂_+`: `x t^n · y_{(-m)} = [x,y]_{(n-m)}` if `n < m`, else 0.
pub fn classical_action(lie: &LieAlgebra, x: usize, n: u32, p: &Poly) -> Poly {
    let ctx = Some(lie.ctx());
    let mut out = Poly::zero().with_ctx(ctx);
    for v in p.variables() {
        if n >= v.depth {
            continue;
        }
        let br = lie.bracket_basis(x, v.generator);
        if br.is_zero() {
            continue;
        }
        let image =
            Poly::from_terms(ctx, br.iter().map(|(z, c)| (Monomial::var(VarId::new(z, v.depth - n)), c.clone())));
        out = &out + &(&p.partial_derivative(v) * &image);
    }
    out
}

/// A Laurent polynomial in `u^{-1}` with coefficients of type `C`:
/// `coeffs[k]` is the coefficient of `u^{-k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvLaurent<C> {
    pub coeffs: BTreeMap<u32, C>,
}

impl<C> InvLaurent<C> {
    pub fn coeff(&self, k: u32) -> Option<&C> {
        self.coeffs.get(&k)
    }
}

/// `Φ̄_χ(P, u) ∈ S(q)[u^{-1}]`, the ring homomorphism with
/// `x_{(-m)} ↦ u^{-m} x + δ_{m,1} χ(x)`.
pub fn phi_bar(p: &Poly, chi: &Functional) -> InvLaurent<Poly> {
    let ctx = p.ctx();
    let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
    for (mono, c) in p.terms() {
        // expand the product of the images of the factors
        let mut acc: BTreeMap<u32, Poly> = BTreeMap::from([(0, Poly::constant(c.clone()).with_ctx(ctx))]);
        for &(v, e) in mono.pairs() {
            let mut image: BTreeMap<u32, Poly> = BTreeMap::new();
            image.insert(v.depth, Poly::var(ctx, VarId::linear(v.generator)));
            if v.depth == 1 {
                let val = chi.value(v.generator).clone();
                if !val.is_zero() {
                    image.insert(0, Poly::constant(val));
                }
            }
            for _ in 0..e {
                let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
                for (ka, pa) in &acc {
                    for (kb, pb) in &image {
                        let t = pa * pb;
                        let slot = next.entry(ka + kb).or_default();
                        *slot = &*slot + &t;
                    }
                }
                acc = next;
            }
        }
        for (k, pk) in acc {
            let slot = out.entry(k).or_default();
            *slot = &*slot + &pk;
        }
    }
    out.retain(|_, p| !p.is_zero());
    InvLaurent { coeffs: out }
}

/// Coefficient of `u^{-n}` in `Φ̄_χ(P, u)`.
pub fn phi_bar_coeff(p: &Poly, chi: &Functional, n: u32) -> Poly {
    phi_bar(p, chi).coeffs.remove(&n).unwrap_or_else(|| Poly::zero().with_ctx(p.ctx()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::GlMinimal;

    #[test]
    fn translation_on_letters_and_vacuum() {
        let m = GlMinimal::new(3).unwrap();
        let p = PbwAlgebra::new(&m.ge.algebra, PbwKind::Loop);
        assert_eq!(translation_uea(&p, &p.letter(0, 1)), p.letter(0, 2));
        assert!(translation_uea(&p, &Uea::one()).is_zero());
        // T(x_{(-1)} y_{(-1)}) = x_{(-2)} y_{(-1)} + x_{(-1)} y_{(-2)}; e11 and e32 commute
        let xy = p.mul(&p.letter(0, 1), &p.letter(3, 1));
        let want = p.mul(&p.letter(0, 2), &p.letter(3, 1)).add(&p.mul(&p.letter(0, 1), &p.letter(3, 2)));
        assert_eq!(translation_uea(&p, &xy), want);
    }

    #[test]
    fn symbols() {
        let m = GlMinimal::new(3).unwrap();
        let p = PbwAlgebra::new(&m.ge.algebra, PbwKind::Loop);
        let s = li_symbol(&p, &p.letter(2, 2));
        assert_eq!(s, Poly::var(Some(m.ge.algebra.ctx()), VarId::new(2, 2)));
    }

    #[test]
    fn classical_action_truncates() {
        let m = GlMinimal::new(3).unwrap();
        let g = &m.ge.algebra;
        let y = Poly::var(Some(g.ctx()), VarId::linear(1));
        assert!(classical_action(g, 0, 2, &y).is_zero());
        // n = 0 on depth 1 is the adjoint action: e11 · e12 = e12
        assert_eq!(classical_action(g, 0, 0, &y), y);
    }

    #[test]
    fn phi_bar_on_generators() {
        let m = GlMinimal::new(3).unwrap();
        let chi = Functional::new(&m.ge.algebra, (1..=5).map(q).collect()).unwrap();
        let ctx = Some(m.ge.algebra.ctx());
        let x1 = Poly::var(ctx, VarId::linear(3));
        let got = phi_bar(&x1, &chi);
        assert_eq!(got.coeff(1), Some(&x1));
        assert_eq!(got.coeff(0), Some(&Poly::constant(q(4))));
        let x2 = Poly::var(ctx, VarId::new(3, 2));
        assert_eq!(phi_bar(&x2, &chi).coeffs.len(), 1);
        assert_eq!(phi_bar_coeff(&x2, &chi, 2), x1);
    }
}
