//! Column determinants of `Z` and `A`: the central elements `Q_i` of the
//! vacuum module, the images `A_i = Φ_χ(Q_i)` and the commutative
//! subalgebra `A_{e,χ} ⊂ U(g^e)` generated by `I` and the `A_i^{(j)}`.
//!
//! `τ` acts on loop letters by `[τ, x_{(-m)}] = m x_{(-m-1)}`, i.e. as the
//! translation operator `T`. This is the only rule under which `τ ↦ -∂_u`
//! extends `Φ_χ` to a homomorphism, which is what makes the two routes to
//! `A_i` (determinant first, or `Φ_χ` first) agree.

pub mod ncring;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

pub use ncring::{
    cdet, DiffRing, LaurentRing, LaurentUea, LoopRing, NCMatrix, NcRing, OrePoly, OreRing, PolyRing, CDET_LIMIT,
};

use crate::error::{Error, Result};
use crate::foundations::{span_rank, Monomial, Poly, Rational, VarId};
use crate::liealg::GlMinimal;
use crate::loopv::{li_symbol, phi_bar_coeff, InvLaurent, LetterStyle, PbwAlgebra, PbwKind, Uea};
use crate::mfshift::{chi_regular, mf_generators, Functional};
use crate::poisson_inv::minimal_e_family;

/// Polynomials in `τ` over `U(q̂_-)`, `τ` collected on the right.
pub type TauPoly = OrePoly<Uea>;
/// Polynomials in `-∂_u` over `U(q)[u^{-1}]`, collected on the right.
pub type DuPoly = OrePoly<LaurentUea>;

pub fn loop_pbw(m: &GlMinimal) -> PbwAlgebra<'_> {
    PbwAlgebra::new(&m.ge.algebra, PbwKind::Loop)
}

pub fn finite_pbw(m: &GlMinimal) -> PbwAlgebra<'_> {
    PbwAlgebra::new(&m.ge.algebra, PbwKind::Finite)
}

pub fn tau_ring(m: &GlMinimal) -> OreRing<LoopRing<'_>> {
    OreRing { base: LoopRing { pbw: loop_pbw(m) } }
}

pub fn du_ring(m: &GlMinimal) -> OreRing<LaurentRing<'_>> {
    OreRing { base: LaurentRing { pbw: finite_pbw(m) } }
}

/// Rows `{1..n} \ {n-1}` and columns `1..n-1` of `τ + E_{(-1)}`, as
/// `(row, column)` label pairs.
fn z_positions(n: usize) -> Vec<Vec<(usize, usize)>> {
    (1..=n).filter(|&r| r != n - 1).map(|r| (1..n).map(|c| (r, c)).collect()).collect()
}

/// `Z`: `τ + E_{(-1)}` without its `(n-1)`-th row and `n`-th column. Every
/// entry is checked to lie in `ĝ^e_- ⊕ ℂτ`.
pub fn build_z(m: &GlMinimal) -> Result<NCMatrix<TauPoly>> {
    let ring = tau_ring(m);
    let pbw = loop_pbw(m);
    let rows = z_positions(m.n)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(r, c)| {
                    let k = m
                        .ge_index(r, c)
                        .ok_or_else(|| Error::NotClosed(format!("e{r}{c} is not in the centralizer")))?;
                    let mut entry = ring.constant(pbw.letter(k, 1));
                    if r == c {
                        entry = ring.add(&entry, &ring.d_power(1));
                    }
                    Ok(entry)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NCMatrix::from_rows(rows)
}

/// `cdet(Z)` in right-collected form.
pub fn cdet_z(m: &GlMinimal) -> Result<TauPoly> {
    cdet(&tau_ring(m), &build_z(m)?)
}

/// `Q_1, …, Q_{n-1}` with `cdet(Z) = Q_1 τ^{n-2} + … + Q_{n-1}`.
pub fn extract_q(m: &GlMinimal) -> Result<Vec<Uea>> {
    let z = cdet_z(m)?;
    let n = m.n as u32;
    if z.degree().is_some_and(|d| d > n - 2) {
        return Err(Error::UndefinedInput("cdet(Z) has τ-degree above n-2"));
    }
    Ok((1..n).map(|i| z.coeff(n - 1 - i).cloned().unwrap_or_default()).collect())
}

fn check_chi(m: &GlMinimal, chi: &Functional) -> Result<()> {
    if chi.ctx() != m.ge.algebra.ctx() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `Φ_χ(x_{(-k)}) = u^{-k} x + δ_{k,1} χ(x)`.
fn phi_letter(pbw: &PbwAlgebra<'_>, g: VarId, chi: &Functional) -> LaurentUea {
    let mut coeffs = BTreeMap::from([(g.depth, pbw.letter(g.generator, 1))]);
    if g.depth == 1 && !chi.value(g.generator).is_zero() {
        coeffs.insert(0, Uea::scalar(chi.value(g.generator).clone()));
    }
    InvLaurent { coeffs }
}

/// `Φ_χ(a, u) ∈ U(q)[u^{-1}]`, applied word by word and multiplied out in
/// `U(q)`.
pub fn phi_chi(m: &GlMinimal, a: &Uea, chi: &Functional) -> Result<LaurentUea> {
    check_chi(m, chi)?;
    let ring = LaurentRing { pbw: finite_pbw(m) };
    let mut out = ring.zero();
    for (w, c) in a.terms() {
        let mut term = ring.scale(&ring.one(), c);
        for &g in w {
            term = ring.mul(&term, &phi_letter(&ring.pbw, g, chi));
        }
        out = ring.add(&out, &term);
    }
    Ok(out)
}

/// `Φ_{χ,k}(a)`, the coefficient of `u^{-k}`.
pub fn phi_chi_coeff(m: &GlMinimal, a: &Uea, chi: &Functional, k: u32) -> Result<Uea> {
    Ok(phi_chi(m, a, chi)?.coeffs.remove(&k).unwrap_or_default())
}

/// `Φ_χ` on coefficients and `τ ↦ -∂_u`.
pub fn phi_tau(m: &GlMinimal, p: &TauPoly, chi: &Functional) -> Result<DuPoly> {
    check_chi(m, chi)?;
    let dst = du_ring(m);
    let mut out = dst.zero();
    for (&k, c) in &p.coeffs {
        let term = dst.mul(&dst.constant(phi_chi(m, c, chi)?), &dst.d_power(k));
        out = dst.add(&out, &term);
    }
    Ok(out)
}

/// `A`: `Z` with `(e_{ij})_{(-1)} ↦ u^{-1} e_{ij} + χ_{ij}` and `τ ↦ -∂_u`,
/// built entrywise from the labels (not through [`phi_tau`]).
pub fn build_a(m: &GlMinimal, chi: &Functional) -> Result<NCMatrix<DuPoly>> {
    check_chi(m, chi)?;
    let ring = du_ring(m);
    let pbw = finite_pbw(m);
    let rows = z_positions(m.n)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(r, c)| {
                    let k = m
                        .ge_index(r, c)
                        .ok_or_else(|| Error::NotClosed(format!("e{r}{c} is not in the centralizer")))?;
                    let mut entry = ring.constant(phi_letter(&pbw, VarId::linear(k), chi));
                    if r == c {
                        entry = ring.add(&entry, &ring.d_power(1));
                    }
                    Ok(entry)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NCMatrix::from_rows(rows)
}

/// `cdet(A) = A_1 (-∂_u)^{n-2} + … + A_{n-1}` and the Laurent coefficients
/// `A_i = Σ_j A_i^{(j)} u^{j-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AExpansion {
    /// `a[i-1] = A_i`.
    pub a: Vec<LaurentUea>,
}

impl AExpansion {
    pub fn rank(&self) -> usize {
        self.a.len() + 1
    }

    /// `A_i^{(j)}` for `1 ≤ i ≤ n-1`, `0 ≤ j ≤ i`.
    pub fn coefficient(&self, i: usize, j: u32) -> Uea {
        assert!(i >= 1 && i <= self.a.len() && j as usize <= i);
        self.a[i - 1].coeffs.get(&(i as u32 - j)).cloned().unwrap_or_default()
    }
}

pub fn extract_a(m: &GlMinimal, chi: &Functional) -> Result<AExpansion> {
    let det = cdet(&du_ring(m), &build_a(m, chi)?)?;
    let n = m.n as u32;
    if det.degree().is_some_and(|d| d > n - 2) {
        return Err(Error::UndefinedInput("cdet(A) has ∂-degree above n-2"));
    }
    let a: Vec<LaurentUea> = (1..n).map(|i| det.coeff(n - 1 - i).cloned().unwrap_or_default()).collect();
    for (i, ai) in a.iter().enumerate() {
        if ai.coeffs.keys().any(|&p| p > i as u32 + 1) {
            return Err(Error::UndefinedInput("A_i has a power of u^{-1} above i"));
        }
    }
    Ok(AExpansion { a })
}

/// `u^{-p}`-coefficients, e.g. `(e11*e32 - e12*e31)u^{-2} + (…)u^{-1} + 7`.
pub fn display_laurent(m: &GlMinimal, a: &LaurentUea) -> String {
    if a.coeffs.is_empty() {
        return "0".into();
    }
    let label = |i: usize| m.ge.algebra.label(i);
    let mut out = String::new();
    for (&p, x) in a.coeffs.iter().rev() {
        let s = x.display_with(&label, LetterStyle::Finite).to_string();
        let part = if p > 0 {
            format!("({s})u^{{-{p}}}")
        } else if !out.is_empty() && x.len() == 1 && s.starts_with('-') {
            // a negative constant
            out.push_str(" - ");
            out.push_str(&s[1..]);
            continue;
        } else {
            s
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&part);
    }
    out
}

/// `{I} ∪ {A_i^{(j)} : 1 ≤ i ≤ n-1, 0 ≤ j < i}` in `U(g^e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantizedAlgebra {
    pub generators: Vec<Uea>,
    /// `None` for `I`, `Some((i, j))` for `A_i^{(j)}`.
    pub provenance: Vec<Option<(usize, u32)>>,
}

impl QuantizedAlgebra {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn label(&self, k: usize) -> String {
        match self.provenance[k] {
            None => "I".into(),
            Some((i, j)) => format!("A_{i}^({j})"),
        }
    }

    /// First pair with a nonzero commutator, with the commutator.
    pub fn commutator_witness(&self, m: &GlMinimal) -> Option<(usize, usize, Uea)> {
        let pbw = finite_pbw(m);
        (0..self.len()).tuple_combinations().find_map(|(a, b)| {
            let c = pbw.commutator(&self.generators[a], &self.generators[b]);
            (!c.is_zero()).then_some((a, b, c))
        })
    }
}

/// Builds the generators and checks that they commute pairwise. A singular
/// `χ` is rejected unless `allow_singular`; vanishing generators are dropped.
pub fn quantized_algebra(m: &GlMinimal, chi: &Functional, allow_singular: bool) -> Result<QuantizedAlgebra> {
    let alg = quantized_generators(m, chi, allow_singular)?;
    if let Some((a, b, _)) = alg.commutator_witness(m) {
        return Err(Error::Commutativity(alg.label(a), alg.label(b)));
    }
    Ok(alg)
}

/// [`quantized_algebra`] without the commutativity check.
pub fn quantized_generators(m: &GlMinimal, chi: &Functional, allow_singular: bool) -> Result<QuantizedAlgebra> {
    check_chi(m, chi)?;
    let g = &m.ge.algebra;
    if !allow_singular && !chi_regular(chi, g, m.rank()) {
        return Err(Error::Regularity { stabilizer: g.stabilizer_dim(chi.values()), index: m.rank() });
    }
    let exp = extract_a(m, chi)?;
    let pbw = finite_pbw(m);
    let mut alg = QuantizedAlgebra { generators: vec![pbw.letter(m.identity_index(), 1)], provenance: vec![None] };
    for i in 1..m.n {
        for j in 0..i as u32 {
            let x = exp.coefficient(i, j);
            if !x.is_zero() {
                alg.generators.push(x);
                alg.provenance.push(Some((i, j)));
            }
        }
    }
    Ok(alg)
}

/// Outcome of comparing `gr A_{e,χ}` with the Mishchenko–Fomenko algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrReport {
    /// First `(i, j)` where the symbol of `A_i^{(j)}` differs from
    /// `Φ̄_{χ,i-j}(σ(Q_i))`.
    pub symbol_mismatch: Option<(usize, u32)>,
    /// First degree at which the generated subspaces differ.
    pub span_mismatch: Option<u32>,
}

impl GrReport {
    pub fn passed(&self) -> bool {
        self.symbol_mismatch.is_none() && self.span_mismatch.is_none()
    }
}

/// Commutative image of the words of length `d`, provided no longer words
/// occur.
fn degree_symbol(pbw: &PbwAlgebra<'_>, a: &Uea, d: usize) -> Option<Poly> {
    if a.max_len().is_some_and(|l| l > d) {
        return None;
    }
    Some(Poly::from_terms(
        Some(pbw.lie().ctx()),
        a.len_component(d).terms().map(|(w, c)| (Monomial::from_word(w), c.clone())),
    ))
}

/// Degree-`d` part of the algebra generated by homogeneous `gens`, as
/// coefficient vectors over a shared monomial list.
fn degree_span(gens: &[(Poly, u32)], d: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    let usable: Vec<usize> = (0..gens.len()).filter(|&k| gens[k].1 >= 1 && gens[k].1 <= d).collect();
    for len in 1..=d as usize {
        for combo in usable.iter().combinations_with_replacement(len) {
            if combo.iter().map(|&&k| gens[k].1).sum::<u32>() != d {
                continue;
            }
            let mut p = Poly::constant(Rational::one());
            for &&k in &combo {
                p = &p * &gens[k].0;
            }
            out.push(p);
        }
    }
    out
}

fn span_ranks(a: &[Poly], b: &[Poly]) -> (usize, usize, usize) {
    let monos: BTreeSet<Monomial> = a.iter().chain(b).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    let vec = |p: &Poly| monos.iter().map(|m| p.coefficient(m)).collect::<Vec<Rational>>();
    let va: Vec<_> = a.iter().map(vec).collect();
    let vb: Vec<_> = b.iter().map(vec).collect();
    let both: Vec<_> = va.iter().chain(&vb).cloned().collect();
    (span_rank(&va), span_rank(&vb), span_rank(&both))
}

/// Checks that `gr A_{e,χ}` agrees with `Ā_{e,χ}`: symbols of the
/// `A_i^{(j)}` against `Φ̄_{χ,i-j}(σ(Q_i))`, then degreewise spans of the
/// two generating sets up to degree `n-1`.
pub fn gr_consistency(m: &GlMinimal, chi: &Functional) -> Result<GrReport> {
    let (lp, fp) = (loop_pbw(m), finite_pbw(m));
    let qs = extract_q(m)?;
    let exp = extract_a(m, chi)?;
    let mut report = GrReport { symbol_mismatch: None, span_mismatch: None };
    let mut quantum: Vec<(Poly, u32)> =
        vec![(Poly::var(Some(m.ge.algebra.ctx()), VarId::linear(m.identity_index())), 1)];
    'outer: for (idx, qi) in qs.iter().enumerate() {
        let i = idx + 1;
        let sigma = li_symbol(&lp, qi);
        for j in 0..i as u32 {
            let d = i as u32 - j;
            let want = phi_bar_coeff(&sigma, chi, d);
            match degree_symbol(&fp, &exp.coefficient(i, j), d as usize) {
                Some(s) if s == want => {
                    if !s.is_zero() {
                        quantum.push((s, d));
                    }
                }
                _ => {
                    report.symbol_mismatch = Some((i, j));
                    break 'outer;
                }
            }
        }
    }
    let fam = minimal_e_family(m)?;
    let mf = mf_generators(&fam, chi, &m.ge.algebra, m.rank(), true)?;
    let classical: Vec<(Poly, u32)> = mf.generators.iter().map(|p| (p.clone(), p.degree().unwrap_or(0))).collect();
    for d in 1..m.n as u32 {
        let (ra, rb, rab) = span_ranks(&degree_span(&quantum, d), &degree_span(&classical, d));
        if !(ra == rb && rb == rab) {
            report.span_mismatch = Some(d);
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::q;
    use crate::mfshift::sample_regular_chi;

    #[test]
    fn z_for_n3_and_n4() {
        let m = GlMinimal::new(3).unwrap();
        let z = build_z(&m).unwrap();
        assert_eq!(z.size(), 2);
        assert_eq!(z.get(0, 0).degree(), Some(1));
        assert_eq!(z.get(1, 1).degree(), Some(0));
        let m4 = GlMinimal::new(4).unwrap();
        let z4 = build_z(&m4).unwrap();
        let pbw = loop_pbw(&m4);
        for c in 0..3 {
            assert_eq!(z4.get(2, c).coeff(0), Some(&pbw.letter(m4.ge_index(4, c + 1).unwrap(), 1)));
        }
    }

    #[test]
    fn q1_is_e() {
        for n in 2..=4 {
            let m = GlMinimal::new(n).unwrap();
            let qs = extract_q(&m).unwrap();
            assert_eq!(qs.len(), n - 1);
            assert_eq!(qs[0], loop_pbw(&m).letter(m.e_index(), 1));
            for (i, qi) in qs.iter().enumerate() {
                assert!(qi.is_homogeneous());
                assert_eq!(qi.max_weight(), Some(i as u32 + 1));
            }
        }
    }

    #[test]
    fn phi_on_letters() {
        let m = GlMinimal::new(3).unwrap();
        let chi = Functional::new(&m.ge.algebra, (1..=5).map(q).collect()).unwrap();
        let pbw = loop_pbw(&m);
        let e = m.e_index();
        let img = phi_chi(&m, &pbw.letter(e, 1), &chi).unwrap();
        assert_eq!(img.coeff(0), Some(&Uea::scalar(q(4))));
        assert_eq!(img.coeff(1), Some(&finite_pbw(&m).letter(e, 1)));
        let img2 = phi_chi(&m, &pbw.letter(e, 2), &chi).unwrap();
        assert_eq!(img2.coeffs.len(), 1);
        assert_eq!(phi_chi_coeff(&m, &pbw.letter(e, 2), &chi, 2).unwrap(), finite_pbw(&m).letter(e, 1));
    }

    #[test]
    fn a_equals_phi_of_q_and_a10_is_e() {
        for n in [3, 4] {
            let m = GlMinimal::new(n).unwrap();
            let chi = sample_regular_chi(&m.ge.algebra, n, 2).unwrap();
            let exp = extract_a(&m, &chi).unwrap();
            assert_eq!(exp.coefficient(1, 0), finite_pbw(&m).letter(m.e_index(), 1));
            for (i, qi) in extract_q(&m).unwrap().iter().enumerate() {
                assert_eq!(exp.a[i], phi_chi(&m, qi, &chi).unwrap());
            }
            let via_tau = phi_tau(&m, &cdet_z(&m).unwrap(), &chi).unwrap();
            assert_eq!(via_tau, cdet(&du_ring(&m), &build_a(&m, &chi).unwrap()).unwrap());
        }
    }

    #[test]
    fn quantized_generators_commute() {
        let m = GlMinimal::new(3).unwrap();
        let chi = sample_regular_chi(&m.ge.algebra, 3, 4).unwrap();
        let alg = quantized_algebra(&m, &chi, false).unwrap();
        assert_eq!(alg.len(), 4);
        let zero = Functional::zero(&m.ge.algebra);
        assert!(matches!(quantized_algebra(&m, &zero, false), Err(Error::Regularity { .. })));
        assert!(quantized_algebra(&m, &zero, true).is_ok());
    }

    #[test]
    fn gr_consistency_n3() {
        let m = GlMinimal::new(3).unwrap();
        let chi = sample_regular_chi(&m.ge.algebra, 3, 4).unwrap();
        let r = gr_consistency(&m, &chi).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
