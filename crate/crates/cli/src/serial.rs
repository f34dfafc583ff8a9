//! JSON encoding of polynomials and enveloping-algebra elements.
//!
//! A polynomial is a list of terms `{"coeff": "p/q", "monomial": [[label,
//! depth, exponent], ...]}`; an element of `U(q̂_-)` or `U(q)` is
//! `{"terms": [{"coeff": "p/q", "word": [[label, depth], ...]}]}` with the
//! words in PBW order. Both decode back to the identical value.

use mfq_core::foundations::rational;
use mfq_core::{Error, LieAlgebra, Monomial, Poly, Rational, Result, Uea, VarId};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coeff: String,
    pub monomial: Vec<(String, u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UeaTerm {
    pub coeff: String,
    pub word: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UeaJson {
    pub terms: Vec<UeaTerm>,
}

pub fn poly_to_json(p: &Poly, g: &LieAlgebra) -> Vec<PolyTerm> {
    p.terms()
        .map(|(m, c)| PolyTerm {
            coeff: rational::to_string(c),
            monomial: m.pairs().iter().map(|&(v, e)| (g.label(v.generator), v.depth, e)).collect(),
        })
        .collect()
}

fn generator(g: &LieAlgebra, label: &str) -> Result<usize> {
    g.index_of(label).ok_or_else(|| Error::Parse(format!("unknown generator {label:?}")))
}

fn nonzero(coeff: &str) -> Result<Rational> {
    let c = rational::parse(coeff)?;
    if c.is_zero() {
        return Err(Error::Parse("zero coefficient".into()));
    }
    Ok(c)
}

pub fn poly_from_json(terms: &[PolyTerm], g: &LieAlgebra) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut pairs = Vec::with_capacity(t.monomial.len());
        for (label, depth, exp) in &t.monomial {
            if *depth == 0 || *exp == 0 {
                return Err(Error::Parse("depth and exponent must be positive".into()));
            }
            pairs.push((VarId::new(generator(g, label)?, *depth), *exp));
        }
        out.push((Monomial::from_pairs(pairs), nonzero(&t.coeff)?));
    }
    Ok(Poly::from_terms(Some(g.ctx()), out))
}

pub fn uea_to_json(u: &Uea, g: &LieAlgebra) -> UeaJson {
    UeaJson {
        terms: u
            .terms()
            .map(|(w, c)| UeaTerm {
                coeff: rational::to_string(c),
                word: w.iter().map(|v| (g.label(v.generator), v.depth)).collect(),
            })
            .collect(),
    }
}

/// Decodes words as given; they are expected to be in PBW order already.
pub fn uea_from_json(u: &UeaJson, g: &LieAlgebra) -> Result<Uea> {
    let mut out = Vec::with_capacity(u.terms.len());
    for t in &u.terms {
        let mut word = Vec::with_capacity(t.word.len());
        for (label, depth) in &t.word {
            if *depth == 0 {
                return Err(Error::Parse("depth must be positive".into()));
            }
            word.push(VarId::new(generator(g, label)?, *depth));
        }
        out.push((word, nonzero(&t.coeff)?));
    }
    Ok(Uea::from_terms(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfq_core::quantize::{extract_q, loop_pbw};
    use mfq_core::GlMinimal;

    #[test]
    fn vacuum_and_single_letter() {
        let m = GlMinimal::new(3).unwrap();
        let g = &m.ge.algebra;
        let json = serde_json::to_string(&uea_to_json(&Uea::one(), g)).unwrap();
        assert_eq!(json, r#"{"terms":[{"coeff":"1","word":[]}]}"#);
        let e32 = loop_pbw(&m).letter(m.ge_index(3, 2).unwrap(), 1);
        let json = serde_json::to_string(&uea_to_json(&e32, g)).unwrap();
        assert_eq!(json, r#"{"terms":[{"coeff":"1","word":[["e32",1]]}]}"#);
    }

    #[test]
    fn q_round_trips() {
        let m = GlMinimal::new(4).unwrap();
        let g = &m.ge.algebra;
        for q in extract_q(&m).unwrap() {
            let text = serde_json::to_string(&uea_to_json(&q, g)).unwrap();
            let back: UeaJson = serde_json::from_str(&text).unwrap();
            assert_eq!(uea_from_json(&back, g).unwrap(), q);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let m = GlMinimal::new(3).unwrap();
        let g = &m.ge.algebra;
        let bad = UeaJson { terms: vec![UeaTerm { coeff: "1".into(), word: vec![("e99".into(), 1)] }] };
        assert!(uea_from_json(&bad, g).is_err());
        let zero = vec![PolyTerm { coeff: "0".into(), monomial: vec![] }];
        assert!(poly_from_json(&zero, g).is_err());
        let frac = vec![PolyTerm { coeff: "1/0".into(), monomial: vec![] }];
        assert!(poly_from_json(&frac, g).is_err());
    }
}
