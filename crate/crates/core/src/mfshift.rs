//! Argument shift: the derivation `D_χ`, Mishchenko–Fomenko generators,
//! regularity of `χ` and the commutativity/independence checks.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foundations::rational::factorial;
use crate::foundations::{jacobian_rank_at, Ctx, Point, Poly, Rational, VarId};
use crate::liealg::LieAlgebra;
use crate::poisson_inv::{lie_poisson_bracket, InvariantFamily};
use crate::sampling::{random_point, random_values};

/// Attempts made by [`sample_regular_chi`] before giving up.
pub const REGULAR_RETRIES: usize = 100;

/// A linear functional `χ ∈ q*`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    ctx: Ctx,
    values: Vec<Rational>,
}

impl Functional {
    pub fn new(g: &LieAlgebra, values: Vec<Rational>) -> Result<Self> {
        if values.len() != g.dim() {
            return Err(Error::Dimension { expected: g.dim(), got: values.len() });
        }
        Ok(Functional { ctx: g.ctx(), values })
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        Functional { ctx: g.ctx(), values: vec![Rational::zero(); g.dim()] }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `χ(b_i)`.
    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `χ` as a point of `(q)*`, i.e. an assignment to the depth-1 variables.
    pub fn as_point(&self) -> Point {
        self.values.iter().enumerate().map(|(i, c)| (VarId::linear(i), c.clone())).collect()
    }
}

/// `D_χ^j F`, where `D_χ = Σ χ(b_i) ∂/∂b_i`. Variables of depth above one
/// are constants for `D_χ`.
pub fn shift_derivative(f: &Poly, chi: &Functional, j: u32) -> Poly {
    let mut cur = f.clone();
    for _ in 0..j {
        if cur.is_zero() {
            break;
        }
        let mut next = Poly::zero().with_ctx(cur.ctx());
        for v in cur.variables() {
            if v.depth != 1 || chi.value(v.generator).is_zero() {
                continue;
            }
            next = &next + &cur.partial_derivative(v).scale(chi.value(v.generator));
        }
        cur = next;
    }
    cur
}

/// `D_χ^j F / j!`, the coefficient of `u^j` in `F(x + uχ)`.
pub fn shift_coefficient(f: &Poly, chi: &Functional, j: u32) -> Poly {
    shift_derivative(f, chi, j).scale(&(Rational::one() / factorial(j)))
}

/// Generators `D_χ^j(^eP_i)` of `Ā_{e,χ}` with their `(i, j)` labels
/// (`i` counted from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFAlgebra {
    pub generators: Vec<Poly>,
    pub provenance: Vec<(usize, u32)>,
}

impl MFAlgebra {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn label(&self, k: usize) -> String {
        let (i, j) = self.provenance[k];
        format!("D^{j}(^eP_{i})")
    }

    /// First pair with a nonzero Poisson bracket, with the bracket.
    pub fn commutativity_witness(&self, g: &LieAlgebra) -> Result<Option<(usize, usize, Poly)>> {
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                let r = lie_poisson_bracket(&self.generators[a], &self.generators[b], g)?;
                if !r.is_zero() {
                    return Ok(Some((a, b, r)));
                }
            }
        }
        Ok(None)
    }
}

/// Whether the coadjoint stabilizer of `χ` has dimension `ell`.
pub fn chi_regular(chi: &Functional, g: &LieAlgebra, ell: usize) -> bool {
    chi.ctx == g.ctx() && g.stabilizer_dim(&chi.values) == ell
}

/// The Mishchenko–Fomenko generators. A singular `χ` is rejected unless
/// `allow_singular`; generators that vanish (possible only for singular
/// `χ`) are dropped. Pairwise Poisson-commutativity is always checked.
pub fn mf_generators(
    family: &InvariantFamily,
    chi: &Functional,
    g: &LieAlgebra,
    ell: usize,
    allow_singular: bool,
) -> Result<MFAlgebra> {
    let alg = mf_candidates(family, chi, g, ell, allow_singular)?;
    if let Some((a, b, _)) = alg.commutativity_witness(g)? {
        return Err(Error::Commutativity(alg.label(a), alg.label(b)));
    }
    Ok(alg)
}

/// [`mf_generators`] without the commutativity check.
pub fn mf_candidates(
    family: &InvariantFamily,
    chi: &Functional,
    g: &LieAlgebra,
    ell: usize,
    allow_singular: bool,
) -> Result<MFAlgebra> {
    if chi.ctx != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    let stabilizer = g.stabilizer_dim(&chi.values);
    if stabilizer != ell && !allow_singular {
        return Err(Error::Regularity { stabilizer, index: ell });
    }
    let mut alg = MFAlgebra { generators: Vec::new(), provenance: Vec::new() };
    for (i, (p, &d)) in family.members.iter().zip(&family.degrees).enumerate() {
        for j in 0..d {
            let dj = shift_derivative(p, chi, j);
            if !dj.is_zero() {
                alg.generators.push(dj);
                alg.provenance.push((i + 1, j));
            }
        }
    }
    Ok(alg)
}

/// Whether the generators have full Jacobian rank at one of `trials`
/// seeded random points.
pub fn independence_check(alg: &MFAlgebra, trials: usize, seed: u64) -> bool {
    let vars: std::collections::BTreeSet<VarId> = alg.generators.iter().flat_map(Poly::variables).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).any(|_| {
        let pt = random_point(&mut rng, vars.iter().copied());
        jacobian_rank_at(&alg.generators, &pt).is_ok_and(|r| r == alg.len())
    })
}

/// A seeded regular functional with integer values in `[-20, 20]`,
/// resampled up to [`REGULAR_RETRIES`] times.
pub fn sample_regular_chi(g: &LieAlgebra, ell: usize, seed: u64) -> Result<Functional> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = g.dim();
    for _ in 0..REGULAR_RETRIES {
        let chi = Functional::new(g, random_values(&mut rng, g.dim()))?;
        let s = g.stabilizer_dim(&chi.values);
        if s == ell {
            return Ok(chi);
        }
        best = best.min(s);
    }
    Err(Error::Regularity { stabilizer: best, index: ell })
}
