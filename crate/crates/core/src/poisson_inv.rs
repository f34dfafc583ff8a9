//! Lie–Poisson structure on `S(g)`, the characteristic-polynomial
//! invariants of `gl_n`, their restriction to the Slodowy slice and the
//! minimal-degree truncation `^eP`, plus the rank-two fixture in type C.

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foundations::{q, Ctx, Monomial, Point, Poly, QMatrix, Rational, VarId};
use crate::liealg::{build_gl, gl_index, LieAlgebra, LieElement, Sl2Triple, Subalgebra};

fn check_ring(p: &Poly, g: &LieAlgebra) -> Result<()> {
    if p.ctx().is_some_and(|c| c != g.ctx()) {
        return Err(Error::ContextMismatch);
    }
    for v in p.variables() {
        if v.depth != 1 {
            return Err(Error::WrongRing { depth: v.depth });
        }
        if v.generator >= g.dim() {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(())
}

/// Linear polynomial of a Lie algebra element.
pub fn linear_poly(g: &LieAlgebra, x: &LieElement) -> Poly {
    Poly::from_terms(Some(g.ctx()), x.iter().map(|(i, c)| (Monomial::var(VarId::linear(i)), c.clone())))
}

/// `{a, b} = Σ ∂_i a ∂_j b [x_i, x_j]`, the biderivation extending the bracket.
pub fn lie_poisson_bracket(a: &Poly, b: &Poly, g: &LieAlgebra) -> Result<Poly> {
    check_ring(a, g)?;
    check_ring(b, g)?;
    let mut out = Poly::zero().with_ctx(Some(g.ctx()));
    let (va, vb) = (a.variables(), b.variables());
    if va.is_empty() || vb.is_empty() {
        return Ok(out);
    }
    let db: Vec<(VarId, Poly)> = vb.iter().map(|&v| (v, b.partial_derivative(v))).collect();
    for &x in &va {
        let da = a.partial_derivative(x);
        for (y, dy) in &db {
            let br = g.bracket_basis(x.generator, y.generator);
            if br.is_zero() {
                continue;
            }
            out = &out + &(&(&da * dy) * &linear_poly(g, &br));
        }
    }
    Ok(out)
}

/// Whether `{b_i, p} = 0` for every basis element `b_i`. Polynomials
/// outside `S(g)` are reported as not invariant.
pub fn is_poisson_invariant(p: &Poly, g: &LieAlgebra) -> bool {
    (0..g.dim()).all(|i| lie_poisson_bracket(&linear_poly(g, &g.basis(i)), p, g).is_ok_and(|r| r.is_zero()))
}

/// First basis element that fails to Poisson-commute with `p`, with the residue.
pub fn invariance_witness(p: &Poly, g: &LieAlgebra) -> Result<Option<(usize, Poly)>> {
    for i in 0..g.dim() {
        let r = lie_poisson_bracket(&linear_poly(g, &g.basis(i)), p, g)?;
        if !r.is_zero() {
            return Ok(Some((i, r)));
        }
    }
    Ok(None)
}

/// A list of homogeneous invariants with their degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFamily {
    pub members: Vec<Poly>,
    pub degrees: Vec<u32>,
}

impl InvariantFamily {
    /// Degrees are read off the members, which must be nonzero and homogeneous.
    pub fn new(members: Vec<Poly>) -> Result<Self> {
        let degrees = members
            .iter()
            .map(|p| match p.degree() {
                Some(d) if p.is_homogeneous() => Ok(d),
                _ => Err(Error::UndefinedInput("family members must be nonzero and homogeneous")),
            })
            .collect::<Result<_>>()?;
        Ok(InvariantFamily { members, degrees })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

/// Determinant of a square matrix of polynomials by permutation expansion.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    let mut out = Poly::zero();
    for perm in (0..k).permutations(k) {
        let mut term = Poly::constant(q(permutation_sign(&perm)));
        for (row, &col) in perm.iter().enumerate() {
            term = &term * &m[row][col];
        }
        out = &out + &term;
    }
    out
}

/// `±1` by the parity of the number of inversions.
pub(crate) fn permutation_sign(perm: &[usize]) -> i64 {
    let inversions = perm.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `P_k` = sum of the principal `k×k` minors of the generic matrix
/// `(e_{ij})`, i.e. the coefficients of its characteristic polynomial up
/// to sign.
pub fn gl_char_invariants(n: usize) -> Result<InvariantFamily> {
    let gl = build_gl(n)?;
    let ctx = Some(gl.ctx());
    let entry = |i: usize, j: usize| Poly::var(ctx, VarId::linear(gl_index(n, i, j)));
    let mut members = Vec::with_capacity(n);
    for k in 1..=n {
        let mut pk = Poly::zero().with_ctx(ctx);
        for rows in (1..=n).combinations(k) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&i| rows.iter().map(|&j| entry(i, j)).collect()).collect();
            pk = &pk + &poly_det(&sub);
        }
        members.push(pk);
    }
    InvariantFamily::new(members)
}

fn combine(mats: &[QMatrix], x: &LieElement) -> QMatrix {
    let d = mats[0].rows();
    let mut out = QMatrix::zeros(d, d);
    for (i, c) in x.iter() {
        for a in 0..d {
            for b in 0..d {
                out[(a, b)] = &out[(a, b)] + c * &mats[i][(a, b)];
            }
        }
    }
    out
}

/// The chart `e + g^f → (g^e)*` with `g^f` spanned by the transposes of
/// the `g^e` basis, identified with `(g^e)*` through the trace pairing.
#[derive(Clone, Debug)]
pub struct SlodowyChart {
    pub sl2: Sl2Triple,
    /// Basis `f_k` of `g^f` in ambient coordinates.
    pub gf_basis: Vec<LieElement>,
    /// `M_{kl} = tr(f_k b_l)`.
    pub pairing: QMatrix,
    ambient: LieAlgebra,
    target: Ctx,
    /// Image of each ambient coordinate function as a polynomial on `(g^e)*`.
    coordinates: Vec<Poly>,
}

impl SlodowyChart {
    pub fn new(ambient: &LieAlgebra, sl2: Sl2Triple, ge: &Subalgebra) -> Result<Self> {
        let mats = ambient.matrices().ok_or(Error::UndefinedInput("slice chart needs a matrix realization"))?;
        let d = ambient.dim();
        let flat = |m: &QMatrix| -> Vec<Rational> { (0..m.rows()).flat_map(|a| m.row(a).to_vec()).collect() };
        let coord = QMatrix::from_rows(mats.iter().map(flat).collect()).transpose();
        let b_mats: Vec<QMatrix> = ge.inclusion.iter().map(|x| combine(mats, x)).collect();
        let f_mats: Vec<QMatrix> = b_mats.iter().map(QMatrix::transpose).collect();
        let gf_basis = f_mats
            .iter()
            .map(|m| coord.solve(&flat(m)).map(|v| LieElement::from_dense(&v)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotClosed("transposed basis leaves the ambient algebra".into()))?;
        for x in &gf_basis {
            if !ambient.bracket(&sl2.f, x).is_zero() {
                return Err(Error::NotClosed("transposed basis does not centralize f".into()));
            }
        }
        let labels = (0..gf_basis.len()).map(|k| format!("f{k}")).collect();
        Subalgebra::from_basis(ambient, "g^f", gf_basis.clone(), labels)?;
        let k = ge.dim();
        let mut pairing = QMatrix::zeros(k, k);
        for a in 0..k {
            for l in 0..k {
                pairing[(a, l)] = f_mats[a].mul(&b_mats[l]).trace();
            }
        }
        let w = pairing
            .transpose()
            .inverse()
            .ok_or(Error::UndefinedInput("trace pairing between g^f and g^e is degenerate"))?;
        let target = ge.algebra.ctx();
        // y_k = Σ_l W_{kl} b_l as linear forms on (g^e)*
        let ys: Vec<Poly> = (0..k)
            .map(|a| {
                Poly::from_terms(Some(target), (0..k).map(|l| (Monomial::var(VarId::linear(l)), w[(a, l)].clone())))
            })
            .collect();
        let e_mat = combine(mats, &sl2.e);
        let coordinates = (0..d)
            .map(|i| {
                let mut p = Poly::constant(e_mat.mul(&mats[i]).trace()).with_ctx(Some(target));
                for (a, y) in ys.iter().enumerate() {
                    let c = f_mats[a].mul(&mats[i]).trace();
                    if !c.is_zero() {
                        p = &p + &y.scale(&c);
                    }
                }
                p
            })
            .collect();
        Ok(SlodowyChart { sl2, gf_basis, pairing, ambient: ambient.clone(), target, coordinates })
    }

    /// The chart for the minimal nilpotent of `gl_n`.
    pub fn minimal(m: &crate::liealg::GlMinimal) -> Result<Self> {
        SlodowyChart::new(&m.gl, m.sl2.clone(), &m.ge)
    }

    /// `P|_{e+g^f}` as a polynomial on `(g^e)*`.
    pub fn restrict(&self, p: &Poly) -> Result<Poly> {
        check_ring(p, &self.ambient)?;
        Ok(p.substitute(|v| self.coordinates[v.generator].clone()).with_ctx(Some(self.target)))
    }
}

/// `^eP`: the minimal-degree component of `P|_{e+g^f}`, in `S(g^e)`.
/// Both the input and the output are checked for invariance.
pub fn e_truncation(p: &Poly, chart: &SlodowyChart, centralizer: &LieAlgebra) -> Result<Poly> {
    if centralizer.ctx() != chart.target {
        return Err(Error::ContextMismatch);
    }
    if let Some((i, _)) = invariance_witness(p, &chart.ambient)? {
        return Err(Error::InvarianceViolation(format!("{{{}, P}} != 0", chart.ambient.label(i))));
    }
    let eps = chart.restrict(p)?.min_degree_component()?;
    if let Some((i, _)) = invariance_witness(&eps, centralizer)? {
        return Err(Error::InvarianceViolation(format!("{{{}, ^eP}} != 0", centralizer.label(i))));
    }
    Ok(eps)
}

/// The `^eP_i` for the characteristic-polynomial invariants of `gl_n`.
pub fn minimal_e_family(m: &crate::liealg::GlMinimal) -> Result<InvariantFamily> {
    let chart = SlodowyChart::minimal(m)?;
    let family = gl_char_invariants(m.n)?;
    let members = family.members.iter().map(|p| e_truncation(p, &chart, &m.ge.algebra)).collect::<Result<_>>()?;
    InvariantFamily::new(members)
}

/// `Σ deg ^eP_i = (dim g^e + ℓ)/2`.
pub fn good_system_check(family: &InvariantFamily, centralizer: &LieAlgebra, ell: usize) -> bool {
    family.len() == ell && 2 * family.degree_sum() as usize == centralizer.dim() + ell
}

/// The rank-two example in type C: the algebra on `{E,H,F,u,v,e}`, its
/// invariants of degrees 1 and 3, and the quadrics cutting out the branch
/// of the singular locus.
#[derive(Clone, Debug)]
pub struct C2Fixture {
    pub algebra: LieAlgebra,
    pub family: InvariantFamily,
    pub quadrics: Vec<Poly>,
}

impl C2Fixture {
    pub const LABELS: [&'static str; 6] = ["E", "H", "F", "u", "v", "e"];

    fn var(&self, label: &str) -> Poly {
        let i = self.algebra.index_of(label).expect("fixture label");
        Poly::var(Some(self.algebra.ctx()), VarId::linear(i))
    }

    /// The point `(x,y,z,p,q,t) = (p²/2t, −q²/2t, −pq/t, p, q, t)` in the
    /// coordinates `(E,F,H,u,v,e)`.
    pub fn branch_point(&self, p: &Rational, qv: &Rational, t: &Rational) -> Result<Point> {
        if t.is_zero() {
            return Err(Error::UndefinedInput("branch points need t != 0"));
        }
        let two_t = t * q(2);
        let coords = [
            ("E", p * p / &two_t),
            ("F", -(qv * qv) / &two_t),
            ("H", -(p * qv) / t),
            ("u", p.clone()),
            ("v", qv.clone()),
            ("e", t.clone()),
        ];
        Ok(coords
            .into_iter()
            .map(|(l, c)| (VarId::linear(self.algebra.index_of(l).expect("fixture label")), c))
            .collect())
    }

    /// Seeded branch points with integer parameters in `[-20, 20]`, `t ≠ 0`.
    pub fn sample_branch_points(&self, seed: u64, count: usize) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let p = q(rng.gen_range(-20..=20));
                let qv = q(rng.gen_range(-20..=20));
                let mut t = 0;
                while t == 0 {
                    t = rng.gen_range(-20..=20);
                }
                self.branch_point(&p, &qv, &q(t)).expect("t != 0")
            })
            .collect()
    }
}

pub fn c2_fixture() -> Result<C2Fixture> {
    let labels: Vec<String> = C2Fixture::LABELS.iter().map(|s| s.to_string()).collect();
    let (e_, h, f, u, v, e) = (0, 1, 2, 3, 4, 5);
    let brackets = vec![
        ((h, e_), vec![(e_, q(2))]),
        ((h, f), vec![(f, q(-2))]),
        ((e_, f), vec![(h, q(1))]),
        ((e_, v), vec![(u, q(1))]),
        ((f, u), vec![(v, q(1))]),
        ((u, v), vec![(e, q(1))]),
        // the sl₂-module structure of span{u, v} forces these
        ((h, u), vec![(u, q(1))]),
        ((h, v), vec![(v, q(-1))]),
    ];
    let algebra = LieAlgebra::new("c2^e", labels, brackets)?;
    let mut fx = C2Fixture { algebra, family: InvariantFamily { members: vec![], degrees: vec![] }, quadrics: vec![] };
    let [xe, xh, xf, xu, xv, xc] = C2Fixture::LABELS.map(|l| fx.var(l));
    let c = |k: i64| Poly::constant(q(k));
    let f1 = xc.clone();
    let f2 = &(&(&(&(&c(4) * &(&xe * &xf)) + &(&xh * &xh)) * &xc)
        + &(&(&(&c(2) * &xe) * &(&xv * &xv)) + &(&(&c(2) * &(&xu * &xv)) * &xh)))
        - &(&c(2) * &(&xf * &(&xu * &xu)));
    fx.family = InvariantFamily::new(vec![f1, f2.clone()])?;
    // (x,y,z,p,q,t) = (E,F,H,u,v,e); the quadrics are halved partials of F_2
    let (x, y, z, p, qq, t) = (&xe, &xf, &xh, &xu, &xv, &xc);
    fx.quadrics = vec![
        &(&c(2) * &(y * t)) + &(qq * qq),
        &(&c(2) * &(x * t)) - &(p * p),
        &(qq * z) - &(&c(2) * &(y * p)),
        &(&c(2) * &(x * qq)) + &(p * z),
        &(z * t) + &(p * qq),
    ];
    Ok(fx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::{frac, jacobian_rank_at};
    use crate::liealg::GlMinimal;
    use crate::sampling::random_linear_point;

    fn lin(g: &LieAlgebra, i: usize) -> Poly {
        Poly::var(Some(g.ctx()), VarId::linear(i))
    }

    #[test]
    fn bracket_on_linear_terms() {
        let g = build_gl(3).unwrap();
        let (e11, e12) = (lin(&g, gl_index(3, 1, 1)), lin(&g, gl_index(3, 1, 2)));
        assert_eq!(lie_poisson_bracket(&e11, &e12, &g).unwrap(), e12);
        let sq = &e11 * &e11;
        assert_eq!(lie_poisson_bracket(&sq, &e12, &g).unwrap(), &(&Poly::constant(q(2)) * &e11) * &e12);
    }

    #[test]
    fn deep_variables_are_rejected() {
        let g = build_gl(2).unwrap();
        let p = Poly::var(Some(g.ctx()), VarId::new(0, 2));
        assert_eq!(lie_poisson_bracket(&p, &p, &g), Err(Error::WrongRing { depth: 2 }));
    }

    #[test]
    fn char_invariants() {
        for n in 2..=4 {
            let g = build_gl(n).unwrap();
            let fam = gl_char_invariants(n).unwrap();
            assert_eq!(fam.degrees, (1..=n as u32).collect::<Vec<_>>());
            for p in &fam.members {
                assert!(is_poisson_invariant(p, &g));
            }
        }
        let g = build_gl(3).unwrap();
        let trace = &(&lin(&g, 0) + &lin(&g, 4)) + &lin(&g, 8);
        assert_eq!(gl_char_invariants(3).unwrap().members[0], trace);
    }

    #[test]
    fn truncation_degrees_and_good_systems() {
        for (n, want) in [(2, vec![1, 1]), (3, vec![1, 1, 2]), (4, vec![1, 1, 2, 3])] {
            let m = GlMinimal::new(n).unwrap();
            let fam = minimal_e_family(&m).unwrap();
            assert_eq!(fam.degrees, want);
            assert!(good_system_check(&fam, &m.ge.algebra, n));
            let mut bumped = fam.clone();
            bumped.degrees[0] += 1;
            assert!(!good_system_check(&bumped, &m.ge.algebra, n));
        }
    }

    #[test]
    fn truncations_for_n3_are_proportional_to_i_and_e() {
        let m = GlMinimal::new(3).unwrap();
        let g = &m.ge.algebra;
        let fam = minimal_e_family(&m).unwrap();
        let i = lin(g, m.identity_index());
        let e = lin(g, m.e_index());
        let ratio = |p: &Poly, x: &Poly| {
            let (mono, c) = x.terms().next().unwrap();
            let k = p.coefficient(mono) / c;
            assert!(!k.is_zero());
            assert_eq!(*p, x.scale(&k));
        };
        ratio(&fam.members[0], &i);
        ratio(&fam.members[1], &e);
    }

    #[test]
    fn non_invariant_input_is_rejected() {
        let m = GlMinimal::new(3).unwrap();
        let chart = SlodowyChart::minimal(&m).unwrap();
        let p = lin(&m.gl, gl_index(3, 1, 2));
        assert!(matches!(e_truncation(&p, &chart, &m.ge.algebra), Err(Error::InvarianceViolation(_))));
    }

    #[test]
    fn c2_invariants_and_branch() {
        let fx = c2_fixture().unwrap();
        assert_eq!(fx.family.degrees, vec![1, 3]);
        for p in &fx.family.members {
            assert!(is_poisson_invariant(p, &fx.algebra));
        }
        let f2 = &fx.family.members[1];
        for (k, l) in ["E", "F", "H", "u", "v"].iter().enumerate() {
            let i = fx.algebra.index_of(l).unwrap();
            let half = f2.partial_derivative(VarId::linear(i)).scale(&frac(1, 2));
            assert_eq!(half, fx.quadrics[[0, 1, 4, 2, 3][k]]);
        }
        for pt in fx.sample_branch_points(3, 10) {
            for qd in &fx.quadrics {
                assert!(qd.evaluate(&pt).unwrap().is_zero());
            }
            assert_eq!(jacobian_rank_at(&fx.family.members, &pt).unwrap(), 1);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pt = random_linear_point(&mut rng, 6);
        assert_eq!(jacobian_rank_at(&fx.family.members, &pt).unwrap(), 2);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
