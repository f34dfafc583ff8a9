//! The acceptance suite as a library: each check returns a status and, on
//! failure, an exact witness (an offending commutator, residue or value).

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::foundations::rational::factorial;
use crate::foundations::{jacobian_rank_at, Monomial, Point, Poly, Rational, VarId};
use crate::liealg::{index_estimate, GlMinimal};
use crate::loopv::{classical_action, li_symbol, translation_poly, translation_uea, InvLaurent, Uea, VacuumModule};
use crate::mfshift::{independence_check, mf_generators, sample_regular_chi, shift_derivative, Functional};
use crate::poisson_inv::{c2_fixture, good_system_check, is_poisson_invariant, minimal_e_family};
use crate::quantize::{
    build_a, cdet, cdet_z, display_laurent, du_ring, extract_a, extract_q, finite_pbw, gr_consistency, loop_pbw,
    phi_chi, phi_tau, quantized_algebra, LaurentRing, LaurentUea, LoopRing, NCMatrix, NcRing,
};
use crate::sampling::{random_linear_point, random_values, random_words};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Passed, with a discrepancy against the printed reference noted.
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Exact offending value for failures and flags.
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(criterion: u8, name: &str) -> Self {
        CheckResult { criterion, name: name.into(), status: Status::Pass, detail: String::new(), witness: None }
    }

    fn fail(&mut self, detail: impl Into<String>, witness: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.detail = detail.into();
            self.witness = Some(witness.into());
        }
    }

    fn note(&mut self, detail: impl Into<String>) {
        if self.detail.is_empty() {
            self.detail = detail.into();
        } else {
            self.detail = format!("{}; {}", self.detail, detail.into());
        }
    }

    fn flag(&mut self, detail: impl Into<String>, witness: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Flagged;
        }
        self.note(detail);
        let w = witness.into();
        self.witness = Some(match self.witness.take() {
            Some(prev) => format!("{prev}; {w}"),
            None => w,
        });
    }

    fn error(criterion: u8, name: &str, e: crate::Error) -> Self {
        let mut c = CheckResult::new(criterion, name);
        c.fail("error", e.to_string());
        c
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub seed: u64,
    /// Enables `n = 5` for the centrality check.
    pub slow: bool,
    /// Number of seeded regular functionals for the commutativity check.
    pub chi_samples: usize,
    /// Random instances per structural property.
    pub instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: 4, seed: 7, slow: false, chi_samples: 3, instances: 100 }
    }
}

impl VerifyConfig {
    fn quantum_range(&self) -> std::ops::RangeInclusive<usize> {
        3..=self.n_max.min(4)
    }
}

/// Runs all ten checks in order.
pub fn run_all(cfg: &VerifyConfig) -> Report {
    let checks: [fn(&VerifyConfig) -> CheckResult; 10] = [
        check_golden,
        check_centrality,
        check_commutativity,
        check_cross,
        check_classical,
        check_gr,
        check_jet,
        check_index,
        check_c2,
        check_properties,
    ];
    // independent checks run concurrently; results are collected in order
    let checks = std::thread::scope(|s| {
        let handles: Vec<_> = checks.iter().map(|c| s.spawn(move || c(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    Report { checks }
}

/// Runs a single check, `1 ≤ criterion ≤ 10`.
pub fn run_one(cfg: &VerifyConfig, criterion: u8) -> Option<CheckResult> {
    Some(match criterion {
        1 => check_golden(cfg),
        2 => check_centrality(cfg),
        3 => check_commutativity(cfg),
        4 => check_cross(cfg),
        5 => check_classical(cfg),
        6 => check_gr(cfg),
        7 => check_jet(cfg),
        8 => check_index(cfg),
        9 => check_c2(cfg),
        10 => check_properties(cfg),
        _ => return None,
    })
}

fn chi_seed(cfg: &VerifyConfig, n: usize, k: usize) -> u64 {
    cfg.seed.wrapping_mul(1000).wrapping_add((n * 10 + k) as u64)
}

/// The worked expressions for `Q_i` (`n = 3, 4`), built literally as
/// products of loop letters and then brought to normal form.
pub fn reference_q(m: &GlMinimal) -> Option<Vec<Uea>> {
    let pbw = loop_pbw(m);
    let ring = LoopRing { pbw };
    let l = |i: usize, j: usize, d: u32| pbw.letter(m.ge_index(i, j).expect("g^e label"), d);
    let det = |rows: Vec<Vec<Uea>>| cdet(&ring, &NCMatrix::from_rows(rows).expect("square")).expect("small");
    let two = Rational::from_integer(2.into());
    match m.n {
        3 => {
            let q2 = pbw.mul(&l(1, 1, 1), &l(3, 2, 1)).sub(&pbw.mul(&l(3, 1, 1), &l(1, 2, 1))).add(&l(3, 2, 2));
            Some(vec![l(3, 2, 1), q2])
        }
        4 => {
            let q2 = det(vec![vec![l(1, 1, 1), l(1, 3, 1)], vec![l(4, 1, 1), l(4, 3, 1)]])
                .add(&det(vec![vec![l(2, 2, 1), l(2, 3, 1)], vec![l(4, 2, 1), l(4, 3, 1)]]))
                .add(&l(4, 3, 2).scale(&two));
            let q3 = det(vec![
                vec![l(1, 1, 1), l(1, 2, 1), l(1, 3, 1)],
                vec![l(2, 1, 1), l(2, 2, 1), l(2, 3, 1)],
                vec![l(4, 1, 1), l(4, 2, 1), l(4, 3, 1)],
            ])
            .add(&det(vec![vec![l(1, 1, 1), l(1, 3, 2)], vec![l(4, 1, 1), l(4, 3, 2)]]))
            .add(&det(vec![vec![l(2, 2, 2), l(2, 3, 1)], vec![l(4, 2, 2), l(4, 3, 1)]]))
            .add(&det(vec![vec![l(2, 2, 1), l(2, 3, 2)], vec![l(4, 2, 1), l(4, 3, 2)]]))
            .add(&l(4, 3, 3).scale(&two));
            Some(vec![l(4, 3, 1), q2, q3])
        }
        _ => None,
    }
}

pub fn check_golden(_cfg: &VerifyConfig) -> CheckResult {
    let name = "golden Q_i for n = 3, 4";
    let mut c = CheckResult::new(1, name);
    for n in [3, 4] {
        let m = match GlMinimal::new(n) {
            Ok(m) => m,
            Err(e) => return CheckResult::error(1, name, e),
        };
        let pbw = loop_pbw(&m);
        let got = match extract_q(&m) {
            Ok(q) => q,
            Err(e) => return CheckResult::error(1, name, e),
        };
        let want = reference_q(&m).expect("reference for n = 3, 4");
        for (i, (g, w)) in got.iter().zip(&want).enumerate() {
            let (gs, ws) = (pbw.display(g), pbw.display(w));
            if gs != ws {
                c.fail(format!("n={n}: Q_{} differs from the worked example", i + 1), format!("{gs} != {ws}"));
            }
        }
        if got.len() != want.len() {
            c.fail(format!("n={n}: wrong number of Q_i"), got.len().to_string());
        }
    }
    if c.passed() {
        c.note("byte-exact after normal ordering");
    }
    c
}

pub fn check_centrality(cfg: &VerifyConfig) -> CheckResult {
    let name = "centrality of Q_i at level kappa_{e,c}";
    let mut c = CheckResult::new(2, name);
    let top = if cfg.slow { cfg.n_max.min(5) } else { cfg.n_max.min(4) };
    for n in 3..=top {
        let m = match GlMinimal::new(n) {
            Ok(m) => m,
            Err(e) => return CheckResult::error(2, name, e),
        };
        let qs = match extract_q(&m) {
            Ok(q) => q,
            Err(e) => return CheckResult::error(2, name, e),
        };
        let v = VacuumModule::new(&m.ge.algebra, &m.kappa);
        let pbw = loop_pbw(&m);
        for (i, q) in qs.iter().enumerate() {
            let mut targets = vec![(format!("Q_{}", i + 1), q.clone())];
            if n == 3 {
                targets.push((format!("T(Q_{})", i + 1), translation_uea(&pbw, q)));
            }
            for (label, t) in targets {
                if let Some((x, k, r)) = v.center_witness(&t) {
                    c.fail(
                        format!("n={n}: {label} is not central"),
                        format!("{} t^{k} . {label} = {}", m.ge.algebra.label(x), pbw.display(&r)),
                    );
                }
            }
        }
        c.note(format!("n={n} checked"));
    }
    c
}

pub fn check_commutativity(cfg: &VerifyConfig) -> CheckResult {
    let name = "commutativity of I and A_i^(j)";
    let mut c = CheckResult::new(3, name);
    for n in cfg.quantum_range() {
        let m = match GlMinimal::new(n) {
            Ok(m) => m,
            Err(e) => return CheckResult::error(3, name, e),
        };
        let want = (m.ge.dim() + n) / 2;
        for k in 0..cfg.chi_samples {
            let chi = match sample_regular_chi(&m.ge.algebra, n, chi_seed(cfg, n, k)) {
                Ok(x) => x,
                Err(e) => return CheckResult::error(3, name, e),
            };
            match quantized_algebra(&m, &chi, false) {
                Ok(alg) if alg.len() == want => {}
                Ok(alg) => c.fail(format!("n={n}: generator count"), format!("{} != {want}", alg.len())),
                Err(e) => c.fail(format!("n={n}: generators do not commute"), e.to_string()),
            }
        }
        c.note(format!("n={n}: {want} generators, {} functionals", cfg.chi_samples));
    }
    c
}

/// `e u^{-1} + χ(e)` and `e u^{-p}` in `U(g^e)[u^{-1}]`.
fn laurent_letter(
    m: &GlMinimal,
    i: usize,
    j: usize,
    p: u32,
    chi_of: Option<(usize, usize)>,
    chi: &Functional,
) -> LaurentUea {
    let pbw = finite_pbw(m);
    let k = m.ge_index(i, j).expect("g^e label");
    let mut out = InvLaurent::default();
    out.coeffs.insert(p, pbw.letter(k, 1));
    if let Some((a, b)) = chi_of {
        let v = chi.value(m.ge_index(a, b).expect("g^e label")).clone();
        if !v.is_zero() {
            out.coeffs.insert(0, Uea::scalar(v));
        }
    }
    out
}

/// The worked `A_2` for `n = 3` with a chosen correction letter `e_{3c}`.
pub fn reference_a2_n3(m: &GlMinimal, chi: &Functional, correction_col: usize) -> LaurentUea {
    let ring = LaurentRing { pbw: finite_pbw(m) };
    let lc = |i, j| laurent_letter(m, i, j, 1, Some((i, j)), chi);
    let rows = vec![vec![lc(1, 1), lc(1, 2)], vec![lc(3, 1), lc(3, 2)]];
    let d = cdet(&ring, &NCMatrix::from_rows(rows).expect("square")).expect("small");
    ring.add(&d, &laurent_letter(m, 3, correction_col, 2, None, chi))
}

/// The worked `A_2` for `n = 4`; `printed` keeps `χ_{41}` where the
/// entry `e_{42}` calls for `χ_{42}`.
pub fn reference_a2_n4(m: &GlMinimal, chi: &Functional, printed: bool) -> LaurentUea {
    let ring = LaurentRing { pbw: finite_pbw(m) };
    let l = |i, j, a, b| laurent_letter(m, i, j, 1, Some((a, b)), chi);
    let det = |rows| cdet(&ring, &NCMatrix::from_rows(rows).expect("square")).expect("small");
    let chi42 = if printed { (4, 1) } else { (4, 2) };
    let first = det(vec![vec![l(1, 1, 1, 1), l(1, 3, 1, 3)], vec![l(4, 1, 4, 1), l(4, 3, 4, 3)]]);
    let second = det(vec![vec![l(2, 2, 2, 2), l(2, 3, 2, 3)], vec![l(4, 2, chi42.0, chi42.1), l(4, 3, 4, 3)]]);
    let corr = ring.scale(&laurent_letter(m, 4, 3, 2, None, chi), &Rational::from_integer(2.into()));
    ring.add(&ring.add(&first, &second), &corr)
}

pub fn check_cross(cfg: &VerifyConfig) -> CheckResult {
    let name = "A_i = Phi_chi(Q_i)";
    let mut c = CheckResult::new(4, name);
    for n in cfg.quantum_range() {
        let mut run = || -> Result<()> {
            let m = GlMinimal::new(n)?;
            let chi = sample_regular_chi(&m.ge.algebra, n, chi_seed(cfg, n, 0))?;
            let exp = extract_a(&m, &chi)?;
            for (i, q) in extract_q(&m)?.iter().enumerate() {
                let img = phi_chi(&m, q, &chi)?;
                if img != exp.a[i] {
                    c.fail(
                        format!("n={n}: A_{} != Phi_chi(Q_{})", i + 1, i + 1),
                        format!("{} != {}", display_laurent(&m, &exp.a[i]), display_laurent(&m, &img)),
                    );
                }
            }
            let via_phi = phi_tau(&m, &cdet_z(&m)?, &chi)?;
            let direct = cdet(&du_ring(&m), &build_a(&m, &chi)?)?;
            if via_phi != direct {
                c.fail(format!("n={n}: Phi_chi(cdet Z) != cdet(A)"), "operator coefficients differ");
            }
            if n == 3 {
                let a2 = &exp.a[1];
                let (printed, fixed) = (reference_a2_n3(&m, &chi, 1), reference_a2_n3(&m, &chi, 2));
                match (&printed == a2, &fixed == a2) {
                    (false, true) => c.flag(
                        "n=3: printed correction e31 u^-2 of A_2 does not match; e32 u^-2 does",
                        format!("A_2 = {}", display_laurent(&m, a2)),
                    ),
                    (true, _) => c.note("n=3: printed A_2 matches"),
                    (false, false) => c.fail("n=3: A_2 matches neither reading", display_laurent(&m, a2)),
                }
            }
            if n == 4 {
                let a2 = &exp.a[1];
                let (printed, fixed) = (reference_a2_n4(&m, &chi, true), reference_a2_n4(&m, &chi, false));
                match (&printed == a2, &fixed == a2) {
                    (true, _) => c.note("n=4: printed A_2 matches"),
                    (false, true) => c.flag(
                        "n=4: printed chi41 next to e42 does not match; chi42 does",
                        format!(
                            "chi41 = {}, chi42 = {}",
                            chi.value(m.ge_index(4, 1).unwrap()),
                            chi.value(m.ge_index(4, 2).unwrap())
                        ),
                    ),
                    (false, false) => c.fail("n=4: A_2 matches neither reading", display_laurent(&m, a2)),
                }
            }
            Ok(())
        };
        if let Err(e) = run() {
            return CheckResult::error(4, name, e);
        }
    }
    c
}

pub fn check_classical(cfg: &VerifyConfig) -> CheckResult {
    let name = "classical layer: ^eP_i, good systems, MF generators";
    let mut c = CheckResult::new(5, name);
    for n in 2..=5 {
        let mut run = || -> Result<()> {
            let m = GlMinimal::new(n)?;
            let fam = minimal_e_family(&m)?;
            for (i, p) in fam.members.iter().enumerate() {
                if !is_poisson_invariant(p, &m.ge.algebra) {
                    c.fail(
                        format!("n={n}: ^eP_{} not invariant", i + 1),
                        p.display_with(&|k| m.ge.algebra.label(k)).to_string(),
                    );
                }
            }
            if !good_system_check(&fam, &m.ge.algebra, n) {
                c.fail(format!("n={n}: degree sum"), format!("{:?}", fam.degrees));
            }
            if (3..=4).contains(&n) {
                let chi = sample_regular_chi(&m.ge.algebra, n, chi_seed(cfg, n, 0))?;
                let mf = mf_generators(&fam, &chi, &m.ge.algebra, n, false)?;
                if mf.len() != (m.ge.dim() + n) / 2 {
                    c.fail(format!("n={n}: MF generator count"), mf.len().to_string());
                }
                if !independence_check(&mf, 5, cfg.seed) {
                    c.fail(format!("n={n}: MF generators dependent"), "Jacobian rank deficient at all samples");
                }
            }
            c.note(format!("n={n}: degrees {:?}", fam.degrees));
            Ok(())
        };
        if let Err(e) = run() {
            return CheckResult::error(5, name, e);
        }
    }
    c
}

pub fn check_gr(cfg: &VerifyConfig) -> CheckResult {
    let name = "gr A_{e,chi} = MF algebra (n = 3)";
    let mut c = CheckResult::new(6, name);
    let mut run = || -> Result<()> {
        let m = GlMinimal::new(3)?;
        let chi = sample_regular_chi(&m.ge.algebra, 3, chi_seed(cfg, 3, 0))?;
        let r = gr_consistency(&m, &chi)?;
        if let Some((i, j)) = r.symbol_mismatch {
            c.fail("symbol mismatch", format!("A_{i}^({j})"));
        }
        if let Some(d) = r.span_mismatch {
            c.fail("span mismatch", format!("degree {d}"));
        }
        Ok(())
    };
    if let Err(e) = run() {
        return CheckResult::error(6, name, e);
    }
    c
}

pub fn check_jet(_cfg: &VerifyConfig) -> CheckResult {
    let name = "jet invariance of T^j(sigma(Q_i)) (n = 3)";
    let mut c = CheckResult::new(7, name);
    let m = match GlMinimal::new(3) {
        Ok(m) => m,
        Err(e) => return CheckResult::error(7, name, e),
    };
    let qs = match extract_q(&m) {
        Ok(q) => q,
        Err(e) => return CheckResult::error(7, name, e),
    };
    let g = &m.ge.algebra;
    let label = |k: usize| g.label(k);
    for (i, q) in qs.iter().enumerate() {
        let mut p = li_symbol(&loop_pbw(&m), q);
        for j in 0..=2 {
            let weight = p.max_weight().unwrap_or(0);
            for x in 0..g.dim() {
                for k in 0..=weight {
                    let r = classical_action(g, x, k, &p);
                    if !r.is_zero() {
                        c.fail(
                            format!("T^{j}(sigma(Q_{})) not invariant", i + 1),
                            format!("{} t^{k} . = {}", g.label(x), r.display_with(&label)),
                        );
                    }
                }
            }
            p = translation_poly(&p);
        }
    }
    c
}

pub fn check_index(cfg: &VerifyConfig) -> CheckResult {
    let mut c = CheckResult::new(8, "index of g^e equals n");
    for n in 2..=5 {
        match GlMinimal::new(n) {
            Ok(m) => {
                let idx = index_estimate(&m.ge.algebra, 5, cfg.seed);
                if idx != n {
                    c.fail(format!("n={n}"), format!("index estimate {idx}"));
                }
            }
            Err(e) => return CheckResult::error(8, "index of g^e equals n", e),
        }
    }
    c
}

pub fn check_c2(cfg: &VerifyConfig) -> CheckResult {
    let name = "C2 fixture";
    let mut c = CheckResult::new(9, name);
    let fx = match c2_fixture() {
        Ok(f) => f,
        Err(e) => return CheckResult::error(9, name, e),
    };
    if fx.algebra.check_jacobi().is_err() {
        c.fail("Jacobi", "fails");
    }
    if fx.family.degrees != [1, 3] {
        c.fail("degrees", format!("{:?}", fx.family.degrees));
    }
    for p in &fx.family.members {
        if !is_poisson_invariant(p, &fx.algebra) {
            c.fail("invariants not central", p.display_with(&|k| fx.algebra.label(k)).to_string());
        }
    }
    for pt in fx.sample_branch_points(cfg.seed, 50) {
        for qd in &fx.quadrics {
            if qd.evaluate(&pt).map_or(true, |v| !v.is_zero()) {
                c.fail("quadric nonzero on branch point", format!("{pt:?}"));
            }
        }
        if jacobian_rank_at(&fx.family.members, &pt).map_or(true, |r| r > 1) {
            c.fail("rank > 1 on branch point", format!("{pt:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc2);
    let mut generic = 0;
    while generic < 50 {
        let pt = random_linear_point(&mut rng, 6);
        let rank = jacobian_rank_at(&fx.family.members, &pt).unwrap_or(0);
        // points on the hypersurface e = 0 or with vanishing F_2-gradient are not generic
        if pt[&VarId::linear(5)].is_zero() {
            continue;
        }
        generic += 1;
        if rank != 2 {
            c.fail("rank != 2 at sampled point", format!("{pt:?}"));
        }
    }
    c
}

fn random_loop_uea<R: Rng>(m: &GlMinimal, rng: &mut R, max_len: usize, max_depth: u32) -> Uea {
    let pbw = loop_pbw(m);
    pbw.normalize(&Uea::from_terms(random_words(rng, m.ge.dim(), 2, max_len, max_depth)))
}

/// `F(λ + uχ)` against `Σ_j u^j/j! (D_χ^j F)(λ)`.
pub fn taylor_holds(f: &Poly, chi: &Functional, lambda: &Point, u: &Rational) -> Result<bool> {
    let shifted: Point = lambda.iter().map(|(v, x)| (*v, x + u * chi.value(v.generator))).collect();
    let lhs = f.evaluate(&shifted)?;
    let mut rhs = Rational::zero();
    let mut upow = Rational::one();
    for j in 0..=f.degree().unwrap_or(0) {
        rhs += &upow * shift_derivative(f, chi, j).evaluate(lambda)? / factorial(j);
        upow *= u;
    }
    Ok(lhs == rhs)
}

pub fn check_properties(cfg: &VerifyConfig) -> CheckResult {
    let name = "structural property suites";
    let mut c = CheckResult::new(10, name);
    let m = match GlMinimal::new(3) {
        Ok(m) => m,
        Err(e) => return CheckResult::error(10, name, e),
    };
    let g = &m.ge.algebra;
    let dim = g.dim();
    let pbw = loop_pbw(&m);
    let fin = LaurentRing { pbw: finite_pbw(&m) };
    let v = VacuumModule::new(g, &m.kappa);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chi = match Functional::new(g, random_values(&mut rng, dim)) {
        Ok(x) => x,
        Err(e) => return CheckResult::error(10, name, e),
    };
    let mut counts = [0usize; 5];
    for _ in 0..cfg.instances {
        // PBW confluence
        let words = random_words(&mut rng, dim, 1, 4, 2);
        let (w, coef) = &words[0];
        if pbw.normal_form_randomized(w, coef.clone(), &mut rng) != pbw.normal_form(w, coef.clone()) {
            c.fail("PBW confluence", format!("{w:?}"));
        }
        counts[0] += 1;

        // bracket representation, with the central term
        let vec = random_loop_uea(&m, &mut rng, 2, 2);
        let (x, y) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        let (n, k) = (rng.gen_range(0..=3u32), rng.gen_range(1..=3u32));
        let lhs = v.action(x, n, &pbw.mul(&pbw.letter(y, k), &vec));
        let mut rhs = pbw.mul(&pbw.letter(y, k), &v.action(x, n, &vec));
        for (z, cz) in g.bracket_basis(x, y).iter() {
            let part = if n >= k { v.action(z, n - k, &vec) } else { pbw.mul(&pbw.letter(z, k - n), &vec) };
            rhs = rhs.add(&part.scale(cz));
        }
        if n == k {
            rhs = rhs.add(&vec.scale(&(Rational::from_integer((k as i64).into()) * m.kappa.on_basis(x, y))));
        }
        let l2 = rng.gen_range(0..=2u32);
        let comm = v.action(x, n, &v.action(y, l2, &vec)).sub(&v.action(y, l2, &v.action(x, n, &vec)));
        let mut want = Uea::zero();
        for (z, cz) in g.bracket_basis(x, y).iter() {
            want = want.add(&v.action(z, n + l2, &vec).scale(cz));
        }
        if lhs != rhs || comm != want {
            c.fail(
                "bracket representation",
                format!("x={}, y={}, n={n}, m={k}, v={}", g.label(x), g.label(y), pbw.display(&vec)),
            );
        }
        counts[1] += 1;

        // Φ_χ is multiplicative
        let (a, b) = (random_loop_uea(&m, &mut rng, 2, 2), random_loop_uea(&m, &mut rng, 2, 2));
        let ok = match (phi_chi(&m, &pbw.mul(&a, &b), &chi), phi_chi(&m, &a, &chi), phi_chi(&m, &b, &chi)) {
            (Ok(ab), Ok(pa), Ok(pb)) => ab == fin.mul(&pa, &pb),
            _ => false,
        };
        if !ok {
            c.fail("Phi_chi homomorphism", format!("a={}, b={}", pbw.display(&a), pbw.display(&b)));
        }
        counts[2] += 1;

        // Φ_{χ,k+1}(Ta) = k Φ_{χ,k}(a)
        let a = random_loop_uea(&m, &mut rng, 3, 2);
        let ok = match (phi_chi(&m, &translation_uea(&pbw, &a), &chi), phi_chi(&m, &a, &chi)) {
            (Ok(ta), Ok(pa)) => {
                let mut want = InvLaurent::default();
                for (&p, x) in &pa.coeffs {
                    if p > 0 {
                        want.coeffs.insert(p + 1, x.scale(&Rational::from_integer((p as i64).into())));
                    }
                }
                ta == want
            }
            _ => false,
        };
        if !ok {
            c.fail("T-shift recursion", pbw.display(&a));
        }
        counts[3] += 1;

        // Taylor identity for D_χ
        let terms = random_words(&mut rng, dim, 3, 3, 1);
        let f = Poly::from_terms(Some(g.ctx()), terms.iter().map(|(w, c)| (Monomial::from_word(w), c.clone())));
        let lambda = random_linear_point(&mut rng, dim);
        let u = Rational::from_integer(rng.gen_range(-20..=20i64).into());
        if !taylor_holds(&f, &chi, &lambda, &u).unwrap_or(false) {
            c.fail("Taylor identity", f.display_with(&|k| g.label(k)).to_string());
        }
        counts[4] += 1;
    }
    c.note(format!(
        "instances: confluence {}, bracket {}, homomorphism {}, T-shift {}, Taylor {}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ));
    c
}
