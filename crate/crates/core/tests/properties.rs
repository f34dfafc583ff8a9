//! Randomized structural properties. Each case draws a seed and builds its
//! inputs from it, so failures shrink to a reproducible seed.

use std::sync::OnceLock;

use mfq_core::foundations::rational::factorial;
use mfq_core::foundations::{q, QMatrix};
use mfq_core::loopv::{phi_bar_coeff, translation_uea, InvLaurent, PbwAlgebra, VacuumModule};
use mfq_core::mfshift::{shift_coefficient, shift_derivative, Functional};
use mfq_core::poisson_inv::lie_poisson_bracket;
use mfq_core::quantize::{finite_pbw, loop_pbw, phi_chi, LaurentRing, NcRing};
use mfq_core::sampling::{random_linear_point, random_values, random_words};
use mfq_core::verify::taylor_holds;
use mfq_core::{GlMinimal, Monomial, Poly, Rational, Uea};
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gl3() -> &'static GlMinimal {
    static M: OnceLock<GlMinimal> = OnceLock::new();
    M.get_or_init(|| GlMinimal::new(3).unwrap())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial in the depth-1 variables of `g^e`.
fn linear_poly(r: &mut ChaCha8Rng, terms: usize, deg: usize) -> Poly {
    let g = &gl3().ge.algebra;
    let words = random_words(r, g.dim(), terms, deg, 1);
    Poly::from_terms(Some(g.ctx()), words.iter().map(|(w, c)| (Monomial::from_word(w), c.clone())))
}

/// Polynomial in loop variables of depth ≤ 3.
fn loop_poly(r: &mut ChaCha8Rng) -> Poly {
    let g = &gl3().ge.algebra;
    let words = random_words(r, g.dim(), 3, 3, 3);
    Poly::from_terms(Some(g.ctx()), words.iter().map(|(w, c)| (Monomial::from_word(w), c.clone())))
}

fn loop_uea(pbw: &PbwAlgebra<'_>, r: &mut ChaCha8Rng, len: usize) -> Uea {
    pbw.normalize(&Uea::from_terms(random_words(r, gl3().ge.dim(), 2, len, 3)))
}

fn chi(r: &mut ChaCha8Rng) -> Functional {
    let g = &gl3().ge.algebra;
    Functional::new(g, random_values(r, g.dim())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (loop_poly(&mut r), loop_poly(&mut r), loop_poly(&mut r));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partial_derivative_is_leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (loop_poly(&mut r), loop_poly(&mut r));
        for v in (&a * &b).variables() {
            let lhs = (&a * &b).partial_derivative(v);
            let rhs = &(&a.partial_derivative(v) * &b) + &(&a * &b.partial_derivative(v));
            prop_assert_eq!(lhs, rhs);
        }
        let x = chi(&mut r);
        let lhs = shift_derivative(&(&a * &b), &x, 1);
        let rhs = &(&shift_derivative(&a, &x, 1) * &b) + &(&a * &shift_derivative(&b, &x, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_vectors_are_annihilated(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..6), r.gen_range(1..6));
        let mut m = QMatrix::from_rows((0..rows).map(|_| random_values(&mut r, cols)).collect());
        if r.gen_bool(0.5) && rows > 1 {
            // force a dependency
            for j in 0..cols {
                m[(rows - 1, j)] = m[(0, j)].clone() * q(3);
            }
        }
        let (rank, kernel) = m.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn lowest_components_multiply(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (linear_poly(&mut r, 4, 3), linear_poly(&mut r, 4, 3));
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            (&a * &b).min_degree_component().unwrap(),
            &a.min_degree_component().unwrap() * &b.min_degree_component().unwrap()
        );
        prop_assert_eq!((&a * &b).min_degree(), Some(a.min_degree().unwrap() + b.min_degree().unwrap()));
    }

    #[test]
    fn poisson_bracket_is_lie_and_leibniz(seed in any::<u64>()) {
        let g = &gl3().ge.algebra;
        let mut r = rng(seed);
        let (a, b, c) = (linear_poly(&mut r, 2, 2), linear_poly(&mut r, 2, 2), linear_poly(&mut r, 2, 2));
        let br = |x: &Poly, y: &Poly| lie_poisson_bracket(x, y, g).unwrap();
        prop_assert_eq!(br(&a, &b), -br(&b, &a));
        let jac = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&a, &(&b * &c)), &(&br(&a, &b) * &c) + &(&b * &br(&a, &c)));
    }

    #[test]
    fn pbw_normal_form_is_order_independent(seed in any::<u64>()) {
        let pbw = loop_pbw(gl3());
        let mut r = rng(seed);
        for (w, c) in random_words(&mut r, gl3().ge.dim(), 3, 5, 3) {
            prop_assert_eq!(pbw.normal_form_randomized(&w, c.clone(), &mut r), pbw.normal_form(&w, c));
        }
    }

    #[test]
    fn pbw_product_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (pbw, depth) in [(loop_pbw(gl3()), 3), (finite_pbw(gl3()), 1)] {
            let mut draw = || pbw.normalize(&Uea::from_terms(random_words(&mut r, gl3().ge.dim(), 2, 2, depth)));
            let (a, b, c) = (draw(), draw(), draw());
            prop_assert_eq!(pbw.mul(&pbw.mul(&a, &b), &c), pbw.mul(&a, &pbw.mul(&b, &c)));
        }
    }

    #[test]
    fn vacuum_action_represents_the_bracket(seed in any::<u64>()) {
        let m = gl3();
        let g = &m.ge.algebra;
        let v = VacuumModule::new(g, &m.kappa);
        let pbw = v.pbw();
        let mut r = rng(seed);
        let vec = loop_uea(&pbw, &mut r, 2);
        let (x, y) = (r.gen_range(0..g.dim()), r.gen_range(0..g.dim()));
        let (n, l) = (r.gen_range(0..=3u32), r.gen_range(0..=3u32));
        // nonnegative modes: [x t^n, y t^l] = [x,y] t^{n+l}
        let comm = v.action(x, n, &v.action(y, l, &vec)).sub(&v.action(y, l, &v.action(x, n, &vec)));
        let mut want = Uea::zero();
        for (z, c) in g.bracket_basis(x, y).iter() {
            want = want.add(&v.action(z, n + l, &vec).scale(c));
        }
        prop_assert_eq!(comm, want);
        // a negative mode acts by left multiplication
        let k = r.gen_range(1..=3u32);
        let lhs = v.action(x, n, &pbw.mul(&pbw.letter(y, k), &vec));
        let mut rhs = pbw.mul(&pbw.letter(y, k), &v.action(x, n, &vec));
        for (z, c) in g.bracket_basis(x, y).iter() {
            let part = if n >= k { v.action(z, n - k, &vec) } else { pbw.mul(&pbw.letter(z, k - n), &vec) };
            rhs = rhs.add(&part.scale(c));
        }
        if n == k {
            rhs = rhs.add(&vec.scale(&(q(k as i64) * m.kappa.on_basis(x, y))));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_is_a_derivation(seed in any::<u64>()) {
        let pbw = loop_pbw(gl3());
        let mut r = rng(seed);
        let (a, b) = (loop_uea(&pbw, &mut r, 2), loop_uea(&pbw, &mut r, 2));
        let lhs = translation_uea(&pbw, &pbw.mul(&a, &b));
        let rhs = pbw.mul(&translation_uea(&pbw, &a), &b).add(&pbw.mul(&a, &translation_uea(&pbw, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_chi_is_multiplicative(seed in any::<u64>()) {
        let m = gl3();
        let pbw = loop_pbw(m);
        let ring = LaurentRing { pbw: finite_pbw(m) };
        let mut r = rng(seed);
        let x = chi(&mut r);
        let (a, b) = (loop_uea(&pbw, &mut r, 2), loop_uea(&pbw, &mut r, 2));
        let ab = phi_chi(m, &pbw.mul(&a, &b), &x).unwrap();
        prop_assert_eq!(ab, ring.mul(&phi_chi(m, &a, &x).unwrap(), &phi_chi(m, &b, &x).unwrap()));
    }

    #[test]
    fn translation_shifts_phi_coefficients(seed in any::<u64>()) {
        let m = gl3();
        let pbw = loop_pbw(m);
        let mut r = rng(seed);
        let x = chi(&mut r);
        let a = loop_uea(&pbw, &mut r, 3);
        let ta = phi_chi(m, &translation_uea(&pbw, &a), &x).unwrap();
        let pa = phi_chi(m, &a, &x).unwrap();
        let mut want = InvLaurent::default();
        for (&k, c) in &pa.coeffs {
            if k > 0 {
                want.coeffs.insert(k + 1, c.scale(&q(k as i64)));
            }
        }
        prop_assert_eq!(ta, want);
    }

    #[test]
    fn shift_coefficients_are_taylor_coefficients(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = linear_poly(&mut r, 4, 4);
        let x = chi(&mut r);
        let lambda = random_linear_point(&mut r, gl3().ge.dim());
        let u = q(r.gen_range(-9..=9));
        prop_assert!(taylor_holds(&f, &x, &lambda, &u).unwrap());
        // D^j F / j! is shift_coefficient
        for j in 0..3 {
            prop_assert_eq!(
                shift_coefficient(&f, &x, j),
                shift_derivative(&f, &x, j).scale(&(Rational::one() / factorial(j)))
            );
        }
    }

    #[test]
    fn phi_bar_of_homogeneous_is_shift(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=4);
        let f = linear_poly(&mut r, 4, 4).homogeneous_component(d);
        let x = chi(&mut r);
        for k in 0..=d {
            prop_assert_eq!(phi_bar_coeff(&f, &x, k), shift_coefficient(&f, &x, d - k));
        }
    }

    #[test]
    fn top_symbols_multiply(seed in any::<u64>()) {
        let pbw = loop_pbw(gl3());
        let mut r = rng(seed);
        let (a, b) = (loop_uea(&pbw, &mut r, 3), loop_uea(&pbw, &mut r, 3));
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(pbw.top_symbol(&pbw.mul(&a, &b)), &pbw.top_symbol(&a) * &pbw.top_symbol(&b));
    }
}
