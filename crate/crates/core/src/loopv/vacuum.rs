//! The vacuum module `V^κ(q) ≅ U(q̂_-)` with the action of `q̂_+`.

use num_traits::{One, Zero};

use super::pbw::{PbwAlgebra, PbwKind, Uea};
use crate::foundations::{q, Rational, VarId};
use crate::liealg::{BilinearForm, LieAlgebra};

/// `V^κ(q)` at a fixed level `κ`.
///
/// Modes act through `[x t^n, y t^{-m}] = [x,y] t^{n-m} + m κ(x,y) δ_{n,m}`
/// and `x t^n 𝕀 = 0` for `n ≥ 0`.
#[derive(Clone, Copy, Debug)]
pub struct VacuumModule<'a> {
    pbw: PbwAlgebra<'a>,
    level: &'a BilinearForm,
}

impl<'a> VacuumModule<'a> {
    pub fn new(lie: &'a LieAlgebra, level: &'a BilinearForm) -> Self {
        assert_eq!(level.gram().rows(), lie.dim(), "level must be a form on the same algebra");
        VacuumModule { pbw: PbwAlgebra::new(lie, PbwKind::Loop), level }
    }

    pub fn pbw(&self) -> PbwAlgebra<'a> {
        self.pbw
    }

    /// `x t^n · v𝕀` for `n ≥ 0`, computed by moving the mode rightwards
    /// until it hits the vacuum. Lowers weight by exactly `n`.
    pub fn action(&self, x: usize, n: u32, v: &Uea) -> Uea {
        let lie = self.pbw.lie();
        let mut out = Uea::zero();
        for (w, c) in v.terms() {
            for (i, &y) in w.iter().enumerate() {
                let m = y.depth;
                let suffix = Uea::monomial(w[i + 1..].to_vec(), Rational::one());
                let mut r = Uea::zero();
                for (z, cz) in lie.bracket_basis(x, y.generator).iter() {
                    let part = if n < m {
                        self.pbw.mul(&self.pbw.letter(z, m - n), &suffix)
                    } else {
                        self.action(z, n - m, &suffix)
                    };
                    r.add_assign_scaled(&part, cz);
                }
                if n == m {
                    let central = q(m as i64) * self.level.on_basis(x, y.generator);
                    if !central.is_zero() {
                        r.add_assign_scaled(&suffix, &central);
                    }
                }
                if r.is_zero() {
                    continue;
                }
                let prefix = Uea::monomial(w[..i].to_vec(), c.clone());
                out.add_assign_scaled(&self.pbw.mul(&prefix, &r), &Rational::one());
            }
        }
        out
    }

    /// First `(x, n, x t^n · v)` with a nonzero result, if any.
    ///
    /// Modes with `n` above the top weight of `v` annihilate `v` because the
    /// action lowers weight by `n`, so only `0 ≤ n ≤ weight(v)` is scanned.
    pub fn center_witness(&self, v: &Uea) -> Option<(usize, u32, Uea)> {
        let top = v.max_weight()?;
        for n in 0..=top {
            for x in 0..self.pbw.lie().dim() {
                let r = self.action(x, n, v);
                if !r.is_zero() {
                    return Some((x, n, r));
                }
            }
        }
        None
    }

    /// Whether `v` is annihilated by `q̂_+`, i.e. lies in `Z(V^κ(q))`.
    pub fn is_center(&self, v: &Uea) -> bool {
        self.center_witness(v).is_none()
    }

    /// The vector `y_{(-m)}𝕀`.
    pub fn loop_letter(&self, y: usize, m: u32) -> Uea {
        Uea::monomial(vec![VarId::new(y, m)], Rational::one())
    }
}
