//! Exact arithmetic underpinning every other module.

pub mod linalg;
pub mod poly;
pub mod rational;

pub use linalg::{jacobian_rank_at, span_rank, QMatrix};
pub use poly::{poly_arith, Ctx, Monomial, Point, Poly, PolyOp, VarId};
pub use rational::{frac, q, Rational};
