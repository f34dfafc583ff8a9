//! Exact rational computation of Mishchenko–Fomenko subalgebras for the
//! centralizer of a minimal nilpotent in `gl_n`, and of their quantization
//! through central elements of the vacuum module at a non-critical level.

pub mod error;
pub mod foundations;
pub mod liealg;
pub mod loopv;
pub mod mfshift;
pub mod poisson_inv;
pub mod quantize;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use foundations::{Monomial, Point, Poly, QMatrix, Rational, VarId};
pub use liealg::{GlMinimal, LieAlgebra, LieElement};
pub use loopv::{InvLaurent, Uea};
pub use mfshift::Functional;
pub use verify::{CheckResult, Report, Status, VerifyConfig};
