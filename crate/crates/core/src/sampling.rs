//! Seeded sampling of rational vectors and points.

use rand::Rng;

use crate::foundations::{q, Point, Rational, VarId};

/// Integer values drawn uniformly from `[-20, 20]`.
pub fn random_values<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| q(rng.gen_range(-20..=20))).collect()
}

/// A point assigning random values to each of the given variables.
pub fn random_point<R: Rng>(rng: &mut R, vars: impl IntoIterator<Item = VarId>) -> Point {
    vars.into_iter().map(|v| (v, q(rng.gen_range(-20..=20)))).collect()
}

/// Depth-1 point on all `dim` generators.
pub fn random_linear_point<R: Rng>(rng: &mut R, dim: usize) -> Point {
    random_point(rng, (0..dim).map(VarId::linear))
}

/// A word of `1..=max_len` loop letters over `dim` generators with depths
/// in `1..=max_depth`; not ordered.
pub fn random_word<R: Rng>(rng: &mut R, dim: usize, max_len: usize, max_depth: u32) -> Vec<VarId> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len).map(|_| VarId::new(rng.gen_range(0..dim), rng.gen_range(1..=max_depth.max(1)))).collect()
}

/// A raw combination of up to `max_terms` random words with nonzero
/// coefficients in `[-20, 20]`.
pub fn random_words<R: Rng>(
    rng: &mut R,
    dim: usize,
    max_terms: usize,
    max_len: usize,
    max_depth: u32,
) -> Vec<(Vec<VarId>, Rational)> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    (0..terms)
        .map(|_| {
            let w = random_word(rng, dim, max_len, max_depth);
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-20..=20);
            }
            (w, q(c))
        })
        .collect()
}
