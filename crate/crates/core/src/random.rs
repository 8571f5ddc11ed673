//! Seeded random generation of permutations, triples and labelled surfaces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::perm::Permutation;
use crate::surface::{canonical_form, CheckerSurface, LabeledSurface, Triple};

/// Uniform permutation of `0..n` fixing `0..fixed` pointwise.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize, fixed: usize) -> Permutation {
    let fixed = fixed.min(n);
    let mut images: Vec<usize> = (0..n).collect();
    images[fixed..].shuffle(rng);
    Permutation::from_images(&images).expect("shuffle is a bijection")
}

/// Uniform element of `S_n × S_n × S_n`.
pub fn random_triple<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Triple {
    Triple::new(
        random_permutation(rng, n, 0),
        random_permutation(rng, n, 0),
        random_permutation(rng, n, 0),
    )
}

/// Uniform pair `(g1, g2)` embedded as `(g1, g2, id)`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Triple {
    Triple::new(
        random_permutation(rng, n, 0),
        random_permutation(rng, n, 0),
        Permutation::identity(n),
    )
}

/// Class of a uniform triple of degree `n` in `K[alpha] \ G / K[beta]`.
pub fn random_coset<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: usize, beta: usize) -> LabeledSurface {
    let n = n.max(alpha).max(beta);
    canonical_form(&random_triple(rng, n), alpha, beta).expect("labels fit")
}

/// Checker surface of a uniform triple of degree `n` (double triangles kept).
pub fn random_surface<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CheckerSurface {
    CheckerSurface::new(&random_triple(rng, n))
}
