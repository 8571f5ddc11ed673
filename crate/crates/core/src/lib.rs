//! Checker triangulated surfaces and the symmetric-group calculus behind them.
//!
//! A triple of permutations `(blue, red, yellow) ∈ S_n³` glues `n` white and
//! `n` black triangles into a closed oriented surface whose edges carry three
//! colours. This crate implements that dictionary and the algebra built on
//! it:
//!
//! * [`perm`]: finitely supported permutations;
//! * [`surface`]: triples, cell complexes, canonical forms, dessins;
//! * [`cosets`]: the category of double cosets `K[α] \ G / K[β]` with its
//!   shift-stabilised product, geometric concatenation and involution;
//! * [`convolution`]: exact convolution algebras on `S_n³` and the
//!   concentration of coset products;
//! * [`spherical`]: spherical functions of tensor-product representations;
//! * [`ik`]: the filtered algebra on all finite checker surfaces, its
//!   projections to conjugacy-class algebras and its Poisson bracket.

pub mod convolution;
pub mod cosets;
pub mod error;
pub mod ik;
pub mod json;
pub mod lincomb;
pub mod perm;
pub mod random;
pub mod spherical;
pub mod surface;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use perm::Permutation;
pub use surface::{CheckerSurface, LabeledSurface, Triple};
