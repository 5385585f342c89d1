//! Exact combinatorics of polarized hyperplane arrangements.
//!
//! A polarized arrangement is a triple `(Λ₀, η, ξ)`: a direct-summand lattice
//! `Λ₀ ⊂ ℤⁿ`, an integral translation parameter `η`, and a covector
//! `ξ ∈ Λ₀*`.  Such a triple cuts `n` affine hyperplanes out of the affine
//! slice `η + Λ₀ ⊗ ℝ` and singles out a linear objective; its quantized
//! sibling replaces each hyperplane by a parallel pair at distance one and
//! asks for lattice points rather than real points.
//!
//! This crate computes the discrete invariants of these objects with exact
//! rational arithmetic throughout: feasible/bounded chamber sets, Gale
//! duality, cell partitions, Goldie ranks, the cube-quiver algebras `A(η,ξ)`
//! with their quadratic duals and Koszul complexes, shuffling/twisting
//! bimodules, and the discriminantal (wall) data that governs how all of it
//! varies with the parameters.
//!
//! No floating point is used in any decision path.

pub mod algebra;
pub mod arrangement;
pub mod cells;
pub mod exact;
pub mod gale;
pub mod sample;
pub mod symmetry;

pub use arrangement::{PolarizedArrangement, QuantizedPolarizedArrangement, Sign, SignVector};
pub use exact::{Lattice, Rat, RationalPolyhedron};

/// Enumeration budget, overridable through the `HYPO_BUDGET` environment
/// variable.  Guards the brute-force searches (signed permutation groups,
/// lattice point boxes) against accidentally huge inputs.
pub fn budget() -> usize {
    std::env::var("HYPO_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}
