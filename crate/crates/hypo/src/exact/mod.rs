//! Exact integer and rational linear algebra.
//!
//! Everything downstream reduces to the primitives in this module: Smith and
//! Hermite normal forms with unimodular transforms, saturated kernels,
//! rational rank/solve, Fourier-Motzkin feasibility and optimization, and
//! lattice-point search in rational polyhedra.  All arithmetic is arbitrary
//! precision.

mod int;
mod lattice;
mod lp;
mod polyhedron;
mod rat;

pub use int::{
    complete_to_basis, hermite_normal_form, int_inverse, kernel_lattice, smith_normal_form,
    solve_integer, IntMat, SnfResult,
};
pub use lattice::{is_direct_summand, Lattice};
pub use lp::{feasible_witness, maximize, minimize, LinCon, Opt, Rel};
pub use polyhedron::{
    functional_bounded_on_cone, integer_point, lattice_point_witness, lattice_points_in_polytope,
    polyhedron_feasible, AffineInequality, AffineLattice, RationalPolyhedron, Sense,
};
pub(crate) use polyhedron::cone_region_is_origin;
pub use rat::{matrix_rank, RatMat};

use num_traits::{One, Signed, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix rows are linearly dependent")]
    DependentRows,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone system has a nonzero constant term")]
    NonHomogeneous,
    #[error("full enumeration requested on an unbounded polyhedron")]
    UnboundedEnumeration,
    #[error("lattice basis is not a direct summand of Z^n")]
    NotSummand,
    #[error("lattice has a zero column (a hyperplane degenerates)")]
    ZeroColumn,
    #[error("lattice contains a coordinate axis")]
    ContainsAxis,
}

pub(crate) fn rat_int(i: i64) -> Rat {
    Rat::from_integer(Int::from(i))
}

pub(crate) fn rat_is_int(r: &Rat) -> bool {
    r.denom().is_one() || r.numer().is_zero()
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry keeps its sign).
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    use num_integer::Integer;
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<Int> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// Normalize an integer vector so its first nonzero entry is positive.
pub fn sign_normalize(mut v: Vec<Int>) -> Vec<Int> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -x.clone();
            }
        }
    }
    v
}
