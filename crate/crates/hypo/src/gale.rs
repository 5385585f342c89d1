//! Gale duality of polarized arrangements.
//!
//! The dual of `(Λ₀, η, ξ)` lives on the complementary lattice `Λ₀^!` and
//! swaps the roles of the parameters: `η^! = -ξ` and `ξ^! = -η` under the
//! identifications `Z^n/Λ₀^! ≅ Λ₀*` and `(Λ₀^!)* ≅ Z^n/Λ₀`.  Feasibility and
//! boundedness trade places: `F_η = B_{ξ^!}` and `F_{η^!} = B_ξ`.

use crate::arrangement::{ArrangementError, PolarizedArrangement};
use crate::exact::{solve_integer, Int, Lattice, Rat};
use num_traits::Zero;
use std::cmp::Ordering;

/// The Gale dual arrangement.  The η-lift (defined only modulo `Λ₀^!`) is
/// chosen with smallest max-norm, ties broken lexicographically, so the
/// output is deterministic; all chamber data is lift-invariant.
pub fn gale_dual(x: &PolarizedArrangement) -> PolarizedArrangement {
    let dual_lattice = x.lattice().orthogonal_complement();

    // η^!: any integer w with <w, b_j> = -ξ_j for the basis rows b_j of Λ₀
    // (solvable because Λ₀ is a direct summand), minimized over the coset
    // w + Λ₀^!.
    let neg_xi: Vec<Int> = x.xi().iter().map(|v| -v.clone()).collect();
    let w0 = solve_integer(x.lattice().basis(), &neg_xi)
        .expect("direct summand guarantees solvability");
    let eta_dual = minimal_coset_representative(&w0, &dual_lattice);

    // ξ^!: evaluate -<η, ·> on the basis rows of Λ₀^!.
    let xi_dual: Vec<Int> = dual_lattice
        .basis()
        .row_vecs()
        .iter()
        .map(|row| -row.iter().zip(x.eta()).map(|(a, b)| a * b).sum::<Int>())
        .collect();

    PolarizedArrangement::new(dual_lattice, eta_dual, xi_dual)
        .expect("dual parameters have matching dimensions")
}

/// Smallest max-norm representative of `w0 + L`, lexicographically smallest
/// among ties.
fn minimal_coset_representative(w0: &[Int], l: &Lattice) -> Vec<Int> {
    use crate::exact::{lattice_points_in_polytope, AffineInequality, AffineLattice,
        RationalPolyhedron};
    let n = w0.len();
    let bound = w0
        .iter()
        .map(|v| v.clone().max(-v.clone()))
        .max()
        .unwrap_or_else(Int::zero);
    let base: Vec<Rat> = w0.iter().cloned().map(Rat::from_integer).collect();
    let al = AffineLattice::new(base, l.clone()).expect("dimensions match");
    let mut ineqs = Vec::new();
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::from_integer(Int::from(1));
        ineqs.push(AffineInequality::le(
            e.clone(),
            Rat::from_integer(bound.clone()),
        ));
        ineqs.push(AffineInequality::ge(e, -Rat::from_integer(bound.clone())));
    }
    let box_poly = RationalPolyhedron::new(n, ineqs).expect("well-formed box");
    let candidates =
        lattice_points_in_polytope(&al, &box_poly).expect("box enumeration is bounded");
    let mut best: Option<Vec<Int>> = None;
    for cand in candidates {
        let v: Vec<Int> = cand.iter().map(|r| r.to_integer()).collect();
        let norm = v
            .iter()
            .map(|x| x.clone().max(-x.clone()))
            .max()
            .unwrap_or_else(Int::zero);
        best = Some(match best {
            None => v,
            Some(b) => {
                let bnorm = b
                    .iter()
                    .map(|x| x.clone().max(-x.clone()))
                    .max()
                    .unwrap_or_else(Int::zero);
                match norm.cmp(&bnorm) {
                    Ordering::Less => v,
                    Ordering::Greater => b,
                    Ordering::Equal => {
                        if v < b {
                            v
                        } else {
                            b
                        }
                    }
                }
            }
        });
    }
    best.expect("the coset contains w0 itself")
}

/// The chamber-exchange and regularity-transfer checks for a polarized
/// arrangement and its computed Gale dual.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualityReport {
    pub f_eta_eq_b_xidual: bool,
    pub f_etadual_eq_b_xi: bool,
    pub p_eq: bool,
    pub regular_transfer: bool,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.f_eta_eq_b_xidual && self.f_etadual_eq_b_xi && self.p_eq && self.regular_transfer
    }
}

pub fn verify_duality(x: &PolarizedArrangement) -> DualityReport {
    let dual = gale_dual(x);
    let f = x.feasible_signs();
    let b = x.bounded_signs();
    let fd = dual.feasible_signs();
    let bd = dual.bounded_signs();
    let p = x.bounded_feasible_signs();
    let pd = dual.bounded_feasible_signs();
    DualityReport {
        f_eta_eq_b_xidual: f == bd,
        f_etadual_eq_b_xi: fd == b,
        p_eq: p == pd,
        regular_transfer: (x.eta_regular() == dual.xi_regular())
            && (x.xi_regular() == dual.eta_regular()),
    }
}

/// Are two lattices complementary with respect to the coordinate inner
/// product?
pub fn lattices_complementary(a: &Lattice, b: &Lattice) -> bool {
    a.ambient_rank() == b.ambient_rank() && a.orthogonal_complement().same_lattice(b)
}

/// A Gale-dual pair must consist of mutually complementary lattices; this
/// also exposes the basis matrices used by downstream pairings.
pub fn check_dual_pair(
    x: &PolarizedArrangement,
    xd: &PolarizedArrangement,
) -> Result<(), ArrangementError> {
    if !lattices_complementary(x.lattice(), xd.lattice()) {
        return Err(ArrangementError::ParameterMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::{diagonal_lattice, diagonal_polarized};
    use crate::arrangement::SignVector;
    use crate::exact::IntMat;

    fn sv(s: &str) -> SignVector {
        SignVector::from_str_full(s)
    }

    #[test]
    fn dual_of_small_example() {
        // n=2, Λ₀ = span{(1,-1)}, η = (1,0), ξ = (1)
        let x = PolarizedArrangement::from_i64(2, &[vec![1, -1]], &[1, 0], &[1]).unwrap();
        let d = gale_dual(&x);
        assert_eq!(d.lattice().basis(), &IntMat::from_i64(&[vec![1, 1]]));
        assert_eq!(d.xi(), &[Int::from(-1)]);
        // η^! is a lift w with <w,(1,-1)> = -1; minimal max-norm candidates
        // are (0,1) and (-1,0); lexicographic tie-break picks (-1,0)
        assert_eq!(d.eta(), &[Int::from(-1), Int::from(0)]);
        let w: Int = d.eta()[0].clone() - d.eta()[1].clone();
        assert_eq!(w, Int::from(-1));
    }

    #[test]
    fn double_dual_same_key() {
        for x in [
            PolarizedArrangement::from_i64(2, &[vec![1, -1]], &[1, 0], &[1]).unwrap(),
            diagonal_polarized(3, 1),
            diagonal_polarized(4, 2),
        ] {
            let dd = gale_dual(&gale_dual(&x));
            assert_eq!(x.equivalence_key(), dd.equivalence_key());
        }
    }

    #[test]
    fn duality_n3_diagonal() {
        let x = diagonal_polarized(3, 1);
        let report = verify_duality(&x);
        assert!(report.all_hold(), "{report:?}");
        let d = gale_dual(&x);
        // n=3 diagonal is dual to a rank-one (determinant-style) arrangement
        assert_eq!(d.lattice().basis(), &IntMat::from_i64(&[vec![1, 1, 1]]));
        assert_eq!(x.bounded_feasible_signs().len(), 3);
        assert_eq!(d.bounded_feasible_signs().len(), 3);
    }

    #[test]
    fn duality_n2_diagonal() {
        let x = diagonal_polarized(2, 1);
        let report = verify_duality(&x);
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(
            x.bounded_feasible_signs(),
            vec![sv("++"), sv("-+")]
        );
        assert_eq!(
            gale_dual(&x).bounded_feasible_signs(),
            vec![sv("++"), sv("-+")]
        );
    }

    #[test]
    fn dual_lift_invariance() {
        // chamber data of the dual must not depend on which lift the dual
        // construction picked: perturb by dual-lattice elements
        let x = diagonal_polarized(3, 2);
        let d = gale_dual(&x);
        let shift: Vec<Int> = d.lattice().basis().row(0);
        let d2 = d.translated(&shift);
        assert_eq!(d.equivalence_key(), d2.equivalence_key());
    }

    #[test]
    fn complementarity() {
        let l = diagonal_lattice(3);
        let c = l.orthogonal_complement();
        assert!(lattices_complementary(&l, &c));
        assert!(lattices_complementary(&c, &l));
        assert!(!lattices_complementary(&l, &diagonal_lattice(3).orthogonal_complement().orthogonal_complement()));
    }
}
