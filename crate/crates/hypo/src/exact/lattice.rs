//! Direct-summand lattices in `Z^n`.

use super::{
    hermite_normal_form, kernel_lattice, smith_normal_form, ExactError, Int, IntMat, Rat, RatMat,
};
use num_traits::{One, Zero};

/// A rank-`k` sublattice `Λ₀ ⊂ Z^n` presented by a basis, required to be a
/// direct summand that avoids the coordinate hyperplanes and axes.
///
/// The basis rows are kept exactly as given: the covector `ξ ∈ Λ₀*` is
/// always expressed in the coordinates dual to these rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    n: usize,
    basis: IntMat,
}

/// True iff the row lattice of `m` is a direct summand of `Z^n`, i.e. all
/// Smith invariant factors are 1.
pub fn is_direct_summand(m: &IntMat) -> Result<bool, ExactError> {
    if m.to_rat().rank() < m.rows() {
        return Err(ExactError::DependentRows);
    }
    Ok(smith_normal_form(m)
        .invariant_factors()
        .iter()
        .all(|d| d.is_one()))
}

impl Lattice {
    pub fn new(n: usize, basis: IntMat) -> Result<Self, ExactError> {
        if basis.cols() != n {
            return Err(ExactError::DimensionMismatch {
                expected: n,
                got: basis.cols(),
            });
        }
        if !is_direct_summand(&basis)? {
            return Err(ExactError::NotSummand);
        }
        for i in 0..n {
            if basis.col(i).iter().all(|x| x.is_zero()) {
                return Err(ExactError::ZeroColumn);
            }
        }
        // No coordinate axis inside the rational row span.  For full-rank
        // lattices the condition is vacuously violated; those arise as
        // essentializations and as the "generic n = k" instances, so the
        // check only applies to proper sublattices.
        if basis.rows() < n {
            let bt = basis.to_rat();
            for i in 0..n {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                // e_i in row span  <=>  rank unchanged when appended
                let mut rows = bt.rows_vec();
                rows.push(e);
                if RatMat::from_rows(rows).rank() == basis.rows() {
                    return Err(ExactError::ContainsAxis);
                }
            }
        }
        Ok(Lattice { n, basis })
    }

    pub fn from_i64(n: usize, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        Lattice::new(n, IntMat::from_i64(rows))
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    /// Canonical Hermite form of the basis; equal iff the row lattices agree.
    pub fn hermite_basis(&self) -> IntMat {
        hermite_normal_form(&self.basis)
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.n == other.n && self.hermite_basis() == other.hermite_basis()
    }

    /// The n columns of the basis matrix, read as covectors on the
    /// Λ₀-coordinates: column `i` is the normal of the i-th restricted
    /// hyperplane.
    pub fn restricted_normals(&self) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| {
                self.basis
                    .col(i)
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect()
            })
            .collect()
    }

    /// Integer membership test.
    pub fn contains(&self, v: &[Int]) -> bool {
        solve_int_transposed(&self.basis, v).is_some()
    }

    /// The complementary lattice `{w in Z^n : <w, v> = 0 for all v in Λ₀}`,
    /// with Hermite-canonical basis.  Applying it twice returns a lattice
    /// with the same row span.
    pub fn orthogonal_complement(&self) -> Lattice {
        let ker = kernel_lattice(&self.basis);
        Lattice {
            n: self.n,
            basis: ker,
        }
    }

    /// Map a point given in Λ₀-coordinates to the ambient space: `t ↦ Bᵀt`.
    pub fn embed(&self, t: &[Rat]) -> Vec<Rat> {
        assert_eq!(t.len(), self.rank());
        (0..self.n)
            .map(|i| {
                (0..self.rank())
                    .map(|j| Rat::from_integer(self.basis.get(j, i).clone()) * &t[j])
                    .sum()
            })
            .collect()
    }
}

pub(super) fn solve_int_transposed(basis: &IntMat, v: &[Int]) -> Option<Vec<Int>> {
    // does v lie in the row lattice, i.e. Bᵀ x = v solvable over Z?
    super::solve_integer(&basis.transpose(), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summand_examples() {
        assert!(is_direct_summand(&IntMat::from_i64(&[vec![1, -1]])).unwrap());
        // SNF oracle: factor 2
        assert!(!is_direct_summand(&IntMat::from_i64(&[vec![2, 0]])).unwrap());
        assert!(is_direct_summand(&IntMat::from_i64(&[vec![1, 1, 1]])).unwrap());
        assert_eq!(
            is_direct_summand(&IntMat::from_i64(&[vec![1, 1], vec![2, 2]])),
            Err(ExactError::DependentRows)
        );
    }

    #[test]
    fn lattice_invariants() {
        assert!(Lattice::from_i64(2, &[vec![1, -1]]).is_ok());
        assert_eq!(
            Lattice::from_i64(2, &[vec![2, 0]]),
            Err(ExactError::NotSummand)
        );
        assert_eq!(
            Lattice::from_i64(3, &[vec![1, 0, 0], vec![0, 1, -1]]),
            Err(ExactError::ContainsAxis)
        );
        assert_eq!(
            Lattice::from_i64(3, &[vec![1, -1, 0]]),
            Err(ExactError::ZeroColumn)
        );
    }

    #[test]
    fn complement_examples() {
        // solve <w,(1,-1)> = 0 over Z
        let l = Lattice::from_i64(2, &[vec![1, -1]]).unwrap();
        let c = l.orthogonal_complement();
        assert_eq!(c.basis(), &IntMat::from_i64(&[vec![1, 1]]));

        // integer kernel oracle
        let l = Lattice::from_i64(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        let c = l.orthogonal_complement();
        assert_eq!(c.basis(), &IntMat::from_i64(&[vec![1, 1, 1]]));

        // involution on row spans
        let l = Lattice::from_i64(3, &[vec![1, 1, 1]]).unwrap();
        let cc = l.orthogonal_complement().orthogonal_complement();
        assert!(l.same_lattice(&cc));
    }

    #[test]
    fn complement_rank_sum() {
        let l = Lattice::from_i64(4, &[vec![1, -1, 0, 2], vec![0, 1, -1, 1]]).unwrap();
        let c = l.orthogonal_complement();
        assert_eq!(l.rank() + c.rank(), 4);
        // concatenated bases have full rank
        let mut rows = l.basis().row_vecs();
        rows.extend(c.basis().row_vecs());
        assert_eq!(
            super::super::matrix_rank(
                &rows
                    .iter()
                    .map(|r| r.iter().cloned().map(Rat::from_integer).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            ),
            4
        );
        // complement really is orthogonal and a summand
        assert!(is_direct_summand(c.basis()).unwrap());
    }
}
