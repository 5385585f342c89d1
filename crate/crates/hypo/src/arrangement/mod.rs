//! Polarized and quantized polarized arrangements and their chamber sets.
//!
//! A `PolarizedArrangement` is `(Λ₀, η, ξ)`; it determines the arrangement of
//! hyperplanes `h_i = 0` on the affine slice `η + Λ₀⊗ℝ`, the feasible sign
//! vectors `F_η` (nonempty chambers), and the bounded sign vectors `B_ξ`
//! (recession cones on which ξ is proper and bounded above).  The quantized
//! version replaces each hyperplane by the pair `h_i⁺ = 0`, `h_i⁻ = 0` at
//! distance one and asks chambers to contain a point of the lattice orbit
//! `𝚲 = v₀ + Λ₀`.
//!
//! All chamber computations happen in Λ₀-coordinates `t`, where the point of
//! the slice is `η + Bᵀt` and the i-th coordinate functional restricts to the
//! i-th column of the basis matrix.

use crate::exact::{
    feasible_witness, integer_point, matrix_rank, rat_is_int, smith_normal_form, ExactError, Int,
    IntMat, Lattice, LinCon, Rat, Rel,
};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parameter vector has wrong length: expected {expected}, got {got}")]
    BadParameter { expected: usize, got: usize },
    #[error("arrangements disagree in Λ₀ or ξ")]
    ParameterMismatch,
    #[error("operation requires regular parameters")]
    NotRegular,
    #[error("doubled arrangement has no vertex")]
    Inessential,
    #[error("projected lattice is not a direct summand")]
    NotSummand,
}

/// A sign, ordered `+ < -` (the canonical sign-vector order is lexicographic
/// in this order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A sign vector on an index subset `S ⊆ {0, .., n-1}` (0-based internally;
/// rendered 1-based).  Most sign vectors in this crate are full, `S = {0..n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignVector {
    indices: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn full(signs: Vec<Sign>) -> Self {
        SignVector {
            indices: (0..signs.len()).collect(),
            signs,
        }
    }

    pub fn on(indices: Vec<usize>, signs: Vec<Sign>) -> Self {
        assert_eq!(indices.len(), signs.len());
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        SignVector { indices, signs }
    }

    pub fn from_str_full(s: &str) -> Self {
        SignVector::full(
            s.chars()
                .map(|c| match c {
                    '+' => Sign::Plus,
                    '-' => Sign::Minus,
                    _ => panic!("bad sign character {c:?}"),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn get(&self, index: usize) -> Option<Sign> {
        self.indices
            .iter()
            .position(|&i| i == index)
            .map(|p| self.signs[p])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.indices.iter().copied().zip(self.signs.iter().copied())
    }

    /// Restriction to a subset of the support.
    pub fn restrict(&self, indices: &[usize]) -> SignVector {
        let signs = indices
            .iter()
            .map(|&i| self.get(i).expect("restriction outside support"))
            .collect();
        SignVector::on(indices.to_vec(), signs)
    }

    /// Flip the sign at one index of the support.
    pub fn flipped(&self, index: usize) -> SignVector {
        let mut out = self.clone();
        let p = out
            .indices
            .iter()
            .position(|&i| i == index)
            .expect("flip outside support");
        out.signs[p] = out.signs[p].flip();
        out
    }

    /// Number of indices where two sign vectors on the same support differ.
    pub fn hamming(&self, other: &SignVector) -> usize {
        assert_eq!(self.indices, other.indices);
        self.signs
            .iter()
            .zip(&other.signs)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Minus).count()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.len() == self.indices.last().map_or(0, |l| l + 1) {
            // full support: compact form
            write!(f, "(")?;
            for (i, s) in self.signs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", s.as_char())?;
            }
            write!(f, ")")
        } else {
            write!(f, "{{")?;
            for (j, (i, s)) in self.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}:{}", i + 1, s.as_char())?;
            }
            write!(f, "}}")
        }
    }
}

/// Enumerate `{+,-}^indices` in canonical order with subtree pruning: a
/// prefix that already fails `prefix_ok` is never extended, and a leaf is
/// kept only when `leaf_ok` accepts it.
pub(crate) fn enumerate_signs(
    indices: &[usize],
    prefix_ok: &mut dyn FnMut(&SignVector) -> bool,
    leaf_ok: &mut dyn FnMut(&SignVector) -> bool,
) -> Vec<SignVector> {
    fn rec(
        indices: &[usize],
        signs: &mut Vec<Sign>,
        out: &mut Vec<SignVector>,
        prefix_ok: &mut dyn FnMut(&SignVector) -> bool,
        leaf_ok: &mut dyn FnMut(&SignVector) -> bool,
    ) {
        let partial = SignVector::on(indices[..signs.len()].to_vec(), signs.clone());
        if !prefix_ok(&partial) {
            return;
        }
        if signs.len() == indices.len() {
            if leaf_ok(&partial) {
                out.push(partial);
            }
            return;
        }
        for s in [Sign::Plus, Sign::Minus] {
            signs.push(s);
            rec(indices, signs, out, prefix_ok, leaf_ok);
            signs.pop();
        }
    }
    let mut out = Vec::new();
    rec(indices, &mut Vec::new(), &mut out, prefix_ok, leaf_ok);
    out
}

/// A polarized arrangement `(Λ₀, η, ξ)`.  `η` is stored as an explicit
/// integer lift; every derived quantity is invariant under changing the lift
/// by an element of Λ₀.  `ξ` lives in the coordinates dual to the basis rows
/// of `Λ₀`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolarizedArrangement {
    lattice: Lattice,
    eta: Vec<Int>,
    xi: Vec<Int>,
}

impl PolarizedArrangement {
    pub fn new(lattice: Lattice, eta: Vec<Int>, xi: Vec<Int>) -> Result<Self, ArrangementError> {
        if eta.len() != lattice.ambient_rank() {
            return Err(ArrangementError::BadParameter {
                expected: lattice.ambient_rank(),
                got: eta.len(),
            });
        }
        if xi.len() != lattice.rank() {
            return Err(ArrangementError::BadParameter {
                expected: lattice.rank(),
                got: xi.len(),
            });
        }
        Ok(PolarizedArrangement { lattice, eta, xi })
    }

    pub fn from_i64(
        n: usize,
        basis: &[Vec<i64>],
        eta: &[i64],
        xi: &[i64],
    ) -> Result<Self, ArrangementError> {
        let lattice = Lattice::from_i64(n, basis)?;
        PolarizedArrangement::new(
            lattice,
            eta.iter().map(|&x| Int::from(x)).collect(),
            xi.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    /// Alternate constructor: restrict an ambient integer covector to Λ₀.
    pub fn with_ambient_xi(
        lattice: Lattice,
        eta: Vec<Int>,
        xi_ambient: &[Int],
    ) -> Result<Self, ArrangementError> {
        if xi_ambient.len() != lattice.ambient_rank() {
            return Err(ArrangementError::BadParameter {
                expected: lattice.ambient_rank(),
                got: xi_ambient.len(),
            });
        }
        let xi = lattice
            .basis()
            .row_vecs()
            .iter()
            .map(|row| row.iter().zip(xi_ambient).map(|(a, b)| a * b).sum())
            .collect();
        PolarizedArrangement::new(lattice, eta, xi)
    }

    pub fn n(&self) -> usize {
        self.lattice.ambient_rank()
    }

    pub fn k(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn eta(&self) -> &[Int] {
        &self.eta
    }

    pub fn xi(&self) -> &[Int] {
        &self.xi
    }

    pub fn xi_rat(&self) -> Vec<Rat> {
        self.xi.iter().cloned().map(Rat::from_integer).collect()
    }

    /// Shift the η-lift by an integer vector (tests use lifts in a common
    /// Λ₀-orbit; shifting by Λ₀ must not change any output).
    pub fn translated(&self, by: &[Int]) -> PolarizedArrangement {
        let eta = self.eta.iter().zip(by).map(|(a, b)| a + b).collect();
        PolarizedArrangement {
            lattice: self.lattice.clone(),
            eta,
            xi: self.xi.clone(),
        }
    }

    /// Constraints cutting the chamber `Δ_α` out of Λ₀-coordinates.
    pub(crate) fn chamber_cons(&self, sv: &SignVector) -> Vec<LinCon> {
        let normals = self.lattice.restricted_normals();
        sv.iter()
            .map(|(i, s)| {
                let a = normals[i].clone();
                let c = Rat::from_integer(self.eta[i].clone());
                match s {
                    Sign::Plus => LinCon::ge(a, c),
                    Sign::Minus => LinCon::ge(a.into_iter().map(|v| -v).collect(), -c),
                }
            })
            .collect()
    }

    pub fn is_feasible(&self, sv: &SignVector) -> bool {
        feasible_witness(self.k(), &self.chamber_cons(sv)).is_some()
    }

    /// `F_η`: sign vectors whose chamber is nonempty, in canonical order.
    pub fn feasible_signs(&self) -> Vec<SignVector> {
        let indices: Vec<usize> = (0..self.n()).collect();
        enumerate_signs(
            &indices,
            &mut |partial| feasible_witness(self.k(), &self.chamber_cons(partial)).is_some(),
            &mut |_| true,
        )
    }

    /// `B_ξ`, which depends only on `(Λ₀, ξ)`.
    pub fn bounded_signs(&self) -> Vec<SignVector> {
        bounded_signs(&self.lattice, &self.xi)
    }

    /// `P = F ∩ B`.
    pub fn bounded_feasible_signs(&self) -> Vec<SignVector> {
        let bounded: BTreeSet<SignVector> = self.bounded_signs().into_iter().collect();
        self.feasible_signs()
            .into_iter()
            .filter(|sv| bounded.contains(sv))
            .collect()
    }

    /// η is regular iff no point of the slice lies on more than `k` of the
    /// hyperplanes: every `(k+1)`-subset has empty common intersection.
    pub fn eta_regular(&self) -> bool {
        let k = self.k();
        let normals = self.lattice.restricted_normals();
        subsets_of_size(self.n(), k + 1).all(|subset| {
            let cons: Vec<LinCon> = subset
                .iter()
                .map(|&i| {
                    LinCon::eq(normals[i].clone(), Rat::from_integer(self.eta[i].clone()))
                })
                .collect();
            feasible_witness(k, &cons).is_none()
        })
    }

    pub fn xi_regular(&self) -> bool {
        xi_regular(&self.lattice, &self.xi)
    }

    pub fn is_regular(&self) -> bool {
        self.eta_regular() && self.xi_regular()
    }

    pub fn regularity_report(&self) -> RegularityReport {
        RegularityReport {
            eta_regular: Some(self.eta_regular()),
            lambda_regular: None,
            xi_regular: self.xi_regular(),
            quasi_regular: None,
            integral: None,
            unimodular: unimodular(&self.lattice),
            essential: true,
        }
    }

    pub fn equivalence_key(&self) -> EquivalenceKey {
        EquivalenceKey {
            lattice_hnf: self.lattice.hermite_basis(),
            i_lambda: None,
            feasible: self.feasible_signs(),
            bounded: self.bounded_signs(),
        }
    }
}

/// Constraints cutting the cone `Δ_{0,α}` (for a possibly partial sign
/// vector) out of Λ₀-coordinates.
pub(crate) fn cone_cons(lattice: &Lattice, sv: &SignVector) -> Vec<LinCon> {
    let normals = lattice.restricted_normals();
    sv.iter()
        .map(|(i, s)| {
            let a = normals[i].clone();
            match s {
                Sign::Plus => LinCon::ge(a, Rat::zero()),
                Sign::Minus => LinCon::ge(a.into_iter().map(|v| -v).collect(), Rat::zero()),
            }
        })
        .collect()
}

/// Is `ξ` proper and bounded above on the cone `Δ_{0,α}`?  Encoded as: the
/// subcone where `ξ ≥ 0` is the origin alone.
pub fn is_bounded_sign(lattice: &Lattice, xi: &[Int], sv: &SignVector) -> bool {
    let k = lattice.rank();
    let mut cons = cone_cons(lattice, sv);
    cons.push(LinCon::ge(
        xi.iter().cloned().map(Rat::from_integer).collect(),
        Rat::zero(),
    ));
    crate::exact::cone_region_is_origin(k, &cons)
}

/// `B_ξ` on the full index set.
pub fn bounded_signs(lattice: &Lattice, xi: &[Int]) -> Vec<SignVector> {
    let indices: Vec<usize> = (0..lattice.ambient_rank()).collect();
    bounded_signs_on(lattice, xi, &indices)
}

/// `B_ξ` over sign vectors supported on a subset of the hyperplanes (the
/// quantized case restricts to `I_Λ`).
pub fn bounded_signs_on(lattice: &Lattice, xi: &[Int], indices: &[usize]) -> Vec<SignVector> {
    enumerate_signs(
        indices,
        &mut |_| true,
        &mut |sv| is_bounded_sign(lattice, xi, sv),
    )
}

/// ξ is regular iff it is nonconstant on every one-dimensional flat of the
/// central arrangement.
pub fn xi_regular(lattice: &Lattice, xi: &[Int]) -> bool {
    let k = lattice.rank();
    let normals = lattice.restricted_normals();
    let matroid = crate::cells::Matroid::from_lattice(lattice);
    for flat in matroid.flats() {
        if flat.rank + 1 != k {
            continue;
        }
        // direction of the 1-dimensional flat
        let rows: Vec<Vec<Rat>> = flat.indices.iter().map(|&i| normals[i].clone()).collect();
        let dirs = if rows.is_empty() {
            // k = 1 and the flat is all of V₀
            vec![vec![Rat::one(); 1]]
        } else {
            crate::exact::RatMat::from_rows(rows).nullspace()
        };
        for dir in dirs {
            let val: Rat = dir
                .iter()
                .zip(xi)
                .map(|(d, x)| d * Rat::from_integer(x.clone()))
                .sum();
            if val.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Λ₀ is unimodular iff every coordinate projection of it is a direct
/// summand.
pub fn unimodular(lattice: &Lattice) -> bool {
    let n = lattice.ambient_rank();
    for size in 1..=n {
        for subset in subsets_of_size(n, size) {
            let sub = lattice.basis().select_cols(&subset);
            let ok = smith_normal_form(&sub)
                .invariant_factors()
                .iter()
                .all(|d| d.is_one());
            if !ok {
                return false;
            }
        }
    }
    true
}

pub(crate) fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    // simple combination iterator
    struct Comb {
        n: usize,
        idx: Option<Vec<usize>>,
    }
    impl Iterator for Comb {
        type Item = Vec<usize>;
        fn next(&mut self) -> Option<Vec<usize>> {
            let cur = self.idx.clone()?;
            let k = cur.len();
            let mut next = cur.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    self.idx = None;
                    break;
                }
                i -= 1;
                if next[i] + 1 <= self.n - (k - i) {
                    next[i] += 1;
                    for j in i + 1..k {
                        next[j] = next[j - 1] + 1;
                    }
                    self.idx = Some(next);
                    break;
                }
            }
            Some(cur)
        }
    }
    let idx = if size <= n {
        Some((0..size).collect())
    } else {
        None
    };
    Comb { n, idx }
}

/// A quantized polarized arrangement `(Λ₀, 𝚲, ξ)` with `𝚲 = v₀ + Λ₀` given
/// by a rational basepoint lift; coordinate `i` of `v₀` is the value `h_i⁺`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantizedPolarizedArrangement {
    lattice: Lattice,
    basepoint: Vec<Rat>,
    xi: Vec<Int>,
}

impl QuantizedPolarizedArrangement {
    pub fn new(
        lattice: Lattice,
        basepoint: Vec<Rat>,
        xi: Vec<Int>,
    ) -> Result<Self, ArrangementError> {
        if basepoint.len() != lattice.ambient_rank() {
            return Err(ArrangementError::BadParameter {
                expected: lattice.ambient_rank(),
                got: basepoint.len(),
            });
        }
        if xi.len() != lattice.rank() {
            return Err(ArrangementError::BadParameter {
                expected: lattice.rank(),
                got: xi.len(),
            });
        }
        Ok(QuantizedPolarizedArrangement {
            lattice,
            basepoint,
            xi,
        })
    }

    pub fn from_i64(
        n: usize,
        basis: &[Vec<i64>],
        basepoint: &[i64],
        xi: &[i64],
    ) -> Result<Self, ArrangementError> {
        let lattice = Lattice::from_i64(n, basis)?;
        QuantizedPolarizedArrangement::new(
            lattice,
            basepoint.iter().map(|&x| crate::exact::Rat::from_integer(Int::from(x))).collect(),
            xi.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.lattice.ambient_rank()
    }

    pub fn k(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basepoint(&self) -> &[Rat] {
        &self.basepoint
    }

    pub fn xi(&self) -> &[Int] {
        &self.xi
    }

    /// Shift the basepoint lift by a lattice element (all outputs must be
    /// unchanged) or by an arbitrary integer vector (translating 𝚲).
    pub fn translated(&self, by: &[Int]) -> QuantizedPolarizedArrangement {
        let basepoint = self
            .basepoint
            .iter()
            .zip(by)
            .map(|(a, b)| a + Rat::from_integer(b.clone()))
            .collect();
        QuantizedPolarizedArrangement {
            lattice: self.lattice.clone(),
            basepoint,
            xi: self.xi.clone(),
        }
    }

    /// `I_Λ`: indices whose pair of hyperplanes is present (integral h⁺
    /// value on the orbit; independent of the lift).
    pub fn integral_indices(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| rat_is_int(&self.basepoint[i]))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_indices().len() == self.n()
    }

    /// Constraints in Λ₀-coordinates for the doubled chamber `𝚫_α` of a
    /// (possibly partial) sign vector supported inside `I_Λ`:
    /// `h_i⁺ ≥ 0` for `+` and `h_i⁻ = h_i⁺ + 1 ≤ 0` for `-`.
    pub(crate) fn chamber_cons(&self, sv: &SignVector) -> Vec<LinCon> {
        let normals = self.lattice.restricted_normals();
        sv.iter()
            .map(|(i, s)| {
                let a = normals[i].clone();
                let c = self.basepoint[i].clone();
                match s {
                    Sign::Plus => LinCon::ge(a, c),
                    Sign::Minus => LinCon::ge(
                        a.into_iter().map(|v| -v).collect(),
                        -(c + Rat::one()),
                    ),
                }
            })
            .collect()
    }

    /// Is the real polyhedron `𝚫_α` nonempty?
    pub fn is_real_feasible(&self, sv: &SignVector) -> bool {
        feasible_witness(self.k(), &self.chamber_cons(sv)).is_some()
    }

    /// Does `𝚫_α` contain a point of `𝚲`?
    pub fn is_feasible(&self, sv: &SignVector) -> bool {
        integer_point(self.k(), &self.chamber_cons(sv)).is_some()
    }

    /// `F_𝚲 ⊆ {+,-}^{I_Λ}` in canonical order.
    pub fn feasible_signs(&self) -> Vec<SignVector> {
        let indices = self.integral_indices();
        enumerate_signs(
            &indices,
            &mut |partial| feasible_witness(self.k(), &self.chamber_cons(partial)).is_some(),
            &mut |leaf| integer_point(self.k(), &self.chamber_cons(leaf)).is_some(),
        )
    }

    /// `B_{𝚲,ξ} ⊆ {+,-}^{I_Λ}`: depends only on `(Λ₀, ξ)` and `I_Λ`.
    pub fn bounded_signs(&self) -> Vec<SignVector> {
        bounded_signs_on(&self.lattice, &self.xi, &self.integral_indices())
    }

    pub fn bounded_feasible_signs(&self) -> Vec<SignVector> {
        let bounded: BTreeSet<SignVector> = self.bounded_signs().into_iter().collect();
        self.feasible_signs()
            .into_iter()
            .filter(|sv| bounded.contains(sv))
            .collect()
    }

    /// The doubled arrangement is essential iff the present normals span.
    pub fn essential(&self) -> bool {
        let normals = self.lattice.restricted_normals();
        let rows: Vec<Vec<Rat>> = self
            .integral_indices()
            .into_iter()
            .map(|i| normals[i].clone())
            .collect();
        matrix_rank(&rows) == self.k()
    }

    /// Quasi-regular: essential, and no point lies strictly between `k+1`
    /// of the hyperplane pairs.
    pub fn quasi_regular(&self) -> bool {
        if !self.essential() {
            return false;
        }
        let k = self.k();
        let normals = self.lattice.restricted_normals();
        let idx = self.integral_indices();
        for subset in subsets_of_size(idx.len(), k + 1) {
            let mut cons = Vec::new();
            for &j in &subset {
                let i = idx[j];
                // -1 < h_i^+ < 0, i.e. strictly between the pair
                cons.push(LinCon::new(
                    normals[i].clone(),
                    self.basepoint[i].clone() + Rat::one(),
                    Rel::Gt,
                ));
                cons.push(LinCon::new(
                    normals[i].iter().map(|v| -v.clone()).collect(),
                    -self.basepoint[i].clone(),
                    Rel::Gt,
                ));
            }
            if feasible_witness(k, &cons).is_some() {
                return false;
            }
        }
        true
    }

    /// Regular: quasi-regular, and every nonempty real chamber contains a
    /// lattice point.
    pub fn lambda_regular(&self) -> bool {
        if !self.quasi_regular() {
            return false;
        }
        let indices = self.integral_indices();
        let witnesses = enumerate_signs(
            &indices,
            &mut |partial| feasible_witness(self.k(), &self.chamber_cons(partial)).is_some(),
            &mut |leaf| !self.is_feasible(leaf),
        );
        witnesses.is_empty()
    }

    pub fn xi_regular(&self) -> bool {
        xi_regular(&self.lattice, &self.xi)
    }

    pub fn is_regular(&self) -> bool {
        self.lambda_regular() && self.xi_regular()
    }

    pub fn regularity_report(&self) -> RegularityReport {
        RegularityReport {
            eta_regular: None,
            lambda_regular: Some(self.lambda_regular()),
            xi_regular: self.xi_regular(),
            quasi_regular: Some(self.quasi_regular()),
            integral: Some(self.is_integral()),
            unimodular: unimodular(&self.lattice),
            essential: self.essential(),
        }
    }

    pub fn equivalence_key(&self) -> EquivalenceKey {
        EquivalenceKey {
            lattice_hnf: self.lattice.hermite_basis(),
            i_lambda: Some(self.integral_indices()),
            feasible: self.feasible_signs(),
            bounded: self.bounded_signs(),
        }
    }
}

/// Regularity, integrality and genericity flags for either kind of
/// arrangement.  Absent options do not apply to the input kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularityReport {
    pub eta_regular: Option<bool>,
    pub lambda_regular: Option<bool>,
    pub xi_regular: bool,
    pub quasi_regular: Option<bool>,
    pub integral: Option<bool>,
    pub unimodular: bool,
    pub essential: bool,
}

/// Canonical equivalence data: two arrangements are equivalent iff their
/// keys are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceKey {
    pub lattice_hnf: IntMat,
    pub i_lambda: Option<Vec<usize>>,
    pub feasible: Vec<SignVector>,
    pub bounded: Vec<SignVector>,
}

impl EquivalenceKey {
    /// Deterministic serialization.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        s.push_str("L[");
        for r in 0..self.lattice_hnf.rows() {
            if r > 0 {
                s.push(';');
            }
            for c in 0..self.lattice_hnf.cols() {
                if c > 0 {
                    s.push(',');
                }
                s.push_str(&self.lattice_hnf.get(r, c).to_string());
            }
        }
        s.push(']');
        if let Some(i) = &self.i_lambda {
            s.push_str(&format!(
                " I{{{}}}",
                i.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        s.push_str(" F{");
        s.push_str(
            &self
                .feasible
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        s.push_str("} B{");
        s.push_str(
            &self
                .bounded
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        s.push('}');
        s
    }
}

/// Linkage: `π(F_η) = F_𝚲` for arrangements sharing `Λ₀` and `ξ`.
pub fn is_linked(
    x: &PolarizedArrangement,
    bx: &QuantizedPolarizedArrangement,
) -> Result<bool, ArrangementError> {
    if !x.lattice().same_lattice(bx.lattice()) || x.xi() != bx.xi() {
        return Err(ArrangementError::ParameterMismatch);
    }
    if !x.eta_regular() || !bx.lambda_regular() {
        return Err(ArrangementError::NotRegular);
    }
    let idx = bx.integral_indices();
    let projected: BTreeSet<SignVector> = x
        .feasible_signs()
        .iter()
        .map(|sv| sv.restrict(&idx))
        .collect();
    let quantized: BTreeSet<SignVector> = bx.feasible_signs().into_iter().collect();
    Ok(projected == quantized)
}

/// The translation criterion: search for `k ≤ k_max` such that
/// `F_𝚲 = F_{𝚲 + k·η} = F_{𝚲 + 2k·η}`.  Linked pairs admit such a `k`
/// (with `k = 1` in the unimodular case).
pub fn linkage_translation_check(
    x: &PolarizedArrangement,
    bx: &QuantizedPolarizedArrangement,
    k_max: u32,
) -> Result<Option<u32>, ArrangementError> {
    if !x.lattice().same_lattice(bx.lattice()) || x.xi() != bx.xi() {
        return Err(ArrangementError::ParameterMismatch);
    }
    let base = bx.feasible_signs();
    for k in 1..=k_max {
        let mut ok = true;
        for r in 1..=2u32 {
            let shift: Vec<Int> = x
                .eta()
                .iter()
                .map(|e| e * Int::from(k) * Int::from(r))
                .collect();
            if bx.translated(&shift).feasible_signs() != base {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Project an essential quantized arrangement to its present coordinates
/// `I_Λ`, producing an integral arrangement with identical chamber data.
pub fn essentialize(
    bx: &QuantizedPolarizedArrangement,
) -> Result<QuantizedPolarizedArrangement, ArrangementError> {
    let idx = bx.integral_indices();
    if !bx.essential() {
        return Err(ArrangementError::Inessential);
    }
    if idx.len() == bx.n() {
        return Ok(bx.clone());
    }
    let basis = bx.lattice().basis().select_cols(&idx);
    let lattice = Lattice::new(idx.len(), basis).map_err(|e| match e {
        ExactError::NotSummand => ArrangementError::NotSummand,
        other => ArrangementError::Exact(other),
    })?;
    let basepoint = idx.iter().map(|&i| bx.basepoint[i].clone()).collect();
    QuantizedPolarizedArrangement::new(lattice, basepoint, bx.xi.clone())
}

/// `|F_𝚲| ≤ N_𝚲` with equality iff 𝚲 is regular; `N_𝚲` counts matroid
/// independent subsets of `I_Λ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberCountCheck {
    pub count: usize,
    pub bound: usize,
    pub equal: bool,
}

pub fn chamber_count_check(bx: &QuantizedPolarizedArrangement) -> ChamberCountCheck {
    let count = bx.feasible_signs().len();
    let normals = bx.lattice().restricted_normals();
    let idx = bx.integral_indices();
    let mut bound = 0;
    for size in 0..=idx.len() {
        for subset in subsets_of_size(idx.len(), size) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&j| normals[idx[j]].clone()).collect();
            if matrix_rank(&rows) == size {
                bound += 1;
            }
        }
    }
    assert!(count <= bound, "Lemma: |F| <= N violated");
    ChamberCountCheck {
        count,
        bound,
        equal: count == bound,
    }
}

#[cfg(test)]
pub(crate) mod tests;
