//! Matroid of the arrangement, flats, cell preorders, Goldie ranks,
//! filtration dimensions, h-vector identities.
//!
//! Sign vectors are partitioned into cells by the flat `F_α` spanned by the
//! recession cone `Δ_{0,α}` together with agreement patterns: left cells by
//! `(𝓘_α, α|_{𝓘_α})`, right cells by `(𝓘_α, α|_{𝓘_α^c})`, two-sided cells
//! by `𝓘_α` alone.

use crate::arrangement::{
    cone_cons, enumerate_signs, subsets_of_size, QuantizedPolarizedArrangement, SignVector,
};
use crate::exact::{
    feasible_witness, integer_point, kernel_lattice, matrix_rank, Int, IntMat, Lattice, LinCon,
    Rat,
};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CellsError {
    #[error("sign vector is not feasible")]
    NotFeasible,
    #[error("sign vector is not bounded")]
    NotBounded,
    #[error("operation requires a regular integral arrangement")]
    NotRegularIntegral,
}

/// Matroid on `{0..n-1}` with rank oracle backed by exact rank computations
/// on the restricted normal columns.  Ranks are tabulated once (ground sets
/// here are tiny).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    n: usize,
    rank_table: Vec<u8>,
}

impl Matroid {
    pub fn from_lattice(lattice: &Lattice) -> Matroid {
        let normals = lattice.restricted_normals();
        Matroid::from_columns(&normals)
    }

    /// Build from rational column vectors.
    pub fn from_columns(cols: &[Vec<Rat>]) -> Matroid {
        let n = cols.len();
        assert!(n <= 16, "matroid ground set too large");
        let mut rank_table = vec![0u8; 1 << n];
        for mask in 1usize..(1 << n) {
            let rows: Vec<Vec<Rat>> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| cols[i].clone())
                .collect();
            rank_table[mask] = matrix_rank(&rows) as u8;
        }
        Matroid { n, rank_table }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn mask(set: &[usize]) -> usize {
        set.iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        self.rank_table[Self::mask(set)] as usize
    }

    pub fn rank(&self) -> usize {
        self.rank_table[(1 << self.n) - 1] as usize
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.rank_of(set) == set.len()
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let r = self.rank_of(set);
        (0..self.n)
            .filter(|&i| {
                let mut s = set.to_vec();
                if !s.contains(&i) {
                    s.push(i);
                }
                self.rank_table[Self::mask(&s)] as usize == r
            })
            .collect()
    }

    /// All flats (closed sets) with their ranks, sorted by (rank, indices).
    pub fn flats(&self) -> Vec<Flat> {
        let mut seen = BTreeSet::new();
        for mask in 0usize..(1 << self.n) {
            let set: Vec<usize> = (0..self.n).filter(|i| mask & (1 << i) != 0).collect();
            let cl = self.closure(&set);
            seen.insert((self.rank_of(&cl), cl));
        }
        seen.into_iter()
            .map(|(rank, indices)| Flat { indices, rank })
            .collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for size in 1..=self.n {
            'next: for set in subsets_of_size(self.n, size) {
                if self.is_independent(&set) {
                    continue;
                }
                for leave in 0..set.len() {
                    let mut sub = set.clone();
                    sub.remove(leave);
                    if !self.is_independent(&sub) {
                        continue 'next;
                    }
                }
                out.push(set);
            }
        }
        out
    }

    /// Number of independent subsets.
    pub fn independent_set_count(&self) -> usize {
        (0usize..(1 << self.n))
            .filter(|&mask| {
                let set: Vec<usize> = (0..self.n).filter(|i| mask & (1 << i) != 0).collect();
                self.is_independent(&set)
            })
            .count()
    }

    pub fn bases_count(&self) -> usize {
        let r = self.rank();
        subsets_of_size(self.n, r)
            .filter(|s| self.is_independent(s))
            .count()
    }

    /// Dual matroid: `r*(S) = |S| + r(E∖S) − r(E)`.
    pub fn dual(&self) -> Matroid {
        let full = (1usize << self.n) - 1;
        let r = self.rank();
        let mut rank_table = vec![0u8; 1 << self.n];
        for mask in 0usize..(1 << self.n) {
            let size = (mask as u32).count_ones() as usize;
            rank_table[mask] = (size + self.rank_table[full & !mask] as usize - r) as u8;
        }
        Matroid {
            n: self.n,
            rank_table,
        }
    }

    /// Is `i` a coloop (in every basis)?
    pub fn is_coloop(&self, i: usize) -> bool {
        let full: Vec<usize> = (0..self.n).collect();
        let without: Vec<usize> = (0..self.n).filter(|&j| j != i).collect();
        self.rank_of(&without) < self.rank_of(&full)
    }

    /// Restriction to a subset, relabelled by position in `set`.
    pub fn restrict(&self, set: &[usize]) -> Matroid {
        let m = set.len();
        let mut rank_table = vec![0u8; 1 << m];
        for mask in 0usize..(1 << m) {
            let lifted: Vec<usize> = (0..m).filter(|j| mask & (1 << j) != 0).map(|j| set[j]).collect();
            rank_table[mask] = self.rank_of(&lifted) as u8;
        }
        Matroid {
            n: m,
            rank_table,
        }
    }
}

/// A flat of the central arrangement, recorded by the set of hyperplanes
/// containing it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Flat {
    pub indices: Vec<usize>,
    pub rank: usize,
}

impl std::fmt::Display for Flat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.indices
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// `𝓘_α` and the dimension of the span `F_α` of the cone `Δ_{0,α}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeData {
    pub i_alpha: Vec<usize>,
    pub dim: usize,
}

/// The hyperplanes vanishing on the recession cone of `α`, and the cone's
/// dimension.  `𝓘_α` equals the flat index set of the span `F_α`.
pub fn cone_data(lattice: &Lattice, sv: &SignVector) -> ConeData {
    let k = lattice.rank();
    let cons = cone_cons(lattice, sv);
    let normals = lattice.restricted_normals();
    let mut i_alpha = Vec::new();
    for i in 0..lattice.ambient_rank() {
        // h_i vanishes identically on the cone iff neither strict side is
        // realized inside it
        let mut vanishes = true;
        for dir in [Rat::one(), -Rat::one()] {
            let mut sys = cons.clone();
            let a: Vec<Rat> = normals[i].iter().map(|v| v * &dir).collect();
            sys.push(LinCon::new(a, Rat::zero(), crate::exact::Rel::Gt));
            if feasible_witness(k, &sys).is_some() {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            i_alpha.push(i);
        }
    }
    let rows: Vec<Vec<Rat>> = i_alpha.iter().map(|&i| normals[i].clone()).collect();
    let dim = k - matrix_rank(&rows);
    ConeData { i_alpha, dim }
}

/// Left preorder `α ≤ β`: `𝓘_β ⊆ 𝓘_α` and agreement on `𝓘_β`.
pub fn left_leq_raw(lattice: &Lattice, a: &SignVector, b: &SignVector) -> bool {
    let ia = cone_data(lattice, a).i_alpha;
    let ib = cone_data(lattice, b).i_alpha;
    ib.iter().all(|i| ia.contains(i)) && ib.iter().all(|&i| a.get(i) == b.get(i))
}

/// Right preorder `α ≤ β`: `𝓘_β ⊆ 𝓘_α` and agreement on the complement of
/// `𝓘_α`.
pub fn right_leq_raw(lattice: &Lattice, a: &SignVector, b: &SignVector) -> bool {
    let ia = cone_data(lattice, a).i_alpha;
    let ib = cone_data(lattice, b).i_alpha;
    ib.iter().all(|i| ia.contains(i))
        && a.iter()
            .filter(|(i, _)| !ia.contains(i))
            .all(|(i, s)| b.get(i) == Some(s))
}

/// Cone-inclusion form of the right preorder: `Δ_{0,α} ⊆ Δ_{0,β}`.
pub fn cone_included(lattice: &Lattice, a: &SignVector, b: &SignVector) -> bool {
    let k = lattice.rank();
    let cone_a = cone_cons(lattice, a);
    for con in cone_cons(lattice, b) {
        // is cone_a ∩ {con violated strictly} empty?
        let mut sys = cone_a.clone();
        sys.push(LinCon::new(
            con.a.iter().map(|v| -v.clone()).collect(),
            Rat::zero(),
            crate::exact::Rel::Gt,
        ));
        if feasible_witness(k, &sys).is_some() {
            return false;
        }
    }
    true
}

/// A partition of a set of sign vectors into cells, with a partial order on
/// the cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellPartition {
    pub blocks: Vec<Vec<SignVector>>,
    /// pairs (i, j) with block i ≤ block j, reflexive-transitive
    pub order: Vec<(usize, usize)>,
}

impl CellPartition {
    fn from_preorder(elements: &[SignVector], leq: impl Fn(&SignVector, &SignVector) -> bool) -> Self {
        let n = elements.len();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = leq(&elements[i], &elements[j]);
            }
        }
        Self::from_relation(elements, rel)
    }

    fn from_relation(elements: &[SignVector], mut rel: Vec<Vec<bool>>) -> Self {
        let n = elements.len();
        // transitive closure
        for m in 0..n {
            for i in 0..n {
                if rel[i][m] {
                    for j in 0..n {
                        if rel[m][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        // cells = mutually comparable classes
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<SignVector>> = Vec::new();
        for i in 0..n {
            if block_of[i] != usize::MAX {
                continue;
            }
            let b = blocks.len();
            let mut members = Vec::new();
            for j in i..n {
                if rel[i][j] && rel[j][i] {
                    block_of[j] = b;
                    members.push(elements[j].clone());
                }
            }
            blocks.push(members);
        }
        let mut order = Vec::new();
        for i in 0..blocks.len() {
            for j in 0..blocks.len() {
                let ei = elements
                    .iter()
                    .position(|e| blocks[i].contains(e))
                    .unwrap();
                let ej = elements
                    .iter()
                    .position(|e| blocks[j].contains(e))
                    .unwrap();
                if rel[ei][ej] {
                    order.push((i, j));
                }
            }
        }
        CellPartition { blocks, order }
    }

    pub fn block_index_of(&self, sv: &SignVector) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(sv))
    }

    /// The order must be a genuine partial order on blocks.
    pub fn order_is_partial(&self) -> bool {
        let n = self.blocks.len();
        let has = |i: usize, j: usize| self.order.contains(&(i, j));
        for i in 0..n {
            if !has(i, i) {
                return false;
            }
            for j in 0..n {
                if i != j && has(i, j) && has(j, i) {
                    return false;
                }
                for m in 0..n {
                    if has(i, j) && has(j, m) && !has(i, m) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Same blocks (as sets) and opposite order?
    pub fn is_opposite_of(&self, other: &CellPartition) -> bool {
        let mine: BTreeSet<BTreeSet<SignVector>> = self
            .blocks
            .iter()
            .map(|b| b.iter().cloned().collect())
            .collect();
        let theirs: BTreeSet<BTreeSet<SignVector>> = other
            .blocks
            .iter()
            .map(|b| b.iter().cloned().collect())
            .collect();
        if mine != theirs {
            return false;
        }
        for &(i, j) in &self.order {
            let bi = &self.blocks[i][0];
            let bj = &self.blocks[j][0];
            let oi = other.block_index_of(bi).unwrap();
            let oj = other.block_index_of(bj).unwrap();
            if !other.order.contains(&(oj, oi)) {
                return false;
            }
        }
        for &(oi, oj) in &other.order {
            let bi = &other.blocks[oi][0];
            let bj = &other.blocks[oj][0];
            let i = self.block_index_of(bi).unwrap();
            let j = self.block_index_of(bj).unwrap();
            if !self.order.contains(&(j, i)) {
                return false;
            }
        }
        true
    }

    /// Same blocks and same order?
    pub fn is_equal_to(&self, other: &CellPartition) -> bool {
        self.is_opposite_of(&CellPartition {
            blocks: other.blocks.clone(),
            order: other.order.iter().map(|&(i, j)| (j, i)).collect(),
        })
    }
}

/// Cell analysis of a regular integral quantized polarized arrangement.
pub struct CellAnalysis {
    bx: QuantizedPolarizedArrangement,
    feasible: Vec<SignVector>,
    bounded: Vec<SignVector>,
    p: Vec<SignVector>,
}

/// Cell partitions of `F_𝚲` (left), `B_ξ` (right), and `P` (two-sided).
pub struct CellPartitions {
    pub left: CellPartition,
    pub right: CellPartition,
    pub two_sided: CellPartition,
}

impl CellAnalysis {
    pub fn new(bx: &QuantizedPolarizedArrangement) -> Result<CellAnalysis, CellsError> {
        if !bx.is_integral() || !bx.lambda_regular() {
            return Err(CellsError::NotRegularIntegral);
        }
        let feasible = bx.feasible_signs();
        let bounded = bx.bounded_signs();
        let bset: BTreeSet<&SignVector> = bounded.iter().collect();
        let p = feasible
            .iter()
            .filter(|sv| bset.contains(sv))
            .cloned()
            .collect();
        Ok(CellAnalysis {
            bx: bx.clone(),
            feasible,
            bounded,
            p,
        })
    }

    pub fn arrangement(&self) -> &QuantizedPolarizedArrangement {
        &self.bx
    }

    pub fn feasible(&self) -> &[SignVector] {
        &self.feasible
    }

    pub fn bounded(&self) -> &[SignVector] {
        &self.bounded
    }

    pub fn bounded_feasible(&self) -> &[SignVector] {
        &self.p
    }

    pub fn left_leq(&self, a: &SignVector, b: &SignVector) -> Result<bool, CellsError> {
        if !self.feasible.contains(a) || !self.feasible.contains(b) {
            return Err(CellsError::NotFeasible);
        }
        Ok(left_leq_raw(self.bx.lattice(), a, b))
    }

    pub fn right_leq(&self, a: &SignVector, b: &SignVector) -> Result<bool, CellsError> {
        if !self.bounded.contains(a) || !self.bounded.contains(b) {
            return Err(CellsError::NotBounded);
        }
        Ok(right_leq_raw(self.bx.lattice(), a, b))
    }

    pub fn cell_partitions(&self) -> CellPartitions {
        let lattice = self.bx.lattice();
        let left = CellPartition::from_preorder(&self.feasible, |a, b| {
            left_leq_raw(lattice, a, b)
        });
        let right = CellPartition::from_preorder(&self.bounded, |a, b| {
            right_leq_raw(lattice, a, b)
        });
        // two-sided: transitive closure of (left ∪ right) on P
        let n = self.p.len();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = left_leq_raw(lattice, &self.p[i], &self.p[j])
                    || right_leq_raw(lattice, &self.p[i], &self.p[j]);
            }
        }
        let two_sided = CellPartition::from_relation(&self.p, rel);
        CellPartitions {
            left,
            right,
            two_sided,
        }
    }

    /// Flat spanned by the recession cone of `α`, as a flat of the matroid.
    pub fn flat_of(&self, sv: &SignVector) -> Flat {
        let cd = cone_data(self.bx.lattice(), sv);
        let matroid = Matroid::from_lattice(self.bx.lattice());
        Flat {
            rank: matroid.rank_of(&cd.i_alpha),
            indices: cd.i_alpha,
        }
    }

    /// Goldie rank: the number of points of `𝚲/(F_α ∩ Λ₀)` in the compact
    /// localized polytope determined by `α` on `𝓘_α`.
    pub fn goldie_rank(&self, sv: &SignVector) -> Result<usize, CellsError> {
        if !self.feasible.contains(sv) {
            return Err(CellsError::NotFeasible);
        }
        Ok(localized_lattice_point_count(&self.bx, sv))
    }

    /// For each coloop-free flat `F`, the number of `α ∈ P` with `F_α = F`.
    pub fn bbd_dimensions(&self) -> BTreeMap<Flat, usize> {
        let mut out = BTreeMap::new();
        for sv in &self.p {
            *out.entry(self.flat_of(sv)).or_insert(0) += 1;
        }
        out
    }
}

/// Count lattice points of the localized polytope `𝚫^{F_α}_{α|𝓘_α}`.
pub fn localized_lattice_point_count(
    bx: &QuantizedPolarizedArrangement,
    sv: &SignVector,
) -> usize {
    let lattice = bx.lattice();
    let k = lattice.rank();
    let cd = cone_data(lattice, sv);
    if cd.i_alpha.is_empty() {
        return 1;
    }
    // Constraints of the localized polytope in t-coordinates; the lattice
    // F_α ∩ Λ₀ acts by translations, so count integer points of the
    // quotient: fix a complement of the kernel lattice and enumerate there.
    let normals = lattice.restricted_normals();
    let sub: Vec<Vec<Int>> = cd
        .i_alpha
        .iter()
        .map(|&i| normals[i].iter().map(|r| r.to_integer()).collect())
        .collect();
    let kernel = kernel_lattice(&IntMat::from_rows(sub));
    // kernel is saturated in Z^k; complete it to a basis of Z^k
    let comp = complement_basis(&kernel, k);
    // points: t = comp^T u (u integer) modulo kernel translations; the
    // constraints only see comp coordinates
    let cons = bx.chamber_cons(&sv.restrict(&cd.i_alpha));
    // substitute t = C^T u where C rows are the complement basis
    let m = comp.len();
    let cons_u: Vec<LinCon> = cons
        .iter()
        .map(|c| {
            let a: Vec<Rat> = (0..m)
                .map(|j| {
                    (0..k)
                        .map(|i| &c.a[i] * Rat::from_integer(comp[j][i].clone()))
                        .sum()
                })
                .collect();
            LinCon::new(a, c.c.clone(), c.rel)
        })
        .collect();
    // enumerate integer points of the (compact) system in u
    count_integer_points(m, &cons_u)
}

/// Extend a saturated sublattice (rows of `kernel`) to a basis of `Z^k`;
/// returns the complementary rows.
fn complement_basis(kernel: &IntMat, k: usize) -> Vec<Vec<Int>> {
    if kernel.rows() == 0 {
        return IntMat::identity(k).row_vecs();
    }
    // rows of kernel are primitive and saturated; complete via SNF of the
    // transpose: kernel^T = U^{-1} S V^{-1} ... simpler: find vectors among
    // the standard basis completing the rank greedily, then correct to a
    // genuine complement using the dual description.
    // The quotient Z^k / kernel is free; a complement is spanned by the
    // preimages of a basis. Use SNF: kernel = U S V with S = (I 0).
    let snf = crate::exact::smith_normal_form(kernel);
    debug_assert!(snf.invariant_factors().iter().all(|d| d.is_one()));
    // kernel rows = U^{-1} (I 0) V^{-1}... rows span = first r rows of V^{-1}.
    let vinv = crate::exact::int_inverse(&snf.v).expect("unimodular");
    // V^{-1} rows: first r rows span the kernel; the remaining rows form a
    // complement basis.
    (kernel.rows()..k).map(|r| vinv.row(r)).collect()
}

fn count_integer_points(dim: usize, cons: &[LinCon]) -> usize {
    use crate::exact::{maximize, minimize, Opt};
    if dim == 0 {
        let ok = cons
            .iter()
            .all(|c| c.satisfied_by(&[]));
        return usize::from(ok);
    }
    if feasible_witness(dim, cons).is_none() {
        return 0;
    }
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for j in 0..dim {
        let mut obj = vec![Rat::zero(); dim];
        obj[j] = Rat::one();
        let Opt::Finite(a) = minimize(dim, cons, &obj) else {
            panic!("localized polytope must be compact");
        };
        let Opt::Finite(b) = maximize(dim, cons, &obj) else {
            panic!("localized polytope must be compact");
        };
        lo.push(a.ceil().to_integer());
        hi.push(b.floor().to_integer());
    }
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return 0;
    }
    let mut count = 0;
    let mut t = lo.clone();
    'outer: loop {
        let tr: Vec<Rat> = t.iter().cloned().map(Rat::from_integer).collect();
        if cons.iter().all(|c| c.satisfied_by(&tr)) {
            count += 1;
        }
        let mut j = dim;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if t[j] < hi[j] {
                t[j] += 1;
                for l in j + 1..dim {
                    t[l] = lo[l].clone();
                }
                break;
            }
        }
    }
    count
}

/// Coloop-free flats by the polyhedral definition: the localized doubled
/// arrangement has a nonempty compact chamber.  On regular input this is
/// cross-checked against the matroid-theoretic notion (no coloops in the
/// restriction).
pub fn coloop_free_flats(bx: &QuantizedPolarizedArrangement) -> Vec<Flat> {
    let matroid = Matroid::from_lattice(bx.lattice());
    let regular = bx.lambda_regular() && bx.is_integral();
    let mut out = Vec::new();
    for flat in matroid.flats() {
        let lp = flat_has_compact_chamber(bx, &flat);
        if regular {
            let comb = !coloops_in_restriction(&matroid, &flat.indices);
            assert_eq!(
                lp, comb,
                "polyhedral and matroid coloop-freeness disagree on a regular instance"
            );
        }
        if lp {
            out.push(flat);
        }
    }
    out
}

/// Matroid-only route: flats whose restriction has no coloop.
pub fn coloop_free_flats_matroid(matroid: &Matroid) -> Vec<Flat> {
    matroid
        .flats()
        .into_iter()
        .filter(|f| !coloops_in_restriction(matroid, &f.indices))
        .collect()
}

fn coloops_in_restriction(matroid: &Matroid, indices: &[usize]) -> bool {
    let r = matroid.restrict(indices);
    (0..indices.len()).any(|i| r.is_coloop(i))
}

fn flat_has_compact_chamber(bx: &QuantizedPolarizedArrangement, flat: &Flat) -> bool {
    if flat.indices.is_empty() {
        // empty localization in a point: the empty chamber is compact
        return true;
    }
    let lattice = bx.lattice();
    let k = lattice.rank();
    let normals = lattice.restricted_normals();
    let i_lambda: BTreeSet<usize> = bx.integral_indices().into_iter().collect();
    if !flat.indices.iter().all(|i| i_lambda.contains(i)) {
        return false;
    }
    // directions along the flat are lineality; compactness in the quotient
    // means the recession cone is exactly the flat directions
    let candidates = enumerate_signs(
        &flat.indices,
        &mut |partial| feasible_witness(k, &bx.chamber_cons(partial)).is_some(),
        &mut |leaf| {
            // nonempty (known from the prefix check); compact modulo F means
            // the recession cone lies inside the span of the flat directions
            // {v : N_i v = 0 for i in the flat}
            let cons = cone_cons(lattice, leaf);
            let flat_rows: Vec<Vec<Rat>> = flat
                .indices
                .iter()
                .map(|&i| normals[i].clone())
                .collect();
            for row in &flat_rows {
                for dir in [Rat::one(), -Rat::one()] {
                    let mut sys = cons.clone();
                    let a: Vec<Rat> = row.iter().map(|v| v * &dir).collect();
                    sys.push(LinCon::new(a, Rat::zero(), crate::exact::Rel::Gt));
                    if feasible_witness(k, &sys).is_some() {
                        return false;
                    }
                }
            }
            true
        },
    );
    !candidates.is_empty()
}

/// h-vector of the matroid's independence complex.
pub fn h_vector(matroid: &Matroid) -> Vec<Int> {
    let d = matroid.rank();
    // f[i] = number of independent sets of size i
    let mut f = vec![Int::zero(); d + 1];
    for mask in 0usize..(1 << matroid.size()) {
        let set: Vec<usize> = (0..matroid.size()).filter(|i| mask & (1 << i) != 0).collect();
        if matroid.is_independent(&set) {
            f[set.len()] += 1;
        }
    }
    h_from_f(&f, d)
}

/// h-vector of the broken circuit complex with respect to a ground-set
/// ordering (default natural order).
pub fn broken_circuit_h_vector(matroid: &Matroid, ordering: Option<&[usize]>) -> Vec<Int> {
    let n = matroid.size();
    let natural: Vec<usize> = (0..n).collect();
    let ordering = ordering.unwrap_or(&natural);
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &e) in ordering.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    // broken circuits: circuit minus its smallest element in the ordering
    let broken: Vec<Vec<usize>> = matroid
        .circuits()
        .into_iter()
        .map(|c| {
            let min = *c.iter().min_by_key(|&&e| pos[e]).unwrap();
            c.into_iter().filter(|&e| e != min).collect()
        })
        .collect();
    let d = matroid.rank();
    let mut f = vec![Int::zero(); d + 1];
    for mask in 0usize..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let contains_bc = broken
            .iter()
            .any(|bc| bc.iter().all(|e| set.contains(e)));
        if !contains_bc {
            // faces of the broken-circuit complex are independent
            debug_assert!(matroid.is_independent(&set));
            if set.len() <= d {
                f[set.len()] += 1;
            }
        }
    }
    h_from_f(&f, d)
}

fn h_from_f(f: &[Int], d: usize) -> Vec<Int> {
    // sum_i f_i (t-1)^{d-i} = sum_j h_j t^{d-j}
    let mut h = vec![Int::zero(); d + 1];
    for (i, fi) in f.iter().enumerate() {
        // expand (t-1)^{d-i}
        let m = d - i;
        for j in 0..=m {
            // coefficient of t^{m-j}: C(m, j) (-1)^j; target index: d - (m-j) = i + j
            let mut c = binomial(m, j);
            if j % 2 == 1 {
                c = -c;
            }
            h[i + j] += fi * c;
        }
    }
    h
}

fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut out = Int::one();
    for i in 0..k {
        out = out * Int::from(n - i) / Int::from(i + 1);
    }
    out
}

/// The paper's matroid identity: the top h-number equals the sum of the
/// h-numbers of the broken circuit complex of the dual matroid.
pub fn top_h_identity_holds(matroid: &Matroid) -> bool {
    let h = h_vector(matroid);
    let bc = broken_circuit_h_vector(&matroid.dual(), None);
    let total: Int = bc.iter().cloned().sum();
    h.last().cloned().unwrap_or_else(Int::zero) == total
}

/// Feasibility check used by goldie_rank preconditions.
pub fn is_quantized_feasible(bx: &QuantizedPolarizedArrangement, sv: &SignVector) -> bool {
    integer_point(bx.lattice().rank(), &bx.chamber_cons(sv)).is_some()
}

#[cfg(test)]
mod tests;
