//! The path-normal-form model of the cube quiver algebra.
//!
//! In `Q_n` (the n-cube quiver modulo commuting squares) the paths from `α`
//! to `γ` are classified by how often each coordinate gets flipped: sorting
//! the flip sequence turns a path into "minimal path from α to γ times a
//! monomial in the loops θ_i".  After imposing the central relations
//! `ϑ(x) = Σ x_i θ_i = 0` for `x ∈ 𝔨 = Λ₀^⊥`, each θ_i rewrites into a
//! fixed basis `{θ_j : j ∈ S}` with `S` a lex-first maximal independent set
//! of restricted normals, and every Hom-space between vertices becomes a
//! quotient of the polynomial ring `Q[θ_S]` by an ideal generated by
//! products of linear forms (one generator per killed idempotent).
//!
//! All graded pieces are computed by exact Gaussian elimination over the
//! monomial basis.

use crate::arrangement::SignVector;
use crate::exact::{matrix_rank, Lattice, Rat, RatMat};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

/// Exponent vector over the θ_S variables.
pub(crate) type Expo = Vec<u32>;

/// Sparse polynomial in the θ_S variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct Poly(pub BTreeMap<Expo, Rat>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    pub fn monomial(expo: Expo, c: Rat) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(expo, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Poly, scale: &Rat) {
        if scale.is_zero() {
            return;
        }
        for (e, c) in &other.0 {
            let entry = self.0.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c * scale;
            if entry.is_zero() {
                self.0.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e: Expo = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.0.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        out.0.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul_monomial(&self, expo: &Expo) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.0 {
            out.0
                .insert(e.iter().zip(expo).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Linear combination of variables: `Σ coeffs[j] θ_{S[j]}`.
    pub fn linear(coeffs: &[Rat]) -> Poly {
        let mut p = Poly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; coeffs.len()];
                e[j] = 1;
                p.0.insert(e, c.clone());
            }
        }
        p
    }
}

/// All monomials of total degree `d` in `nvars` variables, ascending lex.
pub(crate) fn monomials(nvars: usize, d: usize) -> Vec<Expo> {
    fn rec(nvars: usize, d: usize, prefix: &mut Expo, out: &mut Vec<Expo>) {
        if prefix.len() + 1 == nvars {
            let mut e = prefix.clone();
            e.push(d as u32);
            out.push(e);
            return;
        }
        for v in 0..=d {
            prefix.push(v as u32);
            rec(nvars, d - v, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Rewriting data: `θ_i = Σ_j rewrite[i][j] θ_{S[j]}` modulo `ϑ(𝔨)`.
#[derive(Clone, Debug)]
pub(crate) struct ThetaRing {
    pub n: usize,
    pub s: Vec<usize>,
    pub rewrite: Vec<Vec<Rat>>,
}

impl ThetaRing {
    pub fn new(lattice: &Lattice) -> ThetaRing {
        let n = lattice.ambient_rank();
        let k = lattice.rank();
        let normals = lattice.restricted_normals();
        // lex-first maximal independent set of columns
        let mut s: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut cand: Vec<Vec<Rat>> = s.iter().map(|&j| normals[j].clone()).collect();
            cand.push(normals[i].clone());
            if matrix_rank(&cand) == cand.len() {
                s.push(i);
            }
            if s.len() == k {
                break;
            }
        }
        assert_eq!(s.len(), k, "restricted normals must span");
        // each θ_i rewrites through the relation matrix: N_S x = N_i
        let cols: Vec<Vec<Rat>> = s.iter().map(|&j| normals[j].clone()).collect();
        let m = RatMat::from_rows(transpose(&cols, k));
        let mut rewrite = Vec::with_capacity(n);
        for i in 0..n {
            let x = m.solve(&normals[i]).expect("column lies in the span of S");
            rewrite.push(x);
        }
        ThetaRing { n, s, rewrite }
    }

    pub fn nvars(&self) -> usize {
        self.s.len()
    }

    /// `θ_i` as a degree-one polynomial in the `θ_S`.
    pub fn theta(&self, i: usize) -> Poly {
        Poly::linear(&self.rewrite[i])
    }

    /// Product of `θ_i` over an index set (the correction factor of a path
    /// product), expanded.
    pub fn product_of(&self, indices: &[usize]) -> Poly {
        let mut p = Poly::one(self.nvars());
        for &i in indices {
            p = p.mul(&self.theta(i));
        }
        p
    }
}

fn transpose(cols: &[Vec<Rat>], rows: usize) -> Vec<Vec<Rat>> {
    (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect()
}

/// Graded pieces of a homogeneous ideal `⟨gens⟩ ⊆ Q[θ_S]` with reduction to
/// a standard-monomial basis, computed per degree and cached.
pub(crate) struct PairIdeal {
    nvars: usize,
    gens: Vec<Poly>,
    pieces: RefCell<BTreeMap<usize, Rc<DegreePiece>>>,
}

pub(crate) struct DegreePiece {
    pub monomials: Vec<Expo>,
    /// echelonized ideal rows: (pivot monomial position, dense row)
    rows: Vec<(usize, Vec<Rat>)>,
    pub std_monomials: Vec<Expo>,
}

impl DegreePiece {
    /// Reduce a polynomial of this degree to the standard monomials.
    pub fn reduce(&self, poly: &Poly) -> Vec<(Expo, Rat)> {
        let mut dense = vec![Rat::zero(); self.monomials.len()];
        for (e, c) in &poly.0 {
            let pos = self
                .monomials
                .binary_search(e)
                .expect("monomial of the right degree");
            dense[pos] = c.clone();
        }
        for (pivot, row) in &self.rows {
            if !dense[*pivot].is_zero() {
                let f = dense[*pivot].clone();
                for (i, r) in row.iter().enumerate() {
                    if !r.is_zero() {
                        dense[i] -= &f * r;
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (i, e) in self.monomials.iter().enumerate() {
            if !dense[i].is_zero() {
                out.push((e.clone(), dense[i].clone()));
            }
        }
        out
    }
}

impl PairIdeal {
    pub fn new(nvars: usize, gens: Vec<Poly>) -> PairIdeal {
        PairIdeal {
            nvars,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            pieces: RefCell::new(BTreeMap::new()),
        }
    }

    fn gen_degree(g: &Poly) -> usize {
        g.0.keys()
            .next()
            .map(|e| e.iter().sum::<u32>() as usize)
            .unwrap_or(0)
    }

    pub fn piece(&self, degree: usize) -> Rc<DegreePiece> {
        if let Some(p) = self.pieces.borrow().get(&degree) {
            return p.clone();
        }
        let monos = monomials(self.nvars, degree);
        let index: BTreeMap<&Expo, usize> = monos.iter().zip(0..).collect();
        // rows spanning the ideal's graded piece: m * g for deg m + deg g = degree
        let mut raw_rows: Vec<Vec<Rat>> = Vec::new();
        for g in &self.gens {
            let dg = Self::gen_degree(g);
            if dg > degree {
                continue;
            }
            for m in monomials(self.nvars, degree - dg) {
                let prod = g.mul_monomial(&m);
                let mut dense = vec![Rat::zero(); monos.len()];
                for (e, c) in &prod.0 {
                    dense[index[e]] = c.clone();
                }
                raw_rows.push(dense);
            }
        }
        // echelonize
        let mut rows: Vec<(usize, Vec<Rat>)> = Vec::new();
        for mut row in raw_rows {
            for (pivot, r) in &rows {
                if !row[*pivot].is_zero() {
                    let f = row[*pivot].clone();
                    for (i, v) in r.iter().enumerate() {
                        if !v.is_zero() {
                            row[i] -= &f * v;
                        }
                    }
                }
            }
            if let Some(pivot) = row.iter().position(|v| !v.is_zero()) {
                let inv = row[pivot].recip();
                for v in &mut row {
                    *v *= &inv;
                }
                // back-substitute into earlier rows
                for (_, r) in &mut rows {
                    if !r[pivot].is_zero() {
                        let f = r[pivot].clone();
                        for (i, v) in row.iter().enumerate() {
                            if !v.is_zero() {
                                r[i] -= &f * v;
                            }
                        }
                    }
                }
                rows.push((pivot, row));
            }
        }
        rows.sort_by_key(|(p, _)| *p);
        let pivot_set: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        let std_monomials: Vec<Expo> = monos
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivot_set.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        let piece = Rc::new(DegreePiece {
            monomials: monos,
            rows,
            std_monomials,
        });
        self.pieces.borrow_mut().insert(degree, piece.clone());
        piece
    }
}

/// Hamming-difference set of two full sign vectors.
pub(crate) fn diff_set(a: &SignVector, b: &SignVector) -> Vec<usize> {
    a.iter()
        .zip(b.iter())
        .filter(|((_, sa), (_, sb))| sa != sb)
        .map(|((i, _), _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::tests::diagonal_lattice;
    use crate::exact::Int;

    fn r(v: i64) -> Rat {
        Rat::from_integer(Int::from(v))
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials(0, 0), vec![Vec::<u32>::new()]);
        assert_eq!(monomials(0, 1), Vec::<Expo>::new());
        assert_eq!(monomials(3, 1).len(), 3);
    }

    #[test]
    fn theta_rewrite_diagonal() {
        // n=3 diagonal: θ1 + θ2 + θ3 = 0, S = {0,1}: θ3 = -θ1 - θ2
        let ring = ThetaRing::new(&diagonal_lattice(3));
        assert_eq!(ring.s, vec![0, 1]);
        assert_eq!(ring.rewrite[2], vec![r(-1), r(-1)]);
        // antidiagonal: all θ_i equal
        let ring = ThetaRing::new(&Lattice::from_i64(3, &[vec![1, 1, 1]]).unwrap());
        assert_eq!(ring.s, vec![0]);
        assert_eq!(ring.rewrite[1], vec![r(1)]);
        assert_eq!(ring.rewrite[2], vec![r(1)]);
    }

    #[test]
    fn ideal_reduction() {
        // ideal <θ1^2> in Q[θ1]: standard monomials 1, θ1
        let ideal = PairIdeal::new(1, vec![Poly::monomial(vec![2], Rat::one())]);
        assert_eq!(ideal.piece(0).std_monomials.len(), 1);
        assert_eq!(ideal.piece(1).std_monomials.len(), 1);
        assert_eq!(ideal.piece(2).std_monomials.len(), 0);
        assert_eq!(ideal.piece(5).std_monomials.len(), 0);

        // ideal <θ1 + θ2, θ1 θ2> in Q[θ1, θ2]: the quotient is Q[θ]/θ²
        // (θ = θ1 = -θ2, and θ1² = -θ1θ2 lands in the ideal)
        let gens = vec![
            Poly::linear(&[r(1), r(1)]),
            Poly::monomial(vec![1, 1], Rat::one()),
        ];
        let ideal = PairIdeal::new(2, gens);
        assert_eq!(ideal.piece(0).std_monomials.len(), 1);
        assert_eq!(ideal.piece(1).std_monomials.len(), 1);
        assert_eq!(ideal.piece(2).std_monomials.len(), 0);
        assert_eq!(ideal.piece(3).std_monomials.len(), 0);

        // reduction is idempotent and kills ideal members
        let p = Poly::linear(&[r(2), r(2)]);
        let reduced = ideal.piece(1).reduce(&p);
        assert!(reduced.is_empty());
    }
}
