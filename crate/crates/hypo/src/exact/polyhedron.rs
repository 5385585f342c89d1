//! Rational polyhedra: feasibility, cone boundedness, lattice points.

use super::{
    complete_to_basis, feasible_witness, maximize, minimize, primitive_integer, rat_int,
    ExactError, Int, Lattice, LinCon, Opt, Rat, Rel,
};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum Sense {
    Ge,
    Le,
}

/// `coeffs · x  {>=,<=}  constant`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineInequality {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
    pub sense: Sense,
}

impl AffineInequality {
    pub fn ge(coeffs: Vec<Rat>, constant: Rat) -> Self {
        AffineInequality {
            coeffs,
            constant,
            sense: Sense::Ge,
        }
    }

    pub fn le(coeffs: Vec<Rat>, constant: Rat) -> Self {
        AffineInequality {
            coeffs,
            constant,
            sense: Sense::Le,
        }
    }

    fn to_con(&self) -> LinCon {
        match self.sense {
            Sense::Ge => LinCon::ge(self.coeffs.clone(), -self.constant.clone()),
            Sense::Le => LinCon::ge(
                self.coeffs.iter().map(|v| -v.clone()).collect(),
                self.constant.clone(),
            ),
        }
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        self.to_con().satisfied_by(x)
    }
}

/// A polyhedron `{x : coeffs·x >= / <= constant}` in a stated ambient
/// dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPolyhedron {
    pub dim: usize,
    pub inequalities: Vec<AffineInequality>,
}

impl RationalPolyhedron {
    pub fn new(dim: usize, inequalities: Vec<AffineInequality>) -> Result<Self, ExactError> {
        for ineq in &inequalities {
            if ineq.coeffs.len() != dim {
                return Err(ExactError::DimensionMismatch {
                    expected: dim,
                    got: ineq.coeffs.len(),
                });
            }
        }
        Ok(RationalPolyhedron { dim, inequalities })
    }

    pub fn cons(&self) -> Vec<LinCon> {
        self.inequalities.iter().map(|i| i.to_con()).collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.inequalities.iter().all(|i| i.satisfied_by(x))
    }
}

/// A rational witness point, or `None` if the polyhedron is empty.
pub fn polyhedron_feasible(p: &RationalPolyhedron) -> Option<Vec<Rat>> {
    let w = feasible_witness(p.dim, &p.cons())?;
    debug_assert!(p.contains(&w));
    Some(w)
}

/// True iff `{v in C : xi(v) >= 0} = {0}`, i.e. `xi` is strictly negative on
/// the cone away from the origin.  This is the "proper and bounded above"
/// test for recession cones.  Errors if any constant term is nonzero.
pub fn functional_bounded_on_cone(
    xi: &[Rat],
    cone: &RationalPolyhedron,
) -> Result<bool, ExactError> {
    if xi.len() != cone.dim {
        return Err(ExactError::DimensionMismatch {
            expected: cone.dim,
            got: xi.len(),
        });
    }
    if cone.inequalities.iter().any(|i| !i.constant.is_zero()) {
        return Err(ExactError::NonHomogeneous);
    }
    Ok(cone_region_is_origin(cone.dim, &{
        let mut cons = cone.cons();
        cons.push(LinCon::ge(xi.to_vec(), Rat::zero()));
        cons
    }))
}

/// True iff the homogeneous system has `{0}` as its only solution.
pub(crate) fn cone_region_is_origin(dim: usize, cons: &[LinCon]) -> bool {
    // A cone is {0} iff it contains no point with some coordinate = ±1.
    for i in 0..dim {
        for sign in [1i64, -1] {
            let mut sys = cons.to_vec();
            let mut a = vec![Rat::zero(); dim];
            a[i] = Rat::one();
            sys.push(LinCon::eq(a, rat_int(-sign)));
            if feasible_witness(dim, &sys).is_some() {
                return false;
            }
        }
    }
    true
}

/// An affine lattice `base + Λ` inside `Q^n`.
#[derive(Clone, Debug)]
pub struct AffineLattice {
    pub base: Vec<Rat>,
    pub lattice: Lattice,
}

impl AffineLattice {
    pub fn new(base: Vec<Rat>, lattice: Lattice) -> Result<Self, ExactError> {
        if base.len() != lattice.ambient_rank() {
            return Err(ExactError::DimensionMismatch {
                expected: lattice.ambient_rank(),
                got: base.len(),
            });
        }
        Ok(AffineLattice { base, lattice })
    }

    fn point(&self, t: &[Int]) -> Vec<Rat> {
        let tr: Vec<Rat> = t.iter().cloned().map(Rat::from_integer).collect();
        let emb = self.lattice.embed(&tr);
        self.base
            .iter()
            .zip(emb)
            .map(|(b, e)| b.clone() + e)
            .collect()
    }

    /// Pull the polyhedron back to lattice coordinates `t`.
    fn pullback(&self, p: &RationalPolyhedron) -> Vec<LinCon> {
        let k = self.lattice.rank();
        let normals = self.lattice.restricted_normals();
        p.inequalities
            .iter()
            .map(|ineq| {
                // coeffs·(base + Bᵀ t) sense constant
                let mut a = vec![Rat::zero(); k];
                for (i, c) in ineq.coeffs.iter().enumerate() {
                    for j in 0..k {
                        a[j] += c * &normals[i][j];
                    }
                }
                let shift: Rat = ineq
                    .coeffs
                    .iter()
                    .zip(&self.base)
                    .map(|(c, b)| c * b)
                    .sum();
                match ineq.sense {
                    Sense::Ge => LinCon::ge(a, shift - &ineq.constant),
                    Sense::Le => LinCon::ge(
                        a.into_iter().map(|v| -v).collect(),
                        &ineq.constant - shift,
                    ),
                }
            })
            .collect()
    }
}

/// Exact enumeration of the lattice points of `al` inside the bounded
/// polyhedron `p`, in lexicographic order of lattice coordinates.  Errors
/// with `UnboundedEnumeration` when `p ∩ aff(al)` is unbounded.
pub fn lattice_points_in_polytope(
    al: &AffineLattice,
    p: &RationalPolyhedron,
) -> Result<Vec<Vec<Rat>>, ExactError> {
    if p.dim != al.lattice.ambient_rank() {
        return Err(ExactError::DimensionMismatch {
            expected: al.lattice.ambient_rank(),
            got: p.dim,
        });
    }
    let k = self_rank(al);
    let cons = al.pullback(p);
    if feasible_witness(k, &cons).is_none() {
        return Ok(vec![]);
    }
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for j in 0..k {
        let mut obj = vec![Rat::zero(); k];
        obj[j] = Rat::one();
        match minimize(k, &cons, &obj) {
            Opt::Finite(v) => lo.push(v.ceil().to_integer()),
            _ => return Err(ExactError::UnboundedEnumeration),
        }
        match maximize(k, &cons, &obj) {
            Opt::Finite(v) => hi.push(v.floor().to_integer()),
            _ => return Err(ExactError::UnboundedEnumeration),
        }
    }
    let mut out = Vec::new();
    let mut t: Vec<Int> = lo.clone();
    if k == 0 {
        out.push(al.point(&[]));
        return Ok(out);
    }
    'outer: loop {
        let tr: Vec<Rat> = t.iter().cloned().map(Rat::from_integer).collect();
        if cons.iter().all(|c| c.satisfied_by(&tr)) {
            out.push(al.point(&t));
        }
        // lexicographic increment
        let mut j = k;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if t[j] < hi[j] {
                t[j] += 1;
                for l in j + 1..k {
                    t[l] = lo[l].clone();
                }
                break;
            }
        }
    }
    Ok(out)
}

fn self_rank(al: &AffineLattice) -> usize {
    al.lattice.rank()
}

/// A single point of `al` inside `p` (which may be unbounded), or `None`.
pub fn lattice_point_witness(al: &AffineLattice, p: &RationalPolyhedron) -> Option<Vec<Rat>> {
    let k = al.lattice.rank();
    let cons = al.pullback(p);
    let t = integer_point(k, &cons)?;
    let pt = al.point(&t);
    debug_assert!(p.contains(&pt));
    Some(pt)
}

/// Integer feasibility for a system of non-strict rational constraints,
/// complete also in the unbounded case: split off an integer recession
/// direction, project, and recurse.
pub fn integer_point(dim: usize, cons: &[LinCon]) -> Option<Vec<Int>> {
    assert!(cons.iter().all(|c| c.rel != Rel::Gt), "non-strict systems only");
    feasible_witness(dim, cons)?;
    if dim == 0 {
        return Some(vec![]);
    }
    // recession cone
    let rec: Vec<LinCon> = cons
        .iter()
        .map(|c| LinCon::new(c.a.clone(), Rat::zero(), c.rel))
        .collect();
    let mut ray: Option<Vec<Int>> = None;
    'search: for i in 0..dim {
        for sign in [1i64, -1] {
            let mut sys = rec.clone();
            let mut a = vec![Rat::zero(); dim];
            a[i] = Rat::one();
            sys.push(LinCon::eq(a, rat_int(-sign)));
            if let Some(w) = feasible_witness(dim, &sys) {
                ray = Some(primitive_integer(&w));
                break 'search;
            }
        }
    }
    match ray {
        None => {
            // bounded: enumerate the box
            let mut lo = Vec::with_capacity(dim);
            let mut hi = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut obj = vec![Rat::zero(); dim];
                obj[j] = Rat::one();
                let Opt::Finite(a) = minimize(dim, cons, &obj) else {
                    unreachable!("trivial recession cone implies bounded");
                };
                let Opt::Finite(b) = maximize(dim, cons, &obj) else {
                    unreachable!("trivial recession cone implies bounded");
                };
                lo.push(a.ceil().to_integer());
                hi.push(b.floor().to_integer());
            }
            if lo.iter().zip(&hi).any(|(a, b)| a > b) {
                return None;
            }
            let mut t = lo.clone();
            loop {
                let tr: Vec<Rat> = t.iter().cloned().map(Rat::from_integer).collect();
                if cons.iter().all(|c| c.satisfied_by(&tr)) {
                    return Some(t);
                }
                let mut j = dim;
                loop {
                    if j == 0 {
                        return None;
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
        }
        Some(r) => {
            // substitute x = M s with M unimodular, last column r, and
            // project out the last coordinate: lattice points survive
            // exactly because +r is a recession direction.
            let m = complete_to_basis(&r);
            let transformed: Vec<LinCon> = cons
                .iter()
                .map(|c| {
                    let a: Vec<Rat> = (0..dim)
                        .map(|j| {
                            (0..dim)
                                .map(|i| &c.a[i] * Rat::from_integer(m.get(i, j).clone()))
                                .sum()
                        })
                        .collect();
                    LinCon::new(a, c.c.clone(), c.rel)
                })
                .collect();
            let projected = project_last(dim, &transformed);
            let s_rest = integer_point(dim - 1, &projected)?;
            // 1-variable system in the last coordinate
            let mut lo: Option<Rat> = None;
            for c in transformed.iter().flat_map(split_eq) {
                let coeff = c.a[dim - 1].clone();
                let mut rest = c.c.clone();
                for i in 0..dim - 1 {
                    rest += &c.a[i] * Rat::from_integer(s_rest[i].clone());
                }
                if coeff.is_positive() {
                    let bound = -rest / &coeff;
                    lo = Some(match lo {
                        None => bound,
                        Some(b) => {
                            if bound > b {
                                bound
                            } else {
                                b
                            }
                        }
                    });
                } else if coeff.is_negative() {
                    // upper bounds cannot occur: +e_last is a recession
                    // direction of the transformed system
                    debug_assert!(false, "upper bound on a recession coordinate");
                }
            }
            let s_last = match lo {
                None => Int::zero(),
                Some(b) => b.ceil().to_integer(),
            };
            let mut s = s_rest;
            s.push(s_last);
            let x = m.mul_vec(&s);
            let xr: Vec<Rat> = x.iter().cloned().map(Rat::from_integer).collect();
            debug_assert!(cons.iter().all(|c| c.satisfied_by(&xr)));
            Some(x)
        }
    }
}

fn split_eq(c: &LinCon) -> Vec<LinCon> {
    match c.rel {
        Rel::Eq => vec![
            LinCon::ge(c.a.clone(), c.c.clone()),
            LinCon::ge(c.a.iter().map(|v| -v.clone()).collect(), -c.c.clone()),
        ],
        _ => vec![c.clone()],
    }
}

/// Fourier-Motzkin projection dropping the last coordinate.
fn project_last(dim: usize, cons: &[LinCon]) -> Vec<LinCon> {
    let split: Vec<LinCon> = cons.iter().flat_map(split_eq).collect();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    let j = dim - 1;
    for c in &split {
        if c.a[j].is_zero() {
            out.push(LinCon::new(c.a[..j].to_vec(), c.c.clone(), c.rel));
        } else if c.a[j].is_positive() {
            lower.push(c.clone());
        } else {
            upper.push(c.clone());
        }
    }
    for lo in &lower {
        for up in &upper {
            let s = -up.a[j].clone();
            let t = lo.a[j].clone();
            let a: Vec<Rat> = (0..j).map(|i| &s * &lo.a[i] + &t * &up.a[i]).collect();
            let c = &s * &lo.c + &t * &up.c;
            out.push(LinCon::ge(a, c));
        }
    }
    out
}
