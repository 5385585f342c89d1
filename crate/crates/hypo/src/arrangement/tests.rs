use super::*;
use crate::exact::feasible_witness;

pub(crate) fn diagonal_lattice(n: usize) -> Lattice {
    // {Σ h = 0}: basis rows e_i - e_{i+1}
    let rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut r = vec![0i64; n];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect();
    Lattice::from_i64(n, &rows).unwrap()
}

pub(crate) fn diagonal_polarized(n: usize, eta_sum: i64) -> PolarizedArrangement {
    let mut eta = vec![0i64; n];
    eta[0] = eta_sum;
    let xi = vec![1i64; n - 1];
    PolarizedArrangement::new(
        diagonal_lattice(n),
        eta.into_iter().map(Int::from).collect(),
        xi.into_iter().map(Int::from).collect(),
    )
    .unwrap()
}

/// Example family with Λ₀ the sum-zero lattice and 𝚲_c = {Σ h⁺ = c}.
pub(crate) fn diagonal_quantized(n: usize, c: i64) -> QuantizedPolarizedArrangement {
    let mut base = vec![0i64; n];
    base[0] = c;
    let xi = vec![1i64; n - 1];
    QuantizedPolarizedArrangement::from_i64(
        n,
        &(0..n - 1)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = 1;
                r[i + 1] = -1;
                r
            })
            .collect::<Vec<_>>(),
        &base,
        &xi,
    )
    .unwrap()
}

/// The rank-one lattice spanned by (1,..,1); quantized parameter with all
/// h⁺ values equal to `c` is the engineered non-regular example.
pub(crate) fn antidiagonal_quantized(n: usize, base: &[i64], xi: i64) -> QuantizedPolarizedArrangement {
    QuantizedPolarizedArrangement::from_i64(n, &[vec![1i64; n]], base, &[xi]).unwrap()
}

fn sv(s: &str) -> SignVector {
    SignVector::from_str_full(s)
}

#[test]
fn restricted_normals_read_off() {
    let l = Lattice::from_i64(2, &[vec![1, -1]]).unwrap();
    let normals = l.restricted_normals();
    assert_eq!(normals[0], vec![Rat::from_integer(Int::from(1))]);
    assert_eq!(normals[1], vec![Rat::from_integer(Int::from(-1))]);

    let l = diagonal_lattice(3);
    let normals = l.restricted_normals();
    let r = |v: i64| Rat::from_integer(Int::from(v));
    assert_eq!(normals[0], vec![r(1), r(0)]);
    assert_eq!(normals[1], vec![r(-1), r(1)]);
    assert_eq!(normals[2], vec![r(0), r(-1)]);
    // no normal is zero (lattice invariant)
    for nm in normals {
        assert!(nm.iter().any(|x| !x.is_zero()));
    }
}

#[test]
fn figure_counts_n3() {
    let x = diagonal_polarized(3, 1);
    let f = x.feasible_signs();
    assert_eq!(f.len(), 7);
    // explicit witness for (+,+,+): lift (1,0,0)
    assert!(x.is_feasible(&sv("+++")));
    // nonpositive coordinates cannot sum to 1
    assert!(!x.is_feasible(&sv("---")));
    let p = x.bounded_feasible_signs();
    assert_eq!(p, vec![sv("+++"), sv("-++"), sv("--+")]);
}

#[test]
fn bounded_n2_zero_xi() {
    // ξ = 0: only the totally bounded sign vectors survive; for the n=2
    // diagonal those are the two with Δ₀ = {0}
    let l = diagonal_lattice(2);
    let b = bounded_signs(&l, &[Int::zero()]);
    assert_eq!(b, vec![sv("++"), sv("--")]);
}

#[test]
fn bounded_count_matches_vertices_when_regular() {
    // ξ regular => |F ∩ B| = number of vertices of the arrangement; for the
    // n=3 diagonal with η-sum 1 the three vertices pair with P
    let x = diagonal_polarized(3, 1);
    assert!(x.xi_regular());
    assert_eq!(x.bounded_feasible_signs().len(), 3);
}

#[test]
fn eta_lift_invariance() {
    let x = diagonal_polarized(3, 1);
    for lam in [vec![1i64, -1, 0], vec![0, 1, -1], vec![2, -1, -1]] {
        let shift: Vec<Int> = lam.into_iter().map(Int::from).collect();
        let y = x.translated(&shift);
        assert_eq!(x.feasible_signs(), y.feasible_signs());
        assert_eq!(x.bounded_signs(), y.bounded_signs());
        assert_eq!(x.equivalence_key(), y.equivalence_key());
    }
}

#[test]
fn quantized_counts() {
    // linked to the Fig.-style polarized arrangement
    let bx = diagonal_quantized(3, 1);
    assert_eq!(bx.feasible_signs().len(), 7);
    // non-regular Λ of the antidiagonal family: only the two constant sign
    // vectors are feasible
    let bx = antidiagonal_quantized(4, &[0, 0, 0, 0], 1);
    assert_eq!(bx.feasible_signs(), vec![sv("++++"), sv("----")]);
}

#[test]
fn quantized_lift_invariance() {
    let bx = diagonal_quantized(3, 2);
    let shifted = bx.translated(&[Int::from(1), Int::from(-1), Int::from(0)]);
    assert_eq!(bx.integral_indices(), shifted.integral_indices());
    assert_eq!(bx.feasible_signs(), shifted.feasible_signs());
    assert_eq!(bx.equivalence_key(), shifted.equivalence_key());
}

#[test]
fn empty_integral_set() {
    // I_Λ = ∅: F = {empty sign vector} and P = ∅
    let l = Lattice::from_i64(2, &[vec![1, -1]]).unwrap();
    let bx = QuantizedPolarizedArrangement::new(
        l,
        vec![
            Rat::new(Int::from(1), Int::from(2)),
            Rat::new(Int::from(1), Int::from(3)),
        ],
        vec![Int::from(1)],
    )
    .unwrap();
    assert!(bx.integral_indices().is_empty());
    let f = bx.feasible_signs();
    assert_eq!(f.len(), 1);
    assert!(f[0].is_empty());
    assert!(bx.bounded_feasible_signs().is_empty());
    assert!(!bx.essential());
    assert_eq!(essentialize(&bx), Err(ArrangementError::Inessential));
}

#[test]
fn regularity_flags() {
    // three lines concurrent iff η-sum = 0
    assert!(diagonal_polarized(3, 1).eta_regular());
    assert!(!diagonal_polarized(3, 0).eta_regular());

    // Example family: Λ_c regular iff c >= 0 or c <= -n
    for (c, expect) in [(0, true), (1, true), (-1, false), (-2, false), (-3, true)] {
        assert_eq!(diagonal_quantized(3, c).lambda_regular(), expect, "c={c}");
    }
    // c = 0: integral, regular; the n hyperplanes through one point do not
    // violate quasi-regularity
    let bx = diagonal_quantized(3, 0);
    let rep = bx.regularity_report();
    assert_eq!(rep.integral, Some(true));
    assert_eq!(rep.quasi_regular, Some(true));
    assert_eq!(rep.lambda_regular, Some(true));
    assert!(rep.unimodular);

    // diagonal lattice is unimodular (SNF oracle on all projections)
    assert!(unimodular(&diagonal_lattice(4)));
}

#[test]
fn xi_regularity() {
    let l = diagonal_lattice(3);
    // ξ = (1,1) positive on all 1-dim flat directions
    assert!(xi_regular(&l, &[Int::from(1), Int::from(1)]));
    // ξ = (1,-1) kills the direction of the middle hyperplane's flat:
    // flats of U_{2,3} are the three lines h_i = 0; direction of h_2 = 0
    // (normal (-1,1)) is (1,1), and ξ(1,1) = 0
    assert!(!xi_regular(&l, &[Int::from(1), Int::from(-1)]));
}

#[test]
fn linkage() {
    let x = diagonal_polarized(3, 1);
    let bx = diagonal_quantized(3, 1);
    assert!(is_linked(&x, &bx).unwrap());
    // unimodular: translation criterion passes with k = 1
    assert_eq!(linkage_translation_check(&x, &bx, 3).unwrap(), Some(1));

    // η-sum 1 vs c = -3: not linked (both regular)
    let bx_neg = diagonal_quantized(3, -3);
    assert!(!is_linked(&x, &bx_neg).unwrap());

    // mismatched ξ errors
    let x_badxi = PolarizedArrangement::new(
        diagonal_lattice(3),
        vec![Int::from(1), Int::from(0), Int::from(0)],
        vec![Int::from(2), Int::from(2)],
    )
    .unwrap();
    assert_eq!(
        is_linked(&x_badxi, &bx),
        Err(ArrangementError::ParameterMismatch)
    );
}

#[test]
fn essentialize_examples() {
    // integral input: identity
    let bx = diagonal_quantized(3, 1);
    assert_eq!(essentialize(&bx).unwrap(), bx);

    // half-integral two-pair example with |I_Λ| = 1 and essential doubled
    // arrangement: Λ₀ = span{(1,1)} ⊂ Z², basepoint (1/2, 0)
    let l = Lattice::from_i64(2, &[vec![1, 1]]).unwrap();
    let bx = QuantizedPolarizedArrangement::new(
        l,
        vec![Rat::new(Int::from(1), Int::from(2)), Rat::zero()],
        vec![Int::from(1)],
    )
    .unwrap();
    assert!(bx.essential());
    let e = essentialize(&bx).unwrap();
    assert_eq!(e.n(), 1);
    // chamber data carries over: F, B, P agree after renaming the support
    let f_old: Vec<Vec<Sign>> = bx.feasible_signs().iter().map(|v| v.signs().to_vec()).collect();
    let f_new: Vec<Vec<Sign>> = e.feasible_signs().iter().map(|v| v.signs().to_vec()).collect();
    assert_eq!(f_old, f_new);
    let b_old: Vec<Vec<Sign>> = bx.bounded_signs().iter().map(|v| v.signs().to_vec()).collect();
    let b_new: Vec<Vec<Sign>> = e.bounded_signs().iter().map(|v| v.signs().to_vec()).collect();
    assert_eq!(b_old, b_new);
}

#[test]
fn chamber_counts() {
    // regular integral diagonal: 7 = 1 + 3 + 3 independent sets of U_{2,3}
    let check = chamber_count_check(&diagonal_quantized(3, 1));
    assert_eq!(
        check,
        ChamberCountCheck {
            count: 7,
            bound: 7,
            equal: true
        }
    );
    // engineered non-regular: 2 < bound
    let check = chamber_count_check(&antidiagonal_quantized(3, &[0, 0, 0], 1));
    assert_eq!(check.count, 2);
    assert!(check.count < check.bound);
    assert!(!check.equal);
    // I_Λ = ∅: count = bound = 1
    let l = Lattice::from_i64(2, &[vec![1, -1]]).unwrap();
    let bx = QuantizedPolarizedArrangement::new(
        l,
        vec![
            Rat::new(Int::from(1), Int::from(2)),
            Rat::new(Int::from(1), Int::from(3)),
        ],
        vec![Int::from(1)],
    )
    .unwrap();
    let check = chamber_count_check(&bx);
    assert_eq!((check.count, check.bound), (1, 1));
    // equality tracks regularity on the diagonal family
    for c in [-2i64, -1, 0, 1] {
        let bx = diagonal_quantized(3, c);
        assert_eq!(chamber_count_check(&bx).equal, bx.lambda_regular(), "c={c}");
    }
}

#[test]
fn equivalence_keys() {
    // same chamber combinatorics for η-sum 1 and 2
    let a = diagonal_polarized(3, 1);
    let b = diagonal_polarized(3, 2);
    assert_eq!(a.equivalence_key(), b.equivalence_key());
    // crossing the wall changes the key
    let c = diagonal_polarized(3, -5);
    assert_ne!(a.equivalence_key(), c.equivalence_key());
    // canonical strings are deterministic
    assert_eq!(
        a.equivalence_key().canonical_string(),
        b.equivalence_key().canonical_string()
    );
}

#[test]
fn feasible_lp_agrees_with_grid_search() {
    // oracle equivalence on a small box: feasibility of each chamber of the
    // n=3 diagonal agrees with brute-force rational grid search
    let x = diagonal_polarized(3, 1);
    let feasible: std::collections::BTreeSet<SignVector> =
        x.feasible_signs().into_iter().collect();
    let all = enumerate_signs(&[0, 1, 2], &mut |_| true, &mut |_| true);
    for svec in all {
        let mut grid = false;
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let t = vec![
                    Rat::new(Int::from(a), Int::from(3)),
                    Rat::new(Int::from(b), Int::from(3)),
                ];
                if x.chamber_cons(&svec).iter().all(|c| c.satisfied_by(&t)) {
                    grid = true;
                }
            }
        }
        assert_eq!(grid, feasible.contains(&svec), "sign vector {svec}");
    }
}

#[test]
fn chamber_graph_connected() {
    // wall-crossing connectivity of F_η
    for x in [diagonal_polarized(3, 1), diagonal_polarized(4, 2)] {
        let f = x.feasible_signs();
        let index: std::collections::BTreeMap<&SignVector, usize> =
            f.iter().zip(0..).collect();
        let mut adj = vec![Vec::new(); f.len()];
        for (i, a) in f.iter().enumerate() {
            for coord in 0..x.n() {
                let b = a.flipped(coord);
                if let Some(&j) = index.get(&b) {
                    // shared face: both closed chambers with h_coord = 0
                    let mut cons = x.chamber_cons(a);
                    cons.extend(x.chamber_cons(&b));
                    if feasible_witness(x.k(), &cons).is_some() {
                        adj[i].push(j);
                    }
                }
            }
        }
        let mut seen = vec![false; f.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "chamber graph disconnected");
    }
}

#[test]
fn sign_vector_order_and_display() {
    assert!(sv("++") < sv("+-"));
    assert!(sv("+-") < sv("-+"));
    assert_eq!(sv("+-+").to_string(), "(+,-,+)");
    let partial = SignVector::on(vec![0, 2], vec![Sign::Plus, Sign::Minus]);
    assert_eq!(partial.to_string(), "{1:+,3:-}");
}
