use super::*;
use crate::arrangement::tests::{antidiagonal_quantized, diagonal_lattice, diagonal_quantized};
use crate::arrangement::Sign;

fn sv(s: &str) -> SignVector {
    SignVector::from_str_full(s)
}

fn u23() -> Matroid {
    Matroid::from_lattice(&diagonal_lattice(3))
}

#[test]
fn matroid_axioms_spot_check() {
    for m in [u23(), Matroid::from_lattice(&diagonal_lattice(4)).dual()] {
        let n = m.size();
        // monotone and submodular on all pairs
        for a in 0usize..(1 << n) {
            for b in 0usize..(1 << n) {
                let sa: Vec<usize> = (0..n).filter(|i| a & (1 << i) != 0).collect();
                let sb: Vec<usize> = (0..n).filter(|i| b & (1 << i) != 0).collect();
                let su: Vec<usize> = (0..n).filter(|i| (a | b) & (1 << i) != 0).collect();
                let si: Vec<usize> = (0..n).filter(|i| (a & b) & (1 << i) != 0).collect();
                if sb.iter().all(|x| sa.contains(x)) {
                    assert!(m.rank_of(&sb) <= m.rank_of(&sa));
                }
                assert!(m.rank_of(&su) + m.rank_of(&si) <= m.rank_of(&sa) + m.rank_of(&sb));
            }
        }
    }
    assert_eq!(u23().rank(), 2);
}

#[test]
fn flats_of_u23() {
    let flats = u23().flats();
    let sets: Vec<Vec<usize>> = flats.iter().map(|f| f.indices.clone()).collect();
    assert_eq!(
        sets,
        vec![vec![], vec![0], vec![1], vec![2], vec![0, 1, 2]]
    );
    assert_eq!(flats.last().unwrap().rank, 2);
}

#[test]
fn flats_of_parallel_pair() {
    // n=2 diagonal: the two restricted normals are parallel, so {1} closes
    // to {1,2}; flats are just ∅ and {1,2}
    let m = Matroid::from_lattice(&diagonal_lattice(2));
    let sets: Vec<Vec<usize>> = m.flats().iter().map(|f| f.indices.clone()).collect();
    assert_eq!(sets, vec![vec![], vec![0, 1]]);
}

#[test]
fn coloop_free_examples() {
    // n=3 diagonal: ∅ (top flat) and {1,2,3} only; singletons are coloops
    // of their localization
    let bx = diagonal_quantized(3, 1);
    let sets: Vec<Vec<usize>> = coloop_free_flats(&bx)
        .iter()
        .map(|f| f.indices.clone())
        .collect();
    assert_eq!(sets, vec![vec![], vec![0, 1, 2]]);

    let bx = diagonal_quantized(2, 1);
    let sets: Vec<Vec<usize>> = coloop_free_flats(&bx)
        .iter()
        .map(|f| f.indices.clone())
        .collect();
    assert_eq!(sets, vec![vec![], vec![0, 1]]);

    // matroid-only route agrees
    let comb: Vec<Vec<usize>> = coloop_free_flats_matroid(&u23())
        .iter()
        .map(|f| f.indices.clone())
        .collect();
    assert_eq!(comb, vec![vec![], vec![0, 1, 2]]);
}

#[test]
fn cone_data_examples() {
    let l = diagonal_lattice(3);
    let cd = cone_data(&l, &sv("+++"));
    assert_eq!(cd.i_alpha, vec![0, 1, 2]);
    assert_eq!(cd.dim, 0);
    let cd = cone_data(&l, &sv("-++"));
    assert!(cd.i_alpha.is_empty());
    assert_eq!(cd.dim, 2);
    // totally bounded <=> I_α is everything and dim 0
    let cd = cone_data(&diagonal_lattice(2), &sv("--"));
    assert_eq!(cd.i_alpha, vec![0, 1]);
    assert_eq!(cd.dim, 0);
}

#[test]
fn left_and_right_criteria() {
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 1)).unwrap();
    // (+,+,+) ≤L (-,+,+): I_β = ∅ ⊆ I_α, agree on ∅
    assert!(analysis.left_leq(&sv("+++"), &sv("-++")).unwrap());
    // converse requires {1,2,3} ⊆ ∅
    assert!(!analysis.left_leq(&sv("-++"), &sv("+++")).unwrap());
    // reflexive
    for a in analysis.feasible().to_vec() {
        assert!(analysis.left_leq(&a, &a).unwrap());
    }
    // right: (+,+,+) ≤R (-,+,+) (agree on the empty complement)
    assert!(analysis.right_leq(&sv("+++"), &sv("-++")).unwrap());
    // (-,+,+) vs (-,-,+): both have I = ∅, must agree everywhere
    assert!(!analysis.right_leq(&sv("-++"), &sv("--+")).unwrap());
    // zero cone is ≤R everything bounded
    for b in analysis.bounded().to_vec() {
        assert!(analysis.right_leq(&sv("+++"), &b).unwrap());
        assert!(cone_included(analysis.arrangement().lattice(), &sv("+++"), &b));
    }
    // errors
    assert_eq!(
        analysis.left_leq(&sv("---"), &sv("+++")),
        Err(CellsError::NotFeasible)
    );
    assert_eq!(
        analysis.right_leq(&sv("+-+"), &sv("+++")),
        Err(CellsError::NotBounded)
    );
}

#[test]
fn right_criterion_matches_cone_inclusion() {
    // Prop.-level internal equivalence: criterion (2) <=> cone inclusion (3)
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 1)).unwrap();
    let lattice = analysis.arrangement().lattice().clone();
    for a in analysis.bounded().to_vec() {
        for b in analysis.bounded().to_vec() {
            assert_eq!(
                right_leq_raw(&lattice, &a, &b),
                cone_included(&lattice, &a, &b),
                "{a} vs {b}"
            );
        }
    }
}

#[test]
fn partitions_n3() {
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 1)).unwrap();
    let parts = analysis.cell_partitions();
    assert!(parts.left.order_is_partial());
    assert!(parts.right.order_is_partial());
    assert!(parts.two_sided.order_is_partial());
    // two-sided cells of P: {(+,+,+)} and {(-,+,+),(-,-,+)}
    let blocks: Vec<Vec<SignVector>> = parts.two_sided.blocks.clone();
    assert_eq!(blocks.len(), 2);
    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2]);
    // cell count equals the number of coloop-free flats hit by P
    let hit: std::collections::BTreeSet<Vec<usize>> = analysis
        .bounded_feasible()
        .iter()
        .map(|a| cone_data(analysis.arrangement().lattice(), a).i_alpha)
        .collect();
    assert_eq!(blocks.len(), hit.len());
    // two-sided cells keyed by I_α
    for block in &blocks {
        let keys: std::collections::BTreeSet<Vec<usize>> = block
            .iter()
            .map(|a| cone_data(analysis.arrangement().lattice(), a).i_alpha)
            .collect();
        assert_eq!(keys.len(), 1);
    }
}

#[test]
fn goldie_ranks() {
    // I_α = ∅ -> 1
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 1)).unwrap();
    assert_eq!(analysis.goldie_rank(&sv("-++")).unwrap(), 1);

    // n=2 diagonal, c=1, α=(+,+): segment [-1,0] ∩ Z -> 2 points
    let analysis = CellAnalysis::new(&diagonal_quantized(2, 1)).unwrap();
    assert_eq!(analysis.goldie_rank(&sv("++")).unwrap(), 2);

    // n=3, c=2, α=(+,+,+): triangle with 6 lattice points
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 2)).unwrap();
    assert_eq!(analysis.goldie_rank(&sv("+++")).unwrap(), 6);

    assert_eq!(
        analysis.goldie_rank(&sv("---")),
        Err(CellsError::NotFeasible)
    );
}

#[test]
fn bbd_dimensions_n3() {
    let analysis = CellAnalysis::new(&diagonal_quantized(3, 1)).unwrap();
    let dims = analysis.bbd_dimensions();
    let total: usize = dims.values().sum();
    assert_eq!(total, analysis.bounded_feasible().len());
    let as_pairs: Vec<(Vec<usize>, usize)> = dims
        .iter()
        .map(|(f, &d)| (f.indices.clone(), d))
        .collect();
    assert_eq!(as_pairs, vec![(vec![], 2), (vec![0, 1, 2], 1)]);
}

#[test]
fn bbd_single_vertex() {
    // rank-1 antidiagonal family: P sits over the two extreme flats; with a
    // regular integral parameter all simples with zero-dimensional cone
    // span stack on the bottom flat
    let bx = antidiagonal_quantized(3, &[0, -1, -2], 1);
    assert!(bx.lambda_regular());
    let analysis = CellAnalysis::new(&bx).unwrap();
    let dims = analysis.bbd_dimensions();
    let total: usize = dims.values().sum();
    assert_eq!(total, analysis.bounded_feasible().len());
}

#[test]
fn h_vectors() {
    // U_{2,3}: f = (1,3,3) -> h = (1,1,1)
    let h = h_vector(&u23());
    assert_eq!(h, vec![Int::from(1), Int::from(1), Int::from(1)]);

    // free matroid (simplex): h = (1,0,...,0); build from independent columns
    let cols: Vec<Vec<Rat>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| Rat::from_integer(Int::from((i == j) as i64)))
                .collect()
        })
        .collect();
    let free = Matroid::from_columns(&cols);
    assert_eq!(
        h_vector(&free),
        vec![Int::from(1), Int::from(0), Int::from(0), Int::from(0)]
    );

    // top h-number of U_{2,3} = 1 = sum of h-numbers of the broken circuit
    // complex of the dual U_{1,3}
    let bc = broken_circuit_h_vector(&u23().dual(), None);
    let total: Int = bc.iter().cloned().sum();
    assert_eq!(total, Int::from(1));
    assert!(top_h_identity_holds(&u23()));
    assert!(top_h_identity_holds(&Matroid::from_lattice(&diagonal_lattice(4))));

    // h-numbers of the broken circuit complex do not depend on the ordering
    let m = u23();
    let orders: [[usize; 3]; 3] = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
    let base = broken_circuit_h_vector(&m, Some(&orders[0]));
    for o in &orders[1..] {
        assert_eq!(broken_circuit_h_vector(&m, Some(o)), base);
    }
}

#[test]
fn circuits_of_diagonals() {
    let c = u23().circuits();
    assert_eq!(c, vec![vec![0, 1, 2]]);
    let c = Matroid::from_lattice(&diagonal_lattice(2)).circuits();
    assert_eq!(c, vec![vec![0, 1]]);
}

#[test]
fn partition_not_regular_rejected() {
    assert!(CellAnalysis::new(&diagonal_quantized(3, -1)).is_err());
    // non-integral
    let l = crate::exact::Lattice::from_i64(2, &[vec![1, 1]]).unwrap();
    let bx = QuantizedPolarizedArrangement::new(
        l,
        vec![Rat::new(Int::from(1), Int::from(2)), Rat::zero()],
        vec![Int::from(1)],
    )
    .unwrap();
    assert_eq!(
        CellAnalysis::new(&bx).err(),
        Some(CellsError::NotRegularIntegral)
    );
}

#[test]
fn sign_import_used() {
    assert_eq!(Sign::Plus.flip(), Sign::Minus);
}
