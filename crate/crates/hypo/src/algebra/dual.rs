//! Quadratic presentations, quadratic duals, and Koszul complex checks.

use super::graded::{BasisElem, GradedAlgebra, SparseVec, VertexLabel};
use super::AlgebraError;
use crate::exact::{Rat, RatMat};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// A quadratic presentation: a quiver plus homogeneous degree-2 relations.
/// Relation terms are pairs of composable arrows in diagrammatic order.
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub vertices: Vec<VertexLabel>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<(usize, usize, Rat)>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub sign: Rat,
}

/// Standard-basis data produced by the degreewise construction.
struct Layer {
    /// for each standard element: (source, target, arrow chain, label)
    elems: Vec<(usize, usize, Vec<usize>, String)>,
    /// left action: (arrow, previous-layer element) -> vector over this layer
    action: HashMap<(usize, usize), SparseVec>,
}

/// Build the graded algebra presented by `p`, degreewise.  Stops early when
/// two consecutive graded pieces vanish (the algebra is generated in degree
/// one, so it is then finite); otherwise truncates at `max_degree`.
pub(crate) fn present(p: &Presentation, max_degree: usize) -> GradedAlgebra {
    let nv = p.vertices.len();
    let mut layers: Vec<Layer> = Vec::new();
    // degree 1 layer: the arrows themselves
    let arrows_layer = Layer {
        elems: p
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.source, a.target, vec![i], a.label.clone()))
            .collect(),
        action: HashMap::new(),
    };
    layers.push(arrows_layer);

    let mut top = if p.arrows.is_empty() { 0 } else { 1 };
    let mut finite = false;
    let mut d = 2usize;
    while d <= max_degree {
        let prev = &layers[d - 2];
        // candidate symbols: (arrow a, prev elem u) with a.target = u.source
        let mut symbols: Vec<(usize, usize)> = Vec::new();
        for (ai, a) in p.arrows.iter().enumerate() {
            for (ui, u) in prev.elems.iter().enumerate() {
                if a.target == u.0 {
                    symbols.push((ai, ui));
                }
            }
        }
        let sym_index: HashMap<(usize, usize), usize> =
            symbols.iter().cloned().zip(0..).collect();
        // relation rows: r · w for every relation r and standard w of degree d-2
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if d == 2 {
            for r in &p.relations {
                let mut row = vec![Rat::zero(); symbols.len()];
                for (x, y, c) in r {
                    // path x then y, y is an arrow = element of layer 1...
                    // here w is the idempotent at y.target; symbol is (x, y-as-prev-elem)
                    let ui = *y;
                    row[sym_index[&(*x, ui)]] += c;
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        } else {
            let prev_prev = &layers[d - 3];
            for r in &p.relations {
                for (wi, _) in prev_prev.elems.iter().enumerate() {
                    let mut row = vec![Rat::zero(); symbols.len()];
                    let mut nonzero = false;
                    for (x, y, c) in r {
                        // y · w in layer d-1, then pair with arrow x
                        if p.arrows[*y].target != prev_prev.elems[wi].0 {
                            continue;
                        }
                        if let Some(yw) = prev.action.get(&(*y, wi)) {
                            for (ui, coeff) in yw {
                                row[sym_index[&(*x, *ui)]] += c * coeff;
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero && row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        // echelonize rows over the symbol space
        let mut echelon: Vec<(usize, Vec<Rat>)> = Vec::new();
        for mut row in rows {
            for (pivot, r) in &echelon {
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
                for (_, r) in &mut echelon {
                    if !r[pivot].is_zero() {
                        let f = r[pivot].clone();
                        for (i, v) in row.iter().enumerate() {
                            if !v.is_zero() {
                                r[i] -= &f * v;
                            }
                        }
                    }
                }
                echelon.push((pivot, row));
            }
        }
        let pivots: Vec<usize> = echelon.iter().map(|(p, _)| *p).collect();
        let std_syms: Vec<usize> = (0..symbols.len()).filter(|i| !pivots.contains(i)).collect();
        let std_pos: HashMap<usize, usize> = std_syms.iter().cloned().zip(0..).collect();
        // build the layer
        let elems: Vec<(usize, usize, Vec<usize>, String)> = std_syms
            .iter()
            .map(|&si| {
                let (ai, ui) = symbols[si];
                let a = &p.arrows[ai];
                let u = &prev.elems[ui];
                let mut chain = vec![ai];
                chain.extend(&u.2);
                (a.source, u.1, chain, format!("{}*{}", a.label, u.3))
            })
            .collect();
        // action of each symbol: reduce against echelon rows
        let mut action: HashMap<(usize, usize), SparseVec> = HashMap::new();
        for (ai, a) in p.arrows.iter().enumerate() {
            for (ui, u) in prev.elems.iter().enumerate() {
                if a.target != u.0 {
                    continue;
                }
                let si = sym_index[&(ai, ui)];
                let mut dense = vec![Rat::zero(); symbols.len()];
                dense[si] = Rat::one();
                for (pivot, r) in &echelon {
                    if !dense[*pivot].is_zero() {
                        let f = dense[*pivot].clone();
                        for (i, v) in r.iter().enumerate() {
                            if !v.is_zero() {
                                dense[i] -= &f * v;
                            }
                        }
                    }
                }
                let sparse: SparseVec = dense
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (std_pos[&i], v.clone()))
                    .collect();
                if !sparse.is_empty() {
                    action.insert((ai, ui), sparse);
                }
            }
        }
        let empty_now = elems.is_empty();
        layers.push(Layer { elems, action });
        if !empty_now {
            top = d;
        }
        if empty_now && d >= 1 {
            let prev_empty = layers[d - 1].elems.is_empty() || (d == 1);
            if prev_empty {
                finite = true;
                break;
            }
        }
        d += 1;
    }
    if !finite && p.arrows.is_empty() {
        finite = true;
    }
    if !finite && top + 2 <= max_degree {
        // ran to the budget but the last two computed degrees were empty
        finite = layers[top + 1].elems.is_empty() && layers[top + 2].elems.is_empty();
    }

    // materialize basis
    let mut basis: Vec<BasisElem> = Vec::new();
    let mut elem_map: HashMap<(usize, usize), usize> = HashMap::new(); // (degree, layer idx) -> basis idx
    for v in 0..nv {
        basis.push(BasisElem {
            source: v,
            target: v,
            degree: 0,
            label: format!("e:{}", p.vertices[v]),
        });
    }
    let stored_max = if finite { top } else { max_degree };
    let mut order: Vec<(usize, usize)> = Vec::new(); // (degree, idx)
    for deg in 1..=stored_max {
        if deg - 1 < layers.len() {
            for idx in 0..layers[deg - 1].elems.len() {
                order.push((deg, idx));
            }
        }
    }
    order.sort_by(|a, b| {
        let ea = &layers[a.0 - 1].elems[a.1];
        let eb = &layers[b.0 - 1].elems[b.1];
        (a.0, ea.0, ea.1, &ea.3).cmp(&(b.0, eb.0, eb.1, &eb.3))
    });
    for (deg, idx) in &order {
        let e = &layers[deg - 1].elems[*idx];
        elem_map.insert((*deg, *idx), basis.len());
        basis.push(BasisElem {
            source: e.0,
            target: e.1,
            degree: *deg,
            label: e.3.clone(),
        });
    }

    // multiplication table via arrow chains
    let mut table: HashMap<(usize, usize), SparseVec> = HashMap::new();
    let apply_chain = |chain: &[usize], start_deg: usize, start: SparseVec| -> SparseVec {
        // multiply y (vector over layer of degree start_deg) by the chain,
        // rightmost arrow first
        let mut vec = start;
        let mut deg = start_deg;
        for &a in chain.iter().rev() {
            let mut out: HashMap<usize, Rat> = HashMap::new();
            let next_layer = deg; // layer index of degree deg+1 is deg
            for (ui, c) in &vec {
                if let Some(av) = layers[next_layer].action.get(&(a, *ui)) {
                    for (wi, cc) in av {
                        let e = out.entry(*wi).or_insert_with(Rat::zero);
                        *e += c * cc;
                    }
                }
            }
            vec = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            vec.sort_by_key(|(i, _)| *i);
            deg += 1;
        }
        vec
    };
    for x in 0..basis.len() {
        for y in 0..basis.len() {
            if basis[x].target != basis[y].source {
                continue;
            }
            let dx = basis[x].degree;
            let dy = basis[y].degree;
            if dx + dy > stored_max {
                continue;
            }
            if dx == 0 || dy == 0 {
                // idempotent action
                let other = if dx == 0 { y } else { x };
                table.insert((x, y), vec![(other, Rat::one())]);
                continue;
            }
            // x's chain applied to y's layer vector
            let (xdeg, xidx) = order
                .iter()
                .find(|(d2, i2)| elem_map[&(*d2, *i2)] == x)
                .cloned()
                .unwrap();
            let _ = xdeg;
            let chain = layers[basis[x].degree - 1].elems[xidx].2.clone();
            let yidx = order
                .iter()
                .find(|(d2, i2)| elem_map[&(*d2, *i2)] == y)
                .map(|(_, i2)| *i2)
                .unwrap();
            let start: SparseVec = vec![(yidx, Rat::one())];
            let result = apply_chain(&chain, dy - 1, start);
            let sparse: SparseVec = result
                .into_iter()
                .map(|(wi, c)| (elem_map[&(dx + dy, wi)], c))
                .collect();
            if !sparse.is_empty() {
                table.insert((x, y), sparse);
            }
        }
    }

    let duality_signs: Vec<Rat> = basis
        .iter()
        .map(|b| {
            if b.degree == 1 {
                p.arrows
                    .iter()
                    .find(|a| a.label == b.label && a.source == b.source && a.target == b.target)
                    .map(|a| a.sign.clone())
                    .unwrap_or_else(Rat::one)
            } else {
                Rat::one()
            }
        })
        .collect();

    GradedAlgebra {
        vertices: p.vertices.clone(),
        basis,
        table,
        max_degree: stored_max,
        finite,
        duality_signs,
    }
}

/// Extract the arrows and quadratic relation spaces of a graded algebra.
/// Errors with `NotQuadratic` if the algebra is not (within its computed
/// range) the quotient of its path cover by degree-2 relations.
pub(crate) fn extract_presentation(a: &GradedAlgebra) -> Result<Presentation, AlgebraError> {
    let arrows_idx = a.elements_of_degree(1);
    let arrows: Vec<Arrow> = arrows_idx
        .iter()
        .map(|&i| Arrow {
            source: a.basis[i].source,
            target: a.basis[i].target,
            label: a.basis[i].label.clone(),
            sign: a.duality_signs[i].clone(),
        })
        .collect();
    let mut relations = Vec::new();
    for s in 0..a.vertex_count() {
        for t in 0..a.vertex_count() {
            // two-path symbols from s to t
            let symbols: Vec<(usize, usize)> = pairs_between(a, &arrows_idx, s, t);
            if symbols.is_empty() {
                continue;
            }
            let a2 = a.elements_between(s, t, 2);
            // matrix: rows = symbols, cols = A2 elements
            let mut m = RatMat::zero(symbols.len(), a2.len());
            for (r, (x, y)) in symbols.iter().enumerate() {
                for (z, c) in a.mul_basis(*x, *y) {
                    let col = a2.iter().position(|&w| w == z).expect("product in A2");
                    m.set(r, col, c);
                }
            }
            // kernel of the multiplication map = relations
            let mt = transpose_mat(&m);
            for v in mt.nullspace() {
                let rel: Vec<(usize, usize, Rat)> = symbols
                    .iter()
                    .zip(&v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((x, y), c)| {
                        (
                            arrows_idx.iter().position(|i| i == x).unwrap(),
                            arrows_idx.iter().position(|i| i == y).unwrap(),
                            c.clone(),
                        )
                    })
                    .collect();
                relations.push(rel);
            }
        }
    }
    let pres = Presentation {
        vertices: a.vertices.clone(),
        arrows,
        relations,
    };
    // quadratic check: the cover must reproduce the graded dimensions
    let budget = a.max_degree + 2;
    let cover = present(&pres, budget);
    for d in 0..=a.max_degree {
        let da = a.elements_of_degree(d).len();
        let dc = cover.elements_of_degree(d).len();
        if da != dc {
            return Err(AlgebraError::NotQuadratic);
        }
    }
    if a.finite {
        for d in a.max_degree + 1..=budget.min(cover.max_degree) {
            if !cover.elements_of_degree(d).is_empty() {
                return Err(AlgebraError::NotQuadratic);
            }
        }
        if !cover.finite {
            return Err(AlgebraError::NotQuadratic);
        }
    }
    Ok(pres)
}

fn pairs_between(a: &GradedAlgebra, arrows_idx: &[usize], s: usize, t: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &x in arrows_idx {
        if a.basis[x].source != s {
            continue;
        }
        for &y in arrows_idx {
            if a.basis[y].source == a.basis[x].target && a.basis[y].target == t {
                out.push((x, y));
            }
        }
    }
    out
}

fn transpose_mat(m: &RatMat) -> RatMat {
    let mut t = RatMat::zero(m.cols(), m.rows());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            t.set(c, r, m.get(r, c).clone());
        }
    }
    t
}

/// The quadratic dual in the paper's convention (opposite of the classical
/// quadratic dual, realized on the same quiver): relations are the
/// orthogonal complement of the relations of `A` under the sign-twisted
/// pairing `⟨(x,y),(x,y)⟩ = ε(x)ε(y)` on two-path symbols.
pub fn quadratic_dual(a: &GradedAlgebra, max_degree: usize) -> Result<GradedAlgebra, AlgebraError> {
    let pres = extract_presentation(a)?;
    let arrows_idx = a.elements_of_degree(1);
    let mut dual_relations = Vec::new();
    for s in 0..a.vertex_count() {
        for t in 0..a.vertex_count() {
            let symbols = pairs_between(a, &arrows_idx, s, t);
            if symbols.is_empty() {
                continue;
            }
            let in_block: Vec<usize> = (0..pres.relations.len())
                .filter(|&r| {
                    pres.relations[r].iter().all(|(x, y, _)| {
                        pres.arrows[*x].source == s && pres.arrows[*y].target == t
                    })
                })
                .collect();
            // pairing weights per symbol
            let weights: Vec<Rat> = symbols
                .iter()
                .map(|(x, y)| {
                    let sx = arrows_idx.iter().position(|i| i == x).unwrap();
                    let sy = arrows_idx.iter().position(|i| i == y).unwrap();
                    &pres.arrows[sx].sign * &pres.arrows[sy].sign
                })
                .collect();
            // orthogonal complement: v with Σ_s v_s w_s r_s = 0 for all r
            if in_block.is_empty() {
                // everything is a dual relation? no: complement of 0 is the
                // whole space, orthogonal of 0 is everything -> dual has all
                // two-paths zero... careful: dual relations = (R₂)^⊥, and
                // R₂ = 0 means (R₂)^⊥ = everything.
                for (si, (x, y)) in symbols.iter().enumerate() {
                    let _ = (x, y);
                    let mut rel = Vec::new();
                    let (ax, ay) = symbols[si];
                    rel.push((
                        arrows_idx.iter().position(|i| *i == ax).unwrap(),
                        arrows_idx.iter().position(|i| *i == ay).unwrap(),
                        Rat::one(),
                    ));
                    dual_relations.push(rel);
                }
                continue;
            }
            let mut m = RatMat::zero(in_block.len(), symbols.len());
            for (row, &r) in in_block.iter().enumerate() {
                for (x, y, c) in &pres.relations[r] {
                    let si = symbols
                        .iter()
                        .position(|(sx, sy)| {
                            arrows_idx[*x] == *sx && arrows_idx[*y] == *sy
                        })
                        .expect("relation term is a two-path in its block");
                    m.set(row, si, c * &weights[si]);
                }
            }
            for v in m.nullspace() {
                let rel: Vec<(usize, usize, Rat)> = symbols
                    .iter()
                    .zip(&v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((x, y), c)| {
                        (
                            arrows_idx.iter().position(|i| i == x).unwrap(),
                            arrows_idx.iter().position(|i| i == y).unwrap(),
                            c.clone(),
                        )
                    })
                    .collect();
                dual_relations.push(rel);
            }
        }
    }
    let dual_pres = Presentation {
        vertices: pres.vertices.clone(),
        arrows: pres.arrows.clone(),
        relations: dual_relations,
    };
    Ok(present(&dual_pres, max_degree))
}

/// Report of the Koszul complex exactness check.  `failed_at` is the
/// Ext-degree at which Koszulity fails (one plus the first homological
/// position with nonvanishing homology); `exact_degrees` lists the
/// Ext-degrees certified exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KoszulReport {
    pub exact_degrees: Vec<usize>,
    pub failed_at: Option<usize>,
}

impl KoszulReport {
    pub fn is_koszul(&self) -> bool {
        self.failed_at.is_none()
    }
}

/// Build the Koszul complex `A ⊗ B*` (B the quadratic dual) and verify
/// exactness position by position with exact rank computations.
pub fn koszul_check(a: &GradedAlgebra, up_to_degree: usize) -> Result<KoszulReport, AlgebraError> {
    if !a.finite {
        return Err(AlgebraError::NotFinite);
    }
    let b = quadratic_dual(a, up_to_degree)?;
    let top_a = a.max_degree;
    let top_b = b.max_degree;
    let jmax = if b.finite { top_b } else { up_to_degree };
    let dmax = if b.finite {
        top_a + top_b
    } else {
        up_to_degree
    };

    // match arrows of A and B by (source, target, label)
    let a_arrows = a.elements_of_degree(1);
    let b_arrows = b.elements_of_degree(1);
    let b_arrow_of: HashMap<usize, usize> = a_arrows
        .iter()
        .map(|&x| {
            let bx = &a.basis[x];
            let y = b_arrows
                .iter()
                .cloned()
                .find(|&y| {
                    b.basis[y].source == bx.source
                        && b.basis[y].target == bx.target
                        && b.basis[y].label == bx.label
                })
                .expect("dual algebra shares the quiver");
            (x, y)
        })
        .collect();

    let mut failed_positions: Vec<usize> = Vec::new();
    let mut checked_positions = 0usize;

    for alpha in 0..a.vertex_count() {
        for delta in 0..a.vertex_count() {
            for d in 0..=dmax {
                // spaces V_j and maps ∂_j : V_j -> V_{j-1}
                let jtop = jmax.min(d);
                checked_positions = checked_positions.max(jtop);
                let mut spaces: Vec<Vec<(usize, usize)>> = Vec::new();
                for j in 0..=jtop {
                    let mut basis_j = Vec::new();
                    if d - j <= top_a {
                        for x in a.elements_of_degree(d - j) {
                            if a.basis[x].source != alpha {
                                continue;
                            }
                            for y in b.elements_of_degree(j) {
                                if b.basis[y].source == a.basis[x].target
                                    && b.basis[y].target == delta
                                {
                                    basis_j.push((x, y));
                                }
                            }
                        }
                    }
                    spaces.push(basis_j);
                }
                // differentials
                let mut mats: Vec<RatMat> = Vec::new();
                for j in 1..=jtop {
                    let dom = &spaces[j];
                    let cod = &spaces[j - 1];
                    let mut m = RatMat::zero(cod.len(), dom.len());
                    for (col, (x, y)) in dom.iter().enumerate() {
                        // Σ over A-arrows a with source = target(x)
                        for &arr in &a_arrows {
                            if a.basis[arr].source != a.basis[*x].target {
                                continue;
                            }
                            let barr = b_arrow_of[&arr];
                            let eps = &a.duality_signs[arr];
                            // coefficient of y in barr · u, for u in B_{j-1}
                            for u in b.elements_of_degree(j - 1) {
                                if b.basis[u].source != b.basis[barr].target
                                    || b.basis[u].target != delta
                                {
                                    continue;
                                }
                                let prod = b.mul_basis(barr, u);
                                let coeff = prod
                                    .iter()
                                    .find(|(z, _)| z == y)
                                    .map(|(_, c)| c.clone())
                                    .unwrap_or_else(Rat::zero);
                                if coeff.is_zero() {
                                    continue;
                                }
                                // (x · arr) ⊗ u*
                                for (w, cw) in a.mul_basis(*x, arr) {
                                    if let Some(row) =
                                        cod.iter().position(|&(xx, yy)| xx == w && yy == u)
                                    {
                                        let v = m.get(row, col).clone() + eps * &coeff * cw;
                                        m.set(row, col, v);
                                    }
                                }
                            }
                        }
                    }
                    mats.push(m);
                }
                // ∂² = 0 sanity
                for j in 1..mats.len() {
                    let prod = mats[j - 1].mul(&mats[j]);
                    for r in 0..prod.rows() {
                        for c in 0..prod.cols() {
                            assert!(prod.get(r, c).is_zero(), "Koszul differential squares to 0");
                        }
                    }
                }
                // exactness
                let ranks: Vec<usize> = mats.iter().map(|m| m.rank()).collect();
                for j in 0..=jtop {
                    let dim_j = spaces[j].len();
                    let rank_in = if j + 1 <= jtop { ranks[j] } else { 0 };
                    let rank_out = if j >= 1 { ranks[j - 1] } else {
                        // augmentation: K_0 -> A_0, nonzero only for d = 0,
                        // alpha = delta
                        usize::from(d == 0 && alpha == delta && dim_j > 0)
                    };
                    // homology dim at position j
                    let hom = dim_j - rank_out - rank_in;
                    let expected = 0;
                    // Note: for j = jtop < actual length of the complex the
                    // incoming rank is unavailable; only flag failures when
                    // the complex is complete at this position.
                    let complete = j + 1 <= jtop || (b.finite && j + 1 > top_b) || d < j + 1;
                    if complete && hom != expected {
                        failed_positions.push(j);
                    }
                }
            }
        }
    }
    failed_positions.sort();
    failed_positions.dedup();
    let failed_at = failed_positions.first().map(|&j| j + 1);
    let exact_degrees: Vec<usize> = (0..=checked_positions)
        .filter(|j| !failed_positions.contains(j))
        .map(|j| j + 1)
        .collect();
    Ok(KoszulReport {
        exact_degrees,
        failed_at,
    })
}
