//! Finite-basis graded algebras with exact rational structure constants.

use crate::arrangement::SignVector;
use crate::exact::{Int, Rat, RatMat};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

/// Vertices are sign vectors for the cube algebras; synthetic instances
/// (harness controls) use named vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexLabel {
    Signs(SignVector),
    Named(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Signs(sv) => write!(f, "{sv}"),
            VertexLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElem {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub label: String,
}

pub type SparseVec = Vec<(usize, Rat)>;

/// A graded algebra presented by an explicit basis and multiplication table.
///
/// The basis is sorted by (degree, source, target, label); degree-0 elements
/// are exactly the vertex idempotents.  When `finite` is false the data is a
/// truncation: complete through `max_degree`, with products recorded only
/// where both factors and the product stay within the truncation.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub vertices: Vec<VertexLabel>,
    pub basis: Vec<BasisElem>,
    pub table: HashMap<(usize, usize), SparseVec>,
    pub max_degree: usize,
    pub finite: bool,
    /// Sign used in the quadratic duality pairing, parallel to `basis`
    /// (only degree-1 entries matter; defaults to 1).
    pub duality_signs: Vec<Rat>,
}

/// Polynomial in `t` with integer coefficients, indexed by degree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TPoly(pub Vec<Int>);

impl TPoly {
    pub fn coeff(&self, d: usize) -> Int {
        self.0.get(d).cloned().unwrap_or_else(Int::zero)
    }

    pub fn total(&self) -> Int {
        self.0.iter().cloned().sum()
    }

    fn trim(mut self) -> TPoly {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = match d {
                0 => c.to_string(),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{c}*t"),
                _ if c.is_one() => format!("t^{d}"),
                _ => format!("{c}*t^{d}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GradedAlgebra {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of the vertex idempotent.
    pub fn idempotent(&self, vertex: usize) -> usize {
        self.basis
            .iter()
            .position(|b| b.degree == 0 && b.source == vertex)
            .expect("every vertex has an idempotent")
    }

    pub fn elements_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].degree == d)
            .collect()
    }

    pub fn elements_between(&self, source: usize, target: usize, degree: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| {
                self.basis[i].source == source
                    && self.basis[i].target == target
                    && self.basis[i].degree == degree
            })
            .collect()
    }

    /// Product of basis elements (diagrammatic order: `x: α→β` then
    /// `y: β→γ`).  Zero when targets mismatch or the product is not stored.
    pub fn mul_basis(&self, x: usize, y: usize) -> SparseVec {
        if self.basis[x].target != self.basis[y].source {
            return Vec::new();
        }
        self.table.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn mul_sparse(&self, xs: &SparseVec, ys: &SparseVec) -> SparseVec {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (x, cx) in xs {
            for (y, cy) in ys {
                for (z, cz) in self.mul_basis(*x, *y) {
                    let e = acc.entry(z).or_insert_with(Rat::zero);
                    *e += cx * cy * cz;
                }
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Matrix of Hilbert series: entry `(i, j)` counts basis elements of
    /// `e_i A e_j` by degree.
    pub fn graded_dims(&self) -> Vec<Vec<TPoly>> {
        let v = self.vertex_count();
        let mut out = vec![vec![TPoly(vec![Int::zero(); self.max_degree + 1]); v]; v];
        for b in &self.basis {
            out[b.source][b.target].0[b.degree] += 1;
        }
        out.into_iter()
            .map(|row| row.into_iter().map(TPoly::trim).collect())
            .collect()
    }

    pub fn dims_by_degree(&self) -> TPoly {
        let mut out = TPoly(vec![Int::zero(); self.max_degree + 1]);
        for b in &self.basis {
            out.0[b.degree] += 1;
        }
        out.trim()
    }

    /// Cartan matrix: total dimensions `dim e_i A e_j` (graded dims at
    /// `t = 1`).  Meaningful for finite algebras.
    pub fn cartan_matrix(&self) -> Vec<Vec<Int>> {
        self.graded_dims()
            .into_iter()
            .map(|row| row.into_iter().map(|p| p.total()).collect())
            .collect()
    }

    /// Graded dimensions of the center, by exact commutation with every
    /// basis element.  Requires a finite algebra.
    pub fn center_graded_dims(&self) -> TPoly {
        assert!(self.finite, "center needs the full multiplication table");
        let mut out = TPoly(vec![Int::zero(); self.max_degree + 1]);
        for d in 0..=self.max_degree {
            // candidate space: loops of degree d
            let loops: Vec<usize> = (0..self.basis.len())
                .filter(|&i| self.basis[i].degree == d && self.basis[i].source == self.basis[i].target)
                .collect();
            if loops.is_empty() {
                continue;
            }
            // commutation with all basis elements: rows indexed by (x, out-basis)
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for x in 0..self.basis.len() {
                let mut per_target: HashMap<usize, Vec<Rat>> = HashMap::new();
                for (j, &z) in loops.iter().enumerate() {
                    // z x - x z
                    for (w, c) in self.mul_basis(z, x) {
                        per_target.entry(w).or_insert_with(|| vec![Rat::zero(); loops.len()])[j] += c;
                    }
                    for (w, c) in self.mul_basis(x, z) {
                        per_target.entry(w).or_insert_with(|| vec![Rat::zero(); loops.len()])[j] -= c;
                    }
                }
                for (_, row) in per_target {
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let rank = if rows.is_empty() {
                0
            } else {
                RatMat::from_rows(rows).rank()
            };
            out.0[d] = Int::from(loops.len() - rank);
        }
        out.trim()
    }

    /// Associativity on all stored basis triples; degree additivity on every
    /// table entry.  Used as a structural self-check in tests.
    pub fn check_structure(&self) -> Result<(), String> {
        for ((x, y), prod) in &self.table {
            let bx = &self.basis[*x];
            let by = &self.basis[*y];
            if bx.target != by.source {
                return Err(format!("table entry for non-composable pair {x},{y}"));
            }
            for (z, c) in prod {
                let bz = &self.basis[*z];
                if c.is_zero() {
                    return Err(format!("stored zero coefficient at ({x},{y})"));
                }
                if bz.degree != bx.degree + by.degree {
                    return Err(format!("degrees do not add at ({x},{y})"));
                }
                if bz.source != bx.source || bz.target != by.target {
                    return Err(format!("endpoints wrong at ({x},{y})"));
                }
            }
        }
        // identities
        for v in 0..self.vertex_count() {
            let e = self.idempotent(v);
            for x in 0..self.basis.len() {
                if self.basis[x].source == v {
                    let p = self.mul_basis(e, x);
                    if p != vec![(x, Rat::one())] {
                        return Err(format!("left identity fails at vertex {v}, elem {x}"));
                    }
                }
                if self.basis[x].target == v {
                    let p = self.mul_basis(x, e);
                    if p != vec![(x, Rat::one())] {
                        return Err(format!("right identity fails at vertex {v}, elem {x}"));
                    }
                }
            }
        }
        // associativity within the stored degree range
        let bound = self.max_degree;
        for x in 0..self.basis.len() {
            for y in 0..self.basis.len() {
                if self.basis[x].target != self.basis[y].source {
                    continue;
                }
                for z in 0..self.basis.len() {
                    if self.basis[y].target != self.basis[z].source {
                        continue;
                    }
                    if self.basis[x].degree + self.basis[y].degree + self.basis[z].degree > bound {
                        continue;
                    }
                    let xy_z = self.mul_sparse(&self.mul_basis(x, y), &vec![(z, Rat::one())]);
                    let x_yz = self.mul_sparse(&vec![(x, Rat::one())], &self.mul_basis(y, z));
                    if xy_z != x_yz {
                        return Err(format!("associativity fails on ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic JSON value: vertices, basis with (source, target,
    /// degree), multiplication table as sparse triples `p/q`.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let vertices: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let basis: Vec<serde_json::Value> = self
            .basis
            .iter()
            .map(|b| {
                json!({
                    "source": vertices[b.source],
                    "target": vertices[b.target],
                    "degree": b.degree,
                    "label": b.label,
                })
            })
            .collect();
        let mut keys: Vec<(usize, usize)> = self.table.keys().cloned().collect();
        keys.sort();
        let products: Vec<serde_json::Value> = keys
            .iter()
            .filter(|k| !self.table[k].is_empty())
            .map(|k| {
                let terms: Vec<serde_json::Value> = self.table[k]
                    .iter()
                    .map(|(i, c)| json!([i, format!("{}/{}", c.numer(), c.denom())]))
                    .collect();
                json!([k.0, k.1, terms])
            })
            .collect();
        json!({
            "vertices": vertices,
            "basis": basis,
            "products": products,
            "max_degree": self.max_degree,
            "finite": self.finite,
        })
    }
}

