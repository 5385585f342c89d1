//! Integer matrices: Smith and Hermite normal forms, kernels, solving.

use super::{ExactError, Int, RatMat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for l in 0..self.cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Submatrix on the given column indices, all rows.
    pub fn select_cols(&self, cols: &[usize]) -> IntMat {
        let mut out = IntMat::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat::from_rows(
            self.row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(super::Rat::from_integer).collect())
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &Int) {
        for c in 0..self.cols {
            let v = self.get(a, c) + q * self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &Int) {
        for r in 0..self.rows {
            let v = self.get(r, a) + q * self.get(r, b);
            self.set(r, a, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

}

/// Result of a Smith normal form computation: `u * m * v = s` with `u`, `v`
/// unimodular and `s` diagonal with divisibility `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    /// Nonzero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMat) -> SnfResult {
    let mut s = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut v = IntMat::identity(m.cols());
    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..s.rows() {
            for c in t..s.cols() {
                if !s.get(r, c).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pr, pc)) => s.get(r, c).abs() < s.get(pr, pc).abs(),
                    };
                    if better {
                        pivot = Some((r, c));
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        // Clear row and column t by repeated division; restart if a
        // remainder shows up (it is strictly smaller, so this terminates).
        let mut again = true;
        while again {
            again = false;
            for r in t + 1..s.rows() {
                if !s.get(r, t).is_zero() {
                    let q = -(s.get(r, t) / s.get(t, t));
                    s.add_row(r, t, &q);
                    u.add_row(r, t, &q);
                    if !s.get(r, t).is_zero() {
                        s.swap_rows(t, r);
                        u.swap_rows(t, r);
                        again = true;
                    }
                }
            }
            for c in t + 1..s.cols() {
                if !s.get(t, c).is_zero() {
                    let q = -(s.get(t, c) / s.get(t, t));
                    s.add_col(c, t, &q);
                    v.add_col(c, t, &q);
                    if !s.get(t, c).is_zero() {
                        s.swap_cols(t, c);
                        v.swap_cols(t, c);
                        again = true;
                    }
                }
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    let mut i = 0;
    while i + 1 < n {
        let a = s.get(i, i).clone();
        let b = s.get(i + 1, i + 1).clone();
        if a.is_zero() || b.is_zero() {
            i += 1;
            continue;
        }
        if (&b % &a).is_zero() {
            i += 1;
            continue;
        }
        // Fold column i+1 into column i and rediagonalize the 2x2 block.
        s.add_col(i, i + 1, &Int::one());
        v.add_col(i, i + 1, &Int::one());
        let g = a.gcd(&b);
        let l = &a / &g * &b;
        // Rediagonalize: run the clearing loop on the 2x2 block.
        let mut again = true;
        while again {
            again = false;
            if s.get(i + 1, i).abs() != Int::zero() || s.get(i, i + 1).abs() != Int::zero() {
                // Mini SNF on the block using the same row/col operations.
                if s.get(i, i).is_zero()
                    || (!s.get(i + 1, i).is_zero()
                        && s.get(i + 1, i).abs() < s.get(i, i).abs())
                {
                    s.swap_rows(i, i + 1);
                    u.swap_rows(i, i + 1);
                }
                if !s.get(i + 1, i).is_zero() {
                    let q = -(s.get(i + 1, i) / s.get(i, i));
                    s.add_row(i + 1, i, &q);
                    u.add_row(i + 1, i, &q);
                    if !s.get(i + 1, i).is_zero() {
                        again = true;
                        continue;
                    }
                }
                if !s.get(i, i + 1).is_zero() {
                    let q = -(s.get(i, i + 1) / s.get(i, i));
                    s.add_col(i + 1, i, &q);
                    v.add_col(i + 1, i, &q);
                    if !s.get(i, i + 1).is_zero() {
                        again = true;
                    }
                }
            }
        }
        if s.get(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
        if s.get(i + 1, i + 1).is_negative() {
            s.negate_row(i + 1);
            u.negate_row(i + 1);
        }
        debug_assert_eq!(s.get(i, i), &g);
        debug_assert_eq!(s.get(i + 1, i + 1), &l);
        // Divisibility with earlier entries may now be broken; step back.
        i = i.saturating_sub(1);
    }
    debug_assert_eq!(u.mul(m).mul(&v), s);
    SnfResult { s, u, v }
}

/// Row-style Hermite normal form: a canonical basis for the row lattice.
/// Zero rows are dropped; pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMat) -> IntMat {
    let mut h = m.clone();
    let mut r = 0;
    for c in 0..h.cols() {
        if r >= h.rows() {
            break;
        }
        // Reduce column c below row r until at most one nonzero remains.
        loop {
            let mut idx: Option<usize> = None;
            for i in r..h.rows() {
                if !h.get(i, c).is_zero() {
                    let better = match idx {
                        None => true,
                        Some(j) => h.get(i, c).abs() < h.get(j, c).abs(),
                    };
                    if better {
                        idx = Some(i);
                    }
                }
            }
            let Some(p) = idx else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows() {
                if !h.get(i, c).is_zero() {
                    let q = -(h.get(i, c) / h.get(r, c));
                    h.add_row(i, r, &q);
                    if !h.get(i, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row(i, r, &q);
        }
        r += 1;
    }
    IntMat::from_rows(h.row_vecs().into_iter().take(r).collect())
}

/// Basis of the saturated integer kernel `{x in Z^cols : m x = 0}`, returned
/// as rows in Hermite normal form.
pub fn kernel_lattice(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    let basis = snf.v.select_cols(&cols).transpose();
    hermite_normal_form(&basis)
}

/// Solve `m x = b` over the integers.
pub fn solve_integer(m: &IntMat, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let n = m.rows().min(m.cols());
    let mut y = vec![Int::zero(); m.cols()];
    for i in 0..m.rows() {
        let d = if i < n { snf.s.get(i, i).clone() } else { Int::zero() };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ub[i].div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Exact inverse of a unimodular (or any invertible integer) matrix; errors
/// if the inverse is not integral.
pub fn int_inverse(m: &IntMat) -> Result<IntMat, ExactError> {
    let inv = m
        .to_rat()
        .inverse()
        .ok_or(ExactError::DependentRows)?;
    let mut out = IntMat::zero(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = inv.get(r, c);
            if !super::rat_is_int(v) {
                return Err(ExactError::NotSummand);
            }
            out.set(r, c, v.to_integer());
        }
    }
    Ok(out)
}

/// Extend a primitive integer vector `r` to a unimodular matrix whose last
/// column is `r`.
pub fn complete_to_basis(r: &[Int]) -> IntMat {
    let k = r.len();
    let col = IntMat::from_rows(r.iter().map(|x| vec![x.clone()]).collect());
    let snf = smith_normal_form(&col);
    assert!(snf.s.get(0, 0).is_one(), "vector must be primitive");
    // u * r = e_1, so r = u^{-1} e_1; place that column last.
    let uinv = int_inverse(&snf.u).expect("unimodular");
    let mut cols: Vec<usize> = (1..k).collect();
    cols.push(0);
    let m = uinv.select_cols(&cols);
    debug_assert!(m.col(k - 1) == r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(m: &IntMat) -> Vec<i64> {
        let snf = smith_normal_form(m);
        // reconstruction check on every call
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s);
        let rat = snf.u.to_rat();
        assert!(rat.determinant().map(|d| d.numer().abs() == Int::one()) == Some(true));
        let rat = snf.v.to_rat();
        assert!(rat.determinant().map(|d| d.numer().abs() == Int::one()) == Some(true));
        snf.invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_identity() {
        let m = IntMat::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s, IntMat::identity(2));
        assert_eq!(snf.u, IntMat::identity(2));
        assert_eq!(snf.v, IntMat::identity(2));
    }

    #[test]
    fn snf_diag23() {
        // hand row/column reduction: diag(2,3) ~ diag(1,6)
        let m = IntMat::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(snf_diag(&m), vec![1, 6]);
    }

    #[test]
    fn snf_chain_example() {
        let m = IntMat::from_i64(&[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(snf_diag(&m), vec![1, 1]);
    }

    #[test]
    fn snf_divisibility_random() {
        // small deterministic battery
        let cases = [
            vec![vec![4, 6], vec![6, 9]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 0], vec![0, 5], vec![0, 0]],
        ];
        for c in &cases {
            let m = IntMat::from_i64(c);
            let d = snf_diag(&m);
            for w in d.windows(2) {
                assert_eq!(w[1] % w[0], 0, "divisibility chain in {:?}", d);
            }
        }
    }

    #[test]
    fn hnf_canonical() {
        let a = IntMat::from_i64(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let b = IntMat::from_i64(&[vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        // index-2 sublattice: different canonical form
        let c = IntMat::from_i64(&[vec![1, 0, -1], vec![1, -2, 1]]);
        assert_ne!(hermite_normal_form(&a), hermite_normal_form(&c));
    }

    #[test]
    fn kernel_of_sum_matrix() {
        let m = IntMat::from_i64(&[vec![1, 1, 1]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.rows(), 2);
        for row in k.row_vecs() {
            let s: Int = row.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_and_complete() {
        let m = IntMat::from_i64(&[vec![1, -1]]);
        let x = solve_integer(&m, &[Int::from(-1)]).unwrap();
        assert_eq!(&x[0] - &x[1], Int::from(-1));
        assert!(solve_integer(&IntMat::from_i64(&[vec![2, 0]]), &[Int::from(1)]).is_none());

        let r = vec![Int::from(2), Int::from(3)];
        let b = complete_to_basis(&r);
        assert_eq!(b.col(1), r);
        let det = b.to_rat().determinant().unwrap();
        assert_eq!(det.numer().abs(), Int::one());
    }
}
