//! Integer matrices: Smith normal form, Hermite normal form and integer kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let data: Vec<BigInt> = rows
            .into_iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cols, "ragged rows");
                row
            })
            .collect();
        IntMatrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = IntMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// The diagonal of `d` in order, zeros included.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form, pivoting on the entry of smallest absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    for t in 0..n {
        let Some((pi, pj)) = smallest_entry(&d, t..r, t..c) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = d.get(t, t).clone();
            for i in t + 1..r {
                let q = d.get(i, t).div_floor(&p);
                d.add_row(i, t, &-&q);
                u.add_row(i, t, &-&q);
            }
            for j in t + 1..c {
                let q = d.get(t, j).div_floor(&p);
                d.add_col(j, t, &-&q);
                v.add_col(j, t, &-&q);
            }
            let col_rest = (t + 1..r).find(|&i| !d.get(i, t).is_zero());
            let row_rest = (t + 1..c).find(|&j| !d.get(t, j).is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                // A smaller remainder exists in row/column t; move it to the pivot.
                let cand = (t..r)
                    .map(|i| (i, t))
                    .chain((t + 1..c).map(|j| (t, j)))
                    .filter(|&(i, j)| !d.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| d.get(i, j).abs())
                    .expect("nonzero remainder in pivot row or column");
                d.swap_rows(t, cand.0);
                u.swap_rows(t, cand.0);
                d.swap_cols(t, cand.1);
                v.swap_cols(t, cand.1);
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let invariant_factors = (0..n).map(|i| d.get(i, i).clone()).collect();
    SnfResult { u, d, v, invariant_factors }
}

fn smallest_entry(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Row-style Hermite normal form of the row lattice of `m`, zero rows dropped.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`, so
/// two matrices span the same row lattice iff their forms coincide.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (h, _) = echelon_with_transform(m);
    let nonzero: Vec<Vec<BigInt>> = (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(h.cols, nonzero)
}

/// Unimodular row reduction: returns `(h, t)` with `t · m = h`, `h` in Hermite form.
pub fn echelon_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut t = IntMatrix::identity(m.rows);
    let mut row = 0;
    for col in 0..h.cols {
        if row == h.rows {
            break;
        }
        loop {
            let piv = (row..h.rows).filter(|&i| !h.get(i, col).is_zero()).min_by_key(|&i| h.get(i, col).abs());
            let Some(p) = piv else { break };
            h.swap_rows(row, p);
            t.swap_rows(row, p);
            let pv = h.get(row, col).clone();
            let mut clean = true;
            for i in row + 1..h.rows {
                let q = h.get(i, col).div_floor(&pv);
                h.add_row(i, row, &-&q);
                t.add_row(i, row, &-&q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            t.negate_row(row);
        }
        let pv = h.get(row, col).clone();
        for i in 0..row {
            let q = h.get(i, col).div_floor(&pv);
            h.add_row(i, row, &-&q);
            t.add_row(i, row, &-&q);
        }
        row += 1;
    }
    (h, t)
}

/// A Z-basis (as columns) of `{ x ∈ Z^n : a · x = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, t) = echelon_with_transform(&a.transpose());
    let zero_rows: Vec<usize> = (0..h.rows).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    let mut k = IntMatrix::zeros(a.cols, zero_rows.len());
    for (jj, &i) in zero_rows.iter().enumerate() {
        for j in 0..a.cols {
            k.set(j, jj, t.get(i, j).clone());
        }
    }
    k
}

/// Canonical form of the lattice spanned by the columns of `basis`.
pub fn lattice_canonical(basis: &IntMatrix) -> IntMatrix {
    hermite_normal_form(&basis.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).invariant_factors.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(factors(&IntMatrix::from_i64(&[&[6, 0], &[0, 0]])), vec![6, 0]);
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(factors(&m), vec![2, 4]);
        check(&m);
        assert!(factors(&IntMatrix::zeros(0, 0)).is_empty());
    }

    #[test]
    fn nontrivial_divisibility_fix() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(factors(&m), vec![1, 6]);
        check(&m);
    }

    #[test]
    fn kernel_is_saturated_basis() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let expected = lattice_canonical(&IntMatrix::from_i64(&[&[-2, -3], &[1, 0], &[0, 1]]));
        assert_eq!(lattice_canonical(&k), expected);
    }

    proptest! {
        #[test]
        fn snf_certificate_holds(r in 0usize..5, c in 0usize..5, seed in proptest::collection::vec(-20i64..=20, 25)) {
            let rows: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| BigInt::from(seed[i * 5 + j])).collect()).collect();
            let m = IntMatrix::from_rows(c, rows);
            check(&m);
        }

        #[test]
        fn hnf_is_basis_invariant(seed in proptest::collection::vec(-9i64..=9, 9)) {
            let m = IntMatrix::from_vec(3, 3, seed.iter().map(|&x| BigInt::from(x)).collect());
            let e = IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 1]]);
            prop_assert_eq!(hermite_normal_form(&m), hermite_normal_form(&e.mul(&m)));
        }
    }
}
