use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Domain, Scalar};

/// Dense matrix over an exact field, stored row-major.
///
/// Zero-row and zero-column matrices are legal; they encode maps from or to
/// the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Output of [`Matrix::solve_and_kernel`].
#[derive(Clone, Debug)]
pub struct Solution {
    pub rank: usize,
    /// Columns span the kernel.
    pub kernel: Matrix,
    /// `None` when no right-hand side was given or the system is inconsistent.
    pub particular: Option<Vec<Scalar>>,
    pub consistent: bool,
}

impl Matrix {
    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        Matrix { domain, rows, cols, data: vec![domain.zero(); rows * cols] }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m[(i, i)] = domain.one();
        }
        m
    }

    pub fn from_vec(domain: Domain, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        debug_assert!(data.iter().all(|s| s.domain() == domain));
        Matrix { domain, rows, cols, data }
    }

    pub fn from_rows(domain: Domain, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let data: Vec<Scalar> = rows
            .into_iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cols, "ragged rows");
                row
            })
            .collect();
        Self::from_vec(domain, r, cols, data)
    }

    pub fn from_i64(domain: Domain, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| domain.from_i64(x))
            })
            .collect();
        Self::from_vec(domain, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(domain: Domain, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(domain, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Scalar], domain: Domain) -> Self {
        Self::from_vec(domain, v.len(), 1, v.to_vec())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.domain, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.domain, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = &out[(i, j)];
                        out[(i, j)] = cur.add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.domain.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "dimension mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "dimension mismatch in difference");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, data }
    }

    /// `Σ coeffs[i] * mats[i]`; all matrices must share a shape.
    pub fn linear_combination(domain: Domain, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[Matrix]) -> Matrix {
        let mut acc = Matrix::zeros(domain, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.data.iter_mut().zip(&m.data) {
                if !b.is_zero() {
                    *a = a.add_mul(c, b);
                }
            }
        }
        acc
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.domain, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { domain: self.domain, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn hstack_all(domain: Domain, rows: usize, parts: &[Matrix]) -> Matrix {
        parts.iter().fold(Matrix::zeros(domain, rows, 0), |acc, p| acc.hstack(p))
    }

    pub fn vstack_all(domain: Domain, cols: usize, parts: &[Matrix]) -> Matrix {
        parts.iter().fold(Matrix::zeros(domain, 0, cols), |acc, p| acc.vstack(p))
    }

    pub fn block_diag(domain: Domain, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(domain, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.domain, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.domain, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { domain: self.domain, rows: rows.len(), cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ rhs`: entry `((i,k),(j,l)) = self[i][j] * rhs[k][l]`.
    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.domain, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Flattens row-major into a single vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(r, j)] = m[(r, j)].mul(&inv);
                    }
                }
            }
            let support: Vec<usize> = (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].neg();
                for &j in &support {
                    let v = m[(i, j)].add_mul(&f, &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, as the columns of a `cols × k` matrix.
    pub fn kernel(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        kernel_from_rref(&reduced, &pivots, self.cols, self.domain)
    }

    pub fn solve_and_kernel(&self, rhs: Option<&[Scalar]>) -> Solution {
        match rhs {
            None => {
                let Rref { reduced, pivots } = self.rref();
                Solution {
                    rank: pivots.len(),
                    kernel: kernel_from_rref(&reduced, &pivots, self.cols, self.domain),
                    particular: None,
                    consistent: true,
                }
            }
            Some(b) => {
                assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
                let aug = self.hstack(&Matrix::column_vector(b, self.domain));
                let Rref { reduced, pivots } = aug.rref();
                let consistent = !pivots.contains(&self.cols);
                let rank = pivots.len() - usize::from(!consistent);
                let piv: Vec<usize> = pivots.iter().copied().filter(|&c| c < self.cols).collect();
                let kernel = kernel_from_rref(&reduced, &piv, self.cols, self.domain);
                let particular = consistent.then(|| {
                    let mut x = vec![self.domain.zero(); self.cols];
                    for (row, &c) in piv.iter().enumerate() {
                        x[c] = reduced[(row, self.cols)].clone();
                    }
                    x
                });
                Solution { rank, kernel, particular, consistent }
            }
        }
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve_and_kernel(Some(b)).particular
    }

    /// One solution `X` of `self · X = B`, if any.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "row mismatch in solve_matrix");
        let aug = self.hstack(b);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.domain, self.cols, b.cols);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = reduced[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.domain, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of a maximal set of linearly independent columns (greedy, left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize], cols: usize, domain: Domain) -> Matrix {
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let free: Vec<usize> = (0..cols).filter(|&c| is_pivot[c].is_none()).collect();
    let mut k = Matrix::zeros(domain, cols, free.len());
    for (idx, &f) in free.iter().enumerate() {
        k[(f, idx)] = domain.one();
        for (row, &c) in pivots.iter().enumerate() {
            let v = &reduced[(row, f)];
            if !v.is_zero() {
                k[(c, idx)] = v.neg();
            }
        }
    }
    k
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{}; {}x{}]", self.domain, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
