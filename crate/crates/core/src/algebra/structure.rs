use crate::error::{Error, Result};
use crate::linalg::{Domain, Matrix, Scalar, Subspace};

/// A finite-dimensional associative unital algebra given by structure
/// constants: `b_i b_j = Σ_k c[i][j][k] b_k`.
///
/// Stored as left and right multiplication matrices, `lmul[i][(k, j)] =
/// c[i][j][k]` and `rmul[j][(k, i)] = c[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    domain: Domain,
    lmul: Vec<Matrix>,
    rmul: Vec<Matrix>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Validates associativity and the unit laws on all basis elements.
    pub fn new(domain: Domain, mult: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::ZeroAlgebra);
        }
        if unit.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure constants must form an {n}×{n}×{n} table")));
        }
        let mut lmul = vec![Matrix::zeros(domain, n, n); n];
        let mut rmul = vec![Matrix::zeros(domain, n, n); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    lmul[i][(k, j)] = mult[i][j][k].clone();
                    rmul[j][(k, i)] = mult[i][j][k].clone();
                }
            }
        }
        let a = Algebra { domain, lmul, rmul, unit };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let prod = self.left_mul(&self.basis_product(i, j));
                let expected = self.lmul[i].mul(&self.lmul[j]);
                if prod != expected {
                    let l = (0..n).find(|&l| prod.column(l) != expected.column(l)).unwrap_or(0);
                    return Err(Error::AssociativityViolation { i, j, k: l });
                }
            }
        }
        let id = Matrix::identity(self.domain, n);
        let lu = self.left_mul(&self.unit);
        let ru = self.right_mul(&self.unit);
        if let Some(i) = (0..n).find(|&i| lu.column(i) != id.column(i) || ru.column(i) != id.column(i)) {
            return Err(Error::UnitViolation { i });
        }
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.lmul.len()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.domain.zero(); self.dim()];
        v[i] = self.domain.one();
        v
    }

    /// `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.lmul[i][(k, j)]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.constant(i, j, k).clone()).collect()).collect()).collect()
    }

    /// Matrix of `y ↦ b_i y`.
    pub fn basis_left_mul(&self, i: usize) -> &Matrix {
        &self.lmul[i]
    }

    /// Matrix of `y ↦ y b_i`.
    pub fn basis_right_mul(&self, i: usize) -> &Matrix {
        &self.rmul[i]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.lmul[i].column(j)
    }

    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::linear_combination(self.domain, n, n, x, &self.lmul)
    }

    pub fn right_mul(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::linear_combination(self.domain, n, n, x, &self.rmul)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.left_mul(x).mul_vec(y)
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { domain: self.domain, lmul: self.rmul.clone(), rmul: self.lmul.clone(), unit: self.unit.clone() }
    }

    pub fn is_commutative(&self) -> bool {
        self.lmul == self.rmul
    }

    /// Basis indices generating the algebra as a unital algebra, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.dim();
        let mut gens = Vec::new();
        let mut closure = Subspace::span(&Matrix::column_vector(&self.unit, self.domain));
        for i in 0..n {
            if closure.contains_vector(&self.basis_vector(i)) {
                continue;
            }
            gens.push(i);
            loop {
                let b = closure.basis();
                let mut parts = vec![b.clone()];
                parts.extend(gens.iter().map(|&g| self.lmul[g].mul(&b)));
                let next = Subspace::span(&Matrix::hstack_all(self.domain, n, &parts));
                if next.dim() == closure.dim() {
                    break;
                }
                closure = next;
            }
            if closure.is_full() {
                break;
            }
        }
        gens
    }

    /// Minimal polynomial of `x` inside the corner algebra with identity
    /// `unit`, monic, lowest degree first.
    pub fn minimal_polynomial(&self, x: &[Scalar], unit: &[Scalar]) -> Vec<Scalar> {
        let lx = self.left_mul(x);
        let mut powers = vec![unit.to_vec()];
        loop {
            let m = Matrix::from_columns(self.domain, self.dim(), &powers);
            let next = lx.mul_vec(powers.last().expect("nonempty"));
            if let Some(c) = m.solve(&next) {
                let mut poly: Vec<Scalar> = c.iter().map(Scalar::neg).collect();
                poly.push(self.domain.one());
                return poly;
            }
            powers.push(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn catalog_tables_validate() {
        for id in catalog::ALGEBRA_IDS {
            let a = catalog::algebra(id).unwrap();
            assert_eq!(a.opposite().opposite(), a);
            assert!(!a.generators().is_empty() || a.dim() == 1);
        }
    }

    #[test]
    fn path_algebra_opposite_reverses_arrow() {
        let a = catalog::algebra("kA2").unwrap();
        let op = a.opposite();
        assert!(!a.is_commutative());
        // In the opposite, α = e1 α e2.
        assert!(op.constant(0, 2, 2).is_one());
        assert!(op.constant(2, 1, 2).is_one());
        assert!(op.constant(1, 2, 2).is_zero());
    }

    #[test]
    fn commutative_opposite_is_identical() {
        let a = catalog::algebra("kxy").unwrap();
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn associativity_violation_is_reported() {
        let q = Domain::Rational;
        let e = |k: usize| (0..3).map(|i| q.from_i64(i64::from(i == k))).collect::<Vec<_>>();
        let zero = vec![q.zero(); 3];
        // 1, x, y with x·x = y, x·y = x, y·x = 0: (xx)x = 0 but x(xx) = x.
        let mult = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(1)],
            vec![e(2), zero.clone(), zero],
        ];
        let err = Algebra::new(q, mult, e(0)).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { i: 1, j: 1, k: 1 }), "{err:?}");
    }

    #[test]
    fn unit_violation_is_reported() {
        let q = Domain::Rational;
        let mult = vec![vec![vec![q.one()]]];
        assert!(matches!(Algebra::new(q, mult, vec![q.from_i64(2)]), Err(Error::UnitViolation { i: 0 })));
    }
}
