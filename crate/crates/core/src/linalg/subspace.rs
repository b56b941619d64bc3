use super::matrix::Matrix;
use super::scalar::{Domain, Scalar};

/// A subspace of `k^n` kept in canonical form: the reduced row echelon
/// form of a spanning set. Two subspaces are equal iff their canonical
/// forms are equal, so `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `generators`.
    pub fn span(generators: &Matrix) -> Self {
        let ambient = generators.rows();
        let r = generators.transpose().rref();
        let d = r.pivots.len();
        let rows = r.reduced.block(0, 0, d, ambient);
        Subspace { ambient, rows, pivots: r.pivots }
    }

    pub fn span_vectors(domain: Domain, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::span(&Matrix::from_columns(domain, ambient, vectors))
    }

    pub fn zero(domain: Domain, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::zeros(domain, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(domain: Domain, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::identity(domain, ambient), pivots: (0..ambient).collect() }
    }

    pub fn domain(&self) -> Domain {
        self.rows.domain()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> Matrix {
        self.rows.transpose()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].neg();
            for (j, x) in self.rows.row(r).iter().enumerate() {
                if !x.is_zero() {
                    out[j] = out[j].add_mul(&f, x);
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains_vector(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of every column of `m`; `None` if some column lies outside.
    pub fn coordinates_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Scalar>>> = m.columns().iter().map(|c| self.coordinates(c)).collect();
        Some(Matrix::from_columns(self.domain(), self.dim(), &cols?))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis().columns().iter().all(|c| self.contains_vector(c))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Subspace::span(&self.basis().hstack(&other.basis()))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let u = self.basis();
        let w = other.basis();
        let k = u.hstack(&w.neg()).kernel();
        let coeffs = k.block(0, 0, u.cols(), k.cols());
        Subspace::span(&u.mul(&coeffs))
    }

    /// Image of the subspace under the linear map `f`.
    pub fn image_under(&self, f: &Matrix) -> Subspace {
        Subspace::span(&f.mul(&self.basis()))
    }

    /// `{ v : f v ∈ self }` for `f : k^m → k^ambient`.
    pub fn preimage_under(&self, f: &Matrix) -> Subspace {
        assert_eq!(f.rows(), self.ambient, "codomain mismatch");
        let q = Quotient::new(self.clone());
        Subspace::span(&q.projection().mul(f).kernel())
    }
}

/// The quotient `k^n / W`, with coordinates on the non-pivot columns of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(sub: Subspace) -> Self {
        let mut is_pivot = vec![false; sub.ambient];
        for &p in &sub.pivots {
            is_pivot[p] = true;
        }
        let free = (0..sub.ambient).filter(|&c| !is_pivot[c]).collect();
        Quotient { sub, free }
    }

    pub fn of_relations(relations: &Matrix) -> Self {
        Self::new(Subspace::span(relations))
    }

    pub fn relations(&self) -> &Subspace {
        &self.sub
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.sub.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    /// `dim × ambient` matrix of the projection.
    pub fn projection(&self) -> Matrix {
        let d = self.sub.domain();
        let n = self.ambient();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut e = vec![d.zero(); n];
                e[j] = d.one();
                self.project(&e)
            })
            .collect();
        Matrix::from_columns(d, self.dim(), &cols)
    }

    /// `ambient × dim` matrix of the standard section (free coordinates).
    pub fn section(&self) -> Matrix {
        let d = self.sub.domain();
        let mut s = Matrix::zeros(d, self.ambient(), self.dim());
        for (i, &c) in self.free.iter().enumerate() {
            s[(c, i)] = d.one();
        }
        s
    }

    /// Matrix of the map induced on quotients by `f`, where `f` maps
    /// `self.ambient` into `target.ambient` and is assumed to respect relations.
    pub fn induced(&self, f: &Matrix, target: &Quotient) -> Matrix {
        target.projection().mul(f).mul(&self.section())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Domain = Domain::Rational;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span_vectors(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span_vectors(Q, 3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span_vectors(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span_vectors(Q, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span_vectors(Q, 3, &[v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
    }

    #[test]
    fn quotient_projection_kills_relations() {
        let w = Subspace::span_vectors(Q, 3, &[v(&[1, 1, 1])]);
        let q = Quotient::new(w);
        assert_eq!(q.dim(), 2);
        let p = q.projection();
        assert!(p.mul_vec(&v(&[2, 2, 2])).iter().all(Scalar::is_zero));
        assert_eq!(p.mul(&q.section()), Matrix::identity(Q, 2));
    }
}
