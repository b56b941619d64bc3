use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Scalar, Subspace};

/// Exactness of `V₀ → V₁ → … → V_k` at every interior term, with optional
/// zeros at either end.
pub fn is_exact_sequence(dims: &[usize], maps: &[Matrix], zero_left: bool, zero_right: bool) -> bool {
    assert_eq!(dims.len(), maps.len() + 1, "one map between consecutive terms");
    for (i, m) in maps.iter().enumerate() {
        if m.shape() != (dims[i + 1], dims[i]) {
            return false;
        }
    }
    let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
    for i in 1..maps.len() {
        if !maps[i].mul(&maps[i - 1]).is_zero() || ranks[i - 1] + ranks[i] != dims[i] {
            return false;
        }
    }
    let left_ok = !zero_left || maps.first().map_or(true, |_| ranks[0] == dims[0]);
    let right_ok = !zero_right || maps.last().map_or(true, |_| ranks[maps.len() - 1] == dims[maps.len()]);
    left_ok && right_ok
}

/// The snake sequence `ker f₁ → ker f₂ → ker f₃ → coker f₁ → coker f₂ → coker f₃`
/// of a commutative diagram with rows `X₁ → X₂ → X₃ → 0` and `0 → Y₁ → Y₂ → Y₃`.
#[derive(Clone, Debug)]
pub struct Snake {
    pub kernels: Vec<Subspace>,
    pub cokernels: Vec<Quotient>,
    /// The five maps, the third being the connecting map.
    pub maps: Vec<Matrix>,
}

impl Snake {
    pub fn dims(&self) -> Vec<usize> {
        self.kernels.iter().map(Subspace::dim).chain(self.cokernels.iter().map(Quotient::dim)).collect()
    }

    /// Exactness of the six-term sequence, including the outer zeros when the
    /// first top map is injective and the last bottom map is surjective.
    pub fn is_exact(&self, zero_left: bool, zero_right: bool) -> bool {
        is_exact_sequence(&self.dims(), &self.maps, zero_left, zero_right)
    }
}

pub fn snake(top: [&Matrix; 2], bottom: [&Matrix; 2], vert: [&Matrix; 3]) -> Result<Snake> {
    let [a, b] = top;
    let [c, d] = bottom;
    let [f1, f2, f3] = vert;
    if f2.mul(a) != c.mul(f1) || f3.mul(b) != d.mul(f2) {
        return Err(Error::HypothesisNotMet("snake diagram does not commute".into()));
    }
    if b.rank() != b.rows() || c.rank() != c.cols() || !b.mul(a).is_zero() || !d.mul(c).is_zero() {
        return Err(Error::HypothesisNotMet("snake rows are not exact at the ends".into()));
    }
    let kernels: Vec<Subspace> = [f1, f2, f3].iter().map(|f| Subspace::span(&f.kernel())).collect();
    let cokernels: Vec<Quotient> = [f1, f2, f3].iter().map(|f| Quotient::of_relations(f)).collect();
    let dom = f1.domain();
    let on_kernels = |g: &Matrix, from: &Subspace, to: &Subspace| -> Result<Matrix> {
        to.coordinates_matrix(&g.mul(&from.basis()))
            .ok_or_else(|| Error::HypothesisNotMet("top row does not map kernels to kernels".into()))
    };
    let k12 = on_kernels(a, &kernels[0], &kernels[1])?;
    let k23 = on_kernels(b, &kernels[1], &kernels[2])?;
    let mut delta_cols: Vec<Vec<Scalar>> = Vec::new();
    for x3 in kernels[2].basis().columns() {
        let x2 = b.solve(&x3).expect("top row is surjective");
        let y2 = f2.mul_vec(&x2);
        let y1 = c
            .solve(&y2)
            .ok_or_else(|| Error::HypothesisNotMet("bottom row is not exact in the middle".into()))?;
        delta_cols.push(cokernels[0].project(&y1));
    }
    let delta = Matrix::from_columns(dom, cokernels[0].dim(), &delta_cols);
    let c12 = cokernels[0].induced(c, &cokernels[1]);
    let c23 = cokernels[1].induced(d, &cokernels[2]);
    Ok(Snake { kernels, cokernels, maps: vec![k12, k23, delta, c12, c23] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Domain;

    const Q: Domain = Domain::Rational;

    #[test]
    fn multiplication_by_two_on_a_split_sequence() {
        // 0 → k → k² → k → 0 with vertical maps (0, [[0,1],[0,0]], 0): the
        // connecting map is an isomorphism k → k.
        let a = Matrix::from_i64(Q, &[&[1], &[0]]);
        let b = Matrix::from_i64(Q, &[&[0, 1]]);
        let f1 = Matrix::zeros(Q, 1, 1);
        let f2 = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let f3 = Matrix::zeros(Q, 1, 1);
        let s = snake([&a, &b], [&a, &b], [&f1, &f2, &f3]).unwrap();
        assert_eq!(s.dims(), vec![1, 1, 1, 1, 1, 1]);
        assert!(s.maps[2].is_invertible());
        assert!(s.is_exact(true, true));
    }

    #[test]
    fn non_commuting_diagram_is_rejected() {
        let i = Matrix::identity(Q, 1);
        let z = Matrix::zeros(Q, 1, 1);
        assert!(snake([&i, &z], [&i, &z], [&i, &z, &z]).is_err());
    }

    #[test]
    fn exactness_detects_defects() {
        let i = Matrix::identity(Q, 2);
        let z = Matrix::zeros(Q, 2, 2);
        assert!(is_exact_sequence(&[2, 2, 2], &[i.clone(), z.clone()], true, false));
        assert!(!is_exact_sequence(&[2, 2, 2], &[z.clone(), z], false, false));
        assert!(!is_exact_sequence(&[2, 2, 2], &[i.clone(), i], false, false));
    }
}
