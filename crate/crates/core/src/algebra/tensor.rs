use super::module::{Module, ModuleMap};
use super::Side;
use crate::error::Result;
use crate::linalg::{Matrix, Quotient, Scalar};

/// `A ⊗_Λ B` for a right module `A` and a left module `B`, realized as the
/// quotient of `A ⊗_k B` (index `p · dim B + q`) by the balancing relations.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    right: Module,
    left: Module,
    quotient: Quotient,
}

pub fn tensor(right: &Module, left: &Module) -> Result<TensorSpace> {
    right.expect_side(Side::Right)?;
    left.expect_side(Side::Left)?;
    if !right.same_ring(left) {
        return Err(crate::error::Error::AlgebraMismatch);
    }
    let d = right.domain();
    let (ma, mb) = (right.dim(), left.dim());
    let gens = right.ring().generators()?;
    let ia = Matrix::identity(d, ma);
    let ib = Matrix::identity(d, mb);
    let parts: Vec<Matrix> =
        gens.iter().map(|&g| right.action(g).kronecker(&ib).sub(&ia.kronecker(left.action(g)))).collect();
    let relations = Matrix::hstack_all(d, ma * mb, &parts);
    Ok(TensorSpace { right: right.clone(), left: left.clone(), quotient: Quotient::of_relations(&relations) })
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn right(&self) -> &Module {
        &self.right
    }

    pub fn left(&self) -> &Module {
        &self.left
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Class of the elementary tensor `a ⊗ b`.
    pub fn class_of(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.right.domain();
        let ka = Matrix::column_vector(a, d).kronecker(&Matrix::column_vector(b, d));
        self.quotient.project(&ka.column(0))
    }
}

/// `f ⊗ g` on tensor spaces.
pub fn tensor_of_maps(f: &ModuleMap, g: &ModuleMap, src: &TensorSpace, dst: &TensorSpace) -> Matrix {
    src.quotient.induced(&f.matrix().kronecker(g.matrix()), &dst.quotient)
}

/// The functor `M ⊗ −` (or `− ⊗ M` for a left `M`) applied to a map of the
/// opposite chirality: returns source space, target space and matrix.
pub fn tensor_with_map(m: &Module, f: &ModuleMap) -> Result<(TensorSpace, TensorSpace, Matrix)> {
    let id = m.identity_map();
    match m.side() {
        Side::Right => {
            let src = tensor(m, f.source())?;
            let dst = tensor(m, f.target())?;
            let mat = tensor_of_maps(&id, f, &src, &dst);
            Ok((src, dst, mat))
        }
        Side::Left => {
            let src = tensor(f.source(), m)?;
            let dst = tensor(f.target(), m)?;
            let mat = tensor_of_maps(f, &id, &src, &dst);
            Ok((src, dst, mat))
        }
    }
}

/// `M ⊗ N` with the right-side argument placed first automatically.
pub fn tensor_any(m: &Module, n: &Module) -> Result<TensorSpace> {
    match m.side() {
        Side::Right => tensor(m, n),
        Side::Left => tensor(n, m),
    }
}

/// Canonical isomorphism `M ⊗ Λ → M` (or `Λ ⊗ M → M`) as a matrix on the
/// tensor space, where `space` pairs `m` with the regular module of the
/// opposite side.
pub fn unit_isomorphism(m: &Module, space: &TensorSpace) -> Matrix {
    let d = m.domain();
    let n = m.acting().dim();
    let dm = m.dim();
    let mut on_k = Matrix::zeros(d, dm, dm * n);
    for i in 0..n {
        let act = m.action(i);
        for p in 0..dm {
            let col = match m.side() {
                Side::Right => p * n + i,
                Side::Left => i * dm + p,
            };
            for r in 0..dm {
                on_k[(r, col)] = act[(r, p)].clone();
            }
        }
    }
    on_k.mul(&space.quotient.section())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{catalog, Ring};

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        for id in catalog::ALGEBRA_IDS {
            let r = ring(id);
            let a = Module::cogenerator(&r, Side::Right);
            let l = Module::regular(&r, Side::Left);
            let t = tensor(&a, &l).unwrap();
            assert_eq!(t.dim(), a.dim());
            assert!(unit_isomorphism(&a, &t).is_invertible());
            let b = Module::cogenerator(&r, Side::Left);
            let rr = Module::regular(&r, Side::Right);
            let t2 = tensor(&rr, &b).unwrap();
            assert_eq!(t2.dim(), b.dim());
            assert!(unit_isomorphism(&b, &t2).is_invertible());
        }
    }

    #[test]
    fn mismatched_simples_over_path_algebra() {
        let r = ring("kA2");
        let dims: Vec<usize> = (0..2)
            .flat_map(|i| {
                let r = r.clone();
                (0..2).map(move |j| {
                    let a = Module::simple(&r, Side::Right, i).unwrap();
                    let b = Module::simple(&r, Side::Left, j).unwrap();
                    tensor(&a, &b).unwrap().dim()
                })
            })
            .collect();
        // S_i ⊗ S_j = k exactly when the idempotents match.
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn side_mismatch_is_reported() {
        let r = ring("kx2");
        let l = Module::regular(&r, Side::Left);
        assert!(tensor(&l, &l).is_err());
    }
}
