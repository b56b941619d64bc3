use super::module::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{Matrix, Scalar, Subspace};

/// `Hom_Λ(M, N)` as a subspace of `dim N × dim M` matrices flattened row-major.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    space: Subspace,
}

/// Solves the intertwining equations `X ρ_M(g) = ρ_N(g) X` for the algebra
/// generators `g`, one generator at a time.
pub fn hom(source: &Module, target: &Module) -> Result<HomSpace> {
    source.check_compatible(target)?;
    let d = source.domain();
    let (s, t) = (source.dim(), target.dim());
    let unknowns = s * t;
    let gens = source.ring().generators()?;
    let mut k = Matrix::identity(d, unknowns);
    for &g in gens {
        if k.cols() == 0 {
            break;
        }
        let a = source.action(g);
        let b = target.action(g);
        let eq = Matrix::identity(d, t).kronecker(&a.transpose()).sub(&b.kronecker(&Matrix::identity(d, s)));
        let restricted = eq.mul(&k);
        k = k.mul(&restricted.kernel());
    }
    Ok(HomSpace { source: source.clone(), target: target.clone(), space: Subspace::span(&k) })
}

impl HomSpace {
    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    fn reshape(&self, v: &[Scalar]) -> Matrix {
        Matrix::from_vec(self.source.domain(), self.target.dim(), self.source.dim(), v.to_vec())
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space.basis().columns().iter().map(|c| self.reshape(c)).collect()
    }

    pub fn basis(&self) -> Vec<ModuleMap> {
        self.basis_matrices()
            .into_iter()
            .map(|m| ModuleMap::unchecked(self.source.clone(), self.target.clone(), m))
            .collect()
    }

    pub fn element(&self, coeffs: &[Scalar]) -> ModuleMap {
        let v = self.space.basis().mul_vec(coeffs);
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.reshape(&v))
    }

    /// Coordinates of a matrix in the canonical basis, if it is a module map.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.space.coordinates(&m.flatten())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains_vector(&m.flatten())
    }

    /// Matrix of the linear map on hom spaces sending the `j`-th basis map
    /// `φ_j` to `f(φ_j)`, expressed in `target_space`.
    pub fn induced_map(&self, target_space: &HomSpace, f: impl Fn(&Matrix) -> Matrix) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .basis_matrices()
            .iter()
            .map(|b| target_space.coordinates(&f(b)).expect("induced map lands in the target hom space"))
            .collect();
        Matrix::from_columns(self.source.domain(), target_space.dim(), &cols)
    }
}

/// `(f, C) : Hom(Y, C) → Hom(X, C)` for `f : X → Y`, `φ ↦ φ ∘ f`.
pub fn precompose(f: &ModuleMap, from: &HomSpace, to: &HomSpace) -> Matrix {
    from.induced_map(to, |phi| phi.mul(f.matrix()))
}

/// `(X, g) : Hom(X, C) → Hom(X, D)` for `g : C → D`, `φ ↦ g ∘ φ`.
pub fn postcompose(g: &ModuleMap, from: &HomSpace, to: &HomSpace) -> Matrix {
    from.induced_map(to, |phi| g.matrix().mul(phi))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{catalog, Ring, Side};

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn endomorphisms_of_regular_module_have_algebra_dimension() {
        for id in catalog::ALGEBRA_IDS {
            let r = ring(id);
            for side in [Side::Left, Side::Right] {
                let l = Module::regular(&r, side);
                assert_eq!(hom(&l, &l).unwrap().dim(), r.dim(), "{id} {side}");
            }
        }
    }

    #[test]
    fn simple_into_dual_numbers_hits_socle() {
        let r = ring("kx2");
        let s = Module::simple(&r, Side::Left, 0).unwrap();
        let l = Module::regular(&r, Side::Left);
        let h = hom(&s, &l).unwrap();
        assert_eq!(h.dim(), 1);
        // Independent oracle: brute-force over column vectors v with x·v = 0.
        let x = l.action(1);
        let ker = x.kernel();
        assert_eq!(ker.cols(), 1);
        assert_eq!(Subspace::span(&h.basis_matrices()[0]), Subspace::span(&ker));
    }

    #[test]
    fn hom_into_zero_is_zero() {
        let r = ring("kA2");
        let l = Module::regular(&r, Side::Left);
        let z = Module::zero(&r, Side::Left);
        assert_eq!(hom(&l, &z).unwrap().dim(), 0);
        assert_eq!(hom(&z, &l).unwrap().dim(), 0);
    }

    #[test]
    fn basis_maps_intertwine() {
        let r = ring("kA3");
        let p = Module::regular(&r, Side::Left);
        let i = Module::cogenerator(&r, Side::Left);
        for f in hom(&p, &i).unwrap().basis() {
            assert!(f.verify());
        }
        assert_eq!(hom(&p, &i).unwrap().dim(), i.dim());
    }
}
