use std::fmt;
use std::sync::Arc;

use super::ring::{restrict, Ring};
use super::structure::Algebra;
use super::Side;
use crate::error::{Error, Result};
use crate::linalg::{Domain, Matrix, Quotient, Scalar, Subspace};

struct ModuleData {
    ring: Arc<Ring>,
    side: Side,
    dim: usize,
    action: Vec<Matrix>,
}

/// A finite-dimensional module. Right modules are stored as left modules
/// over the opposite algebra: `action[i]` is `m ↦ b_i m` for left modules
/// and `m ↦ m b_i` for right modules.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({} side, dim {})", self.0.side, self.0.dim)
    }
}

impl Module {
    /// Validates the action laws against the structure constants.
    pub fn new(ring: Arc<Ring>, side: Side, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        let a = ring.acting(side);
        if action.len() != a.dim() {
            return Err(Error::DimensionMismatch(format!("expected {} action matrices, found {}", a.dim(), action.len())));
        }
        if action.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {dim}×{dim}")));
        }
        if action.iter().any(|m| m.domain() != a.domain()) {
            return Err(Error::DomainMismatch);
        }
        check_action(a, dim, &action)?;
        Ok(Self::from_parts(ring, side, dim, action))
    }

    /// Unchecked constructor for actions that hold by construction.
    pub(crate) fn from_parts(ring: Arc<Ring>, side: Side, dim: usize, action: Vec<Matrix>) -> Module {
        debug_assert!(check_action(ring.acting(side), dim, &action).is_ok(), "module action laws");
        Module(Arc::new(ModuleData { ring, side, dim, action }))
    }

    pub fn zero(ring: &Arc<Ring>, side: Side) -> Module {
        let d = ring.domain();
        let action = vec![Matrix::zeros(d, 0, 0); ring.dim()];
        Self::from_parts(ring.clone(), side, 0, action)
    }

    pub fn regular(ring: &Arc<Ring>, side: Side) -> Module {
        let a = ring.acting(side);
        let action = (0..a.dim()).map(|i| a.basis_left_mul(i).clone()).collect();
        Self::from_parts(ring.clone(), side, a.dim(), action)
    }

    /// Indecomposable projective `Ae_t`.
    pub fn projective(ring: &Arc<Ring>, side: Side, t: usize) -> Result<Module> {
        let (sub, action) = &ring.side_modules(side)?.projective[t];
        Ok(Self::from_parts(ring.clone(), side, sub.dim(), action.clone()))
    }

    /// Indecomposable injective `D(e_t A)`, the envelope of the simple `S_t`.
    pub fn injective(ring: &Arc<Ring>, side: Side, t: usize) -> Result<Module> {
        let (sub, action) = &ring.side_modules(side)?.injective[t];
        Ok(Self::from_parts(ring.clone(), side, sub.dim(), action.clone()))
    }

    pub fn simple(ring: &Arc<Ring>, side: Side, t: usize) -> Result<Module> {
        let action = &ring.side_modules(side)?.simple[t];
        Ok(Self::from_parts(ring.clone(), side, 1, action.clone()))
    }

    /// The injective cogenerator `D(Λ)` of the given side.
    pub fn cogenerator(ring: &Arc<Ring>, side: Side) -> Module {
        Module::regular(ring, side.flip()).k_dual()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.0.ring
    }

    pub fn side(&self) -> Side {
        self.0.side
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn domain(&self) -> Domain {
        self.0.ring.domain()
    }

    pub fn acting(&self) -> &Algebra {
        self.0.ring.acting(self.0.side)
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    /// Action of an algebra element given by its coordinates.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        Matrix::linear_combination(self.domain(), self.dim(), self.dim(), x, &self.0.action)
    }

    pub fn same_ring(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0.ring, &other.0.ring) || *self.0.ring == *other.0.ring
    }

    /// Errors unless both modules live over the same algebra with the same side.
    pub fn check_compatible(&self, other: &Module) -> Result<()> {
        if !self.same_ring(other) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side() != other.side() {
            return Err(Error::SideMismatch { expected: self.side(), found: other.side() });
        }
        Ok(())
    }

    pub fn expect_side(&self, side: Side) -> Result<()> {
        if self.side() != side {
            return Err(Error::SideMismatch { expected: side, found: self.side() });
        }
        Ok(())
    }

    /// `Hom_k(M, k)` with the opposite chirality; actions are transposed.
    pub fn k_dual(&self) -> Module {
        let action = self.0.action.iter().map(Matrix::transpose).collect();
        Self::from_parts(self.0.ring.clone(), self.side().flip(), self.dim(), action)
    }

    /// Same module with actions conjugated by the invertible matrix `p`
    /// (new coordinates `p⁻¹ m`), together with the isomorphism `p: new → self`.
    pub fn change_basis(&self, p: &Matrix) -> Result<(Module, ModuleMap)> {
        let pinv = p.inverse().ok_or_else(|| Error::DimensionMismatch("change of basis is not invertible".into()))?;
        let action = self.0.action.iter().map(|a| pinv.mul(a).mul(p)).collect();
        let m = Self::from_parts(self.0.ring.clone(), self.side(), self.dim(), action);
        let iso = ModuleMap::new(m.clone(), self.clone(), p.clone())?;
        Ok((m, iso))
    }

    pub fn direct_sum(parts: &[Module]) -> Result<DirectSum> {
        let first = parts.first().ok_or_else(|| Error::DimensionMismatch("empty direct sum".into()))?;
        for p in parts {
            first.check_compatible(p)?;
        }
        let d = first.domain();
        let n = first.acting().dim();
        let action = (0..n)
            .map(|i| Matrix::block_diag(d, &parts.iter().map(|p| p.action(i).clone()).collect::<Vec<_>>()))
            .collect();
        let total: usize = parts.iter().map(Module::dim).sum();
        let sum = Self::from_parts(first.ring().clone(), first.side(), total, action);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for p in parts {
            let mut inj = Matrix::zeros(d, total, p.dim());
            inj.set_block(offset, 0, &Matrix::identity(d, p.dim()));
            projections.push(ModuleMap::unchecked(sum.clone(), p.clone(), inj.transpose()));
            injections.push(ModuleMap::unchecked(p.clone(), sum.clone(), inj));
            offset += p.dim();
        }
        Ok(DirectSum { module: sum, injections, projections })
    }

    /// `M^k` with its injections and projections.
    pub fn power(&self, k: usize) -> DirectSum {
        if k == 0 {
            let z = Module::zero(self.ring(), self.side());
            return DirectSum { module: z, injections: Vec::new(), projections: Vec::new() };
        }
        Module::direct_sum(&vec![self.clone(); k]).expect("copies of one module are compatible")
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        sub.ambient() == self.dim() && self.0.action.iter().all(|a| sub.contains(&sub.image_under(a)))
    }

    pub fn submodule(&self, sub: &Subspace) -> Result<Submodule> {
        if !self.is_submodule(sub) {
            return Err(Error::HypothesisNotMet("subspace is not closed under the action".into()));
        }
        Ok(self.submodule_unchecked(sub.clone()))
    }

    pub(crate) fn submodule_unchecked(&self, sub: Subspace) -> Submodule {
        let action = self.0.action.iter().map(|a| restrict(&sub, a)).collect();
        let module = Self::from_parts(self.0.ring.clone(), self.side(), sub.dim(), action);
        let inclusion = ModuleMap::unchecked(module.clone(), self.clone(), sub.basis());
        Submodule { module, inclusion, subspace: sub }
    }

    pub fn quotient(&self, sub: &Subspace) -> Result<QuotientModule> {
        if !self.is_submodule(sub) {
            return Err(Error::HypothesisNotMet("subspace is not closed under the action".into()));
        }
        Ok(self.quotient_unchecked(sub.clone()))
    }

    pub(crate) fn quotient_unchecked(&self, sub: Subspace) -> QuotientModule {
        let q = Quotient::new(sub);
        let (proj, sec) = (q.projection(), q.section());
        let action = self.0.action.iter().map(|a| proj.mul(a).mul(&sec)).collect();
        let module = Self::from_parts(self.0.ring.clone(), self.side(), q.dim(), action);
        let projection = ModuleMap::unchecked(self.clone(), module.clone(), proj);
        QuotientModule { module, projection, quotient: q }
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, gens: &Matrix) -> Subspace {
        let mut sub = Subspace::span(gens);
        loop {
            let b = sub.basis();
            let mut parts = vec![b.clone()];
            parts.extend(self.0.action.iter().map(|a| a.mul(&b)));
            let next = Subspace::span(&Matrix::hstack_all(self.domain(), self.dim(), &parts));
            if next.dim() == sub.dim() {
                return sub;
            }
            sub = next;
        }
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap::unchecked(self.clone(), self.clone(), Matrix::identity(self.domain(), self.dim()))
    }
}

fn check_action(a: &Algebra, dim: usize, action: &[Matrix]) -> Result<()> {
    let n = a.dim();
    let d = a.domain();
    for i in 0..n {
        for j in 0..n {
            let lhs = action[i].mul(&action[j]);
            let rhs = Matrix::linear_combination(d, dim, dim, &a.basis_product(i, j), action);
            if lhs != rhs {
                return Err(Error::ActionViolation { i, j });
            }
        }
    }
    if Matrix::linear_combination(d, dim, dim, a.unit(), action) != Matrix::identity(d, dim) {
        return Err(Error::UnitActionViolation);
    }
    Ok(())
}

pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// A submodule with its inclusion; `subspace` is the image of the inclusion.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub subspace: Subspace,
}

#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: Module,
    pub projection: ModuleMap,
    pub quotient: Quotient,
}

/// Kernel, image and cokernel of a module map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub kernel: Submodule,
    pub image: Submodule,
    pub cokernel: QuotientModule,
}

/// An intertwiner `source → target`, stored as a `dim target × dim source` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    /// Verifies the intertwining equations for every basis element.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap> {
        source.check_compatible(&target)?;
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}×{}, expected {}×{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for i in 0..source.acting().dim() {
            if matrix.mul(source.action(i)) != target.action(i).mul(&matrix) {
                return Err(Error::NotIntertwiner { i });
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub(crate) fn unchecked(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!(matrix.shape(), (target.dim(), source.dim()));
        debug_assert!(
            (0..source.acting().dim()).all(|i| matrix.mul(source.action(i)) == target.action(i).mul(&matrix)),
            "intertwining equations"
        );
        ModuleMap { source, target, matrix }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let m = Matrix::zeros(source.domain(), target.dim(), source.dim());
        ModuleMap { source: source.clone(), target: target.clone(), matrix: m }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target.dim(), self.source.dim(), "composition dimension mismatch");
        ModuleMap::unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Submodule {
        self.source.submodule_unchecked(Subspace::span(&self.matrix.kernel()))
    }

    pub fn image(&self) -> Submodule {
        self.target.submodule_unchecked(Subspace::span(&self.matrix))
    }

    pub fn image_subspace(&self) -> Subspace {
        Subspace::span(&self.matrix)
    }

    pub fn cokernel(&self) -> QuotientModule {
        self.target.quotient_unchecked(Subspace::span(&self.matrix))
    }

    pub fn factorize(&self) -> Subquotient {
        Subquotient { kernel: self.kernel(), image: self.image(), cokernel: self.cokernel() }
    }

    /// Restriction to submodules: requires `f(sub_source) ⊆ sub_target`.
    pub fn restrict(&self, sub_source: &Submodule, sub_target: &Submodule) -> Option<ModuleMap> {
        let m = sub_target.subspace.coordinates_matrix(&self.matrix.mul(&sub_source.inclusion.matrix))?;
        Some(ModuleMap::unchecked(sub_source.module.clone(), sub_target.module.clone(), m))
    }

    /// Map induced on quotients: requires `f(ker of source quotient) ⊆ ker of target quotient`.
    pub fn induce(&self, qs: &QuotientModule, qt: &QuotientModule) -> Option<ModuleMap> {
        let relations = qs.quotient.relations();
        if !qt.quotient.relations().contains(&relations.image_under(&self.matrix)) {
            return None;
        }
        let m = qs.quotient.induced(&self.matrix, &qt.quotient);
        Some(ModuleMap::unchecked(qs.module.clone(), qt.module.clone(), m))
    }

    /// A module-map inverse, if the map is bijective.
    pub fn inverse(&self) -> Option<ModuleMap> {
        let inv = self.matrix.inverse()?;
        Some(ModuleMap::unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// `D_k(f) : D_k(target) → D_k(source)`.
    pub fn k_dual(&self) -> ModuleMap {
        ModuleMap::unchecked(self.target.k_dual(), self.source.k_dual(), self.matrix.transpose())
    }

    /// Re-checks the intertwining equations.
    pub fn verify(&self) -> bool {
        (0..self.source.acting().dim()).all(|i| self.matrix.mul(self.source.action(i)) == self.target.action(i).mul(&self.matrix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn regular_module_of_dual_numbers() {
        let r = ring("kx2");
        let m = Module::regular(&r, Side::Left);
        assert_eq!(m.dim(), 2);
        let x = m.action(1);
        assert!(x.mul(x).is_zero());
        assert!(!x.is_zero());
    }

    #[test]
    fn bad_action_is_rejected() {
        let r = ring("kx2");
        let q = Domain::Rational;
        let action = vec![Matrix::identity(q, 1), Matrix::identity(q, 1)];
        assert!(matches!(Module::new(r, Side::Left, 1, action), Err(Error::ActionViolation { i: 1, j: 1 })));
    }

    #[test]
    fn non_intertwiner_is_rejected() {
        let r = ring("kx2");
        let m = Module::regular(&r, Side::Left);
        let p = Matrix::from_i64(Domain::Rational, &[&[1, 0], &[0, 2]]);
        assert!(matches!(ModuleMap::new(m.clone(), m, p), Err(Error::NotIntertwiner { i: 1 })));
        let s = Module::simple(&ring("kx2"), Side::Left, 0).unwrap();
        let reg = Module::regular(&ring("kx2"), Side::Left);
        let top = Matrix::from_i64(Domain::Rational, &[&[1], &[0]]);
        assert!(matches!(ModuleMap::new(s, reg, top), Err(Error::NotIntertwiner { .. })));
    }

    #[test]
    fn dual_flips_side_and_double_dual_is_identity() {
        let r = ring("kA2");
        let m = Module::regular(&r, Side::Left);
        let d = m.k_dual();
        assert_eq!(d.side(), Side::Right);
        assert_eq!(d.dim(), m.dim());
        let dd = d.k_dual();
        assert_eq!(dd.actions(), m.actions());
        assert!(ModuleMap::new(m.clone(), dd, Matrix::identity(Domain::Rational, 3)).is_ok());
    }

    #[test]
    fn direct_sum_with_zero() {
        let r = ring("kA2");
        let m = Module::regular(&r, Side::Left);
        let z = Module::zero(&r, Side::Left);
        let s = Module::direct_sum(&[m.clone(), z]).unwrap();
        assert_eq!(s.module.dim(), m.dim());
        assert!(s.projections[0].compose(&s.injections[0]).matrix() == &Matrix::identity(Domain::Rational, 3));
    }

    #[test]
    fn factorization_dimensions() {
        let r = ring("kx3");
        let m = Module::regular(&r, Side::Left);
        // Right multiplication by x is a left module endomorphism.
        let f = ModuleMap::new(m.clone(), m.clone(), r.algebra().basis_right_mul(1).clone()).unwrap();
        let sq = f.factorize();
        assert_eq!(sq.kernel.module.dim() + sq.image.module.dim(), m.dim());
        assert_eq!(sq.cokernel.module.dim(), m.dim() - sq.image.module.dim());
        assert!(f.matrix().mul(sq.kernel.inclusion.matrix()).is_zero());
        let id = m.identity_map().factorize();
        assert_eq!((id.kernel.module.dim(), id.cokernel.module.dim()), (0, 0));
        let z = ModuleMap::zero(&m, &m).factorize();
        assert_eq!((z.kernel.module.dim(), z.cokernel.module.dim()), (3, 3));
    }
}
