//! Injective torsion `𝔰`, 1-torsion `𝔱`, cotorsion `𝔮`, traces of injectives,
//! iterated chains and the classification predicates.

mod identify;
mod snake;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::envelope::{injective_envelope, is_injective, is_projective};
use crate::algebra::homological::lambda_dual_and_evaluation;
use crate::algebra::tensor::{tensor_with_map, unit_isomorphism};
use crate::algebra::{hom, Module, ModuleMap, QuotientModule, Ring, Side, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::random::random_combination;

pub use identify::{
    ext_connecting_iso, pushout_sequence, q_six_term, s_six_term, tor_connecting_iso, tor_ext_identifications,
    trace_representability, IdentificationReport, ShortExact, SixTerm,
};
pub use snake::{is_exact_sequence, snake, Snake};

/// `0 → Λ → I → ΣΛ → 0` for the regular module on one side.
#[derive(Clone, Debug)]
pub struct Cosyzygy {
    pub iota: ModuleMap,
    /// `ΣΛ` with the projection `I → ΣΛ`.
    pub sigma: QuotientModule,
    pub i_projective: bool,
    /// Equal to `i_projective` over a finite-dimensional algebra.
    pub i_flat: bool,
    pub self_injective: bool,
}

impl Cosyzygy {
    /// The side of the embedded regular module.
    pub fn side(&self) -> Side {
        self.iota.source().side()
    }

    pub fn container(&self) -> &Module {
        self.iota.target()
    }

    pub fn sigma_lambda(&self) -> &Module {
        &self.sigma.module
    }

    fn from_iota(iota: ModuleMap) -> Result<Cosyzygy> {
        let sigma = iota.cokernel();
        let proj = &sigma.projection;
        assert!(
            iota.is_injective()
                && proj.is_surjective()
                && proj.matrix().mul(iota.matrix()).is_zero()
                && iota.rank() + sigma.module.dim() == iota.target().dim(),
            "cosyzygy sequence is exact"
        );
        let i_projective = is_projective(iota.target())?;
        let self_injective = sigma.module.is_zero();
        Ok(Cosyzygy { iota, sigma, i_projective, i_flat: i_projective, self_injective })
    }
}

/// The cosyzygy sequence with `I = E(Λ)`.
pub fn cosyzygy(ring: &Arc<Ring>, side: Side) -> Result<Cosyzygy> {
    let env = injective_envelope(&Module::regular(ring, side))?;
    Cosyzygy::from_iota(env.map)
}

/// The cosyzygy sequence with `I = E(Λ) ⊕ J` and `ι' = (ι, h)` for a seeded
/// random `h : Λ → J`.
pub fn cosyzygy_with_container(ring: &Arc<Ring>, side: Side, extra: &Module, seed: u64) -> Result<Cosyzygy> {
    extra.expect_side(side)?;
    if !is_injective(extra)? {
        return Err(Error::ContainerNotInjective);
    }
    let lam = Module::regular(ring, side);
    let env = injective_envelope(&lam)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_combination(&hom(&lam, extra)?, &mut rng);
    let sum = Module::direct_sum(&[env.module().clone(), extra.clone()])?;
    let mat = env.map.matrix().vstack(h.matrix());
    Cosyzygy::from_iota(ModuleMap::new(lam, sum.module, mat)?)
}

/// Both cosyzygy sequences of a ring.
#[derive(Clone, Debug)]
pub struct StabContext {
    pub ring: Arc<Ring>,
    pub left: Cosyzygy,
    pub right: Cosyzygy,
}

impl StabContext {
    pub fn new(ring: &Arc<Ring>) -> Result<StabContext> {
        Ok(StabContext { ring: ring.clone(), left: cosyzygy(ring, Side::Left)?, right: cosyzygy(ring, Side::Right)? })
    }

    pub fn cosyzygy(&self, side: Side) -> &Cosyzygy {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// `𝔰(A)` uses the envelope of the regular module on the other side.
    pub fn torsion(&self, a: &Module) -> Result<Torsion> {
        torsion_s(a, self.cosyzygy(a.side().flip()))
    }

    /// `𝔮(C)` uses the envelope of the regular module on the same side.
    pub fn cotorsion(&self, c: &Module) -> Result<Cotorsion> {
        cotorsion_q(c, self.cosyzygy(c.side()))
    }

    pub fn self_injective(&self) -> bool {
        self.left.self_injective
    }
}

/// `𝔰(A) = Ker(1 ⊗ ι : A ⊗ Λ → A ⊗ I)`, carried into `A` by `A ⊗ Λ ≅ A`.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub submodule: Submodule,
    /// The matrix of `1 ⊗ ι` on the tensor spaces.
    pub witness: Matrix,
    /// `dim A ⊗ I`.
    pub tensor_dim: usize,
}

impl Torsion {
    pub fn subspace(&self) -> &Subspace {
        &self.submodule.subspace
    }

    pub fn dim(&self) -> usize {
        self.submodule.module.dim()
    }
}

pub fn torsion_s(a: &Module, cz: &Cosyzygy) -> Result<Torsion> {
    if cz.side() != a.side().flip() {
        return Err(Error::SideMismatch { expected: a.side().flip(), found: cz.side() });
    }
    let (src, dst, mat) = tensor_with_map(a, &cz.iota)?;
    let unit = unit_isomorphism(a, &src);
    let sub = Subspace::span(&unit.mul(&mat.kernel()));
    let submodule = a.submodule(&sub)?;
    Ok(Torsion { submodule, witness: mat, tensor_dim: dst.dim() })
}

/// `𝔱(A) = Ker(e_A : A → A**)`.
pub fn one_torsion_t(a: &Module) -> Result<Submodule> {
    Ok(lambda_dual_and_evaluation(a)?.map.kernel())
}

/// `Rej(A, Λ) = ⋂ Ker f` over a basis of `Hom(A, Λ)`.
pub fn reject(a: &Module) -> Result<Submodule> {
    let h = hom(a, &Module::regular(a.ring(), a.side()))?;
    let maps = h.basis_matrices();
    let sub = if maps.is_empty() {
        Subspace::full(a.domain(), a.dim())
    } else {
        Subspace::span(&Matrix::vstack_all(a.domain(), a.dim(), &maps).kernel())
    };
    a.submodule(&sub)
}

/// `𝔰⁻¹(A) = A / 𝔰(A)`; its dimension is matched against `rank(1 ⊗ ι)`.
pub fn torsion_free_quotient(a: &Module, cz: &Cosyzygy) -> Result<QuotientModule> {
    let t = torsion_s(a, cz)?;
    let q = a.quotient(t.subspace())?;
    assert_eq!(q.module.dim(), t.witness.rank(), "A / 𝔰(A) has the dimension of im(1 ⊗ ι)");
    Ok(q)
}

/// Dimensions of an iterated chain and the first index where it is constant.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub dims: Vec<usize>,
    pub stabilized_at: Option<usize>,
}

impl ChainReport {
    /// Number of strict steps before stabilization.
    pub fn length(&self) -> Option<usize> {
        self.stabilized_at
    }
}

/// `A ⊇ 𝔰(A) ⊇ 𝔰²(A) ⊇ …` as subspaces of `A`.
pub fn s_chain(a: &Module, cz: &Cosyzygy, cap: usize) -> Result<(ChainReport, Vec<Subspace>)> {
    let mut subspaces = vec![Subspace::full(a.domain(), a.dim())];
    let mut cur = a.clone();
    let mut to_a = a.identity_map().matrix().clone();
    let mut stabilized_at = None;
    for k in 0..cap {
        let t = torsion_s(&cur, cz)?;
        if t.dim() == cur.dim() {
            stabilized_at = Some(k);
            break;
        }
        to_a = to_a.mul(t.submodule.inclusion.matrix());
        subspaces.push(Subspace::span(&to_a));
        cur = t.submodule.module;
    }
    let dims = subspaces.iter().map(Subspace::dim).collect();
    Ok((ChainReport { dims, stabilized_at }, subspaces))
}

/// `𝔮(C) = C / Tr(𝓘, C)`, with the trace also computed as the image of
/// `(ι, C)` evaluated at `1`.
#[derive(Clone, Debug)]
pub struct Cotorsion {
    pub trace: Submodule,
    pub quotient: QuotientModule,
    /// `{ φ(ι(1)) : φ ∈ Hom(I, C) }`.
    pub hom_image: Subspace,
}

impl Cotorsion {
    pub fn dim(&self) -> usize {
        self.quotient.module.dim()
    }

    pub fn agrees(&self) -> bool {
        self.trace.subspace == self.hom_image
    }
}

/// `Tr(𝓘, C)`: the sum of images of maps from the injective cogenerator.
pub fn trace_of_injectives(c: &Module) -> Result<Submodule> {
    let cog = Module::cogenerator(c.ring(), c.side());
    let maps = hom(&cog, c)?.basis_matrices();
    let sub = if maps.is_empty() {
        Subspace::zero(c.domain(), c.dim())
    } else {
        Subspace::span(&Matrix::hstack_all(c.domain(), c.dim(), &maps))
    };
    c.submodule(&sub)
}

pub fn cotorsion_q(c: &Module, cz: &Cosyzygy) -> Result<Cotorsion> {
    if cz.side() != c.side() {
        return Err(Error::SideMismatch { expected: c.side(), found: cz.side() });
    }
    let trace = trace_of_injectives(c)?;
    let quotient = c.quotient(&trace.subspace)?;
    let one = c.ring().acting(c.side()).unit().to_vec();
    let i_one = cz.iota.matrix().mul_vec(&one);
    let maps = hom(cz.container(), c)?.basis_matrices();
    let vecs: Vec<Vec<_>> = maps.iter().map(|phi| phi.mul_vec(&i_one)).collect();
    let hom_image = Subspace::span_vectors(c.domain(), c.dim(), &vecs);
    Ok(Cotorsion { trace, quotient, hom_image })
}

/// `C → 𝔮(C) → 𝔮²(C) → …`; stabilizes once the trace vanishes.
pub fn q_chain(c: &Module, cz: &Cosyzygy, cap: usize) -> Result<(ChainReport, Vec<Module>)> {
    let mut terms = vec![c.clone()];
    let mut stabilized_at = None;
    for k in 0..cap {
        let q = cotorsion_q(&terms[k], cz)?;
        if q.trace.module.is_zero() {
            stabilized_at = Some(k);
            break;
        }
        terms.push(q.quotient.module);
    }
    let dims = terms.iter().map(Module::dim).collect();
    Ok((ChainReport { dims, stabilized_at }, terms))
}

/// Membership in the four classes, plus two algebra-level flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_torsion: bool,
    pub is_torsion_free: bool,
    pub is_cotorsion: bool,
    pub is_cotorsion_free: bool,
    pub algebra_is_self_injective: bool,
    pub i_is_projective: bool,
}

pub fn classify(x: &Module, ctx: &StabContext) -> Result<Classification> {
    let s = ctx.torsion(x)?;
    let q = ctx.cotorsion(x)?;
    let c = Classification {
        is_torsion: s.dim() == x.dim(),
        is_torsion_free: s.dim() == 0,
        is_cotorsion: q.trace.module.is_zero(),
        is_cotorsion_free: q.dim() == 0,
        algebra_is_self_injective: ctx.left.self_injective,
        i_is_projective: ctx.left.i_projective,
    };
    assert!(!(c.is_cotorsion && c.is_cotorsion_free) || x.is_zero(), "cotorsion and cotorsion-free forces zero");
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    fn ctx(id: &str) -> StabContext {
        StabContext::new(&catalog::ring(id).unwrap()).unwrap()
    }

    #[test]
    fn cosyzygy_examples() {
        let c = ctx("kx2");
        assert!(c.left.self_injective);
        let c = ctx("kA2");
        assert_eq!(c.left.container().dim(), 4);
        assert_eq!(c.left.sigma_lambda().dim(), 1);
        assert!(c.left.i_projective);
        let c = ctx("kxy");
        assert!(!c.left.self_injective);
        assert!(!c.left.i_projective);
    }

    #[test]
    fn container_must_be_injective() {
        let r = catalog::ring("kA2").unwrap();
        let s = Module::simple(&r, Side::Left, 0).unwrap();
        let inj = Module::simple(&r, Side::Left, 1).unwrap();
        let injective_simple = if is_injective(&s).unwrap() { s.clone() } else { inj.clone() };
        let other = if is_injective(&s).unwrap() { inj } else { s };
        assert!(matches!(cosyzygy_with_container(&r, Side::Left, &other, 1), Err(Error::ContainerNotInjective)));
        assert!(cosyzygy_with_container(&r, Side::Left, &injective_simple, 1).is_ok());
    }

    #[test]
    fn torsion_examples() {
        for id in catalog::ALGEBRA_IDS {
            let c = ctx(id);
            let l = Module::regular(&c.ring, Side::Right);
            assert_eq!(c.torsion(&l).unwrap().dim(), 0, "{id}");
            assert_eq!(one_torsion_t(&l).unwrap().module.dim(), 0, "{id}");
        }
        let c = ctx("kx2");
        for t in [Module::simple(&c.ring, Side::Right, 0).unwrap(), Module::cogenerator(&c.ring, Side::Right)] {
            assert_eq!(c.torsion(&t).unwrap().dim(), 0);
        }
        let c = ctx("kxy");
        let s = Module::simple(&c.ring, Side::Right, 0).unwrap();
        assert_eq!(c.torsion(&s).unwrap().dim(), 0);
        assert_eq!(one_torsion_t(&s).unwrap().module.dim(), 0);
    }

    #[test]
    fn torsion_of_module_with_zero_dual() {
        // The right simple S_1 over kA2 with S_1* = 0 is all torsion.
        let c = ctx("kA2");
        for t in 0..2 {
            let s = Module::simple(&c.ring, Side::Right, t).unwrap();
            let rej = reject(&s).unwrap();
            let tor = c.torsion(&s).unwrap();
            assert_eq!(rej.subspace, tor.submodule.subspace);
            assert_eq!(one_torsion_t(&s).unwrap().subspace, tor.submodule.subspace);
        }
    }

    #[test]
    fn cotorsion_examples() {
        for id in catalog::ALGEBRA_IDS {
            let c = ctx(id);
            let inj = Module::cogenerator(&c.ring, Side::Left);
            let q = c.cotorsion(&inj).unwrap();
            assert_eq!(q.dim(), 0, "{id}");
            assert!(q.agrees());
            let l = Module::regular(&c.ring, Side::Left);
            let q = c.cotorsion(&l).unwrap();
            assert!(q.agrees(), "{id}");
            if c.self_injective() {
                assert_eq!(q.dim(), 0);
            }
        }
        let c = ctx("kA2");
        let q = c.cotorsion(&Module::regular(&c.ring, Side::Left)).unwrap();
        assert_eq!(q.trace.module.dim(), 2);
    }

    #[test]
    fn chains_over_local_algebra() {
        let c = ctx("kxy");
        // A = Λ / xΛ, a right module of dimension 2.
        let l = Module::regular(&c.ring, Side::Right);
        let x = l.act(&c.ring.algebra().basis_vector(1));
        let xa = l.generated_submodule(&x.mul(&Matrix::identity(l.domain(), 3)));
        let a = l.quotient(&xa).unwrap().module;
        assert_eq!(a.dim(), 2);
        let (rep, _) = s_chain(&a, &c.left, 5).unwrap();
        assert_eq!(rep.dims, vec![2, 1, 0]);
        assert_eq!(rep.length(), Some(2));
        let (qrep, _) = q_chain(&a.k_dual(), &c.left, 5).unwrap();
        assert!(qrep.dims[2] < qrep.dims[1]);
    }

    #[test]
    fn classification_of_zero_and_injective() {
        let c = ctx("kA3");
        let z = Module::zero(&c.ring, Side::Left);
        let f = classify(&z, &c).unwrap();
        assert!(f.is_torsion && f.is_torsion_free && f.is_cotorsion && f.is_cotorsion_free);
        let inj = Module::cogenerator(&c.ring, Side::Left);
        assert!(classify(&inj, &c).unwrap().is_cotorsion_free);
    }
}
