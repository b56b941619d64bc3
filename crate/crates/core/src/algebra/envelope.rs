//! Socles, tops, projective covers, syzygies and injective envelopes.

use std::sync::Arc;

use super::module::{Module, ModuleMap, QuotientModule, Submodule};
use super::ring::Ring;
use super::Side;
use crate::error::Result;
use crate::linalg::{Matrix, Scalar, Subspace};

/// Images of the radical basis elements, stacked: `soc M` is its kernel.
fn radical_action(m: &Module) -> Result<Vec<Matrix>> {
    let rad = m.ring().radical()?;
    Ok(rad.basis().columns().iter().map(|j| m.act(j)).collect())
}

/// `soc M = { m : J m = 0 }`.
pub fn socle(m: &Module) -> Result<Submodule> {
    let acts = radical_action(m)?;
    let sub = if acts.is_empty() {
        Subspace::full(m.domain(), m.dim())
    } else {
        Subspace::span(&Matrix::vstack_all(m.domain(), m.dim(), &acts).kernel())
    };
    Ok(m.submodule_unchecked(sub))
}

/// The subspace `J M`.
pub fn radical_subspace(m: &Module) -> Result<Subspace> {
    let acts = radical_action(m)?;
    if acts.is_empty() {
        return Ok(Subspace::zero(m.domain(), m.dim()));
    }
    Ok(Subspace::span(&Matrix::hstack_all(m.domain(), m.dim(), &acts)))
}

pub fn radical_submodule(m: &Module) -> Result<Submodule> {
    Ok(m.submodule_unchecked(radical_subspace(m)?))
}

/// `M / J M`.
pub fn top(m: &Module) -> Result<QuotientModule> {
    Ok(m.quotient_unchecked(radical_subspace(m)?))
}

/// Dimensions of `M ⊇ J M ⊇ J² M ⊇ … ⊇ 0`.
pub fn radical_series(m: &Module) -> Result<Vec<usize>> {
    let mut dims = vec![m.dim()];
    let mut cur = m.clone();
    while !cur.is_zero() {
        let r = radical_submodule(&cur)?;
        if r.module.dim() == cur.dim() {
            break;
        }
        dims.push(r.module.dim());
        cur = r.module;
    }
    Ok(dims)
}

/// Loewy length of a module.
pub fn loewy_length(m: &Module) -> Result<usize> {
    Ok(radical_series(m)?.len() - 1)
}

fn idempotent_parts(m: &Module, sub: &Subspace) -> Result<Vec<Subspace>> {
    let basic = m.ring().basic()?;
    Ok(basic.idempotents.iter().map(|e| sub.image_under(&m.act(e))).collect())
}

/// `dim e_t soc M` for each simple `S_t`.
pub fn socle_multiplicities(m: &Module) -> Result<Vec<usize>> {
    let soc = socle(m)?;
    Ok(idempotent_parts(m, &soc.subspace)?.iter().map(Subspace::dim).collect())
}

/// `dim e_t (M / J M)` for each simple `S_t`.
pub fn top_multiplicities(m: &Module) -> Result<Vec<usize>> {
    let t = top(m)?;
    let full = Subspace::full(m.domain(), t.module.dim());
    idempotent_parts(&t.module, &full).map(|v| v.iter().map(Subspace::dim).collect())
}

/// A direct sum of indecomposable projectives `⊕ A e_{t_k}`.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub module: Module,
    pub summands: Vec<usize>,
    offsets: Vec<usize>,
    bases: Vec<Subspace>,
}

impl ProjectiveSum {
    pub fn new(ring: &Arc<Ring>, side: Side, summands: &[usize]) -> Result<ProjectiveSum> {
        let sm = ring.side_modules(side)?;
        let parts: Vec<Module> =
            summands.iter().map(|&t| Module::projective(ring, side, t)).collect::<Result<_>>()?;
        let module = if parts.is_empty() { Module::zero(ring, side) } else { Module::direct_sum(&parts)?.module };
        let mut offsets = Vec::new();
        let mut off = 0;
        for p in &parts {
            offsets.push(off);
            off += p.dim();
        }
        let bases = summands.iter().map(|&t| sm.projective[t].0.clone()).collect();
        Ok(ProjectiveSum { module, summands: summands.to_vec(), offsets, bases })
    }

    /// The element `e_t` of the `k`-th summand, as a vector of the sum.
    pub fn generator(&self, k: usize) -> Vec<Scalar> {
        let d = self.module.domain();
        let t = self.summands[k];
        let e = &self.module.ring().basic().expect("structure computed").idempotents[t];
        let coords = self.bases[k].coordinates(e).expect("e_t lies in A e_t");
        let mut v = vec![d.zero(); self.module.dim()];
        for (i, c) in coords.into_iter().enumerate() {
            v[self.offsets[k] + i] = c;
        }
        v
    }

    /// The unique map sending the `k`-th generator to `images[k]`, where
    /// `images[k]` must lie in `e_{t_k} N`.
    pub fn map_from_generators(&self, target: &Module, images: &[Vec<Scalar>]) -> Result<ModuleMap> {
        let d = target.domain();
        let mut mat = Matrix::zeros(d, target.dim(), self.module.dim());
        for (k, y) in images.iter().enumerate() {
            for (s, u) in self.bases[k].basis().columns().iter().enumerate() {
                let col = target.act(u).mul_vec(y);
                for (r, v) in col.into_iter().enumerate() {
                    mat[(r, self.offsets[k] + s)] = v;
                }
            }
        }
        ModuleMap::new(self.module.clone(), target.clone(), mat)
    }

    /// Lifts `f : P → Z` through a surjection `p : Y → Z`.
    pub fn lift(&self, f: &ModuleMap, p: &ModuleMap) -> Result<ModuleMap> {
        let y = p.source();
        let basic = y.ring().basic()?;
        let mut images = Vec::with_capacity(self.summands.len());
        for k in 0..self.summands.len() {
            let z = f.matrix().mul_vec(&self.generator(k));
            let pre = p.matrix().solve(&z).ok_or_else(|| {
                crate::error::Error::HypothesisNotMet("lifting requires a surjection".into())
            })?;
            images.push(y.act(&basic.idempotents[self.summands[k]]).mul_vec(&pre));
        }
        self.map_from_generators(y, &images)
    }
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub sum: ProjectiveSum,
    pub map: ModuleMap,
}

/// Projective cover built from a basis of `e_t (M / J M)`, lifted to `e_t M`.
pub fn projective_cover(m: &Module) -> Result<ProjectiveCover> {
    let basic = m.ring().basic()?;
    let rad = radical_subspace(m)?;
    let mut spanned = rad.clone();
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for (t, e) in basic.idempotents.iter().enumerate() {
        let part = Subspace::span(&m.act(e));
        for v in part.basis().columns() {
            if !spanned.contains_vector(&v) {
                spanned = spanned.sum(&Subspace::span(&Matrix::column_vector(&v, m.domain())));
                summands.push(t);
                images.push(v);
            }
        }
    }
    let sum = ProjectiveSum::new(m.ring(), m.side(), &summands)?;
    let map = sum.map_from_generators(m, &images)?;
    debug_assert!(map.is_surjective());
    Ok(ProjectiveCover { sum, map })
}

pub fn is_projective(m: &Module) -> Result<bool> {
    Ok(projective_cover(m)?.sum.module.dim() == m.dim())
}

/// `0 → Ω M → P₀ → M → 0`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub cover: ProjectiveCover,
    pub omega: Submodule,
}

pub fn syzygy(m: &Module) -> Result<Syzygy> {
    let cover = projective_cover(m)?;
    let omega = cover.map.kernel();
    Ok(Syzygy { cover, omega })
}

/// `P₁ → P₀ → M → 0` with `P₁` the projective cover of `Ω M`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjectiveCover,
    pub p1: ProjectiveSum,
    pub d1: ModuleMap,
}

pub fn projective_presentation(m: &Module) -> Result<Presentation> {
    let syz = syzygy(m)?;
    let c1 = projective_cover(&syz.omega.module)?;
    let d1 = syz.omega.inclusion.compose(&c1.map);
    Ok(Presentation { p0: syz.cover, p1: c1.sum, d1 })
}

impl Presentation {
    /// `im d₁ = ker ε` and `ε` surjective.
    pub fn is_exact(&self) -> bool {
        let eps = &self.p0.map;
        eps.is_surjective()
            && eps.matrix().mul(self.d1.matrix()).is_zero()
            && self.d1.rank() + eps.rank() == self.p0.sum.module.dim()
    }
}

/// Injective envelope `ι : M → E(M)`, `E(M) = ⊕ I_t^{dim e_t soc M}`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub map: ModuleMap,
    pub summands: Vec<usize>,
}

impl Envelope {
    pub fn module(&self) -> &Module {
        self.map.target()
    }
}

pub fn injective_envelope(m: &Module) -> Result<Envelope> {
    let ring = m.ring();
    let basic = ring.basic()?;
    let sm = ring.side_modules(m.side())?;
    let d = m.domain();
    let soc = socle(m)?;
    let mut summands = Vec::new();
    let mut parts = Vec::new();
    let mut blocks = Vec::new();
    for (t, e) in basic.idempotents.iter().enumerate() {
        let part = soc.subspace.image_under(&m.act(e));
        if part.is_zero() {
            continue;
        }
        let b = part.basis();
        let functionals = b.transpose().solve_matrix(&Matrix::identity(d, part.dim())).expect("basis is independent");
        let u = sm.injective[t].0.basis().columns();
        for a in 0..part.dim() {
            let g = functionals.column(a);
            let rows: Vec<Vec<Scalar>> = u.iter().map(|us| m.act(us).transpose().mul_vec(&g)).collect();
            blocks.push(Matrix::from_rows(d, m.dim(), rows));
            parts.push(Module::injective(ring, m.side(), t)?);
            summands.push(t);
        }
    }
    let (target, mat) = if parts.is_empty() {
        (Module::zero(ring, m.side()), Matrix::zeros(d, 0, m.dim()))
    } else {
        (Module::direct_sum(&parts)?.module, Matrix::vstack_all(d, m.dim(), &blocks))
    };
    let map = ModuleMap::new(m.clone(), target, mat)?;
    assert!(map.is_injective(), "envelope map is injective on the socle");
    Ok(Envelope { map, summands })
}

pub fn is_injective(m: &Module) -> Result<bool> {
    let ring = m.ring();
    let sm = ring.side_modules(m.side())?;
    let mult = socle_multiplicities(m)?;
    let env_dim: usize = mult.iter().zip(&sm.injective).map(|(k, (s, _))| k * s.dim()).sum();
    Ok(env_dim == m.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, hom};

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn envelope_of_path_algebra() {
        let r = ring("kA2");
        let l = Module::regular(&r, Side::Left);
        let env = injective_envelope(&l).unwrap();
        assert_eq!(env.module().dim(), 4);
        assert_eq!(env.map.cokernel().module.dim(), 1);
        assert!(is_injective(env.module()).unwrap());
        assert!(!is_injective(&l).unwrap());
    }

    #[test]
    fn envelope_of_self_injective_is_iso() {
        for id in ["kx2", "kx3", "f2c2"] {
            let r = ring(id);
            let l = Module::regular(&r, Side::Left);
            let env = injective_envelope(&l).unwrap();
            assert!(env.map.is_isomorphism(), "{id}");
        }
    }

    #[test]
    fn envelope_of_injective_cogenerator_is_iso() {
        for id in catalog::ALGEBRA_IDS {
            let r = ring(id);
            for side in [Side::Left, Side::Right] {
                let i = Module::cogenerator(&r, side);
                assert!(injective_envelope(&i).unwrap().map.is_isomorphism(), "{id}");
            }
        }
    }

    #[test]
    fn presentation_of_simple_over_dual_numbers() {
        let r = ring("kx2");
        let s = Module::simple(&r, Side::Left, 0).unwrap();
        let p = projective_presentation(&s).unwrap();
        assert_eq!(p.p0.sum.module.dim(), 2);
        assert_eq!(p.p1.module.dim(), 2);
        assert!(p.is_exact());
    }

    #[test]
    fn projective_has_zero_syzygy() {
        let r = ring("kA3");
        let l = Module::regular(&r, Side::Right);
        assert!(syzygy(&l).unwrap().omega.module.is_zero());
        assert!(is_projective(&l).unwrap());
    }

    #[test]
    fn socle_and_loewy_length_of_local_algebra() {
        let r = ring("kxy");
        let l = Module::regular(&r, Side::Left);
        assert_eq!(socle(&l).unwrap().module.dim(), 2);
        assert_eq!(loewy_length(&l).unwrap(), 2);
        let env = injective_envelope(&l).unwrap();
        assert_eq!(env.module().dim(), 6);
        // Injectivity spot check: Hom(S, E) and Hom(E(S), E) agree with the socle count.
        let s = Module::simple(&r, Side::Left, 0).unwrap();
        assert_eq!(hom(&s, env.module()).unwrap().dim(), 2);
    }
}
