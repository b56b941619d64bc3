//! Finitely presented functors given by a single arrow `g : X → Y`, their
//! evaluation, four-term resolutions and the transforms `D_A`, `D_R`, `D_L`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::envelope::{injective_envelope, is_injective};
use crate::algebra::hom::{postcompose, precompose};
use crate::algebra::iso::{is_isomorphic, IsoOutcome};
use crate::algebra::tensor::{tensor_with_map, TensorSpace};
use crate::algebra::{hom, HomSpace, Module, ModuleMap, Ring, Side};
use crate::error::{Error, Result};
use crate::io::{map_file, map_from_file, MapFile};
use crate::linalg::{Matrix, Quotient, Subspace};
use crate::stab::{is_exact_sequence, Cosyzygy, StabContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    /// `F(M) = coker((Y, M) → (X, M))`.
    #[serde(rename = "homCoker")]
    HomCoker,
    /// `F(M) = ker(M ⊗ X → M ⊗ Y)`.
    #[serde(rename = "tensorKer")]
    TensorKer,
}

#[derive(Clone, Debug)]
pub struct FunctorPresentation {
    pub form: Form,
    pub arrow: ModuleMap,
    /// Side of the argument module.
    pub side: Side,
    pub name: Option<String>,
}

impl FunctorPresentation {
    pub fn hom_coker(g: &ModuleMap) -> Self {
        FunctorPresentation { form: Form::HomCoker, arrow: g.clone(), side: g.source().side(), name: None }
    }

    pub fn tensor_ker(g: &ModuleMap) -> Self {
        FunctorPresentation { form: Form::TensorKer, arrow: g.clone(), side: g.source().side().flip(), name: None }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// `(X, −)`, presented by `X → 0`.
    pub fn representable(x: &Module) -> Self {
        Self::hom_coker(&ModuleMap::zero(x, &Module::zero(x.ring(), x.side())))
    }

    /// `− ⊗ X`, presented by `X → 0`.
    pub fn tensor_with(x: &Module) -> Self {
        Self::tensor_ker(&ModuleMap::zero(x, &Module::zero(x.ring(), x.side())))
    }

    /// `𝔮 = coker((I, −) → (Λ, −))`.
    pub fn cotorsion(cz: &Cosyzygy) -> Self {
        Self::hom_coker(&cz.iota).named("q")
    }

    /// `𝔰 = ker(− ⊗ Λ → − ⊗ I)`.
    pub fn torsion(cz: &Cosyzygy) -> Self {
        Self::tensor_ker(&cz.iota).named("s")
    }

    /// `Hom-bar(B, −) = coker((E(B), −) → (B, −))`.
    pub fn hom_bar(b: &Module) -> Result<Self> {
        Ok(Self::hom_coker(&injective_envelope(b)?.map))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.arrow.source().ring()
    }

    /// Same form, side and arrow.
    pub fn same_presentation(&self, other: &FunctorPresentation) -> bool {
        let same_module = |a: &Module, b: &Module| a.side() == b.side() && a.dim() == b.dim() && a.actions() == b.actions();
        self.form == other.form
            && self.side == other.side
            && same_module(self.arrow.source(), other.arrow.source())
            && same_module(self.arrow.target(), other.arrow.target())
            && self.arrow.matrix() == other.arrow.matrix()
    }
}

/// The value of a functor at a module together with the defining data.
#[derive(Clone, Debug)]
pub enum Evaluation {
    Coker { hom_x: HomSpace, hom_y: HomSpace, map: Matrix, quotient: Quotient },
    Ker { src: TensorSpace, dst: TensorSpace, map: Matrix, kernel: Subspace },
}

impl Evaluation {
    pub fn dim(&self) -> usize {
        match self {
            Evaluation::Coker { quotient, .. } => quotient.dim(),
            Evaluation::Ker { kernel, .. } => kernel.dim(),
        }
    }

    /// Exactness of the defining sequence at the evaluated spot.
    pub fn is_exact(&self) -> bool {
        match self {
            Evaluation::Coker { hom_x, map, quotient, .. } => {
                quotient.relations() == &Subspace::span(map) && quotient.ambient() == hom_x.dim()
            }
            Evaluation::Ker { map, kernel, .. } => map.mul(&kernel.basis()).is_zero() && kernel.dim() + map.rank() == map.cols(),
        }
    }
}

pub fn evaluate(f: &FunctorPresentation, m: &Module) -> Result<Evaluation> {
    m.expect_side(f.side)?;
    let g = &f.arrow;
    match f.form {
        Form::HomCoker => {
            let hom_x = hom(g.source(), m)?;
            let hom_y = hom(g.target(), m)?;
            let map = precompose(g, &hom_y, &hom_x);
            let quotient = Quotient::of_relations(&map);
            Ok(Evaluation::Coker { hom_x, hom_y, map, quotient })
        }
        Form::TensorKer => {
            let (src, dst, map) = tensor_with_map(m, g)?;
            let kernel = Subspace::span(&map.kernel());
            Ok(Evaluation::Ker { src, dst, map, kernel })
        }
    }
}

/// `F(h) : F(M) → F(N)` for `h : M → N`, given both evaluations.
pub fn evaluate_map(f: &FunctorPresentation, h: &ModuleMap, at_m: &Evaluation, at_n: &Evaluation) -> Result<Matrix> {
    match (at_m, at_n) {
        (Evaluation::Coker { hom_x: hm, quotient: qm, .. }, Evaluation::Coker { hom_x: hn, quotient: qn, .. }) => {
            Ok(qm.induced(&postcompose(h, hm, hn), qn))
        }
        (Evaluation::Ker { kernel: km, .. }, Evaluation::Ker { kernel: kn, .. }) => {
            let x = f.arrow.source();
            let (_, _, mat) = tensor_with_map(x, h)?;
            kn.coordinates_matrix(&mat.mul(&km.basis()))
                .ok_or_else(|| Error::HypothesisNotMet("induced map leaves the kernel".into()))
        }
        _ => Err(Error::HypothesisNotMet("evaluations of different forms".into())),
    }
}

/// `0 → (Z, M) → (Y, M) → (X, M) → F(M) → 0` with `Z = coker g`.
#[derive(Clone, Debug, Serialize)]
pub struct FourTerm {
    pub dims: Vec<usize>,
    pub exact: bool,
}

pub fn four_term_resolution(f: &FunctorPresentation, m: &Module) -> Result<FourTerm> {
    if f.form != Form::HomCoker {
        return Err(Error::HypothesisNotMet("four-term resolutions need a hom-cokernel presentation".into()));
    }
    let g = &f.arrow;
    let z = g.cokernel();
    let hz = hom(&z.module, m)?;
    let ev = evaluate(f, m)?;
    let Evaluation::Coker { hom_x, hom_y, map, quotient } = &ev else { unreachable!() };
    let first = precompose(&z.projection, &hz, hom_y);
    let dims = vec![hz.dim(), hom_y.dim(), hom_x.dim(), quotient.dim()];
    let maps = vec![first, map.clone(), quotient.projection()];
    Ok(FourTerm { exact: is_exact_sequence(&dims, &maps, true, true), dims })
}

/// `D_A`: `coker((Y,−) → (X,−)) ↦ ker(− ⊗ X → − ⊗ Y)` on the opposite side.
pub fn apply_da(f: &FunctorPresentation) -> Result<FunctorPresentation> {
    if f.form != Form::HomCoker {
        return Err(Error::HypothesisNotMet("D_A takes a hom-cokernel presentation".into()));
    }
    let mut out = FunctorPresentation::tensor_ker(&f.arrow);
    out.name = f.name.as_ref().map(|n| format!("D_A({n})"));
    Ok(out)
}

/// `D_R`: `ker(− ⊗ X → − ⊗ Y) ↦ coker((Y,−) → (X,−))`.
pub fn apply_dr(f: &FunctorPresentation) -> Result<FunctorPresentation> {
    if f.form != Form::TensorKer {
        return Err(Error::HypothesisNotMet("D_R takes a tensor-kernel presentation".into()));
    }
    let mut out = FunctorPresentation::hom_coker(&f.arrow);
    out.name = f.name.as_ref().map(|n| format!("D_R({n})"));
    Ok(out)
}

/// `D_L` on `ker(− ⊗ M → − ⊗ I)` for a monomorphism `M → I` into an injective:
/// the presentation `(I, −) → (M, −) → D_L F → 0`.
pub fn apply_dl(f: &FunctorPresentation) -> Result<FunctorPresentation> {
    if f.form != Form::TensorKer {
        return Err(Error::HypothesisNotMet("D_L takes a tensor-kernel presentation".into()));
    }
    if !f.arrow.is_injective() || !is_injective(f.arrow.target())? {
        return Err(Error::HypothesisNotMet("D_L needs a monomorphism into an injective".into()));
    }
    let mut out = FunctorPresentation::hom_coker(&f.arrow);
    out.name = f.name.as_ref().map(|n| format!("D_L({n})"));
    Ok(out)
}

/// Maps `M → C` factoring through an injective, as the span of composites
/// through the cogenerator.
pub fn through_injectives(m: &Module, c: &Module, hom_mc: &HomSpace) -> Result<Subspace> {
    let cog = Module::cogenerator(m.ring(), m.side());
    let into = hom(m, &cog)?.basis_matrices();
    let out = hom(&cog, c)?.basis_matrices();
    let mut vecs = Vec::new();
    for psi in &out {
        for phi in &into {
            vecs.push(hom_mc.coordinates(&psi.mul(phi)).expect("a composite of module maps"));
        }
    }
    Ok(Subspace::span_vectors(m.domain(), hom_mc.dim(), &vecs))
}

/// `D_L F` evaluated at `C` against `Hom-bar(M, C)` computed through the
/// cogenerator: the relation subspaces must coincide.
pub fn dl_matches_hom_bar(f: &FunctorPresentation, c: &Module) -> Result<bool> {
    let dl = apply_dl(f)?;
    let ev = evaluate(&dl, c)?;
    let Evaluation::Coker { hom_x, quotient, .. } = &ev else { unreachable!() };
    let bar = through_injectives(dl.arrow.source(), c, hom_x)?;
    Ok(&bar == quotient.relations())
}

/// Certified comparison of `𝔮(D_k A)` with `D_k(𝔰 A)` through the restriction map.
#[derive(Clone, Debug)]
pub struct Exchange {
    pub torsion: crate::stab::Torsion,
    pub cotorsion: crate::stab::Cotorsion,
    /// `θ : 𝔮(D A) → D(𝔰 A)`.
    pub theta: ModuleMap,
    /// `Tr(𝓘, D A) = 𝔰(A)^⊥`.
    pub perp_matches: bool,
    pub certified: IsoOutcome,
}

impl Exchange {
    pub fn passed(&self) -> bool {
        self.perp_matches && self.theta.is_isomorphism() && self.certified.is_yes()
    }
}

pub fn k_dual_exchange_check(a: &Module, ctx: &StabContext) -> Result<Exchange> {
    let s = ctx.torsion(a)?;
    let da = a.k_dual();
    let q = ctx.cotorsion(&da)?;
    let restriction = s.submodule.inclusion.k_dual();
    let perp = Subspace::span(&restriction.matrix().kernel());
    let perp_matches = perp == q.trace.subspace;
    let theta = ModuleMap::new(
        q.quotient.module.clone(),
        restriction.target().clone(),
        restriction.matrix().mul(&q.quotient.quotient.section()),
    )?;
    let certified = is_isomorphic(&q.quotient.module, restriction.target())?;
    if matches!(certified, IsoOutcome::Inconclusive) {
        return Err(Error::IsomorphismInconclusive);
    }
    Ok(Exchange { torsion: s, cotorsion: q, theta, perp_matches, certified })
}

/// `θ_A ∘ 𝔮(D f) = D(𝔰 f) ∘ θ_B` for `f : A → B`.
pub fn exchange_square_commutes(f: &ModuleMap, at_a: &Exchange, at_b: &Exchange) -> bool {
    let df = f.k_dual();
    let Some(q_df) = df.induce(&at_b.cotorsion.quotient, &at_a.cotorsion.quotient) else { return false };
    let Some(s_f) = f.restrict(&at_a.torsion.submodule, &at_b.torsion.submodule) else { return false };
    let ds_f = s_f.k_dual();
    at_a.theta.matrix().mul(q_df.matrix()) == ds_f.matrix().mul(at_b.theta.matrix())
}

/// File form: `{"form", "arrow", "side"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorFile {
    pub form: Form,
    pub arrow: MapFile,
    pub side: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn functor_from_file(f: &FunctorFile, ring: Option<&Arc<Ring>>, base: Option<&Path>) -> Result<FunctorPresentation> {
    let arrow = map_from_file(&f.arrow, ring, base)?;
    let p = match f.form {
        Form::HomCoker => FunctorPresentation::hom_coker(&arrow),
        Form::TensorKer => FunctorPresentation::tensor_ker(&arrow),
    };
    if p.side != f.side {
        return Err(Error::SideMismatch { expected: p.side, found: f.side });
    }
    Ok(FunctorPresentation { name: f.name.clone(), ..p })
}

pub fn functor_file(f: &FunctorPresentation) -> FunctorFile {
    FunctorFile { form: f.form, arrow: map_file(&f.arrow), side: f.side, name: f.name.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::algebra::tensor::unit_isomorphism;
    use crate::stab::one_torsion_t;

    fn ctx(id: &str) -> StabContext {
        StabContext::new(&catalog::ring(id).unwrap()).unwrap()
    }

    fn small_battery(r: &Arc<Ring>, side: Side) -> Vec<Module> {
        let mut out = Vec::new();
        for t in 0..r.num_simples().unwrap() {
            out.push(Module::simple(r, side, t).unwrap());
            out.push(Module::projective(r, side, t).unwrap());
            out.push(Module::injective(r, side, t).unwrap());
        }
        out
    }

    #[test]
    fn representable_evaluates_to_hom() {
        let c = ctx("kA2");
        let x = Module::cogenerator(&c.ring, Side::Left);
        let f = FunctorPresentation::representable(&x);
        for m in small_battery(&c.ring, Side::Left) {
            let ev = evaluate(&f, &m).unwrap();
            assert_eq!(ev.dim(), hom(&x, &m).unwrap().dim());
            assert!(ev.is_exact());
            let four = four_term_resolution(&f, &m).unwrap();
            assert!(four.exact);
        }
    }

    #[test]
    fn cotorsion_presentation_has_cosyzygy_as_third_term() {
        let c = ctx("kA2");
        let q = FunctorPresentation::cotorsion(&c.left);
        let z = q.arrow.cokernel().module;
        assert_eq!(z.dim(), c.left.sigma_lambda().dim());
        for m in small_battery(&c.ring, Side::Left) {
            assert_eq!(evaluate(&q, &m).unwrap().dim(), c.cotorsion(&m).unwrap().dim());
            assert!(four_term_resolution(&q, &m).unwrap().exact);
        }
    }

    #[test]
    fn agj_round_trip_and_semantics() {
        for id in catalog::ALGEBRA_IDS {
            let c = ctx(id);
            let q = FunctorPresentation::cotorsion(&c.left);
            let s = apply_da(&q).unwrap();
            assert!(s.same_presentation(&FunctorPresentation::torsion(&c.left)));
            assert!(apply_dr(&s).unwrap().same_presentation(&q));
            for a in small_battery(&c.ring, Side::Right) {
                let ev = evaluate(&s, &a).unwrap();
                let Evaluation::Ker { src, kernel, .. } = &ev else { panic!() };
                let in_a = Subspace::span(&unit_isomorphism(&a, src).mul(&kernel.basis()));
                assert_eq!(in_a, one_torsion_t(&a).unwrap().subspace, "{id}");
            }
        }
    }

    #[test]
    fn transforms_reject_wrong_forms() {
        let c = ctx("kx2");
        let q = FunctorPresentation::cotorsion(&c.left);
        assert!(apply_dr(&q).is_err());
        assert!(apply_da(&apply_da(&q).unwrap()).is_err());
        let not_injective = FunctorPresentation::tensor_ker(&ModuleMap::zero(
            &Module::simple(&c.ring, Side::Left, 0).unwrap(),
            &Module::zero(&c.ring, Side::Left),
        ));
        assert!(apply_dl(&not_injective).is_err());
    }

    #[test]
    fn dl_of_torsion_is_cotorsion() {
        for id in ["kA2", "kxy", "kA3"] {
            let c = ctx(id);
            let s = FunctorPresentation::torsion(&c.left);
            let dl = apply_dl(&s).unwrap();
            assert!(dl.same_presentation(&FunctorPresentation::cotorsion(&c.left)));
            for m in small_battery(&c.ring, Side::Left) {
                assert!(dl_matches_hom_bar(&s, &m).unwrap(), "{id}");
            }
        }
    }

    #[test]
    fn hom_bar_vanishes_on_injectives() {
        let c = ctx("kA3");
        for b in small_battery(&c.ring, Side::Left) {
            let f = FunctorPresentation::hom_bar(&b).unwrap();
            for t in 0..3 {
                let inj = Module::injective(&c.ring, Side::Left, t).unwrap();
                assert_eq!(evaluate(&f, &inj).unwrap().dim(), 0);
            }
        }
    }

    #[test]
    fn exchange_over_local_algebra() {
        let c = ctx("kxy");
        let mods = small_battery(&c.ring, Side::Right);
        let ex: Vec<Exchange> = mods.iter().map(|a| k_dual_exchange_check(a, &c).unwrap()).collect();
        for e in &ex {
            assert!(e.passed());
        }
        for (i, a) in mods.iter().enumerate() {
            for (j, b) in mods.iter().enumerate() {
                for f in hom(a, b).unwrap().basis() {
                    assert!(exchange_square_commutes(&f, &ex[i], &ex[j]));
                }
            }
        }
    }

    #[test]
    fn functor_file_round_trip() {
        let c = ctx("kA2");
        let q = FunctorPresentation::cotorsion(&c.left);
        let json = serde_json::to_string(&functor_file(&q)).unwrap();
        assert!(json.contains("\"homCoker\""));
        let back = functor_from_file(&serde_json::from_str(&json).unwrap(), None, None).unwrap();
        assert!(back.same_presentation(&q));
    }
}
