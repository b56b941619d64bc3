//! Seeded instance generation and the named-invariant suite.
//!
//! Every check is split into independent cases (a few modules, maps or an
//! integer presentation). A failing case is serialized as a
//! [`Counterexample`] that [`reverify`] can re-run on its own.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::envelope::{is_injective, is_projective, loewy_length, syzygy, ProjectiveSum};
use crate::algebra::hom::postcompose;
use crate::algebra::homological::{ext1, mu_map};
use crate::algebra::tensor::unit_isomorphism;
use crate::algebra::{catalog, hom, Module, ModuleMap, Ring, Side};
use crate::error::{Error, Result};
use crate::functor::{
    apply_da, apply_dr, dl_matches_hom_bar, evaluate, exchange_square_commutes, four_term_resolution, k_dual_exchange_check,
    Evaluation, FunctorPresentation,
};
use crate::io::{map_file, map_from_file, module_file, module_from_file, relations_from_file, z_file, MapFile, ModuleFile, ZFile};
use crate::linalg::{Domain, IntMatrix, Matrix, Subspace};
use crate::random::random_combination;
use crate::stab::{
    cosyzygy, cosyzygy_with_container, ext_connecting_iso, one_torsion_t, pushout_sequence, q_chain, q_six_term, reject,
    s_chain, s_six_term, torsion_free_quotient, torsion_s, tor_connecting_iso, trace_of_injectives,
    trace_representability, ShortExact, StabContext,
};
use crate::zgroup::{character_module, classical_torsion, snf_decompose, z_one_torsion, ZPresentation};

pub const DEFAULT_DIM_BOUND: usize = 6;
/// Random modules per side in the default suite.
pub const DEFAULT_COUNT: usize = 50;
/// Seeded random modules per side added to the fixed battery.
pub const BATTERY_RANDOM: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub algebra_id: String,
    pub module_seed: u64,
    pub module_dim_bound: usize,
    /// `None` keeps the catalog field (ℚ, or 𝔽₂ for `f2c2`).
    pub field: Option<Domain>,
    /// Random modules per side; `Z` gets twice as many presentations.
    pub count: usize,
}

impl InstanceSpec {
    pub fn new(algebra_id: &str, seed: u64) -> Self {
        InstanceSpec {
            algebra_id: algebra_id.to_string(),
            module_seed: seed,
            module_dim_bound: DEFAULT_DIM_BOUND,
            field: None,
            count: DEFAULT_COUNT,
        }
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_dim_bound(mut self, bound: usize) -> Self {
        self.module_dim_bound = bound;
        self
    }

    /// One spec per catalog entry.
    pub fn catalog(seed: u64) -> Vec<InstanceSpec> {
        catalog::CATALOG_IDS.iter().map(|id| InstanceSpec::new(id, seed)).collect()
    }

    fn rng(&self, salt: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix(self.module_seed, &format!("{}/{salt}", self.algebra_id)))
    }
}

fn mix(seed: u64, salt: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Modules and maps over a catalog algebra.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra_id: String,
    pub ring: Arc<Ring>,
    pub modules: Vec<Module>,
    pub maps: Vec<ModuleMap>,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Modules(Instance),
    Integers(Vec<ZPresentation>),
}

pub fn ring_for(spec: &InstanceSpec) -> Result<Arc<Ring>> {
    match spec.field {
        Some(d) => catalog::ring_over(&spec.algebra_id, d),
        None => catalog::ring(&spec.algebra_id),
    }
}

/// A cokernel of a random map between sums of indecomposable projectives,
/// the projective on top having dimension at most `bound`.
pub fn random_module<R: Rng>(ring: &Arc<Ring>, side: Side, bound: usize, rng: &mut R) -> Result<Module> {
    let n = ring.num_simples()?;
    let dims = (0..n).map(|t| Module::projective(ring, side, t).map(|p| p.dim())).collect::<Result<Vec<_>>>()?;
    let target = rng.gen_range(1..=bound.max(1)).min(bound);
    let (mut top, mut total) = (Vec::new(), 0);
    loop {
        let fits: Vec<usize> = (0..n).filter(|&t| total + dims[t] <= target).collect();
        if fits.is_empty() {
            break;
        }
        let t = fits[rng.gen_range(0..fits.len())];
        top.push(t);
        total += dims[t];
        if rng.gen_bool(0.35) {
            break;
        }
    }
    if top.is_empty() {
        return Ok(Module::zero(ring, side));
    }
    let p0 = ProjectiveSum::new(ring, side, &top)?;
    let rels: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect();
    if rels.is_empty() {
        return Ok(p0.module);
    }
    let p1 = ProjectiveSum::new(ring, side, &rels)?;
    let g = random_combination(&hom(&p1.module, &p0.module)?, rng);
    Ok(g.cokernel().module)
}

/// Either a random cokernel or the k-dual of one from the other side.
fn random_any<R: Rng>(ring: &Arc<Ring>, side: Side, bound: usize, rng: &mut R) -> Result<Module> {
    if rng.gen_bool(1.0 / 3.0) {
        Ok(random_module(ring, side.flip(), bound, rng)?.k_dual())
    } else {
        random_module(ring, side, bound, rng)
    }
}

pub fn random_presentation<R: Rng>(bound: usize, rng: &mut R) -> ZPresentation {
    let r = rng.gen_range(1..=bound);
    let c = rng.gen_range(1..=bound);
    let mut m = IntMatrix::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            if rng.gen_bool(0.6) {
                m.set(i, j, rng.gen_range(-20i64..=20).into());
            }
        }
    }
    ZPresentation::new(m)
}

fn random_map<R: Rng>(pool: &[Module], rng: &mut R) -> Result<Option<ModuleMap>> {
    for _ in 0..8 {
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let h = hom(a, b)?;
        if h.dim() > 0 {
            return Ok(Some(random_combination(&h, rng)));
        }
    }
    Ok(None)
}

/// `count` random modules per side and `count` random maps between them.
pub fn generate_instance(spec: &InstanceSpec) -> Result<Generated> {
    let mut rng = spec.rng("instance");
    if spec.algebra_id == "Z" {
        let ps = (0..2 * spec.count).map(|_| random_presentation(spec.module_dim_bound, &mut rng)).collect();
        return Ok(Generated::Integers(ps));
    }
    let ring = ring_for(spec)?;
    let mut modules = Vec::new();
    for side in [Side::Right, Side::Left] {
        for _ in 0..spec.count {
            modules.push(random_any(&ring, side, spec.module_dim_bound, &mut rng)?);
        }
    }
    let mut maps = Vec::new();
    for side in [Side::Right, Side::Left] {
        let pool: Vec<Module> = modules.iter().filter(|m| m.side() == side && !m.is_zero()).cloned().collect();
        if pool.is_empty() {
            continue;
        }
        for _ in 0..spec.count / 2 {
            if let Some(f) = random_map(&pool, &mut rng)? {
                maps.push(f);
            }
        }
    }
    Ok(Generated::Modules(Instance { algebra_id: spec.algebra_id.clone(), ring, modules, maps }))
}

/// Indecomposable projectives, injectives and simples on both sides.
pub fn fixed_battery(ring: &Arc<Ring>) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        for t in 0..ring.num_simples()? {
            out.push(Module::simple(ring, side, t)?);
            out.push(Module::projective(ring, side, t)?);
            out.push(Module::injective(ring, side, t)?);
        }
    }
    Ok(out)
}

/// The fixed battery plus `random_per_side` seeded random modules per side.
pub fn battery(ring: &Arc<Ring>, seed: u64, random_per_side: usize, bound: usize) -> Result<Vec<Module>> {
    let mut out = fixed_battery(ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, "battery"));
    for side in [Side::Right, Side::Left] {
        for _ in 0..random_per_side {
            out.push(random_any(ring, side, bound, &mut rng)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    FpEquality,
    ZOracle,
    Radical,
    Coradical,
    SelfInjective,
    HereditarySplit,
    EnvelopeIdentifications,
    DualityExchange,
    AgjRoundtrip,
    FourTerm,
    ContainerInvariance,
    MuIso,
    ChainBounds,
    Naturality,
    Closure,
    TraceRepresentability,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::FpEquality,
        Check::ZOracle,
        Check::Radical,
        Check::Coradical,
        Check::SelfInjective,
        Check::HereditarySplit,
        Check::EnvelopeIdentifications,
        Check::DualityExchange,
        Check::AgjRoundtrip,
        Check::FourTerm,
        Check::ContainerInvariance,
        Check::MuIso,
        Check::ChainBounds,
        Check::Naturality,
        Check::Closure,
        Check::TraceRepresentability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FpEquality => "fp-equality",
            Check::ZOracle => "z-oracle",
            Check::Radical => "radical",
            Check::Coradical => "coradical",
            Check::SelfInjective => "self-injective",
            Check::HereditarySplit => "hereditary-split",
            Check::EnvelopeIdentifications => "envelope-identifications",
            Check::DualityExchange => "duality-exchange",
            Check::AgjRoundtrip => "agj-roundtrip",
            Check::FourTerm => "four-term",
            Check::ContainerInvariance => "container-invariance",
            Check::MuIso => "mu-iso",
            Check::ChainBounds => "chain-bounds",
            Check::Naturality => "naturality",
            Check::Closure => "closure",
            Check::TraceRepresentability => "trace-representability",
        }
    }

    /// The statement being checked.
    pub fn statement(self) -> &'static str {
        match self {
            Check::FpEquality => "s(A) = t(A) = Rej(A, Λ) for finitely presented A",
            Check::ZOracle => "over Z, Ker(A → A**) is the classical torsion; Hom(A, Q/Z) ≅ A for finite A",
            Check::Radical => "s(A / s(A)) = 0",
            Check::Coradical => "q(Tr(I, C)) = 0",
            Check::SelfInjective => "ΣΛ = 0 iff s ≡ 0 iff q ≡ 0 iff Ext¹(−, Λ) ≡ 0",
            Check::HereditarySplit => "over a hereditary algebra C → q(C) splits",
            Check::EnvelopeIdentifications => {
                "I projective: s ≅ Tor₁(−, ΣΛ), q ≅ Ext¹(ΣΛ, −), s² = s, q² ≅ q, six-term sequences exact"
            }
            Check::DualityExchange => "q(D A) ≅ D(s A), naturally in A",
            Check::AgjRoundtrip => "D_R D_A = 1 on presentations; D_A(q) = s, D_R(s) = q, D_L(s) = Hom-bar(Λ, −)",
            Check::FourTerm => "0 → (coker g, −) → (Y, −) → (X, −) → F → 0 is exact",
            Check::ContainerInvariance => "s(A) does not depend on the injective container of Λ",
            Check::MuIso => "μ_P(M) : P ⊗ M → Hom(P*, M) is invertible for projective P",
            Check::ChainBounds => "over a local commutative algebra s(A) ⊊ A and s-chains are bounded by the Loewy length",
            Check::Naturality => "s is a subfunctor preserving monomorphisms; q preserves epimorphisms",
            Check::Closure => "torsion modules are closed under sums and quotients; s is additive",
            Check::TraceRepresentability => {
                "0 → (ΣΛ, C) → (I, C) → Tr(I, C) → 0 is exact; Tr is representable iff Λ is self-injective"
            }
        }
    }

    pub fn parse(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Accepts `all` or a comma separated list of names.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        s.split(',')
            .map(|n| Check::parse(n.trim()).ok_or_else(|| Error::Parse(format!("unknown check {:?}", n.trim()))))
            .collect()
    }
}

/// The input of one check evaluation.
#[derive(Clone, Debug, Default)]
pub struct Case {
    pub modules: Vec<Module>,
    pub maps: Vec<ModuleMap>,
    pub z: Option<ZPresentation>,
}

impl Case {
    fn modules(modules: Vec<Module>) -> Self {
        Case { modules, ..Case::default() }
    }

    fn module(m: &Module) -> Self {
        Case::modules(vec![m.clone()])
    }

    fn maps(maps: Vec<ModuleMap>) -> Self {
        Case { maps, ..Case::default() }
    }
}

enum Verdict {
    Pass,
    Fail(String),
    Skip,
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(msg())
    }
}

fn all(parts: Vec<Verdict>) -> Verdict {
    let mut fails: Vec<String> = Vec::new();
    let mut any = false;
    for v in parts {
        match v {
            Verdict::Pass => any = true,
            Verdict::Fail(s) => fails.push(s),
            Verdict::Skip => {}
        }
    }
    if !fails.is_empty() {
        Verdict::Fail(fails.join("; "))
    } else if any {
        Verdict::Pass
    } else {
        Verdict::Skip
    }
}

/// Algebra-level data shared by the cases of one instance.
pub struct Env {
    pub algebra_id: String,
    pub ctx: StabContext,
    pub hereditary: bool,
    pub local_commutative: bool,
}

impl Env {
    pub fn new(algebra_id: &str, ring: &Arc<Ring>) -> Result<Env> {
        let ctx = StabContext::new(ring)?;
        let mut hereditary = true;
        for side in [Side::Right, Side::Left] {
            for t in 0..ring.num_simples()? {
                hereditary &= is_projective(&syzygy(&Module::simple(ring, side, t)?)?.omega.module)?;
            }
        }
        let local_commutative = ring.num_simples()? == 1 && ring.algebra().is_commutative();
        Ok(Env { algebra_id: algebra_id.to_string(), ctx, hereditary, local_commutative })
    }

    fn ring(&self) -> &Arc<Ring> {
        &self.ctx.ring
    }
}

fn case_verdict(check: Check, env: Option<&Env>, case: &Case) -> Verdict {
    let out = match (check, env) {
        (Check::ZOracle, _) => z_oracle_case(case),
        (_, Some(env)) => algebra_case(check, env, case),
        (_, None) => Ok(Verdict::Skip),
    };
    match out {
        Ok(v) => v,
        Err(Error::IsomorphismInconclusive) => Verdict::Fail("isomorphism test inconclusive".into()),
        Err(e) => Verdict::Fail(format!("error: {e}")),
    }
}

fn z_oracle_case(case: &Case) -> Result<Verdict> {
    let Some(p) = &case.z else { return Ok(Verdict::Skip) };
    let classical = classical_torsion(p)?;
    let one = z_one_torsion(p)?;
    let mut parts = vec![require(classical.same_submodule(&one), || "classical torsion differs from 1-torsion".into())];
    let dec = snf_decompose(p);
    if dec.is_finite() {
        let chi = character_module(p)?;
        parts.push(require(chi.same_group(&dec), || format!("character module {chi} differs from {dec}")));
    }
    let quotient = p.quotient_by(&classical);
    parts.push(require(snf_decompose(&quotient).invariant_factors.is_empty(), || "A / tA is not torsion-free".into()));
    Ok(all(parts))
}

fn algebra_case(check: Check, env: &Env, case: &Case) -> Result<Verdict> {
    let ctx = &env.ctx;
    match check {
        Check::FpEquality => {
            let mut parts = Vec::new();
            for m in &case.modules {
                let s = ctx.torsion(m)?;
                let t = one_torsion_t(m)?;
                let r = reject(m)?;
                parts.push(require(s.subspace() == &t.subspace && t.subspace == r.subspace, || {
                    format!("dims s={} t={} rej={}", s.dim(), t.subspace.dim(), r.subspace.dim())
                }));
            }
            Ok(all(parts))
        }
        Check::Radical => {
            let mut parts = Vec::new();
            for m in &case.modules {
                let q = torsion_free_quotient(m, ctx.cosyzygy(m.side().flip()))?;
                let s = ctx.torsion(&q.module)?;
                parts.push(require(s.dim() == 0, || format!("s(A/sA) has dimension {}", s.dim())));
            }
            Ok(all(parts))
        }
        Check::Coradical => {
            let mut parts = Vec::new();
            for c in &case.modules {
                let tr = trace_of_injectives(c)?;
                let q = ctx.cotorsion(&tr.module)?;
                parts.push(require(q.dim() == 0, || format!("q(Tr) has dimension {}", q.dim())));
            }
            Ok(all(parts))
        }
        Check::SelfInjective => self_injective_case(env, case),
        Check::HereditarySplit => {
            if !env.hereditary {
                return Ok(Verdict::Skip);
            }
            let mut parts = Vec::new();
            for c in &case.modules {
                parts.push(match cotorsion_section(c, ctx)? {
                    Some(_) => Verdict::Pass,
                    None => Verdict::Fail("no section of C → q(C)".into()),
                });
            }
            Ok(all(parts))
        }
        Check::EnvelopeIdentifications => envelope_case(ctx, case),
        Check::DualityExchange => {
            let mut parts = Vec::new();
            for a in &case.modules {
                let ex = k_dual_exchange_check(a, ctx)?;
                parts.push(require(ex.passed(), || {
                    format!(
                        "dim q(DA) = {}, dim D(sA) = {}, perp {}, θ iso {}",
                        ex.cotorsion.dim(),
                        ex.torsion.dim(),
                        ex.perp_matches,
                        ex.theta.is_isomorphism()
                    )
                }));
            }
            for f in &case.maps {
                let ea = k_dual_exchange_check(f.source(), ctx)?;
                let eb = k_dual_exchange_check(f.target(), ctx)?;
                parts.push(require(exchange_square_commutes(f, &ea, &eb), || "naturality square does not commute".into()));
            }
            Ok(all(parts))
        }
        Check::AgjRoundtrip => agj_case(ctx, case),
        Check::FourTerm => {
            let Some(g) = case.maps.first() else { return Ok(Verdict::Skip) };
            let f = FunctorPresentation::hom_coker(g);
            let mut parts = Vec::new();
            for m in &case.modules {
                let ft = four_term_resolution(&f, m)?;
                let ev = evaluate(&f, m)?;
                parts.push(require(ft.exact && ev.is_exact(), || format!("not exact, dims {:?}", ft.dims)));
            }
            Ok(all(parts))
        }
        Check::ContainerInvariance => {
            let [j, rest @ ..] = case.modules.as_slice() else { return Ok(Verdict::Skip) };
            let side = j.side();
            let base = cosyzygy(env.ring(), side)?;
            let seed = mix(0, &format!("container/{}", j.dim()));
            let other = cosyzygy_with_container(env.ring(), side, j, seed)?;
            let mut parts = Vec::new();
            for a in rest {
                let s1 = torsion_s(a, &base)?;
                let s2 = torsion_s(a, &other)?;
                parts.push(require(s1.subspace() == s2.subspace(), || {
                    format!("dims {} via E(Λ) and {} via E(Λ) ⊕ J", s1.dim(), s2.dim())
                }));
            }
            Ok(all(parts))
        }
        Check::MuIso => {
            let [p, rest @ ..] = case.modules.as_slice() else { return Ok(Verdict::Skip) };
            if !is_projective(p)? {
                return Ok(Verdict::Fail("first module of a μ case must be projective".into()));
            }
            let mut parts = Vec::new();
            for m in rest {
                let mu = mu_map(p, m)?;
                parts.push(require(mu.is_isomorphism(), || {
                    format!("μ has rank {} on {} → {}", mu.matrix.rank(), mu.tensor.dim(), mu.hom.dim())
                }));
            }
            Ok(all(parts))
        }
        Check::ChainBounds => {
            if !env.local_commutative {
                return Ok(Verdict::Skip);
            }
            let ll = loewy_length(&Module::regular(env.ring(), Side::Right))?;
            let mut parts = Vec::new();
            for a in &case.modules {
                let cz = ctx.cosyzygy(a.side().flip());
                let (rep, _) = s_chain(a, cz, a.dim() + 1)?;
                let proper = a.is_zero() || rep.dims.get(1).is_some_and(|&d| d < a.dim());
                let bounded = rep.length().is_some_and(|l| l <= ll);
                parts.push(require(proper && bounded, || format!("chain {:?} against Loewy length {ll}", rep.dims)));
            }
            Ok(all(parts))
        }
        Check::Naturality => {
            let mut parts = Vec::new();
            for f in &case.maps {
                parts.push(naturality_of(ctx, f)?);
            }
            Ok(all(parts))
        }
        Check::Closure => closure_case(ctx, case),
        Check::TraceRepresentability => {
            let rep = trace_representability(ctx, &case.modules)?;
            Ok(require(rep.consistent(), || {
                format!("summand {}, self-injective {}, failures {}", rep.sigma_is_summand, rep.self_injective, rep.failures)
            }))
        }
        Check::ZOracle => Ok(Verdict::Skip),
    }
}

fn self_injective_case(env: &Env, case: &Case) -> Result<Verdict> {
    let ctx = &env.ctx;
    let si = ctx.left.self_injective && ctx.right.self_injective;
    let (mut s_zero, mut q_zero, mut ext_zero) = (true, true, true);
    for m in &case.modules {
        s_zero &= ctx.torsion(m)?.dim() == 0;
        q_zero &= ctx.cotorsion(m)?.dim() == 0;
        ext_zero &= ext1(m, &Module::regular(env.ring(), m.side()))?.dim() == 0;
    }
    if ctx.left.self_injective != ctx.right.self_injective {
        return Ok(Verdict::Fail("ΣΛ vanishes on one side only".into()));
    }
    if si {
        Ok(require(s_zero && q_zero && ext_zero, || format!("s ≡ 0: {s_zero}, q ≡ 0: {q_zero}, Ext¹(−, Λ) ≡ 0: {ext_zero}")))
    } else {
        Ok(require(!s_zero && !q_zero && !ext_zero, || {
            format!("ΣΛ ≠ 0 but s ≡ 0: {s_zero}, q ≡ 0: {q_zero}, Ext¹(−, Λ) ≡ 0: {ext_zero}")
        }))
    }
}

/// A module map `s : q(C) → C` with `π s = 1`, when one exists.
pub fn cotorsion_section(c: &Module, ctx: &StabContext) -> Result<Option<ModuleMap>> {
    let q = ctx.cotorsion(c)?;
    let qc = &q.quotient.module;
    let into_c = hom(qc, c)?;
    let endo = hom(qc, qc)?;
    let post = postcompose(&q.quotient.projection, &into_c, &endo);
    let id = endo.coordinates(&Matrix::identity(c.domain(), qc.dim())).expect("identity is a module map");
    let Some(coeffs) = post.solve(&id) else { return Ok(None) };
    let s = into_c.element(&coeffs);
    let ok = q.quotient.projection.compose(&s).matrix() == &Matrix::identity(c.domain(), qc.dim());
    Ok(ok.then_some(s))
}

fn envelope_case(ctx: &StabContext, case: &Case) -> Result<Verdict> {
    if !ctx.left.i_projective || !ctx.right.i_projective {
        return Ok(Verdict::Skip);
    }
    let mut parts = Vec::new();
    for m in &case.modules {
        match m.side() {
            Side::Right => {
                let t = tor_connecting_iso(m, ctx)?;
                parts.push(require(t.is_isomorphism() && t.tor_dim == t.torsion_dim, || {
                    format!("Tor₁ has dimension {}, s has {}", t.tor_dim, t.torsion_dim)
                }));
                let s = ctx.torsion(m)?;
                let s2 = ctx.torsion(&s.submodule.module)?;
                parts.push(require(s2.dim() == s.dim(), || "s² ≠ s".into()));
            }
            Side::Left => {
                let e = ext_connecting_iso(m, ctx)?;
                parts.push(require(e.is_isomorphism() && e.ext_dim == e.cotorsion_dim, || {
                    format!("Ext¹ has dimension {}, q has {}", e.ext_dim, e.cotorsion_dim)
                }));
                let q = ctx.cotorsion(m)?;
                let q2 = ctx.cotorsion(&q.quotient.module)?;
                parts.push(require(q2.trace.module.is_zero() && q2.dim() == q.dim(), || "q² ≇ q".into()));
            }
        }
    }
    if let [left, right] = case.maps.as_slice() {
        let seq = ShortExact { left: left.clone(), right: right.clone() };
        if !seq.is_exact() {
            return Ok(Verdict::Fail("sampled sequence is not exact".into()));
        }
        let right_side = seq.middle().side() == Side::Right;
        let six = if right_side { s_six_term(&seq, ctx)? } else { q_six_term(&seq, ctx)? };
        parts.push(require(six.exact && six.terms_match, || format!("six-term sequence fails, dims {:?}", six.dims)));
        let free = |m: &Module| -> Result<bool> {
            Ok(if right_side { ctx.torsion(m)?.dim() == 0 } else { ctx.cotorsion(m)?.dim() == 0 })
        };
        if free(seq.left.source())? && free(seq.right.target())? {
            parts.push(require(free(seq.middle())?, || "an extension of free modules leaves the class".into()));
        }
    }
    Ok(all(parts))
}

fn agj_case(ctx: &StabContext, case: &Case) -> Result<Verdict> {
    let mut parts = Vec::new();
    for g in &case.maps {
        let f = FunctorPresentation::hom_coker(g);
        let back = apply_dr(&apply_da(&f)?)?;
        parts.push(require(back.same_presentation(&f), || "D_R D_A changes the presentation".into()));
    }
    for m in &case.modules {
        let side = m.side();
        // D_A of the cotorsion presentation on the other side, against the bidual kernel.
        let q_other = FunctorPresentation::cotorsion(ctx.cosyzygy(side.flip()));
        let da = apply_da(&q_other)?;
        let back = apply_dr(&da)?;
        parts.push(require(back.same_presentation(&q_other), || "D_R D_A changes the q-presentation".into()));
        if let Evaluation::Ker { src, kernel, .. } = evaluate(&da, m)? {
            let inside = Subspace::span(&unit_isomorphism(m, &src).mul(&kernel.basis()));
            let t = one_torsion_t(m)?;
            parts.push(require(inside == t.subspace, || format!("D_A(q) has dimension {}, t has {}", inside.dim(), t.subspace.dim())));
        }
        // D_R of the torsion presentation, against the trace of the cogenerator.
        let s_same = FunctorPresentation::torsion(ctx.cosyzygy(side));
        let dr = apply_dr(&s_same)?;
        if let Evaluation::Coker { hom_x, quotient, .. } = evaluate(&dr, m)? {
            let one = m.ring().acting(side).unit().to_vec();
            let at_one: Vec<Vec<_>> = hom_x.basis_matrices().iter().map(|b| b.mul_vec(&one)).collect();
            let e = Matrix::from_columns(m.domain(), m.dim(), &at_one);
            let rel = quotient.relations().basis();
            let image = if hom_x.dim() == 0 { Subspace::zero(m.domain(), m.dim()) } else { Subspace::span(&e.mul(&rel)) };
            let tr = trace_of_injectives(m)?;
            parts.push(require(image == tr.subspace, || format!("D_R(s) relations {} against trace {}", image.dim(), tr.subspace.dim())));
        }
        parts.push(require(dl_matches_hom_bar(&s_same, m)?, || "D_L(s) differs from Hom-bar(Λ, −)".into()));
        if is_injective(m)? {
            for b in [Module::regular(m.ring(), side), Module::simple(m.ring(), side, 0)?] {
                let v = evaluate(&FunctorPresentation::hom_bar(&b)?, m)?.dim();
                parts.push(require(v == 0, || format!("Hom-bar(B, −) is {v}-dimensional on an injective")));
            }
        }
    }
    Ok(all(parts))
}

fn naturality_of(ctx: &StabContext, f: &ModuleMap) -> Result<Verdict> {
    let (a, b) = (f.source(), f.target());
    let sa = ctx.torsion(a)?;
    let sb = ctx.torsion(b)?;
    let Some(sf) = f.restrict(&sa.submodule, &sb.submodule) else {
        return Ok(Verdict::Fail("f does not carry s(A) into s(B)".into()));
    };
    let qa = ctx.cotorsion(a)?;
    let qb = ctx.cotorsion(b)?;
    let Some(qf) = f.induce(&qa.quotient, &qb.quotient) else {
        return Ok(Verdict::Fail("f does not induce q(A) → q(B)".into()));
    };
    let mut parts = vec![Verdict::Pass];
    if f.is_injective() {
        let pre = sb.subspace().preimage_under(f.matrix());
        parts.push(require(&pre == sa.subspace() && sf.is_injective(), || "s does not preserve the monomorphism".into()));
    }
    if f.is_surjective() {
        parts.push(require(qf.is_surjective(), || "q does not preserve the epimorphism".into()));
    }
    Ok(all(parts))
}

fn closure_case(ctx: &StabContext, case: &Case) -> Result<Verdict> {
    let [a, b] = case.modules.as_slice() else { return Ok(Verdict::Skip) };
    let sum = Module::direct_sum(&[a.clone(), b.clone()])?;
    let (sa, sb, ss) = (ctx.torsion(a)?, ctx.torsion(b)?, ctx.torsion(&sum.module)?);
    let mut parts = vec![require(ss.dim() == sa.dim() + sb.dim(), || "s is not additive".into())];
    let torsion = |m: &Module| -> Result<bool> { Ok(ctx.torsion(m)?.dim() == m.dim()) };
    if torsion(a)? && torsion(b)? {
        parts.push(require(torsion(&sum.module)?, || "a sum of torsion modules is not torsion".into()));
    }
    if torsion(a)? {
        let top = crate::algebra::envelope::top(a)?;
        let socle = crate::algebra::envelope::socle(a)?;
        let by_socle = a.quotient(&socle.subspace)?;
        parts.push(require(torsion(&top.module)? && torsion(&by_socle.module)?, || "a quotient of a torsion module is not torsion".into()));
    }
    for m in [a, b] {
        let c = crate::stab::classify(m, ctx)?;
        parts.push(require(!(c.is_cotorsion && c.is_cotorsion_free) || m.is_zero(), || "cotorsion and cotorsion-free but nonzero".into()));
    }
    Ok(all(parts))
}

/// Every modules-over-`Λ` input of the suite for one instance.
pub struct Prepared {
    pub spec: InstanceSpec,
    pub env: Option<Env>,
    pub instance: Generated,
    pub battery: Vec<Module>,
}

pub fn prepare(spec: &InstanceSpec) -> Result<Prepared> {
    let instance = generate_instance(spec)?;
    let (env, battery) = match &instance {
        Generated::Modules(inst) => (
            Some(Env::new(&spec.algebra_id, &inst.ring)?),
            battery(&inst.ring, spec.module_seed, BATTERY_RANDOM, spec.module_dim_bound)?,
        ),
        Generated::Integers(_) => (None, Vec::new()),
    };
    Ok(Prepared { spec: spec.clone(), env, instance, battery })
}

impl Prepared {
    /// Fixed battery plus all generated modules.
    fn all_modules(&self) -> Vec<Module> {
        let mut out = self.battery.clone();
        if let Generated::Modules(inst) = &self.instance {
            out.extend(inst.modules.iter().cloned());
        }
        out
    }

    fn maps(&self) -> &[ModuleMap] {
        match &self.instance {
            Generated::Modules(inst) => &inst.maps,
            Generated::Integers(_) => &[],
        }
    }
}

fn cases(check: Check, p: &Prepared) -> Result<Vec<Case>> {
    if let Generated::Integers(ps) = &p.instance {
        return Ok(if check == Check::ZOracle {
            ps.iter().map(|z| Case { z: Some(z.clone()), ..Case::default() }).collect()
        } else {
            Vec::new()
        });
    }
    let env = p.env.as_ref().expect("algebra instance has an environment");
    let ring = env.ring().clone();
    let mut rng = p.spec.rng(check.name());
    let modules = p.all_modules();
    let per_module = || modules.iter().map(Case::module).collect::<Vec<_>>();
    let side_of = |side: Side, pool: &[Module]| pool.iter().filter(|m| m.side() == side).cloned().collect::<Vec<_>>();
    Ok(match check {
        Check::ZOracle => Vec::new(),
        Check::FpEquality | Check::Radical | Check::Coradical | Check::HereditarySplit | Check::ChainBounds => per_module(),
        Check::SelfInjective => {
            if env.ctx.self_injective() {
                per_module()
            } else {
                vec![Case::modules(p.battery.clone())]
            }
        }
        Check::EnvelopeIdentifications => {
            let mut out = per_module();
            for side in [Side::Right, Side::Left] {
                let pool = side_of(side, &modules);
                let free: Vec<Module> = pool
                    .iter()
                    .filter(|m| match side {
                        Side::Right => env.ctx.torsion(m).map(|t| t.dim() == 0).unwrap_or(false),
                        Side::Left => env.ctx.cotorsion(m).map(|q| q.dim() == 0).unwrap_or(false),
                    })
                    .cloned()
                    .collect();
                for k in 0..2 * SEQUENCES {
                    let from = if k % 2 == 1 && !free.is_empty() { &free } else { &pool };
                    let a1 = &from[rng.gen_range(0..from.len())];
                    let a3 = &from[rng.gen_range(0..from.len())];
                    let seq = pushout_sequence(a1, a3, &mut rng)?;
                    out.push(Case::maps(vec![seq.left, seq.right]));
                }
            }
            out
        }
        Check::DualityExchange | Check::Naturality => {
            let mut out = if check == Check::DualityExchange { per_module() } else { Vec::new() };
            out.extend(p.maps().iter().map(|f| Case::maps(vec![f.clone()])));
            out
        }
        Check::AgjRoundtrip => {
            let mut out = per_module();
            out.extend(p.maps().iter().map(|f| Case::maps(vec![f.clone()])));
            out
        }
        Check::FourTerm => {
            let mut out = Vec::new();
            for side in [Side::Right, Side::Left] {
                let pool: Vec<Module> = side_of(side, &modules).into_iter().filter(|m| !m.is_zero()).collect();
                let targets = side_of(side, &p.battery);
                for _ in 0..PRESENTATIONS {
                    let Some(g) = random_map(&pool, &mut rng)? else { continue };
                    out.push(Case { modules: targets.clone(), maps: vec![g], z: None });
                }
            }
            out
        }
        Check::ContainerInvariance => {
            let mut out = Vec::new();
            for side in [Side::Right, Side::Left] {
                let mut containers: Vec<Module> =
                    (0..ring.num_simples()?).map(|t| Module::injective(&ring, side, t)).collect::<Result<_>>()?;
                containers.push(Module::cogenerator(&ring, side));
                let targets = side_of(side.flip(), &modules);
                for j in containers {
                    for chunk in targets.chunks(8) {
                        let mut ms = vec![j.clone()];
                        ms.extend(chunk.iter().cloned());
                        out.push(Case::modules(ms));
                    }
                }
            }
            out
        }
        Check::MuIso => {
            let mut out = Vec::new();
            for side in [Side::Right, Side::Left] {
                let mut projectives: Vec<Module> =
                    (0..ring.num_simples()?).map(|t| Module::projective(&ring, side, t)).collect::<Result<_>>()?;
                projectives.push(Module::regular(&ring, side));
                let targets = side_of(side.flip(), &modules);
                for pm in projectives {
                    for chunk in targets.chunks(8) {
                        let mut ms = vec![pm.clone()];
                        ms.extend(chunk.iter().cloned());
                        out.push(Case::modules(ms));
                    }
                }
            }
            out
        }
        Check::Closure => {
            let mut out = Vec::new();
            for side in [Side::Right, Side::Left] {
                let pool = side_of(side, &modules);
                for _ in 0..pool.len() / 2 {
                    let a = pool[rng.gen_range(0..pool.len())].clone();
                    let b = pool[rng.gen_range(0..pool.len())].clone();
                    out.push(Case::modules(vec![a, b]));
                }
            }
            out
        }
        Check::TraceRepresentability => vec![Case::modules(modules.clone())],
    })
}

/// Sampled short exact sequences per side for the envelope identifications.
pub const SEQUENCES: usize = 15;
/// Random presentations per side for the four-term check.
pub const PRESENTATIONS: usize = 30;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub algebra: String,
    pub reason: String,
    #[serde(default)]
    pub modules: Vec<ModuleFile>,
    #[serde(default)]
    pub maps: Vec<MapFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ZFile>,
}

impl Counterexample {
    fn of(check: Check, algebra: &str, case: &Case, reason: String) -> Self {
        Counterexample {
            check: check.name().to_string(),
            algebra: algebra.to_string(),
            reason,
            modules: case.modules.iter().map(module_file).collect(),
            maps: case.maps.iter().map(map_file).collect(),
            z: case.z.as_ref().map(|p| z_file(p.relations())),
        }
    }

    fn case(&self) -> Result<(Option<Arc<Ring>>, Case)> {
        let first = match (self.modules.first(), self.maps.first()) {
            (Some(m), _) => Some(module_from_file(m, None, None)?),
            (None, Some(f)) => Some(map_from_file(f, None, None)?.source().clone()),
            (None, None) => None,
        };
        let ring = first.map(|m| m.ring().clone());
        let modules = self.modules.iter().map(|m| module_from_file(m, ring.as_ref(), None)).collect::<Result<_>>()?;
        let maps = self.maps.iter().map(|f| map_from_file(f, ring.as_ref(), None)).collect::<Result<_>>()?;
        let z = self.z.as_ref().map(relations_from_file).transpose()?.map(ZPresentation::new);
        Ok((ring, Case { modules, maps, z }))
    }
}

/// Re-runs a serialized case; `true` when it still fails.
pub fn reverify(cx: &Counterexample) -> Result<bool> {
    let check = Check::parse(&cx.check).ok_or_else(|| Error::Parse(format!("unknown check {:?}", cx.check)))?;
    let (ring, case) = cx.case()?;
    let env = ring.map(|r| Env::new(&cx.algebra, &r)).transpose()?;
    Ok(matches!(case_verdict(check, env.as_ref(), &case), Verdict::Fail(_)))
}

/// Outcome of one check over one instance.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraRun {
    pub algebra: String,
    pub instances: usize,
    pub failures: usize,
    /// Evaluated cases that carry maps (sequences, presentations, sampled maps).
    pub map_cases: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    pub instances: usize,
    pub passed: bool,
    pub runs: Vec<AlgebraRun>,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckResult {
    pub fn run(&self, algebra: &str) -> Option<&AlgebraRun> {
        self.runs.iter().find(|r| r.algebra == algebra)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub dim_bound: usize,
    pub algebras: Vec<String>,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<26} {:>9} {:>9}  {}\n", "check", "instances", "failures", "result");
        for c in &self.checks {
            let failures: usize = c.runs.iter().map(|r| r.failures).sum();
            out.push_str(&format!(
                "{:<26} {:>9} {:>9}  {}\n",
                c.name,
                c.instances,
                failures,
                if c.passed { "PASS" } else { "FAIL" }
            ));
            for r in &c.runs {
                for n in &r.notes {
                    out.push_str(&format!("    {}: {}\n", r.algebra, n));
                }
            }
        }
        out.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}

const KEPT_COUNTEREXAMPLES: usize = 3;

fn run_check(check: Check, p: &Prepared) -> (AlgebraRun, Vec<Counterexample>) {
    let id = p.spec.algebra_id.clone();
    let mut run = AlgebraRun { algebra: id.clone(), instances: 0, failures: 0, map_cases: 0, notes: Vec::new(), witness: None };
    let mut kept = Vec::new();
    let cs = match cases(check, p) {
        Ok(cs) => cs,
        Err(e) => {
            run.failures += 1;
            run.notes.push(format!("case generation failed: {e}"));
            return (run, kept);
        }
    };
    for case in &cs {
        let verdict = case_verdict(check, p.env.as_ref(), case);
        if !matches!(verdict, Verdict::Skip) && !case.maps.is_empty() {
            run.map_cases += 1;
        }
        match verdict {
            Verdict::Pass => run.instances += 1,
            Verdict::Skip => {}
            Verdict::Fail(reason) => {
                run.instances += 1;
                run.failures += 1;
                if kept.len() < KEPT_COUNTEREXAMPLES {
                    kept.push(Counterexample::of(check, &id, case, reason));
                }
            }
        }
    }
    if let Some(env) = &p.env {
        if let Err(e) = extras(check, env, p, &mut run) {
            run.failures += 1;
            run.notes.push(format!("error: {e}"));
        }
    }
    (run, kept)
}

/// Algebra-level findings reported next to the per-case verdicts.
fn extras(check: Check, env: &Env, p: &Prepared, run: &mut AlgebraRun) -> Result<()> {
    match check {
        Check::FpEquality => {
            let ms = p.all_modules();
            let mut nonzero = 0;
            for m in &ms {
                nonzero += usize::from(env.ctx.torsion(m)?.dim() > 0);
            }
            run.notes.push(format!("s ≠ 0 on {nonzero} of {} modules", ms.len()));
        }
        Check::Coradical => {
            let ms = p.all_modules();
            let mut nonzero = 0;
            for m in &ms {
                nonzero += usize::from(env.ctx.cotorsion(m)?.dim() > 0);
            }
            run.notes.push(format!("q ≠ 0 on {nonzero} of {} modules", ms.len()));
        }
        Check::SelfInjective => {
            let si = env.ctx.self_injective();
            run.notes.push(format!("ΣΛ = 0: {si}"));
        }
        Check::HereditarySplit if !env.hereditary => run.notes.push("not hereditary; skipped".into()),
        Check::EnvelopeIdentifications if !(env.ctx.left.i_projective && env.ctx.right.i_projective) => {
            run.notes.push("E(Λ) is not projective; hypothesis not met".into())
        }
        Check::MuIso => {
            if let Some((a, m)) = mu_witness(&p.battery)? {
                run.notes.push(format!("non-injective μ_A(M) with dim A = {}, dim M = {}", a.dim(), m.dim()));
                run.witness = Some(serde_json::json!({ "a": module_file(&a), "m": module_file(&m) }));
            }
        }
        Check::ChainBounds if env.local_commutative && !env.ctx.self_injective() => {
            let search = q_square_witness_search(env.ring(), WITNESS_DIM)?;
            run.notes.push(search.summary());
            if let Some(w) = &search.witness {
                run.witness = Some(serde_json::json!({ "module": module_file(w), "q_chain": search.witness_chain }));
            }
            run.witness.get_or_insert_with(|| serde_json::json!({ "scope": search.summary() }));
        }
        Check::ChainBounds if !env.local_commutative => run.notes.push("not local commutative; skipped".into()),
        _ => {}
    }
    Ok(())
}

/// A non-projective `A` and `M` with `μ_A(M)` not injective.
pub fn mu_witness(pool: &[Module]) -> Result<Option<(Module, Module)>> {
    for a in pool.iter().filter(|a| !a.is_zero()) {
        if is_projective(a)? {
            continue;
        }
        for m in pool.iter().filter(|m| m.side() != a.side()) {
            if !mu_map(a, m)?.is_injective() {
                return Ok(Some((a.clone(), m.clone())));
            }
        }
    }
    Ok(None)
}

pub const WITNESS_DIM: usize = 4;

/// Outcome of the search for `C` with `q²(C) ≇ q(C)`.
#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub max_dim: usize,
    pub domain: Domain,
    pub candidates: usize,
    pub modules: usize,
    pub witnesses: usize,
    pub witness: Option<Module>,
    pub witness_chain: Vec<usize>,
    /// Over 𝔽₂ the scope is every module up to isomorphism.
    pub exhaustive: bool,
}

impl WitnessSearch {
    pub fn summary(&self) -> String {
        let scope = if self.exhaustive {
            "all modules"
        } else {
            "modules with strictly upper triangular 0/1 actions"
        };
        let found = match &self.witness {
            Some(w) => format!("witness of dimension {} with q-chain {:?}", w.dim(), self.witness_chain),
            None => "no witness, scope exhausted".to_string(),
        };
        format!(
            "q² ≠ q search over {scope} of dim ≤ {} ({} candidates, {} modules, {} witnesses): {found}",
            self.max_dim, self.candidates, self.modules, self.witnesses
        )
    }
}

/// Runs over left modules of dimension `≤ max_dim` over a local algebra whose
/// first basis element is the unit, with every other basis element acting by
/// a strictly upper triangular 0/1 matrix. Every module over a local algebra
/// has such a basis when the entries may be arbitrary; over 𝔽₂ this is all
/// of them.
pub fn q_square_witness_search(ring: &Arc<Ring>, max_dim: usize) -> Result<WitnessSearch> {
    let alg = ring.acting(Side::Left);
    let d = ring.domain();
    if ring.num_simples()? != 1 || alg.unit() != alg.basis_vector(0).as_slice() {
        return Err(Error::Unsupported("witness search needs a local algebra with unit as first basis element".into()));
    }
    let cz = cosyzygy(ring, Side::Left)?;
    let gens = alg.dim() - 1;
    let mut out = WitnessSearch {
        max_dim,
        domain: d,
        candidates: 0,
        modules: 0,
        witnesses: 0,
        witness: None,
        witness_chain: Vec::new(),
        exhaustive: d == Domain::PrimeField(2),
    };
    for n in 1..=max_dim {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let bits = slots.len() * gens;
        for code in 0u64..(1u64 << bits) {
            out.candidates += 1;
            let mut action = vec![Matrix::identity(d, n)];
            for g in 0..gens {
                let mut m = Matrix::zeros(d, n, n);
                for (k, &(i, j)) in slots.iter().enumerate() {
                    if code >> (g * slots.len() + k) & 1 == 1 {
                        m[(i, j)] = d.one();
                    }
                }
                action.push(m);
            }
            let Ok(c) = Module::new(ring.clone(), Side::Left, n, action) else { continue };
            out.modules += 1;
            let (rep, _) = q_chain(&c, &cz, 3)?;
            if rep.dims.len() >= 3 && rep.dims[2] < rep.dims[1] {
                out.witnesses += 1;
                if out.witness.is_none() {
                    out.witness = Some(c);
                    out.witness_chain = rep.dims.clone();
                }
            }
        }
    }
    Ok(out)
}

/// Runs `checks` over every spec; checks run concurrently and the report is
/// ordered by check and then by algebra.
pub fn run_suite(specs: &[InstanceSpec], checks: &[Check]) -> Result<SuiteReport> {
    let prepared: Vec<Prepared> = std::thread::scope(|s| {
        let handles: Vec<_> = specs.iter().map(|spec| s.spawn(move || prepare(spec))).collect();
        handles.into_iter().map(|h| h.join().expect("instance generation panicked")).collect::<Result<Vec<_>>>()
    })?;
    let mut checks: Vec<Check> = checks.to_vec();
    checks.sort();
    checks.dedup();
    let jobs: Vec<(Check, usize)> = checks.iter().flat_map(|&c| (0..prepared.len()).map(move |i| (c, i))).collect();
    let queue = Mutex::new(jobs.into_iter());
    let results = Mutex::new(BTreeMap::new());
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let job = queue.lock().expect("job queue").next();
                let Some((check, i)) = job else { break };
                let out = run_check(check, &prepared[i]);
                results.lock().expect("results").insert((check, i), out);
            });
        }
    });
    let mut results = results.into_inner().expect("results");
    let mut report_checks = Vec::new();
    for &check in &checks {
        let mut runs = Vec::new();
        let mut counterexamples = Vec::new();
        for i in 0..prepared.len() {
            let (run, cx) = results.remove(&(check, i)).expect("every job ran");
            runs.push(run);
            counterexamples.extend(cx);
        }
        let instances = runs.iter().map(|r| r.instances).sum();
        let passed = runs.iter().all(|r| r.failures == 0);
        report_checks.push(CheckResult {
            name: check.name().to_string(),
            statement: check.statement().to_string(),
            instances,
            passed,
            runs,
            counterexamples,
        });
    }
    Ok(SuiteReport {
        seed: specs.first().map_or(0, |s| s.module_seed),
        dim_bound: specs.first().map_or(DEFAULT_DIM_BOUND, |s| s.module_dim_bound),
        algebras: specs.iter().map(|s| s.algebra_id.clone()).collect(),
        passed: report_checks.iter().all(|c| c.passed),
        checks: report_checks,
    })
}
