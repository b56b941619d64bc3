use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stabkit::algebra::{catalog, hom, Module, Ring, Side};
use stabkit::functor::{apply_da, apply_dr, four_term_resolution, k_dual_exchange_check, FunctorPresentation};
use stabkit::harness::random_module;
use stabkit::random::random_combination;
use stabkit::stab::{one_torsion_t, reject, torsion_free_quotient, trace_of_injectives, StabContext};

fn setup(idx: usize) -> (Arc<Ring>, StabContext) {
    let id = catalog::ALGEBRA_IDS[idx % catalog::ALGEBRA_IDS.len()];
    let ring = catalog::ring(id).unwrap();
    let ctx = StabContext::new(&ring).unwrap();
    (ring, ctx)
}

fn side(b: bool) -> Side {
    if b {
        Side::Left
    } else {
        Side::Right
    }
}

fn module(ring: &Arc<Ring>, s: Side, seed: u64, dual: bool) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if dual {
        random_module(ring, s.flip(), 6, &mut rng).unwrap().k_dual()
    } else {
        random_module(ring, s, 6, &mut rng).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torsion_equals_one_torsion_and_reject(idx in 0usize..6, left: bool, dual: bool, seed: u64) {
        let (ring, ctx) = setup(idx);
        let a = module(&ring, side(left), seed, dual);
        let s = ctx.torsion(&a).unwrap();
        prop_assert_eq!(s.subspace(), &one_torsion_t(&a).unwrap().subspace);
        prop_assert_eq!(s.subspace(), &reject(&a).unwrap().subspace);
    }

    #[test]
    fn torsion_is_a_radical(idx in 0usize..6, left: bool, dual: bool, seed: u64) {
        let (ring, ctx) = setup(idx);
        let a = module(&ring, side(left), seed, dual);
        let q = torsion_free_quotient(&a, ctx.cosyzygy(a.side().flip())).unwrap();
        prop_assert_eq!(ctx.torsion(&q.module).unwrap().dim(), 0);
    }

    #[test]
    fn cotorsion_is_a_coradical(idx in 0usize..6, left: bool, dual: bool, seed: u64) {
        let (ring, ctx) = setup(idx);
        let c = module(&ring, side(left), seed, dual);
        let q = ctx.cotorsion(&c).unwrap();
        prop_assert!(q.agrees());
        let tr = trace_of_injectives(&c).unwrap();
        prop_assert_eq!(ctx.cotorsion(&tr.module).unwrap().dim(), 0);
    }

    #[test]
    fn k_dual_exchanges_torsion_and_cotorsion(idx in 0usize..6, left: bool, dual: bool, seed: u64) {
        let (ring, ctx) = setup(idx);
        let a = module(&ring, side(left), seed, dual);
        let ex = k_dual_exchange_check(&a, &ctx).unwrap();
        prop_assert_eq!(ex.cotorsion.dim(), ex.torsion.dim());
        prop_assert!(ex.passed());
    }

    #[test]
    fn maps_restrict_to_torsion_and_induce_on_cotorsion(idx in 0usize..6, left: bool, s1: u64, s2: u64, s3: u64) {
        let (ring, ctx) = setup(idx);
        let a = module(&ring, side(left), s1, false);
        let b = module(&ring, side(left), s2, true);
        let f = random_combination(&hom(&a, &b).unwrap(), &mut ChaCha8Rng::seed_from_u64(s3));
        let (sa, sb) = (ctx.torsion(&a).unwrap(), ctx.torsion(&b).unwrap());
        prop_assert!(f.restrict(&sa.submodule, &sb.submodule).is_some());
        let (qa, qb) = (ctx.cotorsion(&a).unwrap(), ctx.cotorsion(&b).unwrap());
        prop_assert!(f.induce(&qa.quotient, &qb.quotient).is_some());
    }

    #[test]
    fn presentations_round_trip_and_resolve(idx in 0usize..6, left: bool, s1: u64, s2: u64, s3: u64, s4: u64) {
        let (ring, _) = setup(idx);
        let x = module(&ring, side(left), s1, false);
        let y = module(&ring, side(left), s2, true);
        let g = random_combination(&hom(&x, &y).unwrap(), &mut ChaCha8Rng::seed_from_u64(s3));
        let f = FunctorPresentation::hom_coker(&g);
        prop_assert!(apply_dr(&apply_da(&f).unwrap()).unwrap().same_presentation(&f));
        let m = module(&ring, side(left), s4, false);
        prop_assert!(four_term_resolution(&f, &m).unwrap().exact);
    }

    #[test]
    fn torsion_is_additive(idx in 0usize..6, left: bool, s1: u64, s2: u64) {
        let (ring, ctx) = setup(idx);
        let a = module(&ring, side(left), s1, false);
        let b = module(&ring, side(left), s2, true);
        let sum = Module::direct_sum(&[a.clone(), b.clone()]).unwrap();
        let total = ctx.torsion(&a).unwrap().dim() + ctx.torsion(&b).unwrap().dim();
        prop_assert_eq!(ctx.torsion(&sum.module).unwrap().dim(), total);
    }
}
