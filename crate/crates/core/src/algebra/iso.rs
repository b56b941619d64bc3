use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::envelope::{radical_series, socle_multiplicities, top_multiplicities};
use super::hom::hom;
use super::module::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{Domain, Scalar};
use crate::random::random_combination;

const RANDOM_TRIALS: usize = 32;
const EXHAUSTIVE_LIMIT: u64 = 4096;
const SEED: u64 = 0x150_150;

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// A verified invertible module map.
    Yes(ModuleMap),
    /// A distinguishing invariant.
    No(String),
    Inconclusive,
}

impl IsoOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoOutcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoOutcome::No(_))
    }
}

/// Isomorphism test: invariants first, then a search in `Hom(M, N)`.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<IsoOutcome> {
    m.check_compatible(n)?;
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::No(format!("dimensions {} and {}", m.dim(), n.dim())));
    }
    if m.is_zero() {
        return Ok(IsoOutcome::Yes(ModuleMap::zero(m, n)));
    }
    let hmn = hom(m, n)?;
    let hnm = hom(n, m)?;
    let emm = hom(m, m)?.dim();
    let enn = hom(n, n)?.dim();
    if !(hmn.dim() == emm && hnm.dim() == emm && enn == emm) {
        return Ok(IsoOutcome::No(format!(
            "hom dimensions Hom(M,N)={} Hom(N,M)={} End(M)={} End(N)={}",
            hmn.dim(),
            hnm.dim(),
            emm,
            enn
        )));
    }
    for (name, a, b) in [
        ("radical series", radical_series(m)?, radical_series(n)?),
        ("socle multiplicities", socle_multiplicities(m)?, socle_multiplicities(n)?),
        ("top multiplicities", top_multiplicities(m)?, top_multiplicities(n)?),
    ] {
        if a != b {
            return Ok(IsoOutcome::No(format!("{name} {a:?} vs {b:?}")));
        }
    }
    let d = m.domain();
    let h = hmn.dim();
    for f in hmn.basis() {
        if f.is_isomorphism() {
            return Ok(IsoOutcome::Yes(f));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let f = random_combination(&hmn, &mut rng);
        if f.is_isomorphism() {
            return Ok(IsoOutcome::Yes(f));
        }
    }
    if let Domain::PrimeField(p) = d {
        let total = (p as u128).checked_pow(h as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT as u128);
        if let Some(total) = total {
            for code in 0..total as u64 {
                let mut c = code;
                let coeffs: Vec<Scalar> = (0..h)
                    .map(|_| {
                        let v = d.from_i64((c % p) as i64);
                        c /= p;
                        v
                    })
                    .collect();
                let f = hmn.element(&coeffs);
                if f.is_isomorphism() {
                    return Ok(IsoOutcome::Yes(f));
                }
            }
            return Ok(IsoOutcome::No("exhaustive search of Hom(M, N) found no isomorphism".into()));
        }
    }
    Ok(IsoOutcome::Inconclusive)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{catalog, Ring, Side};
    use crate::linalg::Matrix;

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn self_and_permuted_copies_are_isomorphic() {
        let r = ring("kA3");
        let m = Module::cogenerator(&r, Side::Left);
        assert!(is_isomorphic(&m, &m).unwrap().is_yes());
        let n = m.dim();
        let mut perm = Matrix::zeros(Domain::Rational, n, n);
        for i in 0..n {
            perm[(i, (i + 2) % n)] = Domain::Rational.one();
        }
        let (conj, iso) = m.change_basis(&perm).unwrap();
        assert!(iso.verify());
        match is_isomorphic(&conj, &m).unwrap() {
            IsoOutcome::Yes(f) => assert!(f.verify() && f.is_isomorphism()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn different_dimensions_are_not_isomorphic() {
        let r = ring("kA2");
        let a = Module::regular(&r, Side::Left);
        let b = Module::simple(&r, Side::Left, 0).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap().is_no());
    }

    #[test]
    fn projective_and_injective_simples_differ() {
        let r = ring("kA2");
        let s0 = Module::simple(&r, Side::Left, 0).unwrap();
        let s1 = Module::simple(&r, Side::Left, 1).unwrap();
        assert!(is_isomorphic(&s0, &s1).unwrap().is_no());
    }

    #[test]
    fn group_algebra_regular_vs_dual() {
        let r = ring("f2c2");
        let a = Module::regular(&r, Side::Left);
        let b = Module::cogenerator(&r, Side::Left);
        assert!(is_isomorphic(&a, &b).unwrap().is_yes());
    }
}
