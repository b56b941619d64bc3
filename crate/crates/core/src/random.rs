//! Seeded random scalars and module maps.

use rand::Rng;

use crate::algebra::{HomSpace, ModuleMap};
use crate::linalg::{Domain, Scalar};

/// Small integers over `Q`, uniform residues over `F_p`.
pub fn random_scalar<R: Rng>(d: Domain, rng: &mut R) -> Scalar {
    match d {
        Domain::Rational => d.from_i64(rng.gen_range(-3..=3)),
        Domain::PrimeField(p) => d.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_vector<R: Rng>(d: Domain, len: usize, rng: &mut R) -> Vec<Scalar> {
    (0..len).map(|_| random_scalar(d, rng)).collect()
}

/// A random element of a hom space.
pub fn random_combination<R: Rng>(h: &HomSpace, rng: &mut R) -> ModuleMap {
    let coeffs = random_vector(h.source().domain(), h.dim(), rng);
    h.element(&coeffs)
}
