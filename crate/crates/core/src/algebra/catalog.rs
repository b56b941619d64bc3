//! Built-in algebras addressable by name.

use std::sync::Arc;

use super::ring::Ring;
use super::structure::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Domain, Scalar};

/// Identifiers of the finite-dimensional catalog algebras.
pub const ALGEBRA_IDS: [&str; 6] = ["kA2", "kx2", "kx3", "kxy", "f2c2", "kA3"];

/// Catalog identifiers including the integer backend.
pub const CATALOG_IDS: [&str; 7] = ["kA2", "kx2", "kx3", "kxy", "f2c2", "kA3", "Z"];

pub fn description(id: &str) -> Option<&'static str> {
    Some(match id {
        "kA2" => "path algebra of 1 → 2 over Q (hereditary, injective envelope projective)",
        "kx2" => "Q[x]/(x^2) (self-injective)",
        "kx3" => "Q[x]/(x^3) (self-injective)",
        "kxy" => "Q[x,y]/(x^2,xy,y^2) (local, Loewy length 2, not self-injective)",
        "f2c2" => "group algebra F2[C2] (self-injective, characteristic 2)",
        "kA3" => "upper triangular 3×3 matrices over Q (path algebra of A3)",
        "Z" => "the integers (abelian group backend)",
        _ => return None,
    })
}

/// Builds a table from a sparse list of nonzero products `(i, j, k, c)`.
fn from_products(domain: Domain, n: usize, unit: &[i64], products: &[(usize, usize, usize, i64)]) -> Result<Algebra> {
    let mut mult = vec![vec![vec![domain.zero(); n]; n]; n];
    for &(i, j, k, c) in products {
        mult[i][j][k] = domain.from_i64(c);
    }
    let unit: Vec<Scalar> = unit.iter().map(|&u| domain.from_i64(u)).collect();
    Algebra::new(domain, mult, unit)
}

/// Truncated polynomial ring `k[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(domain: Domain, n: usize) -> Result<Algebra> {
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            products.push((i, j, i + j, 1));
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    from_products(domain, n, &unit, &products)
}

/// Upper triangular `m × m` matrices, basis `E_ij` (`i ≤ j`) in row-major order.
pub fn upper_triangular(domain: Domain, m: usize) -> Result<Algebra> {
    let units: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j)).expect("upper triangular unit");
    let mut products = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                products.push((a, b, index(i, l), 1));
            }
        }
    }
    let unit: Vec<i64> = units.iter().map(|&(i, j)| i64::from(i == j)).collect();
    from_products(domain, units.len(), &unit, &products)
}

/// A catalog algebra wrapped as a named ring.
pub fn ring(id: &str) -> Result<Arc<Ring>> {
    Ok(Ring::named(algebra(id)?, Some(id.to_string())))
}

/// A catalog algebra over another field; only the default field keeps the name.
pub fn ring_over(id: &str, domain: Domain) -> Result<Arc<Ring>> {
    let name = (default_domain(id)? == domain).then(|| id.to_string());
    Ok(Ring::named(algebra_over(id, domain)?, name))
}

pub fn default_domain(id: &str) -> Result<Domain> {
    match id {
        "f2c2" => Domain::prime_field(2),
        "kA2" | "kx2" | "kx3" | "kxy" | "kA3" => Ok(Domain::Rational),
        _ => Err(Error::UnknownAlgebra(id.to_string())),
    }
}

pub fn algebra(id: &str) -> Result<Algebra> {
    algebra_over(id, default_domain(id)?)
}

pub fn algebra_over(id: &str, q: Domain) -> Result<Algebra> {
    match id {
        // e1, e2, α with α = e2 α e1.
        "kA2" => from_products(q, 3, &[1, 1, 0], &[(0, 0, 0, 1), (1, 1, 1, 1), (1, 2, 2, 1), (2, 0, 2, 1)]),
        "kx2" => truncated_polynomial(q, 2),
        "kx3" => truncated_polynomial(q, 3),
        // 1, x, y.
        "kxy" => from_products(q, 3, &[1, 0, 0], &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (1, 0, 1, 1), (2, 0, 2, 1)]),
        // 1, g with g^2 = 1.
        "f2c2" if q == Domain::PrimeField(2) => {
            from_products(q, 2, &[1, 0], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)])
        }
        "f2c2" => Err(Error::Unsupported("f2c2 is defined over F2 only".into())),
        "kA3" => upper_triangular(q, 3),
        _ => Err(Error::UnknownAlgebra(id.to_string())),
    }
}

