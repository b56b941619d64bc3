//! An algebra together with its opposite and lazily computed structure:
//! Jacobson radical, a complete set of primitive orthogonal idempotents and
//! the action matrices of indecomposable projectives, injectives and simples.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::structure::Algebra;
use super::Side;
use crate::error::{Error, Result};
use crate::linalg::{Domain, Matrix, Quotient, Rational, Scalar, Subspace};

const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug)]
enum Failure {
    NotElementary(String),
    Unsupported(String),
}

impl Failure {
    fn to_error(&self) -> Error {
        match self {
            Failure::NotElementary(s) => Error::NotElementary(s.clone()),
            Failure::Unsupported(s) => Error::Unsupported(s.clone()),
        }
    }
}

/// Side-independent structure: the radical and the idempotents are the same
/// subsets of `Λ` and `Λ^op`.
#[derive(Clone, Debug)]
pub struct Basic {
    pub radical: Subspace,
    pub idempotents: Vec<Vec<Scalar>>,
    /// `characters[t][i]` is the scalar by which `b_i` acts on the simple `S_t`.
    pub characters: Vec<Vec<Scalar>>,
    pub generators: Vec<usize>,
}

/// Action data of the indecomposable modules of one chirality.
#[derive(Clone, Debug)]
pub struct SideModules {
    /// `Ae_t` as a subspace of the acting algebra, with its action.
    pub projective: Vec<(Subspace, Vec<Matrix>)>,
    /// `D(e_t A)`, with `e_t A` recorded as a subspace.
    pub injective: Vec<(Subspace, Vec<Matrix>)>,
    pub simple: Vec<Vec<Matrix>>,
}

#[derive(Debug)]
pub struct Ring {
    algebra: Algebra,
    opposite: Algebra,
    name: Option<String>,
    basic: OnceLock<std::result::Result<Basic, Failure>>,
    sides: [OnceLock<SideModules>; 2],
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
    }
}

impl Ring {
    pub fn new(algebra: Algebra) -> Arc<Ring> {
        Self::named(algebra, None)
    }

    pub fn named(algebra: Algebra, name: Option<String>) -> Arc<Ring> {
        let opposite = algebra.opposite();
        Arc::new(Ring { algebra, opposite, name, basic: OnceLock::new(), sides: [OnceLock::new(), OnceLock::new()] })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn domain(&self) -> Domain {
        self.algebra.domain()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The algebra whose left modules are the modules of the given side.
    pub fn acting(&self, side: Side) -> &Algebra {
        match side {
            Side::Left => &self.algebra,
            Side::Right => &self.opposite,
        }
    }

    pub fn basic(&self) -> Result<&Basic> {
        self.basic.get_or_init(|| compute_basic(&self.algebra)).as_ref().map_err(Failure::to_error)
    }

    pub fn radical(&self) -> Result<&Subspace> {
        Ok(&self.basic()?.radical)
    }

    pub fn num_simples(&self) -> Result<usize> {
        Ok(self.basic()?.idempotents.len())
    }

    pub fn generators(&self) -> Result<&[usize]> {
        Ok(&self.basic()?.generators)
    }

    pub fn side_modules(&self, side: Side) -> Result<&SideModules> {
        let basic = self.basic()?;
        let slot = &self.sides[side as usize];
        Ok(slot.get_or_init(|| compute_side(self.acting(side), basic)))
    }

    pub fn is_elementary(&self) -> bool {
        self.basic().is_ok()
    }
}

/// Coordinates of each column of `op · basis(sub)` in the canonical basis of `sub`.
pub(crate) fn restrict(sub: &Subspace, op: &Matrix) -> Matrix {
    sub.coordinates_matrix(&op.mul(&sub.basis())).expect("subspace is invariant under the operator")
}

fn compute_basic(a: &Algebra) -> std::result::Result<Basic, Failure> {
    let radical = radical(a)?;
    let quot = Quotient::new(radical.clone());
    let bar = quotient_algebra(a, &quot);
    if !bar.is_commutative() {
        return Err(Failure::NotElementary("semisimple quotient is not commutative".into()));
    }
    let bar_idem = split_idempotents(&bar)?;
    let idempotents = lift_idempotents(a, &quot, &bar_idem);
    let r = bar_idem.len();
    let e = Matrix::from_columns(a.domain(), r, &bar_idem);
    let einv = e.inverse().expect("idempotents form a basis of the semisimple quotient");
    let mut characters = vec![Vec::with_capacity(a.dim()); r];
    for i in 0..a.dim() {
        let c = einv.mul_vec(&quot.project(&a.basis_vector(i)));
        for (t, x) in c.into_iter().enumerate() {
            characters[t].push(x);
        }
    }
    Ok(Basic { radical, idempotents, characters, generators: a.generators() })
}

/// Jacobson radical. The trace form is used when it is nondegenerate modulo
/// the radical (characteristic 0 or larger than the dimension); otherwise
/// elements `x` with `Λx` nilpotent are enumerated over the finite field.
fn radical(a: &Algebra) -> std::result::Result<Subspace, Failure> {
    let n = a.dim();
    let d = a.domain();
    let p = d.characteristic();
    if p == 0 || p > n as u64 {
        let traces: Vec<Scalar> = (0..n).map(|k| trace(a.basis_left_mul(k))).collect();
        let mut form = Matrix::zeros(d, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = d.zero();
                for (k, t) in traces.iter().enumerate() {
                    s = s.add_mul(a.constant(i, j, k), t);
                }
                form[(i, j)] = s;
            }
        }
        return Ok(Subspace::span(&form.transpose().kernel()));
    }
    let total = (p as u128).checked_pow(n as u32).filter(|&t| t <= ENUMERATION_LIMIT as u128);
    let Some(total) = total else {
        return Err(Failure::Unsupported(format!("radical over F_{p} in dimension {n} exceeds the enumeration limit")));
    };
    let mut nil = Vec::new();
    for code in 0..total as u64 {
        let mut c = code;
        let x: Vec<Scalar> = (0..n)
            .map(|_| {
                let v = d.from_i64((c % p) as i64);
                c /= p;
                v
            })
            .collect();
        if left_ideal_is_nilpotent(a, &x) {
            nil.push(x);
        }
    }
    Ok(Subspace::span_vectors(d, n, &nil))
}

fn trace(m: &Matrix) -> Scalar {
    let mut s = m.domain().zero();
    for i in 0..m.rows() {
        s = s.add(&m[(i, i)]);
    }
    s
}

fn left_ideal_is_nilpotent(a: &Algebra, x: &[Scalar]) -> bool {
    let n = a.dim();
    let v = Subspace::span(&a.right_mul(x));
    let mut power = v.clone();
    for _ in 0..=n {
        if power.is_zero() {
            return true;
        }
        let pb = power.basis();
        let vb = v.basis();
        let prods: Vec<Vec<Scalar>> =
            pb.columns().iter().flat_map(|u| vb.columns().into_iter().map(move |w| a.mul(u, &w))).collect();
        power = Subspace::span_vectors(a.domain(), n, &prods);
    }
    power.is_zero()
}

fn quotient_algebra(a: &Algebra, q: &Quotient) -> Algebra {
    let r = q.dim();
    let s = q.section();
    let cols = s.columns();
    let mult: Vec<Vec<Vec<Scalar>>> =
        (0..r).map(|i| (0..r).map(|j| q.project(&a.mul(&cols[i], &cols[j]))).collect()).collect();
    Algebra::new(a.domain(), mult, q.project(a.unit())).expect("quotient by an ideal is an algebra")
}

/// Primitive idempotents of a commutative split semisimple algebra.
fn split_idempotents(b: &Algebra) -> std::result::Result<Vec<Vec<Scalar>>, Failure> {
    let mut queue = vec![b.unit().to_vec()];
    let mut out = Vec::new();
    while let Some(e) = queue.pop() {
        let le = b.left_mul(&e);
        let corner = Subspace::span(&le);
        if corner.dim() == 1 {
            out.push(e);
            continue;
        }
        let basis = corner.basis().columns();
        let (x, poly) = basis
            .iter()
            .map(|x| (x.clone(), b.minimal_polynomial(x, &e)))
            .find(|(_, p)| p.len() > 2)
            .expect("a corner of dimension > 1 has an element of degree > 1");
        let roots = roots_in_field(&poly)?;
        if roots.len() + 1 != poly.len() {
            return Err(Failure::NotElementary("semisimple quotient does not split over the base field".into()));
        }
        for (j, lj) in roots.iter().enumerate() {
            let mut acc = e.clone();
            for (l, ll) in roots.iter().enumerate() {
                if l == j {
                    continue;
                }
                let factor: Vec<Scalar> = x.iter().zip(&e).map(|(xi, ei)| xi.sub(&ll.mul(ei))).collect();
                let scale = lj.sub(ll).inv();
                acc = b.mul(&acc, &factor).iter().map(|v| v.mul(&scale)).collect();
            }
            queue.push(acc);
        }
    }
    out.reverse();
    Ok(out)
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.domain().zero();
    for c in poly.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Distinct roots of `poly` (lowest degree first) in its coefficient field.
fn roots_in_field(poly: &[Scalar]) -> std::result::Result<Vec<Scalar>, Failure> {
    let d = poly[0].domain();
    let mut roots = Vec::new();
    match d {
        Domain::PrimeField(p) => {
            if p > ENUMERATION_LIMIT {
                return Err(Failure::Unsupported(format!("root finding over F_{p}")));
            }
            for v in 0..p {
                let x = d.from_i64(v as i64);
                if eval(poly, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
        Domain::Rational => {
            let coeffs: Vec<Rational> = poly.iter().map(|c| c.as_rational().expect("rational").clone()).collect();
            let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(&c.denom()));
            let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
            let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
            if low > 0 {
                roots.push(d.zero());
            }
            let a0 = ints[low].abs();
            let ad = ints.last().expect("nonempty").abs();
            let (Some(a0), Some(ad)) = (a0.to_u64(), ad.to_u64()) else {
                return Err(Failure::Unsupported("rational root search with huge coefficients".into()));
            };
            for u in divisors(a0) {
                for v in divisors(ad) {
                    for sign in [1i64, -1] {
                        let r = Scalar::Q(Rational::new(sign * u as i64, v as i64));
                        if eval(poly, &r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

fn lift_idempotents(a: &Algebra, q: &Quotient, bar: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let d = a.domain();
    let section = q.section();
    let mut f = a.unit().to_vec();
    let mut out = Vec::with_capacity(bar.len());
    for eb in &bar[..bar.len() - 1] {
        let y0 = section.mul_vec(eb);
        let mut y = a.mul(&a.mul(&f, &y0), &f);
        for _ in 0..64 {
            let y2 = a.mul(&y, &y);
            if y2 == y {
                break;
            }
            let y3 = a.mul(&y2, &y);
            y = y2.iter().zip(&y3).map(|(s, c)| d.from_i64(3).mul(s).sub(&d.from_i64(2).mul(c))).collect();
        }
        assert_eq!(a.mul(&y, &y), y, "idempotent lifting converges");
        f = f.iter().zip(&y).map(|(u, v)| u.sub(v)).collect();
        out.push(y);
    }
    out.push(f);
    out
}

fn compute_side(a: &Algebra, basic: &Basic) -> SideModules {
    let n = a.dim();
    let projective = basic
        .idempotents
        .iter()
        .map(|e| {
            let sub = Subspace::span(&a.right_mul(e));
            let action = (0..n).map(|i| restrict(&sub, a.basis_left_mul(i))).collect();
            (sub, action)
        })
        .collect();
    let injective = basic
        .idempotents
        .iter()
        .map(|e| {
            let sub = Subspace::span(&a.left_mul(e));
            let action = (0..n).map(|i| restrict(&sub, a.basis_right_mul(i)).transpose()).collect();
            (sub, action)
        })
        .collect();
    let simple = basic
        .characters
        .iter()
        .map(|chi| chi.iter().map(|c| Matrix::from_vec(a.domain(), 1, 1, vec![c.clone()])).collect())
        .collect();
    SideModules { projective, injective, simple }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    fn ring(id: &str) -> Arc<Ring> {
        Ring::new(catalog::algebra(id).unwrap())
    }

    #[test]
    fn radical_dimensions() {
        for (id, r, s) in [("kA2", 1, 2), ("kx2", 1, 1), ("kx3", 2, 1), ("kxy", 2, 1), ("f2c2", 1, 1), ("kA3", 3, 3)] {
            let ring = ring(id);
            assert_eq!(ring.radical().unwrap().dim(), r, "{id}");
            assert_eq!(ring.num_simples().unwrap(), s, "{id}");
        }
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        for id in catalog::ALGEBRA_IDS {
            let ring = ring(id);
            let a = ring.algebra();
            let es = &ring.basic().unwrap().idempotents;
            let mut sum = vec![a.domain().zero(); a.dim()];
            for (i, e) in es.iter().enumerate() {
                for (j, f) in es.iter().enumerate() {
                    let p = a.mul(e, f);
                    if i == j {
                        assert_eq!(&p, e);
                    } else {
                        assert!(p.iter().all(Scalar::is_zero));
                    }
                }
                sum = sum.iter().zip(e).map(|(s, x)| s.add(x)).collect();
            }
            assert_eq!(sum, a.unit());
        }
    }

    #[test]
    fn projective_and_injective_dimensions_for_path_algebra() {
        let ring = ring("kA2");
        let left = ring.side_modules(Side::Left).unwrap();
        let mut p: Vec<usize> = left.projective.iter().map(|(s, _)| s.dim()).collect();
        let mut i: Vec<usize> = left.injective.iter().map(|(s, _)| s.dim()).collect();
        p.sort();
        i.sort();
        assert_eq!(p, vec![1, 2]);
        assert_eq!(i, vec![1, 2]);
    }

    #[test]
    fn full_matrix_algebra_is_rejected() {
        let q = Domain::Rational;
        // M_2(Q) on E11, E12, E21, E22.
        let units = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let mut mult = vec![vec![vec![q.zero(); 4]; 4]; 4];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    let c = units.iter().position(|&u| u == (i, l)).unwrap();
                    mult[a][b][c] = q.one();
                }
            }
        }
        let unit = vec![q.one(), q.zero(), q.zero(), q.one()];
        let ring = Ring::new(Algebra::new(q, mult, unit).unwrap());
        assert!(matches!(ring.basic(), Err(Error::NotElementary(_))));
    }

    #[test]
    fn non_split_field_extension_is_rejected() {
        let q = Domain::Rational;
        // Q[x]/(x^2 - 2).
        let mut mult = vec![vec![vec![q.zero(); 2]; 2]; 2];
        mult[0][0][0] = q.one();
        mult[0][1][1] = q.one();
        mult[1][0][1] = q.one();
        mult[1][1][0] = q.from_i64(2);
        let ring = Ring::new(Algebra::new(q, mult, vec![q.one(), q.zero()]).unwrap());
        assert!(matches!(ring.basic(), Err(Error::NotElementary(_))));
    }

    #[test]
    fn split_semisimple_product_is_found() {
        let q = Domain::Rational;
        // Q[x]/(x^2 - 1) ≅ Q × Q.
        let mut mult = vec![vec![vec![q.zero(); 2]; 2]; 2];
        mult[0][0][0] = q.one();
        mult[0][1][1] = q.one();
        mult[1][0][1] = q.one();
        mult[1][1][0] = q.one();
        let ring = Ring::new(Algebra::new(q, mult, vec![q.one(), q.zero()]).unwrap());
        assert_eq!(ring.radical().unwrap().dim(), 0);
        assert_eq!(ring.num_simples().unwrap(), 2);
    }
}
