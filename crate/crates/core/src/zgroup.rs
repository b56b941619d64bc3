//! Finitely generated abelian groups `Z^r / im R`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, lattice_canonical, smith_normal_form, Domain, IntMatrix, Matrix, Rational, Scalar, SnfResult};

/// The group `coker(R : Z^c → Z^r)`; generators index the rows of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPresentation {
    relations: IntMatrix,
}

impl ZPresentation {
    pub fn new(relations: IntMatrix) -> Self {
        ZPresentation { relations }
    }

    pub fn free(rank: usize) -> Self {
        ZPresentation { relations: IntMatrix::zeros(rank, 0) }
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn direct_sum(&self, other: &ZPresentation) -> ZPresentation {
        let (a, b) = (&self.relations, &other.relations);
        let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
            }
        }
        ZPresentation::new(m)
    }

    /// The quotient by a lattice `L ⊇ im R`, presented by a basis of `L`.
    pub fn quotient_by(&self, sub: &ZSubmodule) -> ZPresentation {
        ZPresentation::new(sub.lattice.clone())
    }
}

/// `⊕ Z/dᵢ ⊕ Z^free_rank`, each `dᵢ ≥ 2`, with the Smith data that produced it.
#[derive(Clone, Debug)]
pub struct ZDecomposition {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    pub change_of_basis: SnfResult,
}

impl ZDecomposition {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn same_group(&self, other: &ZDecomposition) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }
}

impl fmt::Display for ZDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn snf_decompose(p: &ZPresentation) -> ZDecomposition {
    let snf = smith_normal_form(&p.relations);
    let r = p.generators();
    let diag: Vec<BigInt> = snf.invariant_factors.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
    let invariant_factors = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    let free_rank = r - diag.len();
    ZDecomposition { invariant_factors, free_rank, change_of_basis: snf }
}

/// A submodule `L / im R`, stored as the lattice `L ⊆ Z^r` (columns).
#[derive(Clone, Debug)]
pub struct ZSubmodule {
    pub lattice: IntMatrix,
    /// Presentation of `L / im R` on the basis of `L`.
    pub presentation: ZPresentation,
    pub inclusion: ZMap,
}

impl ZSubmodule {
    fn new(ambient: &ZPresentation, lattice: IntMatrix) -> Result<ZSubmodule> {
        let basis = lattice_canonical(&lattice).transpose();
        let rel = express(&basis, ambient.relations())?;
        let presentation = ZPresentation::new(rel);
        let inclusion = ZMap::new(presentation.clone(), ambient.clone(), basis.clone())?;
        Ok(ZSubmodule { lattice: basis, presentation, inclusion })
    }

    /// Equality as submodules: identical canonical lattices.
    pub fn same_submodule(&self, other: &ZSubmodule) -> bool {
        lattice_canonical(&self.lattice) == lattice_canonical(&other.lattice)
    }

    pub fn decomposition(&self) -> ZDecomposition {
        snf_decompose(&self.presentation)
    }

    pub fn is_everything(&self) -> bool {
        self.lattice.rows() == self.lattice.cols() && self.lattice.determinant().abs().is_one()
    }
}

/// A homomorphism given on ambient generators.
#[derive(Clone, Debug)]
pub struct ZMap {
    pub source: ZPresentation,
    pub target: ZPresentation,
    pub matrix: IntMatrix,
}

impl ZMap {
    pub fn new(source: ZPresentation, target: ZPresentation, matrix: IntMatrix) -> Result<ZMap> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::DimensionMismatch("integer map shape".into()));
        }
        let image = matrix.mul(source.relations());
        if !lattice_contains(target.relations(), &image) {
            return Err(Error::DimensionMismatch("map does not respect the relations".into()));
        }
        Ok(ZMap { source, target, matrix })
    }
}

fn to_rational(m: &IntMatrix) -> Matrix {
    let d = Domain::Rational;
    let mut out = Matrix::zeros(d, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = Scalar::Q(Rational::from_bigint(m.get(i, j).clone()));
        }
    }
    out
}

fn to_integer(m: &Matrix) -> Option<IntMatrix> {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let r = m[(i, j)].as_rational()?;
            if !r.is_integer() {
                return None;
            }
            out.set(i, j, r.numer());
        }
    }
    Some(out)
}

/// `X` with `basis · X = target`, for a basis of full column rank.
fn express(basis: &IntMatrix, target: &IntMatrix) -> Result<IntMatrix> {
    if target.cols() == 0 {
        return Ok(IntMatrix::zeros(basis.cols(), 0));
    }
    let x = to_rational(basis)
        .solve_matrix(&to_rational(target))
        .ok_or_else(|| Error::DimensionMismatch("relations outside the lattice".into()))?;
    to_integer(&x).ok_or_else(|| Error::DimensionMismatch("relations not integral in the lattice".into()))
}

/// Whether every column of `vectors` lies in the column lattice of `lattice`.
pub fn lattice_contains(lattice: &IntMatrix, vectors: &IntMatrix) -> bool {
    lattice_canonical(lattice) == lattice_canonical(&lattice.hstack(vectors))
}

/// Elements killed by a nonzero integer, from the Smith form: the first
/// `rank` columns of `U⁻¹`.
pub fn classical_torsion(p: &ZPresentation) -> Result<ZSubmodule> {
    let snf = smith_normal_form(p.relations());
    let rank = snf.rank();
    let u_inv = to_integer(&to_rational(&snf.u).inverse().expect("unimodular")).expect("integral inverse");
    let cols: Vec<usize> = (0..rank).collect();
    ZSubmodule::new(p, u_inv.select_columns(&cols))
}

/// `Ker(A → A**)`: `A* = {y : yᵀR = 0}` and the kernel is `{x : Yᵀx = 0}`.
pub fn z_one_torsion(p: &ZPresentation) -> Result<ZSubmodule> {
    let y = integer_kernel(&p.relations().transpose());
    let lattice = integer_kernel(&y.transpose());
    let lattice = if y.cols() == 0 { IntMatrix::identity(p.generators()) } else { lattice };
    ZSubmodule::new(p, lattice)
}

/// `Hom(A, Q/Z)` for a finite group `A`, returned in canonical form.
pub fn character_module(p: &ZPresentation) -> Result<ZDecomposition> {
    let dec = snf_decompose(p);
    if !dec.is_finite() {
        return Err(Error::InfiniteModule);
    }
    // With a square nonsingular `R`, `Hom(Z^r/RZ^r, Q/Z) = R⁻¹Z^r/Z^r ≅ Z^r/RᵀZ^r`.
    let square = lattice_canonical(p.relations()).transpose();
    Ok(snf_decompose(&ZPresentation::new(square.transpose())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(rows: &[&[i64]]) -> ZPresentation {
        ZPresentation::new(IntMatrix::from_i64(rows))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn decompositions() {
        let d = snf_decompose(&pres(&[&[6, 0], &[0, 0]]));
        assert_eq!(d.invariant_factors, big(&[6]));
        assert_eq!(d.free_rank, 1);
        assert_eq!(d.to_string(), "Z/6 + Z");
        assert_eq!(snf_decompose(&ZPresentation::free(3)).to_string(), "Z^3");
        let d = snf_decompose(&pres(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.invariant_factors, big(&[2, 4]));
        assert_eq!(d.to_string(), "Z/2 + Z/4");
        assert_eq!(snf_decompose(&pres(&[&[1]])).to_string(), "0");
    }

    #[test]
    fn torsion_of_mixed_group() {
        let p = pres(&[&[6, 0], &[0, 0]]);
        let s = classical_torsion(&p).unwrap();
        let t = z_one_torsion(&p).unwrap();
        assert!(s.same_submodule(&t));
        assert_eq!(s.decomposition().to_string(), "Z/6");
    }

    #[test]
    fn free_and_finite_extremes() {
        let f = ZPresentation::free(3);
        assert!(classical_torsion(&f).unwrap().decomposition().is_zero());
        assert!(z_one_torsion(&f).unwrap().decomposition().is_zero());
        let g = pres(&[&[2, 4], &[6, 8]]);
        let t = z_one_torsion(&g).unwrap();
        assert!(t.is_everything());
        assert_eq!(classical_torsion(&g).unwrap().decomposition().to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn character_modules() {
        assert_eq!(character_module(&pres(&[&[6]])).unwrap().to_string(), "Z/6");
        assert_eq!(character_module(&pres(&[&[2, 0], &[0, 4]])).unwrap().to_string(), "Z/2 + Z/4");
        assert!(matches!(character_module(&ZPresentation::free(1)), Err(Error::InfiniteModule)));
        let p = pres(&[&[2, 4, 6], &[6, 8, 2]]);
        assert!(character_module(&p).unwrap().same_group(&snf_decompose(&p)));
    }

    #[test]
    fn map_validation() {
        let a = pres(&[&[2]]);
        let b = pres(&[&[4]]);
        assert!(ZMap::new(a.clone(), b.clone(), IntMatrix::from_i64(&[&[2]])).is_ok());
        assert!(ZMap::new(a, b, IntMatrix::from_i64(&[&[1]])).is_err());
    }

    fn arb_presentation() -> impl Strategy<Value = ZPresentation> {
        (1usize..=4, 0usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
                ZPresentation::new(IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn torsion_paths_agree(p in arb_presentation()) {
            let s = classical_torsion(&p).unwrap();
            let t = z_one_torsion(&p).unwrap();
            prop_assert!(s.same_submodule(&t));
            prop_assert!(s.decomposition().is_finite());
        }

        #[test]
        fn torsion_free_quotient(p in arb_presentation()) {
            let s = classical_torsion(&p).unwrap();
            let q = p.quotient_by(&s);
            prop_assert!(classical_torsion(&q).unwrap().decomposition().is_zero());
            prop_assert_eq!(snf_decompose(&q).free_rank, snf_decompose(&p).free_rank);
        }

        #[test]
        fn torsion_is_additive(p in arb_presentation(), q in arb_presentation()) {
            let sum = p.direct_sum(&q);
            let ts = classical_torsion(&sum).unwrap().decomposition();
            let tp = classical_torsion(&p).unwrap();
            let tq = classical_torsion(&q).unwrap();
            let both = tp.presentation.direct_sum(&tq.presentation);
            prop_assert!(ts.same_group(&snf_decompose(&both)));
        }

        #[test]
        fn quotients_of_finite_groups_are_torsion(p in arb_presentation()) {
            let t = classical_torsion(&p).unwrap();
            // T / 2T is a quotient of the torsion module T.
            let pr = &t.presentation;
            let n = pr.generators();
            let twice: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::from(2) } else { BigInt::zero() }).collect()).collect();
            let q = ZPresentation::new(pr.relations().hstack(&IntMatrix::from_rows(n, twice)));
            prop_assert!(z_one_torsion(&q).unwrap().is_everything() || n == 0);
        }
    }
}
