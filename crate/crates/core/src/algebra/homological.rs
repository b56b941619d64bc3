//! `Ext¹`, `Tor₁`, the `Λ`-dual with its evaluation map, and `μ`.

use super::envelope::{syzygy, Syzygy};
use super::hom::{hom, precompose, HomSpace};
use super::module::{Module, ModuleMap};
use super::tensor::{tensor_any, tensor_with_map, TensorSpace};
use super::Side;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Quotient, Scalar, Subspace};

/// `Ext¹(M, N) = coker(Hom(P₀, N) → Hom(Ω M, N))`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub syzygy: Syzygy,
    pub hom_omega: HomSpace,
    pub hom_p0: HomSpace,
    /// Restriction `Hom(P₀, N) → Hom(Ω, N)`.
    pub restriction: Matrix,
    pub quotient: Quotient,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class of a map `Ω → N`.
    pub fn class_of(&self, phi: &Matrix) -> Vec<Scalar> {
        self.quotient.project(&self.hom_omega.coordinates(phi).expect("a module map out of the syzygy"))
    }
}

pub fn ext1(m: &Module, n: &Module) -> Result<Ext1> {
    m.check_compatible(n)?;
    let syz = syzygy(m)?;
    let hom_omega = hom(&syz.omega.module, n)?;
    let hom_p0 = hom(&syz.cover.sum.module, n)?;
    let restriction = precompose(&syz.omega.inclusion, &hom_p0, &hom_omega);
    let quotient = Quotient::of_relations(&restriction);
    Ok(Ext1 { syzygy: syz, hom_omega, hom_p0, restriction, quotient })
}

/// `Tor₁(A, B) = ker(Ω A ⊗ B → P₀ ⊗ B)`; `A` and `B` have opposite sides.
#[derive(Clone, Debug)]
pub struct Tor1 {
    pub syzygy: Syzygy,
    pub omega_tensor: TensorSpace,
    pub p0_tensor: TensorSpace,
    pub map: Matrix,
    pub kernel: Subspace,
}

impl Tor1 {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }
}

pub fn tor1(a: &Module, b: &Module) -> Result<Tor1> {
    if a.side() == b.side() {
        return Err(Error::SideMismatch { expected: a.side().flip(), found: b.side() });
    }
    let syz = syzygy(a)?;
    let (src, dst, map) = tensor_with_map(b, &syz.omega.inclusion)?;
    let kernel = Subspace::span(&map.kernel());
    Ok(Tor1 { syzygy: syz, omega_tensor: src, p0_tensor: dst, map, kernel })
}

/// `A* = Hom_Λ(A, Λ)` with the opposite-side structure coming from the
/// bimodule `Λ`.
#[derive(Clone, Debug)]
pub struct LambdaDual {
    pub hom: HomSpace,
    pub module: Module,
}

pub fn lambda_dual(a: &Module) -> Result<LambdaDual> {
    let ring = a.ring();
    let reg = Module::regular(ring, a.side());
    let h = hom(a, &reg)?;
    let other = ring.acting(a.side().flip());
    let action: Vec<Matrix> = (0..other.dim()).map(|i| h.induced_map(&h, |l| other.basis_left_mul(i).mul(l))).collect();
    let module = Module::from_parts(ring.clone(), a.side().flip(), h.dim(), action);
    Ok(LambdaDual { hom: h, module })
}

/// The evaluation `e_A : A → A**`, `e_A(a)(l) = l(a)`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub dual: LambdaDual,
    pub bidual: LambdaDual,
    pub map: ModuleMap,
}

pub fn lambda_dual_and_evaluation(a: &Module) -> Result<Evaluation> {
    let dual = lambda_dual(a)?;
    let bidual = lambda_dual(&dual.module)?;
    let d = a.domain();
    let ls = dual.hom.basis_matrices();
    let n = a.ring().dim();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|p| {
            let ev: Vec<Vec<Scalar>> = ls.iter().map(|l| l.column(p)).collect();
            let m = Matrix::from_columns(d, n, &ev);
            bidual.hom.coordinates(&m).expect("evaluation at an element is a module map")
        })
        .collect();
    let mat = Matrix::from_columns(d, bidual.module.dim(), &cols);
    let map = ModuleMap::new(a.clone(), bidual.module.clone(), mat)?;
    Ok(Evaluation { dual, bidual, map })
}

/// `μ_A(M) : A ⊗ M → Hom(A*, M)`, `(a ⊗ m)(l) = l(a) m`.
#[derive(Clone, Debug)]
pub struct MuMap {
    pub tensor: TensorSpace,
    pub hom: HomSpace,
    pub matrix: Matrix,
}

impl MuMap {
    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.tensor.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.tensor.dim() == self.hom.dim()
    }
}

pub fn mu_map(a: &Module, m: &Module) -> Result<MuMap> {
    if a.side() == m.side() {
        return Err(Error::SideMismatch { expected: a.side().flip(), found: m.side() });
    }
    let d = a.domain();
    let dual = lambda_dual(a)?;
    let h = hom(&dual.module, m)?;
    let t = tensor_any(a, m)?;
    let ls = dual.hom.basis_matrices();
    let (da, dm) = (a.dim(), m.dim());
    let mut on_k = Matrix::zeros(d, h.dim(), da * dm);
    for p in 0..da {
        for q in 0..dm {
            let cols: Vec<Vec<Scalar>> = ls.iter().map(|l| m.act(&l.column(p)).column(q)).collect();
            let phi = Matrix::from_columns(d, dm, &cols);
            let coords = h.coordinates(&phi).expect("μ(a ⊗ m) is a module map");
            let col = match a.side() {
                Side::Right => p * dm + q,
                Side::Left => q * da + p,
            };
            for (r, v) in coords.into_iter().enumerate() {
                on_k[(r, col)] = v;
            }
        }
    }
    let rel = t.quotient().relations();
    assert!(on_k.mul(&rel.basis()).is_zero(), "μ is balanced");
    let matrix = on_k.mul(&t.quotient().section());
    Ok(MuMap { tensor: t, hom: h, matrix })
}
