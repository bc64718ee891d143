//! Explicit matrix models `(V, B or S, τ)` with `𝔠` as block-scalar matrices.
//!
//! The convention for the real structure is `τ(v) = T·conj(v)`, so that
//! `σ(X) = T X̄ T⁻¹`; unitary groups use `σ(X) = −S⁻¹ X† S`.

use num_traits::{One, Zero};

use crate::error::{FlexError, Result};
use crate::exact::{Gaussian, Matrix, Signature};
use crate::group::{Family, GroupSpec, Shape};
use crate::roots::param_offsets;
use crate::scalar::int;
use crate::slots::{Slot, SlotKind};
use crate::{GaussianMatrix, GaussianRational, Rational};

pub const DEFAULT_DIM_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Involution {
    /// Complex group: no real structure.
    None,
    /// `σ(X) = T X̄ T⁻¹`.
    Antilinear { t: GaussianMatrix, t_inv: GaussianMatrix },
    /// `σ(X) = −S⁻¹ X† S`.
    Unitary { s: GaussianMatrix, s_inv: GaussianMatrix },
}

#[derive(Clone, Debug, PartialEq)]
pub enum AmbientAlgebra {
    /// Traceless matrices.
    Sl,
    /// `{X : Xᵀ B + B X = 0}`.
    Skew { b: GaussianMatrix },
}

#[derive(Clone, Debug)]
pub struct ExactModel {
    pub spec: GroupSpec,
    pub n: usize,
    pub algebra: AmbientAlgebra,
    pub involution: Involution,
    pub eta: Option<i8>,
    /// One diagonal generator per slot parameter.
    pub generators: Vec<GaussianMatrix>,
    /// Basis of `𝔠`.
    pub center: Vec<GaussianMatrix>,
}

fn g(re: i64, im: i64) -> GaussianRational {
    Gaussian::new(int(re), int(im))
}

fn signs(sig: Signature) -> Vec<i64> {
    let mut v = vec![1; sig.pos];
    v.extend(std::iter::repeat_n(-1, sig.neg));
    v
}

/// Local data of one slot: form, real structure, diagonal generators.
struct Piece {
    form: GaussianMatrix,
    t: GaussianMatrix,
    gens: Vec<Vec<GaussianRational>>,
}

fn j_blocks(d: usize) -> GaussianMatrix {
    let mut t = Matrix::zeros(d, d);
    for k in 0..d / 2 {
        t[(2 * k, 2 * k + 1)] = g(-1, 0);
        t[(2 * k + 1, 2 * k)] = g(1, 0);
    }
    t
}

fn pairing(d: usize, eps: i64) -> GaussianMatrix {
    let mut b = Matrix::zeros(2 * d, 2 * d);
    for a in 0..d {
        b[(a, d + a)] = g(1, 0);
        b[(d + a, a)] = g(eps, 0);
    }
    b
}

fn diag_of(parts: &[(usize, GaussianRational)]) -> Vec<GaussianRational> {
    parts.iter().flat_map(|(k, v)| std::iter::repeat_n(v.clone(), *k)).collect()
}

fn piece(spec: &GroupSpec, slot: &Slot) -> Result<Piece> {
    let d = slot.d;
    let eta = spec.eta().unwrap_or(1);
    let eps = spec.epsilon().unwrap_or(1) as i64;
    let id = |n| Matrix::identity(n);
    let real_t = |n: usize| if eta == -1 { j_blocks(n) } else { Matrix::identity(n) };
    let p = match slot.kind {
        SlotKind::LinReal => Piece { form: id(d), t: real_t(d), gens: vec![diag_of(&[(d, g(1, 0))])] },
        SlotKind::LinComplex => Piece { form: id(d), t: id(d), gens: vec![diag_of(&[(d, g(1, 0))])] },
        SlotKind::LinPair => {
            let mut t = Matrix::zeros(2 * d, 2 * d);
            for a in 0..d {
                t[(d + a, a)] = g(1, 0);
                t[(a, d + a)] = g(eta as i64, 0);
            }
            Piece {
                form: id(2 * d),
                t,
                gens: vec![diag_of(&[(2 * d, g(1, 0))]), diag_of(&[(d, g(0, 1)), (d, g(0, -1))])],
            }
        }
        SlotKind::UImag { sig } => {
            let s = Matrix::diag(&signs(sig).iter().map(|&x| g(x, 0)).collect::<Vec<_>>());
            Piece { form: s, t: id(d), gens: vec![diag_of(&[(d, g(0, 1))])] }
        }
        SlotKind::UPaired => Piece {
            form: pairing(d, 1),
            t: id(2 * d),
            gens: vec![diag_of(&[(d, g(1, 0)), (d, g(-1, 0))]), diag_of(&[(2 * d, g(0, 1))])],
        },
        SlotKind::Zero { sig } => zero_piece(spec, d, sig)?,
        SlotKind::OImag { sig } => {
            let twisted = eps * eta as i64 == -1;
            let mut t = Matrix::zeros(2 * d, 2 * d);
            for (a, h) in signs(sig).into_iter().enumerate() {
                let tt = eps * h;
                let (c, c2) = if twisted { (g(0, tt), g(0, -eps * tt)) } else { (g(tt, 0), g(eps * tt, 0)) };
                t[(d + a, a)] = c;
                t[(a, d + a)] = c2;
            }
            Piece { form: pairing(d, eps), t, gens: vec![diag_of(&[(d, g(0, 1)), (d, g(0, -1))])] }
        }
        SlotKind::OReal => Piece {
            form: pairing(d, eps),
            t: Matrix::block_diag(&[real_t(d), real_t(d)]),
            gens: vec![diag_of(&[(d, g(1, 0)), (d, g(-1, 0))])],
        },
        SlotKind::OCplx => {
            let mut t = Matrix::zeros(4 * d, 4 * d);
            for a in 0..2 * d {
                t[(2 * d + a, a)] = g(1, 0);
                t[(a, 2 * d + a)] = g(eta as i64, 0);
            }
            Piece {
                form: Matrix::block_diag(&[pairing(d, eps), pairing(d, eps)]),
                t,
                gens: vec![
                    diag_of(&[(d, g(1, 0)), (d, g(-1, 0)), (d, g(1, 0)), (d, g(-1, 0))]),
                    diag_of(&[(d, g(0, 1)), (d, g(0, -1)), (d, g(0, -1)), (d, g(0, 1))]),
                ],
            }
        }
        SlotKind::CPair => {
            Piece { form: pairing(d, eps), t: id(2 * d), gens: vec![diag_of(&[(d, g(1, 0)), (d, g(-1, 0))])] }
        }
    };
    Ok(p)
}

fn zero_piece(spec: &GroupSpec, d: usize, sig: Option<Signature>) -> Result<Piece> {
    let id = Matrix::identity(d);
    let need = |s: Option<Signature>| {
        s.ok_or_else(|| FlexError::Validation(format!("{spec}: self-dual part needs a signature")))
    };
    let symplectic = || pairing(d / 2, -1);
    let (form, t) = match spec.family {
        Family::So { .. } => {
            let s = need(sig)?;
            (Matrix::diag(&signs(s).iter().map(|&x| g(x, 0)).collect::<Vec<_>>()), id)
        }
        Family::SoC { .. } => (id.clone(), id),
        Family::SpC { .. } | Family::SpR { .. } => (symplectic(), id),
        Family::Sp { .. } => {
            let s = need(sig)?;
            let lines: Vec<i64> = signs(Signature::new(s.pos / 2, s.neg / 2));
            let mut b = Matrix::zeros(d, d);
            for (k, t) in lines.iter().enumerate() {
                let beta = -t;
                b[(2 * k, 2 * k + 1)] = g(beta, 0);
                b[(2 * k + 1, 2 * k)] = g(-beta, 0);
            }
            (b, j_blocks(d))
        }
        Family::SoStar { .. } => {
            let mut b = Matrix::zeros(d, d);
            for k in 0..d / 2 {
                b[(2 * k, 2 * k + 1)] = g(0, 1);
                b[(2 * k + 1, 2 * k)] = g(0, 1);
            }
            (b, j_blocks(d))
        }
        _ => return Err(FlexError::Internal(format!("{spec} has no self-dual part"))),
    };
    Ok(Piece { form, t, gens: vec![] })
}

/// Builds the model for the given slots and `𝔠` basis (parameter coordinates).
pub fn synthesize_model(spec: &GroupSpec, slots: &[Slot], basis: &[Vec<Rational>], cap: usize) -> Result<ExactModel> {
    let n: usize = slots.iter().map(Slot::total_dim).sum();
    if n > cap {
        return Err(FlexError::Validation(format!("model dimension {n} exceeds cap {cap}")));
    }
    let pieces: Vec<Piece> = slots.iter().map(|s| piece(spec, s)).collect::<Result<_>>()?;
    let form = Matrix::block_diag(&pieces.iter().map(|p| p.form.clone()).collect::<Vec<_>>());
    let t = Matrix::block_diag(&pieces.iter().map(|p| p.t.clone()).collect::<Vec<_>>());
    let (_, np) = param_offsets(slots);
    let mut generators = Vec::with_capacity(np);
    let mut start = 0;
    for (p, s) in pieces.iter().zip(slots) {
        for gdiag in &p.gens {
            let mut full = vec![GaussianRational::zero(); n];
            for (k, v) in gdiag.iter().enumerate() {
                full[start + k] = v.clone();
            }
            generators.push(Matrix::diag(&full));
        }
        start += s.total_dim();
    }
    let center = basis
        .iter()
        .map(|b| {
            generators.iter().zip(b).fold(Matrix::zeros(n, n), |acc: GaussianMatrix, (gm, c)| {
                acc.add(&gm.scale(&Gaussian::real(c.clone())))
            })
        })
        .collect();
    let (algebra, involution) = match spec.shape() {
        Shape::Linear => (AmbientAlgebra::Sl, antilinear(spec, t)?),
        Shape::Unitary => {
            let s_inv = form.inverse().ok_or_else(|| FlexError::Internal("singular Hermitian form".into()))?;
            (AmbientAlgebra::Sl, Involution::Unitary { s: form, s_inv })
        }
        Shape::Orthogonal => (AmbientAlgebra::Skew { b: form }, antilinear(spec, t)?),
    };
    Ok(ExactModel { spec: *spec, n, algebra, involution, eta: spec.eta(), generators, center })
}

fn antilinear(spec: &GroupSpec, t: GaussianMatrix) -> Result<Involution> {
    if spec.is_complex() {
        return Ok(Involution::None);
    }
    let t_inv = t.inverse().ok_or_else(|| FlexError::Internal("singular real structure".into()))?;
    Ok(Involution::Antilinear { t, t_inv })
}

impl ExactModel {
    /// `σ(X)`; identity for complex groups.
    pub fn sigma(&self, x: &GaussianMatrix) -> GaussianMatrix {
        match &self.involution {
            Involution::None => x.clone(),
            Involution::Antilinear { t, t_inv } => t.mul(&x.conj()).mul(t_inv),
            Involution::Unitary { s, s_inv } => s_inv.mul(&x.adjoint()).mul(s).neg(),
        }
    }

    pub fn in_complex_algebra(&self, x: &GaussianMatrix) -> bool {
        match &self.algebra {
            AmbientAlgebra::Sl => x.trace().is_zero(),
            AmbientAlgebra::Skew { b } => x.transpose().mul(b).add(&b.mul(x)).is_zero(),
        }
    }

    /// `τ` is compatible with the form and squares to `η`.
    pub fn structure_consistent(&self) -> bool {
        match (&self.involution, &self.algebra) {
            (Involution::Antilinear { t, .. }, alg) => {
                let eta = Gaussian::real(int(self.eta.unwrap_or(1) as i64));
                let sq = t.mul(&t.conj()) == Matrix::scalar(self.n, eta);
                let compat = match alg {
                    AmbientAlgebra::Skew { b } => t.transpose().mul(b).mul(t) == b.conj(),
                    AmbientAlgebra::Sl => true,
                };
                sq && compat
            }
            (Involution::Unitary { s, .. }, _) => s.is_hermitian(),
            (Involution::None, _) => true,
        }
    }

    /// Exact trace form `Tr(σ(X_a) X_b)` on a list of matrices.
    pub fn trace_form(&self, basis: &[GaussianMatrix]) -> GaussianMatrix {
        let sig: Vec<_> = basis.iter().map(|x| self.sigma(x)).collect();
        Matrix::from_fn(basis.len(), basis.len(), |a, b| sig[a].mul(&basis[b]).trace())
    }
}

/// Exact matrix of `Tr(σ(X)X')` on a basis of a root space, checking the
/// basis lies in `𝔤_λ` for the given values of `λ` on the center basis.
pub fn killing_form_matrix(
    model: &ExactModel,
    lambda: &[GaussianRational],
    basis: &[GaussianMatrix],
) -> Result<GaussianMatrix> {
    for x in basis {
        if !model.in_complex_algebra(x) {
            return Err(FlexError::Contract("basis element outside 𝔤_ℂ".into()));
        }
        for (c, l) in model.center.iter().zip(lambda) {
            if c.commutator(x) != x.scale(l) {
                return Err(FlexError::Contract("basis element is not a λ-weight vector".into()));
            }
        }
    }
    Ok(model.trace_form(basis))
}

/// `E_ij` matrix unit.
pub fn unit(n: usize, i: usize, j: usize) -> GaussianMatrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = GaussianRational::one();
    m
}
