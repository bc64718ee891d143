//! Roots of `𝔠` on the standard and adjoint representations.

use num_traits::Zero;

use crate::calibration::{kappa, RuleKind};
use crate::error::{FlexError, Result};
use crate::exact::{Gaussian, Matrix, Signature};
use crate::forms::IsotypicalBlock;
use crate::group::{GroupSpec, Shape};
use crate::scalar::int;
use crate::slots::{derive_slots, Slot, SlotKind};
use crate::{GaussianRational, Rational};

/// A root `ℓ` of `𝔠` on `V`.
#[derive(Clone, PartialEq, Debug)]
pub struct StandardRoot {
    pub id: String,
    pub slot: usize,
    pub dim: usize,
    /// Values on the basis of `𝔠`.
    pub coords: Vec<GaussianRational>,
    pub pure_imaginary: bool,
    pub signature: Option<Signature>,
    /// Index of `−ℓ` (orthogonal families).
    pub neg: Option<usize>,
    /// Index of the `τ`-image when it is a different root of the same slot.
    pub conj: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum RootSource {
    /// Weight of `Hom(I_from, I_to)`: `ℓ_to − ℓ_from`.
    Difference { to: usize, from: usize },
    /// `2ℓ`.
    Double { of: usize },
    /// `ℓ` paired with the zero root.
    Single { of: usize },
}

/// A nonzero root `λ` of `𝔠` on `𝔤_ℂ`.
#[derive(Clone, PartialEq, Debug)]
pub struct AdjointRoot {
    pub id: String,
    pub source: RootSource,
    pub dim: usize,
    pub coords: Vec<GaussianRational>,
    pub pure_imaginary: bool,
    pub signature: Option<Signature>,
    pub rule: Option<RuleKind>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub spec: GroupSpec,
    pub slots: Vec<Slot>,
    /// Roots are complex-linear on a complex `𝔠` (complex groups).
    pub complex_linear: bool,
    /// Basis of `𝔠` in slot-parameter coordinates.
    pub basis: Vec<Vec<Rational>>,
    pub standard: Vec<StandardRoot>,
    pub adjoint: Vec<AdjointRoot>,
    /// Complex dimension of the zero weight space of `𝔤_ℂ`.
    pub zero_dim: usize,
}

impl RootSystem {
    pub fn build(spec: &GroupSpec, blocks: &[IsotypicalBlock]) -> Result<Self> {
        let slots = derive_slots(spec, blocks)?;
        Self::from_slots(spec, slots)
    }

    pub fn from_slots(spec: &GroupSpec, slots: Vec<Slot>) -> Result<Self> {
        let (basis, standard) = standard_roots_from_slots(spec, &slots);
        let adjoint = adjoint_roots(spec, &slots, &standard)?;
        let zero_dim = zero_weight_dim(spec, &slots);
        let sys = RootSystem { spec: *spec, slots, complex_linear: spec.is_complex(), basis, standard, adjoint, zero_dim };
        Ok(sys)
    }

    pub fn dim_c(&self) -> usize {
        self.basis.len()
    }

    /// Real dimension of `𝔠`, the ambient dimension of the balancedness test.
    pub fn real_dim_c(&self) -> usize {
        if self.complex_linear {
            2 * self.dim_c()
        } else {
            self.dim_c()
        }
    }

    /// Real and imaginary parts of a root as real functionals on `𝔠`.
    pub fn real_parts(&self, coords: &[GaussianRational]) -> (Vec<Rational>, Vec<Rational>) {
        real_parts(coords, self.complex_linear)
    }

    pub fn std_index(&self, id: &str) -> Option<usize> {
        self.standard.iter().position(|r| r.id == id)
    }

    pub fn adj_index(&self, id: &str) -> Option<usize> {
        self.adjoint.iter().position(|r| r.id == id)
    }

    /// Index of `−λ` in the adjoint list.
    pub fn adj_negative(&self, i: usize) -> Option<usize> {
        let neg: Vec<_> = self.adjoint[i].coords.iter().map(|c| -c.clone()).collect();
        self.adjoint.iter().position(|r| r.coords == neg)
    }

    /// `Σ dim 𝔤_λ + dim 𝔤_0`.
    pub fn audited_dim(&self) -> usize {
        self.adjoint.iter().map(|r| r.dim).sum::<usize>() + self.zero_dim
    }
}

pub fn real_parts(coords: &[GaussianRational], complex_linear: bool) -> (Vec<Rational>, Vec<Rational>) {
    if complex_linear {
        let mut re: Vec<Rational> = coords.iter().map(|c| c.re.clone()).collect();
        re.extend(coords.iter().map(|c| -c.im.clone()));
        let mut im: Vec<Rational> = coords.iter().map(|c| c.im.clone()).collect();
        im.extend(coords.iter().map(|c| c.re.clone()));
        (re, im)
    } else {
        (coords.iter().map(|c| c.re.clone()).collect(), coords.iter().map(|c| c.im.clone()).collect())
    }
}

fn gi(re: i64, im: i64) -> GaussianRational {
    Gaussian::new(int(re), int(im))
}

/// Parameter offsets of the slots and the total parameter count.
pub fn param_offsets(slots: &[Slot]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(slots.len());
    let mut n = 0;
    for s in slots {
        off.push(n);
        n += s.kind.nparams();
    }
    (off, n)
}

/// Linear constraints on slot parameters cutting out `𝔠` (trace condition).
pub fn constraints(spec: &GroupSpec, slots: &[Slot]) -> Vec<Vec<Rational>> {
    let (off, n) = param_offsets(slots);
    if spec.shape() == Shape::Orthogonal {
        return vec![];
    }
    let mut row = vec![Rational::zero(); n];
    for (s, &o) in slots.iter().zip(&off) {
        let d = s.d as i64;
        match s.kind {
            SlotKind::LinReal | SlotKind::LinComplex | SlotKind::UImag { .. } => row[o] = int(d),
            SlotKind::LinPair => row[o] = int(2 * d),
            SlotKind::UPaired => row[o + 1] = int(2 * d),
            _ => {}
        }
    }
    vec![row]
}

/// Basis of `𝔠` and the standard roots.
pub fn standard_roots_from_slots(spec: &GroupSpec, slots: &[Slot]) -> (Vec<Vec<Rational>>, Vec<StandardRoot>) {
    let (off, n) = param_offsets(slots);
    let cons = constraints(spec, slots);
    let basis = if n == 0 {
        vec![]
    } else {
        Matrix::from_fn(cons.len(), n, |i, j| cons[i][j].clone()).nullspace()
    };
    // (id, slot, functional on params, sign tag, conj tag)
    let mut raw: Vec<(String, usize, Vec<GaussianRational>, i8, bool)> = Vec::new();
    let unit = |k: usize, v: GaussianRational| {
        let mut f = vec![GaussianRational::zero(); n];
        f[k] = v;
        f
    };
    let pair = |x: usize, a: GaussianRational, b: GaussianRational| {
        let mut f = vec![GaussianRational::zero(); n];
        f[x] = a;
        f[x + 1] = b;
        f
    };
    for (si, (s, &o)) in slots.iter().zip(&off).enumerate() {
        let l = &s.label;
        match s.kind {
            SlotKind::LinReal | SlotKind::LinComplex => raw.push((l.clone(), si, unit(o, gi(1, 0)), 0, false)),
            SlotKind::LinPair => {
                raw.push((l.clone(), si, pair(o, gi(1, 0), gi(0, 1)), 0, false));
                raw.push((format!("{l}~"), si, pair(o, gi(1, 0), gi(0, -1)), 0, true));
            }
            SlotKind::UImag { .. } => raw.push((l.clone(), si, unit(o, gi(0, 1)), 0, false)),
            SlotKind::UPaired => {
                raw.push((l.clone(), si, pair(o, gi(1, 0), gi(0, 1)), 0, false));
                raw.push((format!("{l}*"), si, pair(o, gi(-1, 0), gi(0, 1)), 0, false));
            }
            SlotKind::Zero { .. } => raw.push(("0".into(), si, vec![GaussianRational::zero(); n], 0, false)),
            SlotKind::OImag { .. } => {
                raw.push((format!("+{l}"), si, unit(o, gi(0, 1)), 1, false));
                raw.push((format!("-{l}"), si, unit(o, gi(0, -1)), -1, false));
            }
            SlotKind::OReal | SlotKind::CPair => {
                raw.push((format!("+{l}"), si, unit(o, gi(1, 0)), 1, false));
                raw.push((format!("-{l}"), si, unit(o, gi(-1, 0)), -1, false));
            }
            SlotKind::OCplx => {
                raw.push((format!("+{l}"), si, pair(o, gi(1, 0), gi(0, 1)), 1, false));
                raw.push((format!("-{l}"), si, pair(o, gi(-1, 0), gi(0, -1)), -1, false));
                raw.push((format!("+{l}~"), si, pair(o, gi(1, 0), gi(0, -1)), 1, true));
                raw.push((format!("-{l}~"), si, pair(o, gi(-1, 0), gi(0, 1)), -1, true));
            }
        }
    }
    let twisted = spec.epsilon().unwrap_or(1) * spec.eta().unwrap_or(1) == -1;
    let complex = spec.is_complex();
    let mut roots: Vec<StandardRoot> = raw
        .iter()
        .map(|(id, si, f, sign, _)| {
            let coords: Vec<GaussianRational> = basis
                .iter()
                .map(|b| {
                    f.iter().zip(b).fold(GaussianRational::zero(), |acc, (c, x)| {
                        acc + c.clone() * Gaussian::real(x.clone())
                    })
                })
                .collect();
            let pure_imaginary = !complex && coords.iter().all(|c| c.re.is_zero());
            let slot = &slots[*si];
            let signature = match slot.kind {
                SlotKind::UImag { sig } => Some(sig),
                SlotKind::Zero { sig } => sig,
                SlotKind::OImag { sig } if *sign < 0 && twisted => Some(sig.negate()),
                SlotKind::OImag { sig } => Some(sig),
                _ => None,
            };
            StandardRoot {
                id: id.clone(),
                slot: *si,
                dim: slot.d,
                coords,
                pure_imaginary,
                signature,
                neg: None,
                conj: None,
            }
        })
        .collect();
    for i in 0..raw.len() {
        let (_, si, _, sign, conj) = &raw[i];
        for j in 0..raw.len() {
            let (_, sj, _, sign2, conj2) = &raw[j];
            if si != sj {
                continue;
            }
            if *sign != 0 && *sign2 == -*sign && conj == conj2 {
                roots[i].neg = Some(j);
            }
            if conj != conj2 && sign == sign2 {
                roots[i].conj = Some(j);
            }
        }
        if matches!(slots[*si].kind, SlotKind::Zero { .. }) {
            roots[i].neg = Some(i);
        }
    }
    (basis, roots)
}

/// Standard roots and `dim 𝔠` from block data.
pub fn standard_roots(spec: &GroupSpec, blocks: &[IsotypicalBlock]) -> Result<(Vec<StandardRoot>, usize)> {
    let slots = derive_slots(spec, blocks)?;
    let (basis, roots) = standard_roots_from_slots(spec, &slots);
    Ok((roots, basis.len()))
}

fn sub(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn lambda_exterior(d: usize, eps: i8) -> usize {
    if eps == 1 {
        d * d.saturating_sub(1) / 2
    } else {
        d * (d + 1) / 2
    }
}

/// Nonzero roots of `𝔠` on `𝔤_ℂ`, with dimensions and signatures.
pub fn adjoint_roots(spec: &GroupSpec, slots: &[Slot], std: &[StandardRoot]) -> Result<Vec<AdjointRoot>> {
    let mut out = Vec::new();
    let orth = spec.shape() == Shape::Orthogonal;
    let eps = spec.epsilon().unwrap_or(1);
    for from in 0..std.len() {
        for to in 0..std.len() {
            if from == to {
                continue;
            }
            let (source, dim) = if !orth {
                (RootSource::Difference { to, from }, std[from].dim * std[to].dim)
            } else {
                let nf = std[from].neg.expect("orthogonal roots carry negatives");
                let nt = std[to].neg.expect("orthogonal roots carry negatives");
                let zero_from = nf == from;
                let zero_to = nt == to;
                if nf == to {
                    (RootSource::Double { of: to }, lambda_exterior(std[to].dim, eps))
                } else if zero_from {
                    (RootSource::Single { of: to }, std[from].dim * std[to].dim)
                } else if zero_to {
                    continue; // identified with (−from → 0)
                } else if (nt, nf) < (from, to) {
                    continue; // identified with (−to → −from)
                } else {
                    (RootSource::Difference { to, from }, std[from].dim * std[to].dim)
                }
            };
            if dim == 0 {
                continue;
            }
            let coords = sub(&std[to].coords, &std[from].coords);
            let pure_imaginary = !spec.is_complex() && coords.iter().all(|c| c.re.is_zero());
            let id = match source {
                RootSource::Difference { to, from } => format!("{}>{}", std[from].id, std[to].id),
                RootSource::Double { of } => format!("2({})", std[of].id),
                RootSource::Single { of } => format!("({})", std[of].id),
            };
            let mut root = AdjointRoot { id, source, dim, coords, pure_imaginary, signature: None, rule: None };
            if pure_imaginary {
                let (rule, sig) = rootspace_signature(spec, slots, &root, std)?;
                root.rule = Some(rule);
                root.signature = Some(sig);
            }
            out.push(root);
        }
    }
    for i in 0..out.len() {
        if out[i].coords.iter().all(|c| c.is_zero()) {
            return Err(FlexError::Internal(format!("adjoint root {} vanishes on 𝔠", out[i].id)));
        }
        for j in 0..i {
            if out[i].coords == out[j].coords {
                return Err(FlexError::Internal(format!(
                    "adjoint roots {} and {} coincide on 𝔠",
                    out[j].id, out[i].id
                )));
            }
        }
    }
    Ok(out)
}

/// Signature of `s_λ` on a pure imaginary root space, with the rule used.
pub fn rootspace_signature(
    spec: &GroupSpec,
    slots: &[Slot],
    root: &AdjointRoot,
    std: &[StandardRoot],
) -> Result<(RuleKind, Signature)> {
    if !root.pure_imaginary {
        return Err(FlexError::Contract(format!("root {} is not pure imaginary", root.id)));
    }
    let eps = spec.epsilon().unwrap_or(1);
    let form = |i: usize| {
        std[i].signature.ok_or_else(|| {
            FlexError::Internal(format!("pure imaginary root {} meets {} which has no form", root.id, std[i].id))
        })
    };
    let (rule, base) = match root.source {
        RootSource::Difference { to, from } if std[from].conj == Some(to) => {
            let d = std[to].dim;
            let rule = if matches!(slots[std[to].slot].kind, SlotKind::OCplx) {
                RuleKind::QuadPair
            } else {
                RuleKind::ConjPair
            };
            (rule, Signature::new(d * (d + 1) / 2, d * d.saturating_sub(1) / 2))
        }
        RootSource::Difference { to, from } => (RuleKind::Product, form(from)?.tensor(&form(to)?)),
        RootSource::Single { of } => {
            let zero = std
                .iter()
                .position(|r| r.id == "0")
                .ok_or_else(|| FlexError::Internal("single root without zero root".into()))?;
            (RuleKind::Single, form(zero)?.tensor(&form(of)?))
        }
        RootSource::Double { of } => (RuleKind::Double, form(of)?.square(eps == 1)),
    };
    Ok((rule, base.signed(kappa(spec, rule, &root.source, std))))
}

/// Complex dimension of the zero weight space.
pub fn zero_weight_dim(spec: &GroupSpec, slots: &[Slot]) -> usize {
    match spec.shape() {
        Shape::Linear | Shape::Unitary => {
            let sq: usize = slots
                .iter()
                .map(|s| match s.kind {
                    SlotKind::LinPair | SlotKind::UPaired => 2 * s.d * s.d,
                    _ => s.d * s.d,
                })
                .sum();
            sq - 1
        }
        Shape::Orthogonal => slots
            .iter()
            .map(|s| match s.kind {
                SlotKind::Zero { .. } => lambda_exterior(s.d, spec.epsilon().unwrap_or(1)),
                SlotKind::OCplx => 2 * s.d * s.d,
                _ => s.d * s.d,
            })
            .sum(),
    }
}
