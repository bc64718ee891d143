//! Reduction of isotypical block data to the pieces of `V` on which the center
//! `𝔠` acts by independent scalars.

use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::exact::Signature;
use crate::forms::{classify_block, Duality, IsotypicalBlock, Reality};
use crate::group::{Family, GroupSpec, Shape};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SlotKind {
    /// `SL` real form, `τ`-stable class: one real root.
    LinReal,
    /// `SL` real form, class and its `τ`-image: roots `ℓ`, `ℓ̄`.
    LinPair,
    /// `SL(n,ℂ)` block: one complex root.
    LinComplex,
    /// Unitary self-dual block: one imaginary root.
    UImag { sig: Signature },
    /// Unitary paired block: roots `z`, `−z̄`.
    UPaired,
    /// Aggregate of self-dual blocks for orthogonal/symplectic families.
    Zero { sig: Option<Signature> },
    /// Paired block with `τ I_ℓ = I_{−ℓ}`: roots `±ix`.
    OImag { sig: Signature },
    /// Paired block with `τ I_ℓ = I_ℓ`: roots `±x`.
    OReal,
    /// Paired block with an unrelated `τ`-image: roots `±ℓ`, `±ℓ̄`.
    OCplx,
    /// Complex orthogonal/symplectic paired block: roots `±z`.
    CPair,
}

impl SlotKind {
    /// Number of parameters (real, or complex for complex groups).
    pub fn nparams(&self) -> usize {
        match self {
            SlotKind::LinReal | SlotKind::LinComplex | SlotKind::UImag { .. } => 1,
            SlotKind::OImag { .. } | SlotKind::OReal | SlotKind::CPair => 1,
            SlotKind::LinPair | SlotKind::UPaired | SlotKind::OCplx => 2,
            SlotKind::Zero { .. } => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SlotKind::LinReal => "real",
            SlotKind::LinPair => "conjugate-pair",
            SlotKind::LinComplex => "complex",
            SlotKind::UImag { .. } => "imaginary",
            SlotKind::UPaired => "paired",
            SlotKind::Zero { .. } => "zero",
            SlotKind::OImag { .. } => "imaginary-pair",
            SlotKind::OReal => "real-pair",
            SlotKind::OCplx => "complex-quadruple",
            SlotKind::CPair => "pair",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Slot {
    pub label: String,
    #[serde(flatten)]
    pub kind: SlotKind,
    /// Dimension of one root space `I_ℓ`.
    pub d: usize,
}

impl Slot {
    pub fn new(label: impl Into<String>, kind: SlotKind, d: usize) -> Self {
        Slot { label: label.into(), kind, d }
    }

    /// Complex dimension of the part of `V` covered by the slot.
    pub fn total_dim(&self) -> usize {
        match self.kind {
            SlotKind::LinReal | SlotKind::LinComplex | SlotKind::UImag { .. } | SlotKind::Zero { .. } => self.d,
            SlotKind::LinPair | SlotKind::UPaired | SlotKind::OImag { .. } | SlotKind::OReal | SlotKind::CPair => {
                2 * self.d
            }
            SlotKind::OCplx => 4 * self.d,
        }
    }
}

fn bad(msg: String) -> FlexError {
    FlexError::Validation(msg)
}

/// Slots of a block datum, validated against the group.
///
/// Blocks are taken in the given order; the zero slot (if any) comes first.
pub fn derive_slots(spec: &GroupSpec, blocks: &[IsotypicalBlock]) -> Result<Vec<Slot>> {
    spec.validate()?;
    let mut ids = std::collections::BTreeSet::new();
    for b in blocks {
        b.validate()?;
        if !ids.insert(b.class.id.as_str()) {
            return Err(bad(format!("duplicate class id `{}`", b.class.id)));
        }
        if b.class.id == "0" || b.class.id.contains(['+', '-', '~', '*', '>', '(', ')', ',']) {
            return Err(bad(format!("class id `{}` uses a reserved character", b.class.id)));
        }
    }
    let mut slots = Vec::new();
    let mut zero_d = 0;
    let mut zero_sig: Option<Signature> = Some(Signature::default());
    for b in blocks {
        let d = b.isotypic_dim();
        let label = b.class.id.clone();
        match spec.shape() {
            Shape::Linear => {
                let kind = if spec.is_complex() {
                    SlotKind::LinComplex
                } else {
                    match b.reality.unwrap_or(Reality::Real) {
                        Reality::Real => SlotKind::LinReal,
                        Reality::Complex => SlotKind::LinPair,
                        Reality::Imaginary => {
                            return Err(bad(format!("block `{label}`: SL real forms have no imaginary blocks")))
                        }
                    }
                };
                slots.push(Slot::new(label, kind, d));
            }
            Shape::Unitary => {
                let kind = spec.form_kind().expect("unitary form");
                classify_block(kind, b)?;
                match &b.class.duality {
                    Duality::Paired { .. } | Duality::SesquiPaired { .. } => {
                        slots.push(Slot::new(label, SlotKind::UPaired, d))
                    }
                    Duality::SelfDualOppositeEps => {
                        if b.multiplicity % 2 != 0 {
                            return Err(bad(format!("block `{label}`: opposite-type class needs even multiplicity")));
                        }
                        slots.push(Slot::new(label, SlotKind::UImag { sig: Signature::split(d / 2) }, d))
                    }
                    _ => slots.push(Slot::new(label, SlotKind::UImag { sig: b.sesqui_signature()? }, d)),
                }
            }
            Shape::Orthogonal => {
                let kind = spec.form_kind().expect("orthogonal form");
                classify_block(kind, b)?;
                if !b.class.duality.is_paired() {
                    zero_d += d;
                    zero_sig = match (zero_sig, zero_block_signature(spec, b)?) {
                        (Some(acc), Some(s)) => Some(acc + s),
                        _ => None,
                    };
                    continue;
                }
                let kind = if spec.is_complex() {
                    SlotKind::CPair
                } else {
                    match b.reality {
                        Some(Reality::Imaginary) => {
                            let sig = b.block_signature.ok_or_else(|| {
                                bad(format!("block `{label}`: imaginary pair needs the signature of its form"))
                            })?;
                            if sig.dim() != d {
                                return Err(bad(format!("block `{label}`: signature {sig} does not have size {d}")));
                            }
                            SlotKind::OImag { sig }
                        }
                        Some(Reality::Real) => SlotKind::OReal,
                        Some(Reality::Complex) => SlotKind::OCplx,
                        None => return Err(bad(format!("block `{label}`: paired block needs a reality type"))),
                    }
                };
                slots.push(Slot::new(label, kind, d));
            }
        }
    }
    if zero_d > 0 {
        let sig = if spec.is_complex() { None } else { zero_sig };
        slots.insert(0, Slot::new("0", SlotKind::Zero { sig }, zero_d));
    }
    check_dimensions(spec, &slots)?;
    Ok(slots)
}

fn zero_block_signature(spec: &GroupSpec, b: &IsotypicalBlock) -> Result<Option<Signature>> {
    if spec.is_complex() {
        return Ok(None);
    }
    let d = b.isotypic_dim();
    let forced_split = matches!(spec.family, Family::SpR { .. } | Family::SoStar { .. });
    match b.block_signature {
        Some(s) if s.dim() != d => Err(bad(format!("block `{}`: signature {s} does not have size {d}", b.class.id))),
        Some(s) if forced_split && !s.is_vanishing() => {
            Err(bad(format!("block `{}`: {} forces a split form on self-dual blocks", b.class.id, spec)))
        }
        Some(s) => Ok(Some(s)),
        None if forced_split && d.is_multiple_of(2) => Ok(Some(Signature::split(d / 2))),
        None if forced_split => Err(bad(format!("block `{}`: odd self-dual block in {}", b.class.id, spec))),
        None => Err(bad(format!("block `{}`: self-dual block needs the signature of its form", b.class.id))),
    }
}

/// Checks slot data directly against the group.
pub fn validate_slots(spec: &GroupSpec, slots: &[Slot]) -> Result<()> {
    spec.validate()?;
    check_dimensions(spec, slots)
}

fn check_dimensions(spec: &GroupSpec, slots: &[Slot]) -> Result<()> {
    let total: usize = slots.iter().map(Slot::total_dim).sum();
    if total != spec.v_dim() {
        return Err(bad(format!("blocks have total dimension {total}, but {spec} acts on dimension {}", spec.v_dim())));
    }
    let quaternionic = spec.is_quaternionic();
    for s in slots {
        match s.kind {
            SlotKind::LinReal | SlotKind::OReal if quaternionic && s.d % 2 != 0 => {
                return Err(bad(format!("block `{}`: τ-stable block of odd dimension in {spec}", s.label)))
            }
            SlotKind::Zero { sig } => {
                if spec.epsilon() == Some(-1) && s.d % 2 != 0 {
                    return Err(bad(format!("self-dual part has odd dimension {} in {spec}", s.d)));
                }
                if let (Family::Sp { .. }, Some(sig)) = (spec.family, sig) {
                    if sig.pos % 2 != 0 || sig.neg % 2 != 0 {
                        return Err(bad(format!("self-dual part of {spec} needs even signature, got {sig}")));
                    }
                }
            }
            _ => {}
        }
    }
    let expected_pos = match spec.family {
        Family::Su { p, .. } | Family::So { p, .. } => Some(p),
        Family::Sp { p, .. } => Some(2 * p),
        Family::SpR { m } | Family::SoStar { m } => Some(m),
        _ => None,
    };
    if let Some(p) = expected_pos {
        let pos = hermitian_positive_count(spec, slots);
        if pos != p {
            return Err(bad(format!("blocks give a Hermitian form with {pos} positive directions; {spec} needs {p}")));
        }
    }
    Ok(())
}

/// Positive index of the Hermitian form on `V` assembled from slot data.
pub fn hermitian_positive_count(spec: &GroupSpec, slots: &[Slot]) -> usize {
    let twisted = spec.epsilon().unwrap_or(1) * spec.eta().unwrap_or(1) == -1;
    slots
        .iter()
        .map(|s| match s.kind {
            SlotKind::UImag { sig } => sig.pos,
            SlotKind::UPaired | SlotKind::OReal => s.d,
            SlotKind::Zero { sig } => sig.map_or(0, |x| x.pos),
            SlotKind::OImag { sig } => sig.pos + if twisted { sig.neg } else { sig.pos },
            SlotKind::OCplx => 2 * s.d,
            _ => 0,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::IrredClass;

    fn paired(id: &str, d: usize, r: Reality, sig: Option<Signature>) -> IsotypicalBlock {
        let mut b = IsotypicalBlock::new(
            IrredClass { id: id.into(), dim: d, duality: Duality::Paired { partner: format!("{id}'") } },
            1,
        )
        .with_reality(r);
        b.block_signature = sig;
        b
    }

    fn selfdual(id: &str, d: usize, sig: Option<Signature>) -> IsotypicalBlock {
        let mut b = IsotypicalBlock::new(IrredClass { id: id.into(), dim: d, duality: Duality::SelfDualSameEps }, 1);
        b.block_signature = sig;
        b
    }

    fn g(f: Family) -> GroupSpec {
        GroupSpec::new(f).unwrap()
    }

    #[test]
    fn so_pq_counts() {
        let blocks = vec![
            paired("a", 1, Reality::Imaginary, Some(Signature::new(1, 0))),
            selfdual("b", 2, Some(Signature::new(0, 2))),
        ];
        let slots = derive_slots(&g(Family::So { p: 2, q: 2 }), &blocks).unwrap();
        assert_eq!(slots[0].kind, SlotKind::Zero { sig: Some(Signature::new(0, 2)) });
        assert!(derive_slots(&g(Family::So { p: 3, q: 1 }), &blocks).is_err());
    }

    #[test]
    fn quaternionic_real_pair_needs_even() {
        let blocks = vec![paired("a", 1, Reality::Real, None), selfdual("b", 2, None)];
        assert!(derive_slots(&g(Family::SoStar { m: 2 }), &blocks).is_err());
        let blocks = vec![paired("a", 2, Reality::Real, None)];
        assert!(derive_slots(&g(Family::SoStar { m: 2 }), &blocks).is_ok());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let blocks = vec![selfdual("b", 2, Some(Signature::new(2, 0)))];
        let e = derive_slots(&g(Family::So { p: 3, q: 0 }), &blocks).unwrap_err();
        assert!(matches!(e, FlexError::Validation(_)));
    }

    #[test]
    fn sp_r_imaginary_pair_any_signature() {
        let blocks = vec![paired("a", 2, Reality::Imaginary, Some(Signature::new(2, 0)))];
        assert!(derive_slots(&g(Family::SpR { m: 2 }), &blocks).is_ok());
    }

    #[test]
    fn sp_pq_imaginary_pair_signature() {
        let blocks = vec![paired("a", 1, Reality::Imaginary, Some(Signature::new(1, 0)))];
        assert!(derive_slots(&g(Family::Sp { p: 1, q: 0 }), &blocks).is_ok());
        assert!(derive_slots(&g(Family::Sp { p: 0, q: 1 }), &blocks).is_err());
    }
}
