//! Isotypical data of a module carrying an `(ι, ε)`-symmetric form and the
//! resulting centralizer factors.

use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::exact::Signature;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Iota {
    Identity,
    Conjugation,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FormKind {
    iota: Iota,
    epsilon: i8,
}

impl FormKind {
    pub fn new(iota: Iota, epsilon: i8) -> Result<Self> {
        match (iota, epsilon) {
            (Iota::Conjugation, -1) => Err(FlexError::Validation(
                "skew-Hermitian forms are Hermitian up to a factor i; use (conjugation, +1)".into(),
            )),
            (_, 1) | (_, -1) => Ok(FormKind { iota, epsilon }),
            _ => Err(FlexError::Validation(format!("epsilon must be ±1, got {epsilon}"))),
        }
    }

    pub fn iota(&self) -> Iota {
        self.iota
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn is_sesquilinear(&self) -> bool {
        self.iota == Iota::Conjugation
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Duality {
    SelfDualSameEps,
    SelfDualOppositeEps,
    Paired { partner: String },
    SesquiSelfDual { signature: Signature },
    SesquiPaired { partner: String },
}

impl Duality {
    pub fn is_paired(&self) -> bool {
        matches!(self, Duality::Paired { .. } | Duality::SesquiPaired { .. })
    }

    pub fn partner(&self) -> Option<&str> {
        match self {
            Duality::Paired { partner } | Duality::SesquiPaired { partner } => Some(partner),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IrredClass {
    pub id: String,
    pub dim: usize,
    pub duality: Duality,
}

impl IrredClass {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(FlexError::Validation(format!("class `{}` has dimension 0", self.id)));
        }
        match &self.duality {
            Duality::Paired { partner } | Duality::SesquiPaired { partner } if *partner == self.id => Err(
                FlexError::Validation(format!("class `{}` is paired with itself", self.id)),
            ),
            Duality::SesquiSelfDual { signature } => {
                if signature.null != 0 || signature.pos + signature.neg != self.dim {
                    Err(FlexError::Validation(format!(
                        "class `{}`: invariant form signature {} must be nondegenerate of size {}",
                        self.id, signature, self.dim
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Behaviour of a block under the real structure `τ` of a real form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Reality {
    /// `τ` swaps the class with its dual: pure imaginary roots.
    Imaginary,
    /// `τ` fixes the class: real roots.
    Real,
    /// `τ` sends the class to an unrelated one, included in the same block.
    Complex,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IsotypicalBlock {
    pub class: IrredClass,
    pub multiplicity: usize,
    /// Multiplicity-form signature (sesquilinear self-dual), or the form
    /// signature on the block / on `I_ℓ` for real forms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_signature: Option<Signature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reality: Option<Reality>,
}

impl IsotypicalBlock {
    pub fn new(class: IrredClass, multiplicity: usize) -> Self {
        IsotypicalBlock { class, multiplicity, block_signature: None, reality: None }
    }

    pub fn with_signature(mut self, s: Signature) -> Self {
        self.block_signature = Some(s);
        self
    }

    pub fn with_reality(mut self, r: Reality) -> Self {
        self.reality = Some(r);
        self
    }

    /// `r·d`: dimension of one isotypical half.
    pub fn isotypic_dim(&self) -> usize {
        self.multiplicity * self.class.dim
    }

    pub fn validate(&self) -> Result<()> {
        self.class.validate()?;
        if self.multiplicity == 0 {
            return Err(FlexError::Validation(format!("block `{}` has multiplicity 0", self.class.id)));
        }
        if let Some(s) = &self.block_signature {
            if s.null != 0 {
                return Err(FlexError::Validation(format!("block `{}` signature {} is degenerate", self.class.id, s)));
            }
        }
        Ok(())
    }

    /// Signature of the invariant Hermitian form on the isotypical component of
    /// a sesquilinear self-dual class: class form ⊗ multiplicity form.
    pub fn sesqui_signature(&self) -> Result<Signature> {
        let class_sig = match &self.class.duality {
            Duality::SesquiSelfDual { signature } => *signature,
            _ => Signature::new(self.class.dim, 0),
        };
        let mult = self.block_signature.unwrap_or(Signature::new(self.multiplicity, 0));
        if mult.pos + mult.neg != self.multiplicity {
            return Err(FlexError::Validation(format!(
                "block `{}`: multiplicity form {} does not have size {}",
                self.class.id, mult, self.multiplicity
            )));
        }
        Ok(class_sig.tensor(&mult))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockShape {
    ExDual,
    ExSum,
}

pub fn classify_block(kind: FormKind, block: &IsotypicalBlock) -> Result<BlockShape> {
    use Duality::*;
    match (kind.iota(), &block.class.duality) {
        (_, Paired { .. }) | (Iota::Conjugation, SesquiPaired { .. }) => Ok(BlockShape::ExDual),
        (_, SelfDualOppositeEps) => Ok(BlockShape::ExDual),
        (_, SelfDualSameEps) | (Iota::Conjugation, SesquiSelfDual { .. }) => Ok(BlockShape::ExSum),
        (Iota::Identity, d) => Err(FlexError::Validation(format!(
            "class `{}`: duality {:?} requires a sesquilinear form",
            block.class.id, d
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// `GL(r,ℂ)`
    Gl,
    /// `O(2r,ℂ)`
    OEven,
    /// `Sp(2r,ℂ)`
    Sp,
    /// `U(r,r)`
    USplit,
    /// `O(r,ℂ)`
    O,
    /// `U(p',q')`
    U,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CentralizerFactor {
    pub kind: FactorKind,
    pub r: usize,
    #[serde(default)]
    pub p: usize,
    #[serde(default)]
    pub q: usize,
}

impl CentralizerFactor {
    /// Complex dimension of the Lie algebra center of the factor.
    ///
    /// Orthogonal and symplectic factors contribute nothing: their group
    /// center is finite.
    pub fn center_dim(&self) -> usize {
        match self.kind {
            FactorKind::Gl | FactorKind::USplit => 1,
            FactorKind::U => usize::from(self.p + self.q >= 1),
            FactorKind::OEven | FactorKind::Sp | FactorKind::O => 0,
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            FactorKind::Gl => format!("GL({},C)", self.r),
            FactorKind::OEven => format!("O({},C)", 2 * self.r),
            FactorKind::Sp => format!("Sp({},C)", 2 * self.r),
            FactorKind::USplit => format!("U({},{})", self.r, self.r),
            FactorKind::O => format!("O({},C)", self.r),
            FactorKind::U => format!("U({},{})", self.p, self.q),
        }
    }
}

/// Centralizer factor contributed by one bi-isotypical block.
///
/// For a self-dual class of the opposite type the block multiplicity counts
/// both copies `Z ⊕ Z*`, so it must be even.
pub fn centralizer_factor(kind: FormKind, block: &IsotypicalBlock) -> Result<CentralizerFactor> {
    block.validate()?;
    let r = block.multiplicity;
    let f = |kind, r| CentralizerFactor { kind, r, p: 0, q: 0 };
    match classify_block(kind, block)? {
        BlockShape::ExDual if block.class.duality.is_paired() => Ok(f(FactorKind::Gl, r)),
        BlockShape::ExDual => {
            if !r.is_multiple_of(2) {
                return Err(FlexError::Validation(format!(
                    "block `{}`: self-dual class of opposite type needs even multiplicity",
                    block.class.id
                )));
            }
            let k = match (kind.iota(), kind.epsilon()) {
                (Iota::Conjugation, _) => FactorKind::USplit,
                (Iota::Identity, 1) => FactorKind::OEven,
                _ => FactorKind::Sp,
            };
            Ok(f(k, r / 2))
        }
        BlockShape::ExSum if kind.is_sesquilinear() => {
            let d = block.block_signature.unwrap_or(Signature::new(r, 0));
            if d.pos + d.neg != r {
                return Err(FlexError::Validation(format!(
                    "block `{}`: multiplicity form {} does not have size {}",
                    block.class.id, d, r
                )));
            }
            Ok(CentralizerFactor { kind: FactorKind::U, r, p: d.pos, q: d.neg })
        }
        BlockShape::ExSum => Ok(f(FactorKind::O, r)),
    }
}

/// Factors of a multi-block datum, one per block.
pub fn centralizer_factors(kind: FormKind, blocks: &[IsotypicalBlock]) -> Result<Vec<CentralizerFactor>> {
    blocks.iter().map(|b| centralizer_factor(kind, b)).collect()
}

/// Deterministic block order: by class id, then class dimension.
pub fn sort_blocks(blocks: &mut [IsotypicalBlock]) {
    blocks.sort_by(|a, b| (&a.class.id, a.class.dim).cmp(&(&b.class.id, b.class.dim)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(id: &str, dim: usize, duality: Duality) -> IrredClass {
        IrredClass { id: id.into(), dim, duality }
    }

    fn bil(eps: i8) -> FormKind {
        FormKind::new(Iota::Identity, eps).unwrap()
    }

    fn herm() -> FormKind {
        FormKind::new(Iota::Conjugation, 1).unwrap()
    }

    #[test]
    fn skew_hermitian_rejected() {
        assert!(FormKind::new(Iota::Conjugation, -1).is_err());
        assert!(FormKind::new(Iota::Identity, 2).is_err());
    }

    #[test]
    fn opposite_type_is_exdual() {
        let b = IsotypicalBlock::new(class("a", 2, Duality::SelfDualOppositeEps), 2);
        assert_eq!(classify_block(bil(1), &b).unwrap(), BlockShape::ExDual);
    }

    #[test]
    fn same_type_is_exsum() {
        let b = IsotypicalBlock::new(class("a", 3, Duality::SelfDualSameEps), 1);
        assert_eq!(classify_block(bil(1), &b).unwrap(), BlockShape::ExSum);
    }

    #[test]
    fn hermitian_paired_is_exdual() {
        let b = IsotypicalBlock::new(class("a", 1, Duality::Paired { partner: "b".into() }), 1);
        assert_eq!(classify_block(herm(), &b).unwrap(), BlockShape::ExDual);
    }

    #[test]
    fn exsum_in_skew_form_is_orthogonal() {
        let b = IsotypicalBlock::new(class("a", 2, Duality::SelfDualSameEps), 3);
        let f = centralizer_factor(bil(-1), &b).unwrap();
        assert_eq!(f.kind, FactorKind::O);
        assert_eq!(f.name(), "O(3,C)");
    }

    #[test]
    fn paired_gives_general_linear() {
        let b = IsotypicalBlock::new(class("a", 2, Duality::Paired { partner: "a*".into() }), 2);
        let f = centralizer_factor(bil(1), &b).unwrap();
        assert_eq!(f.name(), "GL(2,C)");
        assert_eq!(f.center_dim(), 1);
    }

    #[test]
    fn hermitian_exsum_is_unitary() {
        let b = IsotypicalBlock::new(class("a", 1, Duality::SesquiSelfDual { signature: Signature::new(1, 0) }), 3)
            .with_signature(Signature::new(2, 1));
        let f = centralizer_factor(herm(), &b).unwrap();
        assert_eq!(f.name(), "U(2,1)");
        assert_eq!(f.center_dim(), 1);
    }

    #[test]
    fn exdual_table() {
        let b = IsotypicalBlock::new(class("a", 1, Duality::SelfDualOppositeEps), 4);
        assert_eq!(centralizer_factor(bil(1), &b).unwrap().name(), "O(4,C)");
        assert_eq!(centralizer_factor(bil(-1), &b).unwrap().name(), "Sp(4,C)");
        let f = centralizer_factor(herm(), &b).unwrap();
        assert_eq!(f.name(), "U(2,2)");
        assert_eq!(f.center_dim(), 1);
        let odd = IsotypicalBlock::new(class("a", 1, Duality::SelfDualOppositeEps), 3);
        assert!(centralizer_factor(bil(1), &odd).is_err());
    }

    #[test]
    fn self_paired_class_rejected() {
        let b = IsotypicalBlock::new(class("a", 1, Duality::Paired { partner: "a".into() }), 1);
        assert!(b.validate().is_err());
    }

    #[test]
    fn sesqui_signature_is_tensor() {
        let b = IsotypicalBlock::new(class("a", 3, Duality::SesquiSelfDual { signature: Signature::new(2, 1) }), 2)
            .with_signature(Signature::new(1, 1));
        assert_eq!(b.sesqui_signature().unwrap(), Signature::new(3, 3));
    }

    fn duality() -> impl Strategy<Value = Duality> {
        prop_oneof![
            Just(Duality::SelfDualSameEps),
            Just(Duality::SelfDualOppositeEps),
            Just(Duality::Paired { partner: "z".into() }),
        ]
    }

    proptest! {
        #[test]
        fn factors_commute_with_concatenation(
            ds in prop::collection::vec((duality(), 1usize..4, 1usize..3), 1..5),
            eps in prop_oneof![Just(1i8), Just(-1i8)],
        ) {
            let blocks: Vec<_> = ds.iter().enumerate()
                .map(|(i, (d, dim, r))| IsotypicalBlock::new(class(&format!("c{i}"), *dim, d.clone()), 2 * r))
                .collect();
            let kind = bil(eps);
            let all = centralizer_factors(kind, &blocks).unwrap();
            let (a, b) = blocks.split_at(blocks.len() / 2);
            let mut parts = centralizer_factors(kind, a).unwrap();
            parts.extend(centralizer_factors(kind, b).unwrap());
            prop_assert_eq!(all, parts);
        }
    }
}
