//! Sign constants relating the combinatorial signature rules to the trace
//! form `Tr(σ(X)X')`, fixed against the numeric oracle.

use serde::{Deserialize, Serialize};

use crate::group::{Family, GroupSpec};
use crate::roots::{RootSource, StandardRoot};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    /// `Hom(I_ℓ, I_ℓ̄)` in `SL` real forms.
    ConjPair,
    /// `Hom(I_ℓ̄, I_ℓ)` inside a complex quadruple of an orthogonal family.
    QuadPair,
    /// `Hom(I_ℓ, I_ℓ')` between imaginary roots.
    Product,
    /// `Hom(I_0, I_ℓ)`.
    Single,
    /// `Λ^ε` part over `2ℓ`.
    Double,
}

/// Sign multiplying the predicted signature.
pub fn kappa(spec: &GroupSpec, rule: RuleKind, _source: &RootSource, _std: &[StandardRoot]) -> i8 {
    let ee = spec.epsilon().unwrap_or(1) * spec.eta().unwrap_or(1);
    match (rule, spec.family) {
        (RuleKind::ConjPair, Family::SlH { .. }) => -1,
        (RuleKind::ConjPair, _) => 1,
        (RuleKind::QuadPair, _) => spec.eta().unwrap_or(1),
        (RuleKind::Product, _) => -1,
        (RuleKind::Single | RuleKind::Double, Family::Su { .. }) => -1,
        (RuleKind::Single | RuleKind::Double, _) => -ee,
    }
}
