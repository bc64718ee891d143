//! Toledo invariants of root-space representations: arithmetic, Milnor–Wood
//! bounds, and propagation of tightness constraints.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::exact::Signature;
use crate::group::{Family, Shape};
use crate::roots::{RootSource, RootSystem};
use crate::scalar::{int, serde_rat};
use crate::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    MaximalPositive,
    MaximalNegative,
    NonMaximal,
    Unknown,
}

impl Status {
    pub fn conjugate(self) -> Self {
        match self {
            Status::MaximalPositive => Status::MaximalNegative,
            Status::MaximalNegative => Status::MaximalPositive,
            s => s,
        }
    }

    pub fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            self.conjugate()
        } else {
            self
        }
    }

    pub fn is_maximal(self) -> bool {
        matches!(self, Status::MaximalPositive | Status::MaximalNegative)
    }

    pub const ALL_KNOWN: [Status; 3] = [Status::MaximalPositive, Status::MaximalNegative, Status::NonMaximal];
}

/// Exclusion rule forcing a root out of `±P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "maxtight")]
    Maxtight,
    #[serde(rename = "lemsupq")]
    Lemsupq,
    #[serde(rename = "signiell-1")]
    Signiell1,
    #[serde(rename = "signiell-2")]
    Signiell2,
    #[serde(rename = "o22")]
    O22,
}

impl Tag {
    pub const ALL: [Tag; 5] = [Tag::Maxtight, Tag::Lemsupq, Tag::Signiell1, Tag::Signiell2, Tag::O22];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Maxtight => "maxtight",
            Tag::Lemsupq => "lemsupq",
            Tag::Signiell1 => "signiell-1",
            Tag::Signiell2 => "signiell-2",
            Tag::O22 => "o22",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Toledo status of a standard or adjoint root space; values are in units of `ℓ_X`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ToledoDecoration {
    pub target: String,
    pub status: Status,
    #[serde(default, with = "serde_rat::opt", skip_serializing_if = "Option::is_none")]
    pub toledo_value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub justification: Option<Tag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<String>,
}

impl ToledoDecoration {
    pub fn new(target: impl Into<String>, status: Status) -> Self {
        ToledoDecoration { target: target.into(), status, toledo_value: None, justification: None, derived_from: None }
    }

    pub fn with_value(mut self, v: Rational) -> Self {
        self.toledo_value = Some(v);
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurfaceData {
    pub genus: u64,
}

impl SurfaceData {
    pub fn new(genus: u64) -> Result<Self> {
        let s = SurfaceData { genus };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(FlexError::Validation(format!("surface genus {} < 2", self.genus)));
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// `genus ≥ 2·dim(G)²`.
    pub fn genus_bound_ok(&self, real_dim: usize) -> bool {
        self.genus as u128 >= 2 * (real_dim as u128).pow(2)
    }
}

/// `|χ|·rank`.
pub fn milnor_wood_bound(surface: &SurfaceData, rank: usize) -> Result<u64> {
    if rank == 0 {
        return Err(FlexError::Contract("Milnor–Wood bound needs rank ≥ 1".into()));
    }
    Ok(surface.euler().unsigned_abs() * rank as u64)
}

/// Rejects values beyond the bound; rank 0 allows only `T = 0`.
pub fn check_value(surface: &SurfaceData, rank: usize, value: &Rational) -> Result<()> {
    let bound = if rank == 0 { 0 } else { milnor_wood_bound(surface, rank)? };
    if value.abs() > int(bound as i64) {
        return Err(FlexError::Constraint {
            tag: "milnor-wood".into(),
            msg: format!("|T| = {} exceeds |χ|·rank = {bound}", value.abs()),
        });
    }
    Ok(())
}

/// Status implied by a value on a space of the given rank.
pub fn status_of_value(surface: &SurfaceData, rank: usize, value: &Rational) -> Status {
    let bound = int(surface.euler().unsigned_abs() as i64 * rank as i64);
    if rank > 0 && *value == bound {
        Status::MaximalPositive
    } else if rank > 0 && *value == -bound {
        Status::MaximalNegative
    } else {
        Status::NonMaximal
    }
}

/// Rank of the Hermitian symmetric space of `U(p,q)`.
pub fn unitary_rank(sig: &Signature) -> usize {
    sig.pos.min(sig.neg)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CombineOp {
    Conjugate,
    DirectSum,
    HomWithUnitary { dim_v: usize },
}

pub fn toledo_combine(op: CombineOp, inputs: &[ToledoDecoration]) -> Result<ToledoDecoration> {
    let single = || -> Result<&ToledoDecoration> {
        match inputs {
            [d] => Ok(d),
            _ => Err(FlexError::Contract(format!("{op:?} takes exactly one input"))),
        }
    };
    match op {
        CombineOp::Conjugate => {
            let d = single()?;
            Ok(ToledoDecoration {
                target: format!("conj({})", d.target),
                status: d.status.conjugate(),
                toledo_value: d.toledo_value.as_ref().map(|v| -v),
                justification: None,
                derived_from: Some(d.target.clone()),
            })
        }
        CombineOp::HomWithUnitary { dim_v } => {
            let d = single()?;
            if dim_v == 0 {
                return Err(FlexError::Contract("Hom with a zero space".into()));
            }
            Ok(ToledoDecoration {
                target: format!("Hom(C^{dim_v},{})", d.target),
                status: d.status,
                toledo_value: d.toledo_value.as_ref().map(|v| v * int(dim_v as i64)),
                justification: None,
                derived_from: Some(d.target.clone()),
            })
        }
        CombineOp::DirectSum => {
            if inputs.is_empty() {
                return Err(FlexError::Contract("empty direct sum".into()));
            }
            let status = if inputs.iter().any(|d| d.status == Status::NonMaximal) {
                Status::NonMaximal
            } else if inputs.iter().any(|d| d.status == Status::Unknown) {
                Status::Unknown
            } else if inputs.iter().all(|d| d.status == inputs[0].status) {
                inputs[0].status
            } else {
                Status::NonMaximal
            };
            let value = inputs
                .iter()
                .map(|d| d.toledo_value.clone())
                .try_fold(Rational::zero(), |acc, v| v.map(|v| acc + v));
            Ok(ToledoDecoration {
                target: inputs.iter().map(|d| d.target.as_str()).collect::<Vec<_>>().join("+"),
                status,
                toledo_value: value,
                justification: None,
                derived_from: None,
            })
        }
    }
}

/// Decorations after propagation: one per pure-imaginary standard root and
/// one per pure-imaginary adjoint root, in root order.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Propagated {
    pub standard: Vec<ToledoDecoration>,
    pub adjoint: Vec<ToledoDecoration>,
}

impl Propagated {
    pub fn all(&self) -> impl Iterator<Item = &ToledoDecoration> {
        self.standard.iter().chain(self.adjoint.iter())
    }

    pub fn adjoint_status(&self, id: &str) -> Option<Status> {
        self.adjoint.iter().find(|d| d.target == id).map(|d| d.status)
    }
}

/// How the Toledo invariant of an adjoint root space is determined.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Link {
    Forced(Tag),
    /// `T(𝔤_λ) = sign · dim · T(I_b)` for the vanishing standard root `b`.
    Derived { std: usize, sign: i8, dim: usize },
}

fn constraint(tag: &str, msg: String) -> FlexError {
    FlexError::Constraint { tag: tag.into(), msg }
}

/// Tightness obstructions on standard roots.
pub fn forced_standard(sys: &RootSystem, i: usize) -> Option<Tag> {
    let r = &sys.standard[i];
    let sig = r.signature?;
    if !sig.is_vanishing() {
        return Some(Tag::Maxtight);
    }
    if r.id == "0" {
        match sys.spec.family {
            Family::So { .. } => return Some(Tag::O22),
            Family::Sp { .. } => return Some(Tag::Maxtight),
            Family::SoStar { .. } if (r.dim / 2) % 2 == 1 => return Some(Tag::Maxtight),
            _ => {}
        }
    }
    None
}

/// Classifies a pure-imaginary adjoint root.
pub fn adjoint_link(sys: &RootSystem, j: usize) -> Option<Link> {
    let r = &sys.adjoint[j];
    if !r.pure_imaginary {
        return None;
    }
    let sig = r.signature?;
    if !sig.is_vanishing() {
        return Some(Link::Forced(Tag::Maxtight));
    }
    let (from, to) = match r.source {
        RootSource::Double { .. } => return Some(Link::Forced(Tag::Signiell2)),
        RootSource::Difference { to, from } => (from, to),
        RootSource::Single { of } => (sys.std_index("0")?, of),
    };
    let pair_tag = if sys.spec.shape() == Shape::Unitary { Tag::Lemsupq } else { Tag::Signiell1 };
    let sf = sys.standard[from].signature?;
    let st = sys.standard[to].signature?;
    let (def, van, sign) = if sf.is_definite() && st.is_vanishing() {
        (from, to, definite_sign(&sf))
    } else if st.is_definite() && sf.is_vanishing() {
        (to, from, -definite_sign(&st))
    } else {
        return Some(Link::Forced(pair_tag));
    };
    if let Some(t) = forced_standard(sys, van) {
        return Some(Link::Forced(t));
    }
    Some(Link::Derived { std: van, sign, dim: sys.standard[def].dim })
}

fn definite_sign(s: &Signature) -> i8 {
    if s.pos > 0 {
        1
    } else {
        -1
    }
}

/// Orientation classes: `T(I_b) = sign · T(I_rep)`.
fn std_classes(sys: &RootSystem) -> Vec<(usize, i8)> {
    let ee = sys.spec.epsilon().unwrap_or(1) * sys.spec.eta().unwrap_or(1);
    let mut out: Vec<(usize, i8)> = (0..sys.standard.len()).map(|i| (i, 1)).collect();
    for (i, r) in sys.standard.iter().enumerate() {
        if let Some(n) = r.neg {
            if n < i && r.id != "0" {
                let (rep, s) = out[n];
                out[i] = (rep, s * -ee);
            }
        }
    }
    out
}

#[derive(Clone, Default)]
struct Slot {
    status: Option<Status>,
    value: Option<Rational>,
    source: Option<String>,
}

/// Applies every exclusion rule and resolves user decorations to
/// per-root statuses. Unknown stays unknown; nothing becomes maximal
/// without an explicit user decoration implying it.
pub fn propagate_constraints(
    sys: &RootSystem,
    decorations: &[ToledoDecoration],
    surface: &SurfaceData,
) -> Result<Propagated> {
    let classes = std_classes(sys);
    let links: Vec<Option<Link>> = (0..sys.adjoint.len()).map(|j| adjoint_link(sys, j)).collect();
    let mut vars: BTreeMap<usize, Slot> = BTreeMap::new();
    let chi = surface.euler().unsigned_abs() as i64;

    for d in decorations {
        // (standard root, sign, dim factor) that the decoration speaks about.
        let (b, sign, factor, forced) = if let Some(i) = sys.std_index(&d.target) {
            let r = &sys.standard[i];
            if !r.pure_imaginary || r.signature.is_none() {
                return Err(FlexError::Validation(format!("root `{}` carries no Hermitian form", d.target)));
            }
            (i, 1i8, 1usize, forced_standard(sys, i))
        } else if let Some(j) = sys.adj_index(&d.target) {
            match links[j] {
                None => {
                    return Err(FlexError::Validation(format!("adjoint root `{}` is not pure imaginary", d.target)))
                }
                Some(Link::Forced(t)) => (usize::MAX, 1, 1, Some(t)),
                Some(Link::Derived { std, sign, dim }) => (std, sign, dim, None),
            }
        } else {
            return Err(FlexError::Validation(format!("decoration targets unknown root `{}`", d.target)));
        };
        let rank = target_rank(sys, &d.target);
        if let Some(v) = &d.toledo_value {
            check_value(surface, rank, v)?;
        }
        let mut status = d.status;
        if let Some(v) = &d.toledo_value {
            let implied = status_of_value(surface, rank, v);
            if status == Status::Unknown {
                status = implied;
            } else if status != implied {
                return Err(constraint(
                    "milnor-wood",
                    format!("`{}`: value {v} contradicts status {status:?} (bound {})", d.target, chi * rank as i64),
                ));
            }
        }
        if let Some(t) = forced {
            if status.is_maximal() {
                return Err(constraint(t.name(), format!("`{}` cannot be maximal ({t})", d.target)));
            }
            if b == usize::MAX {
                continue;
            }
        }
        if status == Status::Unknown {
            continue;
        }
        let (rep, cs) = classes[b];
        let s = sign * cs;
        let entry = vars.entry(rep).or_default();
        let st = status.signed(s);
        let val = d.toledo_value.as_ref().map(|v| v / int(factor as i64 * s as i64));
        match entry.status {
            Some(prev) if prev != st => {
                return Err(constraint(
                    "toledo-consistency",
                    format!(
                        "`{}` implies {st:?} for `{}`, but `{}` already gives {prev:?}",
                        d.target,
                        sys.standard[rep].id,
                        entry.source.as_deref().unwrap_or("?")
                    ),
                ))
            }
            _ => {}
        }
        if let (Some(a), Some(bv)) = (&entry.value, &val) {
            if a != bv {
                return Err(constraint(
                    "toledo-consistency",
                    format!("`{}` gives T = {bv} for `{}`, previously {a}", d.target, sys.standard[rep].id),
                ));
            }
        }
        entry.status = Some(st);
        if val.is_some() {
            entry.value = val;
        }
        entry.source.get_or_insert_with(|| d.target.clone());
    }

    let lookup = |b: usize| -> (Status, Option<Rational>) {
        let (rep, s) = classes[b];
        match vars.get(&rep) {
            Some(v) => (v.status.unwrap_or(Status::Unknown).signed(s), v.value.as_ref().map(|x| x * int(s as i64))),
            None => (Status::Unknown, None),
        }
    };
    let mut out = Propagated::default();
    for (i, r) in sys.standard.iter().enumerate() {
        if !r.pure_imaginary || r.signature.is_none() {
            continue;
        }
        let mut d = ToledoDecoration::new(r.id.clone(), Status::NonMaximal);
        match forced_standard(sys, i) {
            Some(t) => d.justification = Some(t),
            None => {
                let (st, v) = lookup(i);
                d.status = st;
                d.toledo_value = v;
            }
        }
        out.standard.push(d);
    }
    for (j, r) in sys.adjoint.iter().enumerate() {
        let Some(link) = links[j] else { continue };
        let mut d = ToledoDecoration::new(r.id.clone(), Status::NonMaximal);
        match link {
            Link::Forced(t) => d.justification = Some(t),
            Link::Derived { std, sign, dim } => {
                let (st, v) = lookup(std);
                d.status = st.signed(sign);
                d.toledo_value = v.map(|x| x * int(sign as i64 * dim as i64));
                d.derived_from = Some(sys.standard[std].id.clone());
            }
        }
        out.adjoint.push(d);
    }
    Ok(out)
}

fn target_rank(sys: &RootSystem, id: &str) -> usize {
    let sig = sys
        .std_index(id)
        .and_then(|i| sys.standard[i].signature)
        .or_else(|| sys.adj_index(id).and_then(|j| sys.adjoint[j].signature));
    sig.map_or(0, |s| unitary_rank(&s))
}

/// Standard roots whose Toledo status is a free input (one per orientation class).
pub fn free_variables(sys: &RootSystem) -> Vec<usize> {
    let classes = std_classes(sys);
    (0..sys.standard.len())
        .filter(|&i| {
            let r = &sys.standard[i];
            classes[i].0 == i
                && r.pure_imaginary
                && r.signature.is_some_and(|s| s.is_vanishing())
                && forced_standard(sys, i).is_none()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::slots::{Slot, SlotKind};
    use crate::sweep::{configurations, FamilyKind};
    use proptest::prelude::*;

    fn sig(pos: usize, neg: usize) -> Signature {
        Signature { pos, neg, null: 0 }
    }

    fn su23() -> RootSystem {
        let spec = GroupSpec::new(Family::Su { p: 2, q: 3 }).unwrap();
        let slots = vec![
            Slot::new("d", SlotKind::UImag { sig: sig(0, 1) }, 1),
            Slot::new("e", SlotKind::UImag { sig: sig(2, 2) }, 4),
        ];
        RootSystem::from_slots(&spec, slots).unwrap()
    }

    fn g2() -> SurfaceData {
        SurfaceData::new(2).unwrap()
    }

    fn tag_of(e: FlexError) -> String {
        match e {
            FlexError::Constraint { tag, .. } => tag,
            other => panic!("expected a constraint violation, got {other}"),
        }
    }

    #[test]
    fn milnor_wood_values() {
        assert_eq!(milnor_wood_bound(&g2(), 2).unwrap(), 4);
        assert_eq!(milnor_wood_bound(&g2(), 1).unwrap(), 2);
        assert_eq!(milnor_wood_bound(&SurfaceData::new(3).unwrap(), 3).unwrap(), 12);
        assert!(milnor_wood_bound(&g2(), 0).is_err());
        assert!(SurfaceData::new(1).is_err());
    }

    #[test]
    fn combine_examples() {
        let w = ToledoDecoration::new("w", Status::MaximalPositive).with_value(int(4));
        let c = toledo_combine(CombineOp::Conjugate, std::slice::from_ref(&w)).unwrap();
        assert_eq!((c.status, c.toledo_value.clone()), (Status::MaximalNegative, Some(int(-4))));
        let s = toledo_combine(CombineOp::DirectSum, &[w, c]).unwrap();
        assert_eq!((s.status, s.toledo_value), (Status::NonMaximal, Some(int(0))));
        let u = ToledoDecoration::new("u", Status::MaximalPositive).with_value(int(2));
        let h = toledo_combine(CombineOp::HomWithUnitary { dim_v: 3 }, &[u]).unwrap();
        assert_eq!((h.status, h.toledo_value), (Status::MaximalPositive, Some(int(6))));
        assert!(toledo_combine(CombineOp::DirectSum, &[]).is_err());
    }

    #[test]
    fn forced_roots_reject_maximality() {
        let sys = su23();
        let e = propagate_constraints(&sys, &[ToledoDecoration::new("d", Status::MaximalPositive)], &g2());
        assert_eq!(tag_of(e.unwrap_err()), "maxtight");
    }

    #[test]
    fn values_are_bounded() {
        let sys = su23();
        let ok = ToledoDecoration::new("e", Status::Unknown).with_value(int(4));
        let p = propagate_constraints(&sys, &[ok], &g2()).unwrap();
        assert_eq!(p.adjoint_status("d>e"), Some(Status::MaximalNegative));
        let over = ToledoDecoration::new("e", Status::Unknown).with_value(int(5));
        assert_eq!(tag_of(propagate_constraints(&sys, &[over], &g2()).unwrap_err()), "milnor-wood");
        let clash = ToledoDecoration::new("e", Status::NonMaximal).with_value(int(4));
        assert_eq!(tag_of(propagate_constraints(&sys, &[clash], &g2()).unwrap_err()), "milnor-wood");
    }

    #[test]
    fn joint_consistency() {
        let sys = su23();
        let good = [
            ToledoDecoration::new("e", Status::MaximalNegative),
            ToledoDecoration::new("d>e", Status::MaximalPositive),
        ];
        let p = propagate_constraints(&sys, &good, &g2()).unwrap();
        assert_eq!(p.adjoint_status("e>d"), Some(Status::MaximalNegative));
        let bad = [
            ToledoDecoration::new("e", Status::MaximalPositive),
            ToledoDecoration::new("d>e", Status::MaximalPositive),
        ];
        assert_eq!(tag_of(propagate_constraints(&sys, &bad, &g2()).unwrap_err()), "toledo-consistency");
    }

    #[test]
    fn unknown_targets_are_rejected() {
        let e = propagate_constraints(&su23(), &[ToledoDecoration::new("zz", Status::NonMaximal)], &g2());
        assert!(matches!(e, Err(FlexError::Validation(_))));
    }

    fn corpus() -> &'static [RootSystem] {
        static CORPUS: std::sync::OnceLock<Vec<RootSystem>> = std::sync::OnceLock::new();
        CORPUS.get_or_init(build_corpus)
    }

    fn build_corpus() -> Vec<RootSystem> {
        let mut out = Vec::new();
        for (k, n) in [(FamilyKind::Su, 5), (FamilyKind::SoStar, 8), (FamilyKind::So, 6), (FamilyKind::Sp, 6)] {
            for (spec, slots) in configurations(k, n) {
                out.push(RootSystem::from_slots(&spec, slots).unwrap());
            }
        }
        out
    }

    fn assign(sys: &RootSystem, picks: &[u8], conj: bool) -> Vec<ToledoDecoration> {
        let opts = [Status::MaximalPositive, Status::MaximalNegative, Status::NonMaximal, Status::Unknown];
        free_variables(sys)
            .into_iter()
            .zip(picks)
            .map(|(i, &k)| {
                let s = opts[k as usize % 4];
                ToledoDecoration::new(sys.standard[i].id.clone(), if conj { s.conjugate() } else { s })
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn propagation_is_idempotent(idx in 0usize..10_000, picks in prop::collection::vec(0u8..4, 8)) {
            let all = corpus();
            let sys = &all[idx % all.len()];
            let once = propagate_constraints(sys, &assign(sys, &picks, false), &g2()).unwrap();
            let again: Vec<_> = once.all().cloned().collect();
            let twice = propagate_constraints(sys, &again, &g2()).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn conjugation_is_symmetric(idx in 0usize..10_000, picks in prop::collection::vec(0u8..4, 8)) {
            let all = corpus();
            let sys = &all[idx % all.len()];
            let a = propagate_constraints(sys, &assign(sys, &picks, false), &g2()).unwrap();
            let b = propagate_constraints(sys, &assign(sys, &picks, true), &g2()).unwrap();
            for (x, y) in a.all().zip(b.all()) {
                prop_assert_eq!(x.status.conjugate(), y.status);
                prop_assert_eq!(x.justification, y.justification);
            }
        }
    }
}
