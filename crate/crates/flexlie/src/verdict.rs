//! Top-level flexibility verdict.

use serde::{Deserialize, Serialize};

use crate::balance::{is_balanced, Balance, BalancednessCertificate, BalancednessInstance};
use crate::error::{FlexError, Result};
use crate::group::{Family, Shape};
use crate::roots::RootSystem;
use crate::toledo::{free_variables, propagate_constraints, Propagated, Status, SurfaceData, ToledoDecoration};

/// Completions beyond `3^MAX_UNKNOWN` are not enumerated.
pub const MAX_UNKNOWN: usize = 9;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Flexible,
    RigidMaximal { descriptor: String },
    Indeterminate { unknown: Vec<String> },
}

/// Rules that settle flexibility without the LP.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShortCircuit {
    SpecialLinear,
    CompactOrComplex,
    NonImaginaryStandardRoot,
    SkewForm,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FlexVerdict {
    pub outcome: Outcome,
    pub genus_bound_ok: bool,
    pub short_circuit: Option<ShortCircuit>,
    pub certificate: BalancednessCertificate,
}

pub fn short_circuit(sys: &RootSystem) -> Option<ShortCircuit> {
    let spec = &sys.spec;
    if matches!(spec.family, Family::SlR { .. } | Family::SlH { .. }) {
        return Some(ShortCircuit::SpecialLinear);
    }
    if spec.is_compact() || spec.is_complex() {
        return Some(ShortCircuit::CompactOrComplex);
    }
    if spec.shape() == Shape::Orthogonal && sys.standard.iter().any(|r| !r.pure_imaginary) {
        return Some(ShortCircuit::NonImaginaryStandardRoot);
    }
    if spec.epsilon() == Some(-1) {
        return Some(ShortCircuit::SkewForm);
    }
    None
}

/// `P` = imaginary parts of maximal-positive roots; `N` = both parts of every
/// root outside `±P`. Unknown statuses are not allowed.
pub fn build_instance(sys: &RootSystem, prop: &Propagated) -> Result<BalancednessInstance> {
    let mut p = Vec::new();
    let mut n = Vec::new();
    for r in &sys.adjoint {
        let (re, im) = sys.real_parts(&r.coords);
        let status = if r.pure_imaginary {
            prop.adjoint_status(&r.id)
                .ok_or_else(|| FlexError::Internal(format!("no decoration for adjoint root `{}`", r.id)))?
        } else {
            Status::NonMaximal
        };
        match status {
            Status::MaximalPositive => p.push(im),
            Status::MaximalNegative => {}
            Status::NonMaximal => {
                n.push(re);
                n.push(im);
            }
            Status::Unknown => {
                return Err(FlexError::Contract(format!("adjoint root `{}` has unknown status", r.id)));
            }
        }
    }
    BalancednessInstance::new(sys.real_dim_c(), p, n)
}

fn status_of(prop: &Propagated, id: &str) -> Option<Status> {
    prop.standard.iter().chain(&prop.adjoint).find(|d| d.target == id).map(|d| d.status)
}

/// All given statuses equal one maximal status.
fn shared_maximal(statuses: &[Option<Status>]) -> bool {
    match statuses.first() {
        Some(Some(s)) if s.is_maximal() => statuses.iter().all(|t| *t == Some(*s)),
        _ => false,
    }
}

/// `S(U(a,a)×U(b))`: definite roots `D` of one sign, vanishing roots `E`,
/// nothing else, and every `E − D` root maximal with a common sign.
fn unitary_descriptor(sys: &RootSystem, prop: &Propagated) -> Option<String> {
    let mut d = Vec::new();
    let mut e = Vec::new();
    for (i, r) in sys.standard.iter().enumerate() {
        let sig = r.signature.filter(|_| r.pure_imaginary)?;
        if sig.is_definite() {
            d.push(i);
        } else if sig.is_vanishing() {
            e.push(i);
        } else {
            return None;
        }
    }
    if d.is_empty() || e.is_empty() {
        return None;
    }
    let positive = |i: usize| sys.standard[i].signature.is_some_and(|s| s.pos > 0);
    if !d.iter().all(|&i| positive(i) == positive(d[0])) {
        return None;
    }
    let mut statuses = Vec::new();
    for &from in &d {
        for &to in &e {
            let w: Vec<_> = (0..sys.dim_c())
                .map(|k| sys.standard[to].coords[k].clone() - sys.standard[from].coords[k].clone())
                .collect();
            let r = sys.adjoint.iter().find(|r| r.coords == w)?;
            statuses.push(status_of(prop, &r.id));
        }
    }
    if !shared_maximal(&statuses) {
        return None;
    }
    let a: usize = e.iter().map(|&i| sys.standard[i].dim).sum::<usize>() / 2;
    let b: usize = d.iter().map(|&i| sys.standard[i].dim).sum();
    Some(format!("S(U({a},{a})×U({b}))"))
}

/// `SO*(2m−2)×SO(2)`, `m` odd: one definite pair `±ℓ₀` with `d = 1`, every
/// other standard root vanishing, and every `ℓ₀ − b` root maximal with a
/// common sign.
fn quaternionic_descriptor(sys: &RootSystem, prop: &Propagated, m: usize) -> Option<String> {
    if m.is_multiple_of(2) {
        return None;
    }
    let mut definite = Vec::new();
    for (i, r) in sys.standard.iter().enumerate() {
        let sig = r.signature.filter(|_| r.pure_imaginary)?;
        if sig.is_definite() {
            definite.push(i);
        } else if !sig.is_vanishing() {
            return None;
        }
    }
    let [a, b] = definite[..] else { return None };
    if sys.standard[a].neg != Some(b) || sys.standard[a].dim != 1 {
        return None;
    }
    let l0 = if sys.standard[a].id.starts_with('-') { b } else { a };
    let mut statuses = Vec::new();
    for (i, r) in sys.standard.iter().enumerate() {
        if i == a || i == b {
            continue;
        }
        let w: Vec<_> = (0..sys.dim_c()).map(|k| sys.standard[l0].coords[k].clone() - r.coords[k].clone()).collect();
        let root = sys.adjoint.iter().find(|x| x.coords == w)?;
        statuses.push(status_of(prop, &root.id));
    }
    if !shared_maximal(&statuses) {
        return None;
    }
    Some(format!("SO*({})×SO(2)", 2 * m - 2))
}

/// The exceptional rigid shapes.
pub fn exceptional_descriptor(sys: &RootSystem, prop: &Propagated) -> Option<String> {
    match sys.spec.family {
        Family::Su { p, q } if p != q => unitary_descriptor(sys, prop),
        Family::SoStar { m } => quaternionic_descriptor(sys, prop, m),
        _ => None,
    }
}

/// Verdict for fully known decorations.
fn decide(sys: &RootSystem, prop: &Propagated) -> Result<(Outcome, BalancednessCertificate)> {
    let cert = is_balanced(&build_instance(sys, prop)?)?;
    let outcome = match cert.verdict {
        Balance::Balanced => Outcome::Flexible,
        Balance::Unbalanced => match (short_circuit(sys), exceptional_descriptor(sys, prop)) {
            (None, Some(descriptor)) => Outcome::RigidMaximal { descriptor },
            (sc, _) => {
                return Err(FlexError::Internal(format!(
                    "{}: unbalanced configuration outside the exceptional shapes{}",
                    sys.spec.name(),
                    sc.map(|s| format!(" (short-circuit {s:?} applies)")).unwrap_or_default()
                )))
            }
        },
    };
    Ok((outcome, cert))
}

/// Propagated decorations with the given free variables set.
pub fn complete(
    sys: &RootSystem,
    prop: &Propagated,
    surface: &SurfaceData,
    assign: &[(usize, Status)],
) -> Result<Propagated> {
    let mut decs: Vec<ToledoDecoration> = prop
        .standard
        .iter()
        .filter(|d| d.justification.is_none() && d.status != Status::Unknown)
        .cloned()
        .collect();
    decs.extend(assign.iter().map(|&(i, s)| ToledoDecoration::new(sys.standard[i].id.clone(), s)));
    propagate_constraints(sys, &decs, surface)
}

/// Free variables still unknown after propagation.
pub fn unknown_variables(sys: &RootSystem, prop: &Propagated) -> Vec<usize> {
    free_variables(sys)
        .into_iter()
        .filter(|&i| status_of(prop, &sys.standard[i].id) == Some(Status::Unknown))
        .collect()
}

pub fn classify(sys: &RootSystem, surface: &SurfaceData, prop: &Propagated) -> Result<FlexVerdict> {
    surface.validate()?;
    let genus_bound_ok = surface.genus_bound_ok(sys.spec.real_dim());
    let sc = short_circuit(sys);
    let unknown = unknown_variables(sys, prop);
    let names = || unknown.iter().map(|&i| sys.standard[i].id.clone()).collect::<Vec<_>>();
    let baseline = {
        let assign: Vec<_> = unknown.iter().map(|&i| (i, Status::NonMaximal)).collect();
        complete(sys, prop, surface, &assign)?
    };
    let (first, certificate) = decide(sys, &baseline)?;
    if unknown.len() > MAX_UNKNOWN {
        let outcome = if sc.is_some() { first } else { Outcome::Indeterminate { unknown: names() } };
        return Ok(FlexVerdict { outcome, genus_bound_ok, short_circuit: sc, certificate });
    }
    let choices = [Status::MaximalPositive, Status::MaximalNegative, Status::NonMaximal];
    let total = 3usize.pow(unknown.len() as u32);
    let mut outcome = first;
    for code in 0..total {
        let mut c = code;
        let assign: Vec<_> = unknown
            .iter()
            .map(|&i| {
                let s = choices[c % 3];
                c /= 3;
                (i, s)
            })
            .collect();
        let (o, _) = decide(sys, &complete(sys, prop, surface, &assign)?)?;
        if o != outcome {
            outcome = Outcome::Indeterminate { unknown: names() };
            break;
        }
    }
    Ok(FlexVerdict { outcome, genus_bound_ok, short_circuit: sc, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::slots::{Slot, SlotKind};
    use crate::sweep::{configurations, FamilyKind};
    use crate::Signature;

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

    fn so_star6() -> RootSystem {
        let spec = GroupSpec::new(Family::SoStar { m: 3 }).unwrap();
        let slots = vec![
            Slot::new("0", SlotKind::Zero { sig: Some(Signature::split(2)) }, 4),
            Slot::new("l", SlotKind::OImag { sig: sig(1, 0) }, 1),
        ];
        RootSystem::from_slots(&spec, slots).unwrap()
    }

    fn run(sys: &RootSystem, decs: &[ToledoDecoration]) -> FlexVerdict {
        let surface = SurfaceData::new(2).unwrap();
        let prop = propagate_constraints(sys, decs, &surface).unwrap();
        classify(sys, &surface, &prop).unwrap()
    }

    #[test]
    fn su_maximal_is_rigid() {
        let v = run(&su23(), &[ToledoDecoration::new("d>e", Status::MaximalPositive)]);
        assert_eq!(v.outcome, Outcome::RigidMaximal { descriptor: "S(U(2,2)×U(1))".into() });
        assert_eq!(v.certificate.verdict, Balance::Unbalanced);
        assert_eq!(v.short_circuit, None);
    }

    #[test]
    fn su_non_maximal_is_flexible() {
        let v = run(&su23(), &[ToledoDecoration::new("e", Status::NonMaximal)]);
        assert_eq!(v.outcome, Outcome::Flexible);
        assert_eq!(v.certificate.verdict, Balance::Balanced);
    }

    #[test]
    fn missing_decoration_is_indeterminate() {
        let v = run(&su23(), &[]);
        assert_eq!(v.outcome, Outcome::Indeterminate { unknown: vec!["e".into()] });
    }

    #[test]
    fn so_star_maximal_is_rigid() {
        let v = run(&so_star6(), &[ToledoDecoration::new("(+l)", Status::MaximalNegative)]);
        assert_eq!(v.outcome, Outcome::RigidMaximal { descriptor: "SO*(4)×SO(2)".into() });
    }

    #[test]
    fn skew_forms_are_flexible() {
        let surface = SurfaceData::new(2).unwrap();
        for (spec, slots) in configurations(FamilyKind::SpR, 4) {
            let sys = RootSystem::from_slots(&spec, slots).unwrap();
            let prop = propagate_constraints(&sys, &[], &surface).unwrap();
            let v = classify(&sys, &surface, &prop).unwrap();
            assert_eq!(v.outcome, Outcome::Flexible);
            assert!(v.short_circuit.is_some());
        }
    }

    #[test]
    fn real_standard_root_short_circuits() {
        let spec = GroupSpec::new(Family::So { p: 2, q: 1 }).unwrap();
        let slots = vec![
            Slot::new("0", SlotKind::Zero { sig: Some(sig(1, 0)) }, 1),
            Slot::new("r", SlotKind::OReal, 1),
        ];
        let sys = RootSystem::from_slots(&spec, slots).unwrap();
        assert_eq!(short_circuit(&sys), Some(ShortCircuit::NonImaginaryStandardRoot));
        assert_eq!(run(&sys, &[]).outcome, Outcome::Flexible);
    }

    #[test]
    fn genus_flag() {
        let sys = su23();
        let surface = SurfaceData::new(2 * 24 * 24).unwrap();
        let prop = propagate_constraints(&sys, &[], &surface).unwrap();
        assert!(classify(&sys, &surface, &prop).unwrap().genus_bound_ok);
        assert!(!run(&sys, &[]).genus_bound_ok);
    }
}
