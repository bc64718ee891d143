//! Exhaustive enumeration of decorated configurations at small dimension.
//!
//! Configurations are canonical multisets of slots (one per isomorphism type
//! of block data up to relabelling), each paired with every assignment of
//! statuses to the free Toledo variables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::balance::{is_balanced, Balance};
use crate::error::{FlexError, Result};
use crate::group::{Family, GroupSpec};
use crate::roots::RootSystem;
use crate::slots::{hermitian_positive_count, validate_slots, Slot, SlotKind};
use crate::toledo::{adjoint_link, forced_standard, free_variables, Link, Propagated, Status, SurfaceData, Tag};
use crate::verdict::{build_instance, complete, exceptional_descriptor, short_circuit, MAX_UNKNOWN};
use crate::Signature;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "SL_R")]
    SlR,
    #[serde(rename = "SL_C")]
    SlC,
    #[serde(rename = "SL_H")]
    SlH,
    #[serde(rename = "SU")]
    Su,
    #[serde(rename = "SO")]
    So,
    #[serde(rename = "Sp_R")]
    SpR,
    #[serde(rename = "Sp")]
    Sp,
    #[serde(rename = "SOstar")]
    SoStar,
    #[serde(rename = "SO_C")]
    SoC,
    #[serde(rename = "Sp_C")]
    SpC,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::SlR,
        FamilyKind::SlC,
        FamilyKind::SlH,
        FamilyKind::Su,
        FamilyKind::So,
        FamilyKind::SpR,
        FamilyKind::Sp,
        FamilyKind::SoStar,
        FamilyKind::SoC,
        FamilyKind::SpC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::SlR => "SL_R",
            FamilyKind::SlC => "SL_C",
            FamilyKind::SlH => "SL_H",
            FamilyKind::Su => "SU",
            FamilyKind::So => "SO",
            FamilyKind::SpR => "Sp_R",
            FamilyKind::Sp => "Sp",
            FamilyKind::SoStar => "SOstar",
            FamilyKind::SoC => "SO_C",
            FamilyKind::SpC => "Sp_C",
        }
    }

    pub fn of(family: Family) -> Self {
        match family {
            Family::SlR { .. } => FamilyKind::SlR,
            Family::SlC { .. } => FamilyKind::SlC,
            Family::SlH { .. } => FamilyKind::SlH,
            Family::Su { .. } => FamilyKind::Su,
            Family::So { .. } => FamilyKind::So,
            Family::SpR { .. } => FamilyKind::SpR,
            Family::Sp { .. } => FamilyKind::Sp,
            Family::SoStar { .. } => FamilyKind::SoStar,
            Family::SoC { .. } => FamilyKind::SoC,
            Family::SpC { .. } => FamilyKind::SpC,
        }
    }

    fn quaternionic(self) -> bool {
        matches!(self, FamilyKind::SlH | FamilyKind::Sp | FamilyKind::SoStar)
    }

    /// `V` has even dimension.
    fn even(self) -> bool {
        matches!(self, FamilyKind::SlH | FamilyKind::SpR | FamilyKind::Sp | FamilyKind::SoStar | FamilyKind::SpC)
    }

    /// The group acting on a space of dimension `n` with `pos` positive directions.
    fn spec(self, n: usize, pos: usize) -> Option<GroupSpec> {
        let h = n / 2;
        let family = match self {
            FamilyKind::SlR => Family::SlR { n },
            FamilyKind::SlC => Family::SlC { n },
            FamilyKind::SlH => Family::SlH { m: h },
            FamilyKind::Su => Family::Su { p: pos, q: n.checked_sub(pos)? },
            FamilyKind::So => Family::So { p: pos, q: n.checked_sub(pos)? },
            FamilyKind::SpR => Family::SpR { m: h },
            FamilyKind::Sp if pos.is_multiple_of(2) => Family::Sp { p: pos / 2, q: h.checked_sub(pos / 2)? },
            FamilyKind::Sp => return None,
            FamilyKind::SoStar => Family::SoStar { m: h },
            FamilyKind::SoC => Family::SoC { n },
            FamilyKind::SpC => Family::SpC { m: h },
        };
        GroupSpec::new(family).ok()
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = FlexError;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FlexError::Parse(format!("unknown family `{s}`")))
    }
}

fn signatures(d: usize, even: bool) -> Vec<Signature> {
    (0..=d)
        .filter(|p| !even || (p % 2 == 0 && (d - p).is_multiple_of(2)))
        .map(|pos| Signature { pos, neg: d - pos, null: 0 })
        .collect()
}

/// Non-zero slot kinds of total dimension at most `budget`.
fn slot_options(kind: FamilyKind, budget: usize) -> Vec<(SlotKind, usize)> {
    let mut out = Vec::new();
    let q = kind.quaternionic();
    for d in 1..=budget {
        match kind {
            FamilyKind::SlR | FamilyKind::SlH => {
                if !q || d % 2 == 0 {
                    out.push((SlotKind::LinReal, d));
                }
                out.push((SlotKind::LinPair, d));
            }
            FamilyKind::SlC => out.push((SlotKind::LinComplex, d)),
            FamilyKind::Su => {
                out.extend(signatures(d, false).into_iter().map(|sig| (SlotKind::UImag { sig }, d)));
                out.push((SlotKind::UPaired, d));
            }
            FamilyKind::SoC | FamilyKind::SpC => out.push((SlotKind::CPair, d)),
            _ => {
                out.extend(signatures(d, false).into_iter().map(|sig| (SlotKind::OImag { sig }, d)));
                if !q || d % 2 == 0 {
                    out.push((SlotKind::OReal, d));
                }
                out.push((SlotKind::OCplx, d));
            }
        }
    }
    out.retain(|(k, d)| Slot::new("", *k, *d).total_dim() <= budget);
    out
}

/// Possible zero slots (including none) of dimension at most `budget`.
fn zero_options(kind: FamilyKind, budget: usize) -> Vec<Option<Slot>> {
    let mut out = vec![None];
    for d in 1..=budget {
        let sigs: Vec<Option<Signature>> = match kind {
            FamilyKind::So => signatures(d, false).into_iter().map(Some).collect(),
            FamilyKind::Sp if d % 2 == 0 => signatures(d, true).into_iter().map(Some).collect(),
            FamilyKind::SpR | FamilyKind::SoStar if d % 2 == 0 => vec![Some(Signature::split(d / 2))],
            FamilyKind::SoC => vec![None],
            FamilyKind::SpC if d % 2 == 0 => vec![None],
            _ => vec![],
        };
        out.extend(sigs.into_iter().map(|sig| Some(Slot::new("0", SlotKind::Zero { sig }, d))));
    }
    out
}

fn multisets(opts: &[(SlotKind, usize)], start: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..opts.len() {
        let t = Slot::new("", opts[i].0, opts[i].1).total_dim();
        if t <= remaining {
            cur.push(i);
            multisets(opts, i, remaining - t, cur, out);
            cur.pop();
        }
    }
}

/// Every valid slot configuration with `dim V = n`.
pub fn configurations(kind: FamilyKind, n: usize) -> Vec<(GroupSpec, Vec<Slot>)> {
    if n == 0 || (kind.even() && !n.is_multiple_of(2)) {
        return vec![];
    }
    let opts = slot_options(kind, n);
    let mut out = Vec::new();
    for zero in zero_options(kind, n) {
        let zd = zero.as_ref().map_or(0, |z| z.d);
        let mut sets = Vec::new();
        multisets(&opts, 0, n - zd, &mut Vec::new(), &mut sets);
        for set in sets {
            let mut slots: Vec<Slot> = zero.iter().cloned().collect();
            slots.extend(set.iter().enumerate().map(|(k, &i)| Slot::new(format!("b{k}"), opts[i].0, opts[i].1)));
            let probe = kind.spec(n, n).or_else(|| kind.spec(n, 0));
            let pos = probe.map_or(0, |p| hermitian_positive_count(&p, &slots));
            let Some(spec) = kind.spec(n, pos) else { continue };
            if validate_slots(&spec, &slots).is_ok() {
                out.push((spec, slots));
            }
        }
    }
    out
}

pub fn describe_slots(slots: &[Slot]) -> String {
    slots
        .iter()
        .map(|s| match s.kind {
            SlotKind::UImag { sig } | SlotKind::OImag { sig } | SlotKind::Zero { sig: Some(sig) } => {
                format!("{}:{}[{}]{sig}", s.label, s.kind.name(), s.d)
            }
            _ => format!("{}:{}[{}]", s.label, s.kind.name(), s.d),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Forced decorations lacking a tag, and tag counts.
pub fn tag_audit(sys: &RootSystem, prop: &Propagated, counts: &mut BTreeMap<Tag, usize>) -> Vec<String> {
    let mut bad = Vec::new();
    for d in &prop.standard {
        let i = sys.std_index(&d.target).expect("decorated root exists");
        match (forced_standard(sys, i), d.justification) {
            (Some(t), Some(j)) if t == j && d.status == Status::NonMaximal => *counts.entry(t).or_default() += 1,
            (None, None) => {}
            _ => bad.push(d.target.clone()),
        }
    }
    for d in &prop.adjoint {
        let j = sys.adj_index(&d.target).expect("decorated root exists");
        match (adjoint_link(sys, j), d.justification) {
            (Some(Link::Forced(t)), Some(g)) if t == g && d.status == Status::NonMaximal => {
                *counts.entry(t).or_default() += 1
            }
            (Some(Link::Derived { .. }), None) if d.derived_from.is_some() => {}
            _ => bad.push(d.target.clone()),
        }
    }
    bad
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SweepMismatch {
    pub group: String,
    pub slots: String,
    pub assignment: Vec<(String, Status)>,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub family: String,
    pub max_dim: usize,
    pub configurations: usize,
    pub decorated: usize,
    pub unbalanced: usize,
    /// Unbalanced decorated configurations per descriptor.
    pub rigid: BTreeMap<String, usize>,
    /// Descriptor matched but balanced.
    pub false_positives: Vec<SweepMismatch>,
    /// Unbalanced without a descriptor.
    pub false_negatives: Vec<SweepMismatch>,
    /// Configurations with more than `3^MAX_UNKNOWN` completions.
    pub skipped: usize,
    pub tag_counts: BTreeMap<String, usize>,
    pub untagged: Vec<SweepMismatch>,
}

impl SweepSummary {
    pub fn exact(&self) -> bool {
        self.false_positives.is_empty() && self.false_negatives.is_empty() && self.untagged.is_empty()
    }
}

/// Largest `dim V` accepted by [`run_sweep`].
pub const SWEEP_CAP: usize = 12;

#[derive(Default)]
struct Partial {
    decorated: usize,
    unbalanced: usize,
    skipped: usize,
    rigid: BTreeMap<String, usize>,
    false_positives: Vec<SweepMismatch>,
    false_negatives: Vec<SweepMismatch>,
    untagged: Vec<SweepMismatch>,
    tags: BTreeMap<Tag, usize>,
}

fn sweep_one(spec: &GroupSpec, slots: &[Slot], surface: &SurfaceData, out: &mut Partial) -> Result<()> {
    let choices = [Status::MaximalPositive, Status::MaximalNegative, Status::NonMaximal];
    let desc = describe_slots(slots);
    let sys = RootSystem::from_slots(spec, slots.to_vec())?;
    let free = free_variables(&sys);
    if free.len() > MAX_UNKNOWN {
        out.skipped += 1;
        return Ok(());
    }
    let sc = short_circuit(&sys);
    for code in 0..3usize.pow(free.len() as u32) {
        let mut c = code;
        let assign: Vec<(usize, Status)> = free
            .iter()
            .map(|&i| {
                let s = choices[c % 3];
                c /= 3;
                (i, s)
            })
            .collect();
        let prop = complete(&sys, &Propagated::default(), surface, &assign)?;
        out.decorated += 1;
        let mismatch = |detail: String| SweepMismatch {
            group: spec.name(),
            slots: desc.clone(),
            assignment: assign.iter().map(|&(i, s)| (sys.standard[i].id.clone(), s)).collect(),
            detail,
        };
        let bad = tag_audit(&sys, &prop, &mut out.tags);
        if !bad.is_empty() {
            out.untagged.push(mismatch(bad.join(", ")));
        }
        let cert = is_balanced(&build_instance(&sys, &prop)?)?;
        let descriptor = if sc.is_none() { exceptional_descriptor(&sys, &prop) } else { None };
        match (cert.verdict, descriptor) {
            (Balance::Unbalanced, Some(d)) => {
                out.unbalanced += 1;
                *out.rigid.entry(d).or_default() += 1;
            }
            (Balance::Unbalanced, None) => {
                out.unbalanced += 1;
                out.false_negatives.push(mismatch(format!("{:?}", sc)));
            }
            (Balance::Balanced, Some(d)) => out.false_positives.push(mismatch(d)),
            (Balance::Balanced, None) => {}
        }
    }
    Ok(())
}

/// Runs every configuration of `kind` with `dim V ≤ max_dim`, in parallel.
pub fn run_sweep(kind: FamilyKind, max_dim: usize) -> Result<SweepSummary> {
    if max_dim > SWEEP_CAP {
        return Err(FlexError::Validation(format!("sweep bound {max_dim} exceeds cap {SWEEP_CAP}")));
    }
    let surface = SurfaceData::new(2)?;
    let configs: Vec<_> = (1..=max_dim).flat_map(|n| configurations(kind, n)).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(configs.len().max(1));
    let chunk = configs.len().div_ceil(threads).max(1);
    let parts: Vec<Result<Partial>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .chunks(chunk)
            .map(|part| {
                let surface = &surface;
                s.spawn(move || {
                    let mut out = Partial::default();
                    for (spec, slots) in part {
                        sweep_one(spec, slots, surface, &mut out)?;
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut sum = SweepSummary { family: kind.name().into(), max_dim, configurations: configs.len(), ..Default::default() };
    let mut tags: BTreeMap<Tag, usize> = BTreeMap::new();
    for p in parts {
        let p = p?;
        sum.decorated += p.decorated;
        sum.unbalanced += p.unbalanced;
        sum.skipped += p.skipped;
        for (d, c) in p.rigid {
            *sum.rigid.entry(d).or_default() += c;
        }
        sum.false_positives.extend(p.false_positives);
        sum.false_negatives.extend(p.false_negatives);
        sum.untagged.extend(p.untagged);
        for (t, c) in p.tags {
            *tags.entry(t).or_default() += c;
        }
    }
    sum.tag_counts = tags.into_iter().map(|(t, c)| (t.name().to_string(), c)).collect();
    Ok(sum)
}
