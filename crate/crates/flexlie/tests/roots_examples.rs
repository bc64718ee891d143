use flexlie::forms::{Duality, IrredClass, IsotypicalBlock};
use flexlie::group::{Family, GroupSpec};
use flexlie::roots::{RootSource, RootSystem};
use flexlie::slots::{Slot, SlotKind};
use flexlie::scalar::int;
use flexlie::{Gaussian, GaussianRational, Signature};
use num_traits::Zero;

fn sig(pos: usize, neg: usize) -> Signature {
    Signature { pos, neg, null: 0 }
}

fn spec(f: Family) -> GroupSpec {
    GroupSpec::new(f).unwrap()
}

fn value(s: &Signature) -> i64 {
    s.pos as i64 - s.neg as i64
}

#[test]
fn sl_c_three_classes() {
    let blocks: Vec<_> = [("a", 1), ("b", 2), ("c", 3)]
        .into_iter()
        .map(|(id, d)| IsotypicalBlock::new(IrredClass { id: id.into(), dim: d, duality: Duality::SelfDualSameEps }, 1))
        .collect();
    let sys = RootSystem::build(&spec(Family::SlC { n: 6 }), &blocks).unwrap();
    assert_eq!(sys.dim_c(), 2);
    assert_eq!(sys.standard.len(), 3);
    for k in 0..sys.dim_c() {
        let rel = sys
            .standard
            .iter()
            .fold(GaussianRational::zero(), |acc, r| acc + r.coords[k].clone() * Gaussian::real(int(r.dim as i64)));
        assert!(rel.is_zero());
    }
    assert_eq!(sys.adjoint.len(), 6);
    for (i, a) in sys.adjoint.iter().enumerate() {
        assert!(sys.adjoint[..i].iter().all(|b| b.coords != a.coords));
    }
    assert_eq!(sys.audited_dim(), 35);
}

#[test]
fn so_c_single_pair() {
    let s = spec(Family::SoC { n: 4 });
    let sys = RootSystem::from_slots(&s, vec![Slot::new("l", SlotKind::CPair, 2)]).unwrap();
    assert_eq!(sys.dim_c(), 1);
    let ids: Vec<_> = sys.standard.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["+l", "-l"]);
    // d = 2 admits the doubles, each of dim 1.
    assert!(sys.adjoint.iter().all(|r| matches!(r.source, RootSource::Double { .. }) && r.dim == 1));
    assert_eq!(sys.audited_dim(), 6);
    // d = 1 without a zero root: no adjoint roots at all.
    let thin = RootSystem::from_slots(&s, vec![Slot::new("l", SlotKind::CPair, 1)]).unwrap();
    assert!(thin.adjoint.is_empty());
}

#[test]
fn sp_c_doubles() {
    let sys = RootSystem::from_slots(&spec(Family::SpC { m: 1 }), vec![Slot::new("l", SlotKind::CPair, 1)]).unwrap();
    assert_eq!(sys.adjoint.len(), 2);
    assert!(sys.adjoint.iter().all(|r| matches!(r.source, RootSource::Double { .. }) && r.dim == 1));
}

#[test]
fn su_single_block_is_imaginary() {
    let class = IrredClass { id: "a".into(), dim: 1, duality: Duality::SesquiSelfDual { signature: sig(1, 0) } };
    let blocks = vec![IsotypicalBlock::new(class, 2).with_signature(sig(1, 1))];
    let sys = RootSystem::build(&spec(Family::Su { p: 1, q: 1 }), &blocks).unwrap();
    assert_eq!(sys.standard.len(), 1);
    assert!(sys.standard[0].pure_imaginary);
}

#[test]
fn su_definite_against_vanishing() {
    let slots = vec![
        Slot::new("a", SlotKind::UImag { sig: sig(2, 0) }, 2),
        Slot::new("b", SlotKind::UImag { sig: sig(1, 1) }, 2),
    ];
    let sys = RootSystem::from_slots(&spec(Family::Su { p: 3, q: 1 }), slots).unwrap();
    for r in &sys.adjoint {
        let s = r.signature.unwrap();
        assert_eq!((r.dim, s.dim(), value(&s)), (4, 4, 0));
    }
}

#[test]
fn double_root_exterior_square() {
    let slots = vec![Slot::new("l", SlotKind::OImag { sig: sig(2, 2) }, 4)];
    let sys = RootSystem::from_slots(&spec(Family::So { p: 4, q: 4 }), slots).unwrap();
    let doubles: Vec<_> = sys.adjoint.iter().filter(|r| matches!(r.source, RootSource::Double { .. })).collect();
    assert_eq!(doubles.len(), 2);
    for r in doubles {
        let s = r.signature.unwrap();
        assert_eq!(r.dim, 6);
        assert_eq!(value(&s).abs(), 2);
    }
}

#[test]
fn sl_r_conjugate_pair() {
    let sys = RootSystem::from_slots(&spec(Family::SlR { n: 6 }), vec![Slot::new("l", SlotKind::LinPair, 3)]).unwrap();
    let imag: Vec<_> = sys.adjoint.iter().filter(|r| r.pure_imaginary).collect();
    assert_eq!(imag.len(), 2);
    for r in imag {
        let s = r.signature.unwrap();
        assert_eq!((r.dim, value(&s).abs()), (9, 3));
    }
}
