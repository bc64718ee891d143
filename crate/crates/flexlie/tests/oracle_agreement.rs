mod common;

use common::{random_system, FAMILIES};
use flexlie::oracle::verify_system;
use flexlie::roots::RootSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn symbolic_roots_match_numeric_decomposition() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for fam in FAMILIES {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ fam.len() as u64);
        let mut done = 0;
        for trial in 0..4000 {
            if done >= 100 {
                break;
            }
            let Some((spec, slots)) = random_system(fam, &mut rng, 8) else { continue };
            let sys = match RootSystem::from_slots(&spec, slots.clone()) {
                Ok(s) => s,
                Err(_) => continue,
            };
            done += 1;
            checked += 1;
            match verify_system(&sys, trial, 12) {
                Ok(c) if c.agrees() => {}
                Ok(c) => failures.push(format!("{spec} {:?}: {:?}", slots, c.mismatches)),
                Err(e) => failures.push(format!("{spec} {:?}: {e}", slots)),
            }
        }
    }
    for f in &failures {
        eprintln!("{f}");
    }
    assert!(checked >= 1000, "too few configurations: {checked}");
    assert!(failures.is_empty(), "{} of {checked} configurations disagree", failures.len());
}

#[test]
fn sampled_run_agrees() {
    use flexlie::oracle::{run_oracle, CLUSTER_TOL};
    use flexlie::sweep::FamilyKind;
    for kind in [FamilyKind::Su, FamilyKind::SoStar, FamilyKind::SpC] {
        let run = run_oracle(kind, 6, 10, 3, CLUSTER_TOL).unwrap();
        assert_eq!(run.checked, 10);
        assert!(run.failures.is_empty(), "{:?}", run.failures);
    }
}
