use std::path::PathBuf;

use flexlie::pipeline::{exit, exit_code, exit_code_for_error, run_scenario, Report, Scenario};
use flexlie::verdict::Outcome;

fn scenario(name: &str) -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name);
    Scenario::load(&path).unwrap()
}

#[test]
fn su_rigid_report() {
    let r = run_scenario(&scenario("su23_rigid.toml"), true).unwrap();
    assert_eq!(r.verdict.outcome, Outcome::RigidMaximal { descriptor: "S(U(2,2)×U(1))".into() });
    assert_eq!(exit_code(&r), exit::VERDICT);
    assert!(r.oracle.as_ref().is_some_and(|c| c.agrees()));
    assert_eq!(r.roots.audited_dim, r.roots.lie_dim);
}

#[test]
fn skew_form_is_flexible() {
    let r = run_scenario(&scenario("sp4_flexible.toml"), true).unwrap();
    assert_eq!(r.verdict.outcome, Outcome::Flexible);
}

#[test]
fn so_star_rigid_report() {
    let r = run_scenario(&scenario("so_star6_rigid.toml"), false).unwrap();
    assert_eq!(r.verdict.outcome, Outcome::RigidMaximal { descriptor: "SO*(4)×SO(2)".into() });
    assert!(r.oracle.is_none());
}

#[test]
fn indeterminate_exit_code() {
    let r = run_scenario(&scenario("su23_indeterminate.toml"), false).unwrap();
    assert_eq!(exit_code(&r), exit::INDETERMINATE);
}

#[test]
fn dimension_mismatch_is_a_validation_error() {
    let e = run_scenario(&scenario("bad_dimension.toml"), false).unwrap_err();
    assert_eq!(exit_code_for_error(&e), exit::VALIDATION);
}

#[test]
fn parse_errors_carry_a_location() {
    let e = Scenario::parse("schema_version = 1\n[group]\nfamily = \"SU\"\np = \"x\"\n").unwrap_err();
    assert!(e.to_string().contains("line"), "{e}");
    let e = Scenario::parse("schema_version = 7\n[group]\nfamily = \"SU\"\np = 1\nq = 1\n[surface]\ngenus = 2\n");
    assert!(e.is_err());
}

#[test]
fn reports_are_deterministic() {
    for name in ["su23_rigid.toml", "sp4_flexible.toml", "so_star6_rigid.toml"] {
        let a = run_scenario(&scenario(name), true).unwrap().to_toml();
        let b = run_scenario(&scenario(name), true).unwrap().to_toml();
        assert_eq!(a, b);
    }
}

#[test]
fn echoed_scenario_round_trips() {
    for name in ["su23_rigid.toml", "sp4_flexible.toml", "so_star6_rigid.toml", "su23_indeterminate.toml"] {
        let r = run_scenario(&scenario(name), false).unwrap();
        let parsed: Report = toml::from_str(&r.to_toml()).unwrap();
        assert_eq!(parsed, r);
        let again = run_scenario(&Scenario::parse(&parsed.scenario.to_toml()).unwrap(), false).unwrap();
        assert_eq!(again.verdict, r.verdict);
    }
}
