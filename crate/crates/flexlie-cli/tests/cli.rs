use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn flexlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexlie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    for (file, code) in [
        ("su23_rigid.toml", 0),
        ("sp4_flexible.toml", 0),
        ("so_star6_rigid.toml", 0),
        ("su23_indeterminate.toml", 2),
        ("bad_dimension.toml", 3),
    ] {
        let out = flexlie(&["check", scenario(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{file}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = flexlie(&["check", "/nonexistent/scenario.toml"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn text_report_names_the_verdict() {
    let out = flexlie(&["--format", "text", "check", scenario("su23_rigid.toml").to_str().unwrap()]);
    assert!(stdout(&out).contains("rigid maximal, image in S(U(2,2)×U(1))"));
    let out = flexlie(&["--format", "text", "check", "--no-oracle", scenario("sp4_flexible.toml").to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("verdict: flexible"));
    assert!(!text.contains("oracle:"));
}

#[test]
fn structured_report_parses_back() {
    let out = flexlie(&["check", scenario("so_star6_rigid.toml").to_str().unwrap()]);
    let report: flexlie::pipeline::Report = toml::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.group_name, "SO*(6)");
    let again = flexlie(&["check", scenario("so_star6_rigid.toml").to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn sweep_reports_exceptional_shapes() {
    let out = flexlie(&["sweep", "SOstar", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let s: flexlie::sweep::SweepSummary = toml::from_str(&stdout(&out)).unwrap();
    assert!(s.exact());
    assert_eq!(s.rigid.keys().cloned().collect::<Vec<_>>(), vec!["SO*(4)×SO(2)".to_string()]);
}

#[test]
fn sweep_rejects_bounds_over_cap_and_unknown_families() {
    assert_eq!(flexlie(&["sweep", "SO", "40"]).status.code(), Some(3));
    assert_eq!(flexlie(&["sweep", "G2", "4"]).status.code(), Some(3));
}

#[test]
fn oracle_and_appendix() {
    let out = flexlie(&["--format", "text", "oracle", "--seed", "7", "--instances", "4", "--family", "Sp_R", "--max-dim", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Sp_R: 4 instances"));
    assert_eq!(flexlie(&["oracle", "--tolerance", "2"]).status.code(), Some(3));
    let out = flexlie(&["verify-appendix"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("passed = true"));
}
