use super::*;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("shadowtrace").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn compute_hh_of_s3() {
    let (code, out, _) = run_args(&["compute", "hh", "QS3", "--cap", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("HH: 3, 0, 0\n"), "{out}");
}

#[test]
fn compute_euler_of_standard() {
    let (code, out, _) = run_args(&["compute", "euler", "Vstd"]);
    assert_eq!(code, 0);
    assert!(out.contains("(2, 0, -1)"), "{out}");
}

#[test]
fn compute_pairing_of_m2() {
    let (code, out, _) = run_args(&["compute", "pairing", "M2"]);
    assert_eq!(code, 0);
    assert!(out.contains("(1x1)") && out.contains("  (1)\n"), "{out}");
}

#[test]
fn hrr_on_non_separable_algebra() {
    let (code, out, _) = run_args(&["verify", "hrr", "--algebra", "Qx2"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    assert!(out.contains("hypothesis failed: separability"), "{out}");
}

#[test]
fn rr1_on_s3_standard() {
    let (code, out, _) = run_args(&["verify", "rr1", "--case", "s3_standard"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run_args(&["verify", "rr2", "--case", "k_scalars", "--json"]);
    assert_eq!(code, 0);
}

#[test]
fn example_then_check() {
    let dir = std::env::temp_dir().join(format!("shadowtrace-cli-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    assert_eq!(run_args(&["example", "--out", d]).0, 0);
    let files: Vec<String> = ["battery.json", "modules.json", "regular.json"]
        .iter()
        .map(|f| dir.join(f).display().to_string())
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(|s| s.as_str()));
    let (code, out, err) = run_args(&args);
    assert_eq!(code, 0, "{out}{err}");
    let (code, out, _) = run_args(&["compute", "euler", "QS3_reg", "--load", &files[2], "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix"][0], serde_json::json!(["6", "0", "0"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_exit_codes() {
    let dir = std::env::temp_dir().join(format!("shadowtrace-check-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_assoc = dir.join("na.json");
    std::fs::write(&bad_assoc, r#"{"name":"na","field":"Q","dim":3,"unit":["1","0","0"],"structure":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"],[1,2,1,"1"]]}"#).unwrap();
    let (code, out, _) = run_args(&["check", bad_assoc.to_str().unwrap()]);
    assert_eq!(code, EXIT_INEQUALITY);
    assert!(out.contains("associativity fails at (1,1,1)"), "{out}");
    let bad_rat = dir.join("rat.json");
    std::fs::write(&bad_rat, r#"{"name":"z","field":"Q","dim":1,"unit":["1/0"],"structure":[[0,0,0,"1"]]}"#).unwrap();
    let (code, _, err) = run_args(&["check", bad_rat.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("parse error"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_inputs_are_input_errors() {
    assert_eq!(run_args(&["compute", "hh", "nope"]).0, EXIT_INPUT);
    assert_eq!(run_args(&["verify", "nope"]).0, EXIT_INPUT);
    assert_eq!(run_args(&["--field", "GF4", "compute", "hh", "k"]).0, EXIT_INPUT);
    assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
}

#[test]
fn finite_field_hh() {
    let (code, out, _) = run_args(&["--field", "GF5", "compute", "hh", "QC2", "--cap", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("HH: 2, 0\n"), "{out}");
}
