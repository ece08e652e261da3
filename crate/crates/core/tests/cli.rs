use bolforge::cli::{parse_ltab, run_captured, SEED_VAR};

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("bolforge").chain(args.iter().copied()))
}

#[test]
fn certify_base_reports_the_loop() {
    let (code, out, _) = run(&["certify-base"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["summary"]["group_order"], 3840);
    assert_eq!(json["summary"]["loop_order"], 96);
    assert_eq!(json["summary"]["simple"], true);
    assert_eq!(json["pass"], true);
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["ms"].is_null()));
}

#[test]
fn timings_are_opt_in() {
    let (code, out, _) = run(&["--timings", "certify-base"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(json["checks"].as_array().unwrap().iter().any(|c| !c["ms"].is_null()));
}

#[test]
fn build_verify_simplicity_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let (t, meta) = (path("t.ltab"), path("t.json"));
    let (code, out, _) = run(&[
        "build",
        "--k",
        "1",
        "--variant",
        "twisted",
        "--out",
        &t,
        "--meta",
        &meta,
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    let text = std::fs::read_to_string(&t).unwrap();
    assert!(text.starts_with("ltab 1\n1536\n"));
    let table = parse_ltab(&text).unwrap();
    assert_eq!(table.order(), 1536);
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(meta["summary"]["loop_order"], 1536);

    let first = run(&["verify", &t, "--bol", "sample=1000", "--seed", "7"]);
    let second = run(&["verify", &t, "--bol", "sample=1000", "--seed", "7", "--workers", "2"]);
    assert_eq!(first.0, 0);
    assert_eq!(first, second);

    // The default seed comes from the environment.
    std::env::set_var(SEED_VAR, "7");
    let from_env = run(&["verify", &t, "--bol", "sample=1000"]);
    std::env::remove_var(SEED_VAR);
    assert_eq!(from_env, first);
    let seed1 = run(&["verify", &t, "--bol", "sample=1000"]);
    assert!(seed1.1.contains("\"seed\": 1"));

    let s = path("s.ltab");
    assert_eq!(run(&["build", "--k", "1", "--variant", "split", "--out", &s]).0, 0);
    let (code, out, _) = run(&["simplicity", &s]);
    assert_eq!(code, 1);
    assert!(out.contains("\"witness_block_size\": 16"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["counterexample"]).0, 0);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["build", "--k", "3"]).0, 2);
    assert_eq!(run(&["build", "--k", "1", "--variant", "sideways"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.ltab");
    let x = x.to_str().unwrap();
    assert_eq!(run(&["build", "--k", "2", "--variant", "split", "--out", x]).0, 2);
    assert_eq!(run(&["verify", x]).0, 2);
    std::fs::write(x, "ltab 1\n2\n0 1\n1 1\n").unwrap();
    assert_eq!(run(&["verify", x, "--bol", "exhaustive"]).0, 1);
    assert_eq!(run(&["verify", x, "--bol", "sometimes"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
