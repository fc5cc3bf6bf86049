//! The command-line front end, driven through `run`.

use schubres::cli::{parse_sigma, run};

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["schubres"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("schubres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn cosets_of_d5() {
    let (code, out) = call(&["cosets", "--format", "1,5,5,1", "--max-length", "12"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3 representatives"), "{out}");
}

#[test]
fn example_table_in_bourbaki_labels() {
    let (code, out) = call(&[
        "betti",
        "--format",
        "1,5,6,2",
        "--sigma",
        "3 4 2 5 6 1 4 5 3 4 2",
        "--labels",
        "bourbaki:z2,x1,z1,u,y1,y2",
        "--exchange",
        "--text",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "0 → R(-5)⊕R(-6) → R^6(-4) → R^2(-2)⊕R^3(-3) → R"
    );
}

#[test]
fn affine_diagram_is_reported() {
    let (code, out) = call(&["diagram", "--format", "1,6,8,3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("T_{2,4,4}, affine"), "{out}");
    assert!(out.contains("enlarge"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(
        call(&["betti", "--format", "1,5,6,2", "--sigma", "x1"]).0,
        2
    );
    assert_eq!(call(&["cosets", "--format", "1,2"]).0, 2);
}

#[test]
fn resolve_check_link_pipeline() {
    let path = tmp("d5.json");
    let (code, _) = call(&[
        "resolve",
        "--format",
        "1,5,5,1",
        "--sigma",
        "z1 u y1 x1 u z1 y2 y1 u x1",
        "--out",
        &path,
    ]);
    assert_eq!(code, 0);
    let (code, out) = call(&["check", &path, "--seed", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("re-serialization identical: true"));
    // same seed, same report
    assert_eq!(
        call(&["check", &path, "--seed", "4", "--json"]),
        call(&["check", &path, "--seed", "4", "--json"])
    );
    let (code, out) = call(&["bemult", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("unique: true"));
    assert_eq!(call(&["hsm", &path, "--json"]).0, 0);
    assert_eq!(call(&["invariants", &path]).0, 0);
    let linked = tmp("linked.json");
    assert_eq!(
        call(&["link", &path, "--cols", "0,1,2", "--out", &linked]).0,
        0
    );
    assert_eq!(call(&["check", &linked]).0, 0);
}

#[test]
fn corrupted_complex_fails_verification() {
    let path = tmp("bad.json");
    let (_, json) = call(&["resolve", "--format", "1,4,4,1", "--sigma", "z1 u x1"]);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // replace d1[0][0] by the first variable
    v["differentials"][0]["entries"][0][0] = serde_json::json!([{ "c": "1", "e": [1, 0, 0] }]);
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let (code, out) = call(&["check", &path]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn witness_identities_from_the_cli() {
    let (code, out) = call(&[
        "pluecker",
        "--format",
        "1,4,4,1",
        "--sigma",
        "z1 u x1",
        "--witness",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn dims_of_e6() {
    let (code, out) = call(&["dims", "--format", "1,5,6,2", "--fundamental", "y2"]);
    assert_eq!(code, 0);
    assert!(out.contains("-2:5 -1:20 0:28 1:20 2:5 (total 78)"), "{out}");
    assert!(out.contains("dim L(ω_y2) = 27"));
}

#[test]
fn bourbaki_aliases() {
    let w = parse_sigma("s3 s4 s2", Some("bourbaki:z2,x1,z1,u,y1,y2")).unwrap();
    assert_eq!(w.to_string(), "z1 u x1");
    assert!(parse_sigma("7", Some("bourbaki:z2,x1,z1,u,y1,y2")).is_err());
    assert!(parse_sigma("1", Some("z2,x1")).is_err());
}
