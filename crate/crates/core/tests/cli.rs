use std::process::Command;

use restricted_powers::cli::{Payload, RunReport};

fn rpower(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rpower")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn help_and_version() {
    assert_eq!(rpower(&["--help"]).0, 0);
    let (code, out, _) = rpower(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn simplex_text() {
    let (code, out, _) = rpower(&["simplex", "--n", "3", "--d", "2", "--w", "2,1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("4 exponent vectors"));
    assert!(out.contains("x1^2"));
}

#[test]
fn verify_passes_with_exit_zero() {
    let (code, out, _) = rpower(&["verify", "dga", "--n", "3", "--d", "2", "--w", "1,1,1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("not strictly multiplicative"));
    assert_eq!(rpower(&["verify", "all", "--grid", "small"]).0, 0);
}

#[test]
fn bad_input_exit_two() {
    for args in [
        &["simplex", "--n", "2", "--d", "3", "--w", "1,1"][..],
        &["simplex", "--n", "2"],
        &["resolve", "--n", "2", "--d", "2", "--field", "fp:4"],
        &["resolve", "--n", "2", "--d", "2", "--field", "fp:19"],
        &["verify", "dga", "--grid", "nope"],
        &["golod", "--n", "3", "--d", "1"],
        &["product", "--n", "2", "--d", "2", "--x", "f[]*m[0,2]", "--y", "f[1]*m[1,0]"],
        &["resolve", "--n", "2", "--d", "2", "--box", "1,2,3"],
        &["frobnicate"],
    ] {
        let (code, _, err) = rpower(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn corrupt_fixtures_exit_one() {
    for suite in ["resolution", "retract", "dga", "golod"] {
        let (code, out, _) = rpower(&["verify", suite, "--n", "3", "--d", "2", "--w", "2,1,1", "--fixture", "corrupt"]);
        assert_eq!(code, 1, "{suite}");
        assert!(out.lines().any(|l| l.trim_start().starts_with("FAIL") && l.contains("]: ")), "{out}");
    }
}

#[test]
fn json_output_round_trips_and_file_output() {
    let (code, out, _) = rpower(&["golod", "--n", "2", "--d", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let r = RunReport::from_json(&out).unwrap();
    let Payload::Golod { poincare, products_vanish, .. } = &r.payload else { panic!() };
    assert!(products_vanish);
    assert_eq!(poincare, &[1, 2, 4, 8, 16, 32]);
    assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);

    let dir = std::env::temp_dir().join(format!("rpower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let (code, out, _) = rpower(&["resolve", "--n", "3", "--d", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r = RunReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let Payload::Resolution { ranks, .. } = r.payload else { panic!() };
    assert_eq!(ranks, [1, 6, 8, 3]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn box_override_is_honoured() {
    let (code, out, _) = rpower(&["verify", "resolution", "--n", "2", "--d", "2", "--box", "1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("(1,1)"));
}
