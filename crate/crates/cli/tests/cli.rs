//! End-to-end tests of the command-line interface: the exit-code contract
//! (0 success, 2 usage, 3 domain, 4 solver), both output formats, and the
//! fixtures-directory override.

use std::path::PathBuf;
use std::process::{Command, Output};

fn kissing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kissing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bounds_human_format_succeeds() {
    let out = kissing(&["bounds", "--space", "H", "--dim", "3", "--radius", "0.8070321648835"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("7.222263"), "missing lower bound in: {text}");
    assert!(text.contains("lower") && text.contains("upper"));
}

#[test]
fn bounds_machine_format_is_key_value() {
    let out = kissing(&[
        "--format", "machine", "bounds", "--space", "S", "--dim", "4", "--radius", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("direction: lower"));
    assert!(text.contains("value: 5.115060"));
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        assert!(line.contains(": "), "machine line not key: value: {line:?}");
    }
}

#[test]
fn bounds_limiting_value_is_exact() {
    let out = kissing(&["bounds", "--space", "S", "--dim", "3", "--radius", "2.0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("exact") && text.contains("0.000000"), "{text}");
}

#[test]
fn lowercase_space_letter_is_accepted() {
    let out = kissing(&["bounds", "--space", "h", "--dim", "3", "--radius", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_error_exits_2() {
    let out = kissing(&["bounds", "--space", "X", "--dim", "3", "--radius", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kissing(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_3() {
    // Dimension below 2 is rejected by the bound formulas.
    let out = kissing(&["bounds", "--space", "H", "--dim", "1", "--radius", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    // Euclidean kissing numbers concern congruent unit spheres (radius 0).
    let out = kissing(&["bounds", "--space", "E", "--dim", "3", "--radius", "1.0"]);
    assert_eq!(out.status.code(), Some(3));
    // A hyperbolic-only code (pairwise inner products above 1/2) is not
    // spherically feasible.
    if fixtures().join("pack-3-24.txt").exists() {
        let out = Command::new(env!("CARGO_BIN_EXE_kissing"))
            .env("KISSING_FIXTURES", fixtures())
            .args(["certify", "pack-3-24.txt", "--dim", "3", "--space", "S"])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(3));
    }
}

#[test]
fn certify_resolves_via_fixtures_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_kissing"))
        .env("KISSING_FIXTURES", fixtures())
        .args(["certify", "icosahedron.txt", "--dim", "3", "--space", "S"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("size: 12"), "{text}");
    assert!(text.contains("spherical_max_radius"), "{text}");
}

#[test]
fn certify_explicit_path_succeeds() {
    let path = fixtures().join("octahedron.txt");
    let out = kissing(&["certify", path.to_str().unwrap(), "--dim", "3", "--space", "S"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("size: 6"), "{text}");
}

#[test]
fn jumps_lists_all_ten() {
    let out = kissing(&["jumps"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.contains("->") || l.contains("jump")).count() >= 10,
        true,
        "{text}"
    );
    assert!(text.contains("0.41222342"), "sextic radius missing: {text}");
}

#[test]
fn table_renders_reference_columns() {
    let out = Command::new(env!("CARGO_BIN_EXE_kissing"))
        .env("KISSING_FIXTURES", fixtures())
        .args(["table", "H3"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0.8070321648835"), "{text}");
    assert!(text.contains("13.666950"), "published SDP column: {text}");
}

#[test]
fn sdp_small_solve_reports_bound() {
    let out = kissing(&[
        "--format", "machine", "sdp", "--space", "S", "--dim", "3", "--radius", "0",
        "--degree", "3", "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let bound: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("bound: "))
        .expect("bound line")
        .trim()
        .parse()
        .unwrap();
    // The degree-3 relaxation at cos theta = 1/2, n = 3 solves to 24.
    assert!((12.0..24.1).contains(&bound), "bound {bound}");
}
