//! End-to-end checks of the command-line interface: exit codes, file
//! round-trips, and byte-deterministic output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cellular_dga::builders::graph;

fn cdga(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdga"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn generated_fronts_validate_and_answer_existence() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();

    assert_exit(&cdga(dir, &["gen", "conormal", "-o", "c.json"]), 0);
    assert_exit(&cdga(dir, &["validate", "c.json"]), 0);
    let out = cdga(dir, &["augs", "c.json", "--rho", "1", "--exists"]);
    assert_exit(&out, 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "yes\n");

    fs::write(dir.join("tetra.g.json"), graph::graph_to_json(&graph::tetrahedron())).unwrap();
    assert_exit(&cdga(dir, &["gen", "tz", "--graph", "tetra.g.json", "-o", "t.json"]), 0);
    assert_exit(&cdga(dir, &["validate", "t.json"]), 0);
    let out = cdga(dir, &["augs", "t.json", "--rho", "1", "--exists"]);
    assert_exit(&out, 2);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "no\n");
}

#[test]
fn bad_inputs_are_rejected_with_the_right_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();

    // wrong schema id on an otherwise complete file
    assert_exit(&cdga(dir, &["gen", "saucer", "-o", "s.json"]), 0);
    let text = fs::read_to_string(dir.join("s.json")).unwrap();
    fs::write(dir.join("bad.json"), text.replace("cellular-front/1", "cellular-front/9")).unwrap();
    let out = cdga(dir, &["validate", "bad.json"]);
    assert_exit(&out, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));

    // structurally broken front: a cusp pair in the wrong order
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pairs = &mut value["inclusions"][2]["cusp_pairs"];
    assert!(pairs.is_array(), "expected a cusp pair to tamper with");
    pairs[0] = serde_json::json!([2, 1]);
    fs::write(dir.join("s-bad.json"), value.to_string()).unwrap();
    let out = cdga(dir, &["validate", "s-bad.json"]);
    assert_exit(&out, 1);

    // usage errors
    assert_exit(&cdga(dir, &["augs", "s.json", "--rho", "1"]), 3);
    assert_exit(&cdga(dir, &["frobnicate"]), 3);
    assert_exit(&cdga(dir, &["augs", "missing.json", "--rho", "1", "--exists"]), 3);
}

#[test]
fn listing_respects_caps_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    assert_exit(&cdga(dir, &["gen", "torus", "-o", "t.json", "--loops-out", "l.json"]), 0);

    let run = || cdga(dir, &["augs", "t.json", "--rho", "1", "--list"]);
    let (a, b) = (run(), run());
    assert_exit(&a, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 4);

    let brute = cdga(dir, &["augs", "t.json", "--rho", "1", "--list", "--brute-force"]);
    assert_exit(&brute, 0);
    assert_eq!(a.stdout, brute.stdout);

    assert_exit(&cdga(dir, &["augs", "t.json", "--rho", "1", "--list", "--cap", "2"]), 4);

    let dump = cdga(dir, &["dga", "t.json", "--print"]);
    assert_exit(&dump, 0);
    assert_eq!(dump.stdout, cdga(dir, &["dga", "t.json", "--print"]).stdout);
}

#[test]
fn homology_monodromy_and_obstruction_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    assert_exit(&cdga(dir, &["gen", "torus", "-o", "t.json", "--loops-out", "l.json"]), 0);

    let out = cdga(dir, &["homology", "t.json", "--rho", "1", "--aug", "0", "--vertex", "P"]);
    assert_exit(&out, 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "vertex: P\ndegree 0: 2\ntotal: 2\n");
    assert_exit(
        &cdga(dir, &["homology", "t.json", "--rho", "1", "--aug", "9", "--vertex", "P"]),
        3,
    );

    let out = cdga(dir, &["monodromy", "t.json", "--rho", "1", "--aug", "0", "--loop", "l.json"]);
    assert_exit(&out, 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("slide-cross: fiber=[01|10] homology=[01|10] trivial=no"), "{text}");

    let out = cdga(dir, &["obstruct", "t.json", "--rho", "1", "--loops", "l.json"]);
    assert_exit(&out, 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("obstructs trivial bundle: yes"), "{text}");

    let out = cdga(dir, &["obstruct", "t.json", "--rho", "1", "--loops", "l.json", "--json"]);
    assert_exit(&out, 0);
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("JSON report parses");
    assert_eq!(report["obstructs_trivial_bundle"], serde_json::json!(true));
    assert_eq!(report["augmentation_count"], serde_json::json!("4"));
}
