use std::path::Path;
use std::process::{Command, Output};

fn doily(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doily"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_all_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = doily(&["verify-all", "--out", arg(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ra = std::fs::read(a.join("verification_report.json")).unwrap();
    let rb = std::fs::read(b.join("verification_report.json")).unwrap();
    assert_eq!(ra, rb);
    let report: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["overall_pass"], true);
    assert_eq!(report["mirror"]["left"]["submodules"].as_array().unwrap().len(), 9);
    assert_eq!(
        report["mirror"]["left"]["core"]["distinguished_lines"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    assert_eq!(
        report["mirror"]["left"]["core"]["grid_isomorphism"]
            .as_array()
            .unwrap()
            .len(),
        9
    );
}

#[test]
fn corrupted_golden_table_fails_with_cell_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let o = doily(&["export", "traces", "--format", "table", "--out", arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("traces_left.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\n10,\"(3,3)\","));
    std::fs::write(&path, text.replacen("\n10,\"(3,3)\",", "\n10,\"(3,5)\",", 1)).unwrap();

    let o = doily(&[
        "verify-all",
        "--out",
        arg(&dir.path().join("r")),
        "--golden-table",
        arg(&path),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("orbit_table.cells"), "{stderr}");
    assert!(stderr.contains("R(3,8) alpha 10"), "{stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = arg(dir.path());
    assert_eq!(doily(&["export", "pictures", "--out", out]).status.code(), Some(2));
    assert_eq!(
        doily(&["export", "doily", "--format", "svg", "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        doily(&["export", "ring-tables", "--format", "graph", "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(doily(&["census", "--side", "up"]).status.code(), Some(2));
    assert_eq!(doily(&["trace", "16", "0"]).status.code(), Some(2));
    assert_eq!(doily(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn doily_graph_export() {
    let dir = tempfile::tempdir().unwrap();
    let o = doily(&["export", "doily", "--format", "graph", "--out", arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(dir.path().join("doily.dot")).unwrap();
    assert!(dot.starts_with("graph \"doily\" {"));
    assert_eq!(dot.matches(" -- ").count(), 45);
}

#[test]
fn trace_command() {
    let o = doily(&["trace", "8", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("concurrence point: (3,3) {1,2}"), "{stdout}");

    let o = doily(&["trace", "3", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("no trace"));

    let dir = tempfile::tempdir().unwrap();
    let o = doily(&["trace", "3", "9", "--side", "right", "--out", arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("trace_right_3_9.json").exists());
}

#[test]
fn census_command_writes_into_out_dir_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = doily(&["census", "--side", "right", "--out", arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("nonunimodular free submodules:        9"));
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["census_right.csv", "census_right.json"]);
}
