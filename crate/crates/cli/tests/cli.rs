use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

fn write_tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("nzflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn normal_form_of_the_two_vertex_example() {
    let two_vertex = corpus("two_vertex.g");
    assert_eq!(
        stdout(&["normal-form", "-p", "3", &two_vertex]),
        "3*e1*e2 - 3*e1*e3 + 3*e2*e3 + 3*e2 + 3\n"
    );
    golden("two_vertex_normal_form.json", &stdout(&["normal-form", "-p", "3", "--json", &two_vertex]));
}

#[test]
fn nz_flow_verdicts() {
    let two_vertex = corpus("two_vertex.g");
    for method in ["membership", "conformal"] {
        assert_eq!(stdout(&["nz-flow", "-p", "3", &two_vertex, "--method", method]), "YES\n");
    }
    assert_eq!(
        stdout(&["nz-flow", "-p", "3", "--method", "brute", &two_vertex]),
        "YES\nwitness: p=3; e1=2; e2=1; e3=2\n"
    );
    assert_eq!(
        stdout(&["nz-flow", "-p", "4", &corpus("petersen.g"), "--method", "brute"]),
        "NO\n"
    );
    assert_eq!(stdout(&["nz-flow", "-p", "3", "--method", "brute", &corpus("k4.g")]), "NO\n");
    golden(
        "two_vertex_nz_flow_brute.json",
        &stdout(&["nz-flow", "-p", "3", "--method", "brute", "--json", &two_vertex]),
    );
}

#[test]
fn conformal_counts_on_graph_and_plane_dual() {
    let two_vertex = corpus("two_vertex.g");
    let cases = [
        ("p=3; e1=1; e2=1; e3=0", "even: 1\nodd: 0\nc: 1\n"),
        ("p=3; e1=1; e2=0; e3=1", "even: 0\nodd: 1\nc: -1\n"),
        ("p=3; e1=1; e2=0; e3=0", "even: 0\nodd: 0\nc: 0\n"),
        ("p=3; e1=0; e2=0; e3=0", "even: 1\nodd: 0\nc: 1\n"),
    ];
    for (i, (psi, expected)) in cases.iter().enumerate() {
        let file = write_tmp(&format!("psi{i}.txt"), psi);
        assert_eq!(stdout(&["conformal", "-p", "3", "--psi", &file, &two_vertex]), *expected);
    }
    let psi = write_tmp("psi_json.txt", r#"{"p":3,"values":{"e1":0,"e2":0,"e3":0}}"#);
    let json = stdout(&["conformal", "-p", "3", "--psi", &psi, "--dual", "--json", &two_vertex]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["even"], 1);
    assert_eq!(v["coefficient"], 1);
}

#[test]
fn coefficient_tables() {
    let two_vertex = corpus("two_vertex.g");
    golden("two_vertex_coeff_table.txt", &stdout(&["coeff-table", "-p", "3", &two_vertex]));
    golden("two_vertex_coeff_table.json", &stdout(&["coeff-table", "-p", "3", "--json", &two_vertex]));
    golden("triangle_four_flow_table.txt", &stdout(&["four-flow", "--table", &corpus("triangle.g")]));
}

#[test]
fn four_flow_verdicts() {
    let out = stdout(&["four-flow", &corpus("triangle.g")]);
    assert!(out.ends_with("membership: YES\nconformal: YES\nbrute: YES\n"), "{out}");
    let out = stdout(&["four-flow", &corpus("petersen.g")]);
    assert!(out.ends_with("normal form: 0\nmembership: NO\nconformal: NO\nbrute: NO\n"), "{out}");
}

#[test]
fn chordal_certificates() {
    golden("triangle_chordal.json", &stdout(&["chordal-orient", &corpus("triangle.g")]));
    golden("k4_chordal.json", &stdout(&["chordal-orient", &corpus("k4.g")]));
    golden("strip6_chordal.json", &stdout(&["chordal-orient", "--json", &corpus("strip6.g")]));
}

#[test]
fn planar_reports_and_duals() {
    golden("two_vertex_planar.json", &stdout(&["planar-check", "-p", "3", "--json", &corpus("two_vertex.g")]));
    golden("k4_planar.json", &stdout(&["planar-check", "-p", "3", "--json", &corpus("k4.g")]));
    golden("two_vertex_dual.g", &stdout(&["dual", &corpus("two_vertex.g")]));
    golden("k4_dual.g", &stdout(&["dual", &corpus("k4.g")]));
    let text = stdout(&["planar-check", "-p", "3", &corpus("w6.g")]);
    assert!(text.ends_with("bijection: true\nagrees: true\n"), "{text}");
}

#[test]
fn dual_output_reparses_and_dualizes_back() {
    let first = stdout(&["dual", &corpus("w5.g")]);
    let file = write_tmp("w5_dual.g", &first);
    let second = stdout(&["dual", &file]);
    let a = nzflow::io::parse_graph(&first).unwrap();
    let b = nzflow::io::parse_graph(&second).unwrap();
    assert_eq!(a.digraph().arcs().len(), b.digraph().arcs().len());
    assert_eq!(b.digraph().vertices().len(), 6);
}

#[test]
fn coloring() {
    assert_eq!(stdout(&["color", "-p", "3", &corpus("petersen.g")]), "YES\n");
    assert_eq!(stdout(&["color", "-p", "3", &corpus("k4.g")]), "NO\n");
    let map = write_tmp("dual_flow.txt", "p=3; e1=2; e2=1; e3=2");
    assert_eq!(
        stdout(&["color", "-p", "3", "--from-dual-flow", &map, &corpus("two_vertex.g")]),
        "v1=0\nv2=2\n"
    );
    let zero = write_tmp("dual_flow_zero.txt", "p=3; e1=0; e2=0; e3=0");
    let out = run(&["color", "-p", "3", "--from-dual-flow", &zero, &corpus("two_vertex.g")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_corpus_at_small_moduli() {
    let dir = root().join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for p in ["2", "3", "4"] {
        for f in &files {
            let text = stdout(&["verify", "-p", p, f.to_str().unwrap()]);
            assert!(text.ends_with("OK\n"), "p={p} {}:\n{text}", f.display());
            assert!(!text.contains("FAIL"), "{text}");
        }
    }
}

#[test]
fn verify_json_is_byte_stable() {
    let args = ["verify", "-p", "3", "--json", &corpus("w5.g")];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    golden("w5_verify.json", &a);
}

#[test]
fn exit_codes() {
    let bad = write_tmp("mixed.g", "a e1 1 2\n# note\ne e2 2 1\n");
    let out = run(&["nz-flow", "-p", "3", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = run(&["nz-flow", "-p", "3", "--bound", "10", &corpus("petersen.g")]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["planar-check", "-p", "3", &corpus("c4.g")]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["chordal-orient", &corpus("c5.g")]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["normal-form", "-p", "1", &corpus("two_vertex.g")]);
    assert_eq!(out.status.code(), Some(2));
}
