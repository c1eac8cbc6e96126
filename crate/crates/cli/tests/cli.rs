use std::path::{Path, PathBuf};
use std::process::Command;

use graph_product_cli::{run, EXIT_BUDGET, EXIT_DOMAIN, EXIT_PARSE};

fn gprod(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("gprod").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn edge_graph(dir: &Path) -> String {
    write(
        dir,
        "edge.json",
        r#"{"vertices": ["a", "b"], "edges": [["a", "b"]]}"#,
    )
    .display()
    .to_string()
}

#[test]
fn words_normal_forms() {
    let dir = tempfile::tempdir().unwrap();
    let g = edge_graph(dir.path());
    let (code, out, _) = gprod(&["words", "--graph", &g, "--word", "a,b,a"]);
    assert_eq!(code, 0);
    assert_eq!(out, "minimal: a,b; reduced: false\n");
    let (code, out, _) = gprod(&["words", "--graph", &g, "--word", "a"]);
    assert_eq!(code, 0);
    assert_eq!(out, "minimal: a; reduced: true\n");
    let (code, out, _) = gprod(&["words", "--graph", &g, "--word", "b,a", "--sigma", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(out, "minimal: a,b; reduced: true\nsigma: 1,0\n");
}

#[test]
fn words_errors() {
    let dir = tempfile::tempdir().unwrap();
    let g = edge_graph(dir.path());
    let (code, _, err) = gprod(&["words", "--graph", &g, "--word", "a,b", "--sigma", "a"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("not equivalent"), "{err}");
    let (code, _, _) = gprod(&["words", "--graph", &g, "--word", "a,z"]);
    assert_eq!(code, EXIT_PARSE);
    let (code, _, _) = gprod(&["words", "--graph", &g]);
    assert_eq!(code, EXIT_PARSE);
    let (code, _, _) = gprod(&["words", "--bogus"]);
    assert_eq!(code, EXIT_PARSE);
    let missing = dir.path().join("missing.json").display().to_string();
    let (code, _, _) = gprod(&["words", "--graph", &missing, "--word", "a"]);
    assert_eq!(code, EXIT_PARSE);
}

fn fock_inputs(dir: &Path) -> (String, String) {
    let g = write(
        dir,
        "path.json",
        r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}"#,
    );
    let v = write(
        dir,
        "vertices.json",
        r#"{
            "a": {"kind": "matrix", "n": 2},
            "b": {"kind": "group", "table": [[0, 1], [1, 0]]},
            "c": {"kind": "matrix", "n": 2}
        }"#,
    );
    (g.display().to_string(), v.display().to_string())
}

#[test]
fn fock_csv_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (g, v) = fock_inputs(dir.path());
    let args = [
        "fock",
        "--graph",
        &g,
        "--vertices",
        &v,
        "--cutoff",
        "3",
        "--trials",
        "20",
        "--seed",
        "5",
        "--center",
        "a",
        "--modular-spectrum",
    ];
    let (code, out, err) = gprod(&args);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("check,instance,value,tolerance,pass"));
    let mut seen = std::collections::BTreeSet::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 5, "{line}");
        seen.insert(cols[0].to_string());
        if cols[0] == "vacuum_moment" {
            assert!(cols[2].parse::<f64>().unwrap() <= 1e-12);
        }
        if cols[0] == "modular_eigenvalue" {
            assert!((cols[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
        } else {
            assert_eq!(cols[4], "true", "{line}");
        }
    }
    for check in [
        "vacuum_moment",
        "edge_commutation",
        "left_right_commutation",
        "jaj_identity",
        "freeness",
        "intersection_survivors",
        "modular_eigenvalue",
    ] {
        assert!(seen.contains(check), "{check}");
    }
    assert!(!out.contains('\r'));
    let (_, again, _) = gprod(&args);
    assert_eq!(out, again);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&args);
    assert_eq!(gprod(&seq).1, out);
}

#[test]
fn fock_edge_graph_commutators() {
    let dir = tempfile::tempdir().unwrap();
    let g = edge_graph(dir.path());
    let v = write(
        dir.path(),
        "pair.json",
        r#"[{"kind": "matrix", "n": 2, "density": [[0.75, 0], [0, 0.25]]}, {"kind": "matrix", "n": 2}]"#,
    );
    let (code, out, err) = gprod(&[
        "fock",
        "--graph",
        &g,
        "--vertices",
        &v.display().to_string(),
        "--trials",
        "10",
    ]);
    assert_eq!(code, 0, "{err}");
    let edge: Vec<f64> = out
        .lines()
        .filter(|l| l.starts_with("edge_commutation,"))
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(edge.len(), 10);
    assert!(edge.iter().all(|&x| x <= 1e-9));
}

#[test]
fn fock_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let (g, v) = fock_inputs(dir.path());
    let (code, _, _) = gprod(&["fock", "--graph", &g, "--vertices", &v, "--center", "z"]);
    assert_eq!(code, EXIT_PARSE);
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"a": {"kind": "matrix", "n": 2}}"#,
    );
    let (code, _, _) = gprod(&[
        "fock",
        "--graph",
        &g,
        "--vertices",
        &bad.display().to_string(),
    ]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn rd_csv_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let base = [
        "rd", "--preset", "z2free3", "--R", "8", "--trials", "8", "--seed", "3",
    ];
    for out in [&a, &b] {
        let mut args = base.to_vec();
        let p = out.display().to_string();
        args.extend_from_slice(&["--out", &p]);
        assert_eq!(gprod(&args).0, 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text
        .starts_with("preset,R,k,l,m,trials,seed,estimate,bound_chain,fit_degree,fit_constant\n"));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("z2free3,8,1,all,all,1,3,"), "{last}");
    let (_, other, _) = gprod(&[
        "rd", "--preset", "z2free3", "--R", "8", "--trials", "8", "--seed", "4",
    ]);
    assert_ne!(other.as_bytes(), text.as_bytes());
}

#[test]
fn rd_examples() {
    let (code, out, _) = gprod(&["rd", "--preset", "z2free3", "--R", "12", "--k", "1"]);
    assert_eq!(code, 0);
    let full: f64 = out
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(7)
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        (full - 2.0 * 2f64.sqrt()).abs() / (2.0 * 2f64.sqrt()) < 0.02,
        "{full}"
    );

    let (code, out, _) = gprod(&["rd", "--preset", "dinfty", "--R", "16", "--trials", "16"]);
    assert_eq!(code, 0);
    let degree = out.lines().nth(1).unwrap().split(',').nth(9).unwrap();
    assert!(matches!(degree, "0" | "1" | "2"), "{degree}");

    let (code, _, err) = gprod(&["rd", "--preset", "dinfty", "--R", "3", "--k", "5"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(!err.is_empty());
    let (code, _, _) = gprod(&["rd", "--preset", "nonsense"]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn config_paths_are_relative_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    edge_graph(dir.path());
    let cfg = write(
        dir.path(),
        "words.json",
        r#"{"graph": "edge.json", "word": "b,a,b"}"#,
    );
    let (code, out, _) = gprod(&["words", "--config", &cfg.display().to_string()]);
    assert_eq!(code, 0);
    assert_eq!(out, "minimal: a,b; reduced: false\n");
    let typo = write(dir.path(), "typo.json", r#"{"grpah": "edge.json"}"#);
    let (code, _, _) = gprod(&["words", "--config", &typo.display().to_string()]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = edge_graph(dir.path());
    let bin = env!("CARGO_BIN_EXE_gprod");
    let ok = Command::new(bin)
        .args(["words", "--graph", &g, "--word", "a,b,a"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "minimal: a,b; reduced: false\n"
    );
    let bad = Command::new(bin)
        .args(["words", "--graph", &g, "--word", "a", "--sigma", "b"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_DOMAIN));
}
