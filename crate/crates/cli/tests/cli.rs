//! End-to-end tests of the command-line interface: wire formats, exit
//! codes, and reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dagassoc"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dagassoc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn example_graph() -> PathBuf {
    write_temp(
        "ex32.json",
        r#"{"n": 4, "edges": [
            {"a": 1, "b": 3, "kind": "directed"},
            {"a": 2, "b": 3, "kind": "directed"},
            {"a": 3, "b": 4, "kind": "directed"}]}"#,
    )
}

fn eight_node_graph() -> PathBuf {
    let arcs = [
        (1, 4),
        (2, 3),
        (2, 6),
        (3, 4),
        (3, 7),
        (4, 8),
        (4, 7),
        (5, 8),
        (5, 6),
        (6, 7),
        (7, 8),
    ];
    let edges: Vec<String> = arcs
        .iter()
        .map(|(a, b)| format!("{{\"a\":{a},\"b\":{b},\"kind\":\"directed\"}}"))
        .collect();
    write_temp(
        "fig5.json",
        &format!("{{\"n\":8,\"edges\":[{}]}}", edges.join(",")),
    )
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn dsep_verdicts_and_witness() {
    let g = example_graph();
    let out = bin().args(["dsep"]).arg(&g).args(["1", "2"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("independent"));

    let out = bin()
        .args(["dsep"])
        .arg(&g)
        .args(["1", "2", "--given", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("dependent"));
    assert!(text.contains("witness: 1 3 4 3 2"));
    assert!(text.contains("canyon: 3 4"));

    let g8 = eight_node_graph();
    let out = bin()
        .args(["dsep"])
        .arg(&g8)
        .args(["1", "8", "--given", "4", "7", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["independent"], serde_json::json!(false));
    assert!(v["witness"]["walk"].as_array().unwrap().len() >= 2);
}

#[test]
fn dsep_input_errors_exit_2() {
    let g = example_graph();
    let out = bin().args(["dsep"]).arg(&g).args(["1", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let bad = write_temp("bad.json", "{\"n\": 2}");
    let out = bin().args(["dsep"]).arg(&bad).args(["1", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn associahedron_classes_and_methods_agree() {
    let g = example_graph();
    let msmp = bin()
        .args(["associahedron"])
        .arg(&g)
        .args(["--emit", "classes", "--format", "json"])
        .output()
        .unwrap();
    assert!(msmp.status.success());
    let v: serde_json::Value = serde_json::from_slice(&msmp.stdout).unwrap();
    assert_eq!(v["class_count"], serde_json::json!(16));

    let gauss = bin()
        .args(["associahedron"])
        .arg(&g)
        .args(["--method", "gaussian", "--emit", "classes", "--format", "json"])
        .output()
        .unwrap();
    assert!(gauss.status.success());
    let w: serde_json::Value = serde_json::from_slice(&gauss.stdout).unwrap();
    assert_eq!(w["class_count"], serde_json::json!(16));
    assert_eq!(v["classes"], w["classes"]);
}

#[test]
fn associahedron_fvector_flags_non_simple() {
    let g = write_temp(
        "notsimple.json",
        r#"{"n": 4, "edges": [
            {"a": 1, "b": 2, "kind": "directed"},
            {"a": 2, "b": 3, "kind": "directed"},
            {"a": 3, "b": 4, "kind": "directed"},
            {"a": 1, "b": 4, "kind": "directed"},
            {"a": 2, "b": 4, "kind": "directed"}]}"#,
    );
    let out = bin()
        .args(["associahedron"])
        .arg(&g)
        .args(["--emit", "fvector", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["simple"], serde_json::json!(false));
    assert!(v["degrees"].as_array().unwrap().contains(&serde_json::json!(4)));
}

#[test]
fn associahedron_gaussian_requires_dag() {
    let g = write_temp(
        "mixed.json",
        r#"{"n": 2, "edges": [{"a": 1, "b": 2, "kind": "bidirected"}]}"#,
    );
    let out = bin()
        .args(["associahedron"])
        .arg(&g)
        .args(["--method", "gaussian"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sp_exhaustive_and_greedy() {
    let g = example_graph();
    let out = bin()
        .args(["sp"])
        .arg(&g)
        .args(["--algo", "exhaustive", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_edges"], serde_json::json!(3));
    assert_eq!(
        v["essential_graphs"][0]["directed"],
        serde_json::json!([[1, 3], [2, 3], [3, 4]])
    );

    let out = bin()
        .args(["sp"])
        .arg(&g)
        .args([
            "--algo", "covered", "--restarts", "10", "--seed", "0", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["best_edges"].as_u64().unwrap() <= 3);
    let log0 = v["runs"][0]["log"].as_array().unwrap();
    if let Some(first) = log0.first() {
        assert!(first.get("accepted").is_some());
        assert!(first.get("edges").is_some());
    }
}

#[test]
fn sp_on_explicit_ci_file() {
    let ci = write_temp("v.ci", "1 _||_ 2\n");
    let out = bin()
        .args(["sp"])
        .arg(&ci)
        .args(["--algo", "exhaustive", "--n", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_edges"], serde_json::json!(2));
    assert_eq!(
        v["essential_graphs"][0]["directed"],
        serde_json::json!([[1, 3], [2, 3]])
    );
}

#[test]
fn sp_runs_are_reproducible() {
    let g = example_graph();
    let run = || {
        bin()
            .args(["sp"])
            .arg(&g)
            .args(["--algo", "perm", "--restarts", "4", "--seed", "11", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sp_size_bound_exits_3() {
    let edges: Vec<String> = (1..10)
        .map(|a| format!("{{\"a\":{a},\"b\":{},\"kind\":\"directed\"}}", a + 1))
        .collect();
    let g = write_temp(
        "big.json",
        &format!("{{\"n\":10,\"edges\":[{}]}}", edges.join(",")),
    );
    let out = bin()
        .args(["sp"])
        .arg(&g)
        .args(["--algo", "exhaustive"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_axioms_and_witness() {
    let good = write_temp(
        "ex32.ci",
        "1 _||_ 2\n1 _||_ 4 | 3\n2 _||_ 4 | 3\n1 _||_ 4 | 2 3\n2 _||_ 4 | 1 3\n",
    );
    let out = bin()
        .args(["check"])
        .arg(&good)
        .args(["--axioms", "gaussoid"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("pass"));

    let simplex = write_temp("simplex.ci", "1 _||_ 2 | 3\n1 _||_ 3 | 2\n2 _||_ 3 | 1\n");
    let out = bin()
        .args(["check"])
        .arg(&simplex)
        .args(["--axioms", "gaussoid", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::json!(false));
    assert!(v["violation"].as_str().unwrap().contains("INT"));
    // and the same set is a valid semigraphoid
    let out = bin()
        .args(["check"])
        .arg(&simplex)
        .args(["--axioms", "semigraphoid"])
        .output()
        .unwrap();
    assert!(stdout_of(&out).contains("pass"));

    let empty = write_temp("empty.ci", "");
    let out = bin()
        .args(["check"])
        .arg(&empty)
        .args(["--axioms", "semigraphoid", "--n", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("pass"));
}

#[test]
fn sp_on_sampled_data() {
    // write a small sampled dataset for the chain 1 -> 2 -> 3
    use dagassoc::gaussian::faithful_gaussian;
    use dagassoc::graph::Dag;
    let chain = Dag::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
    let f = faithful_gaussian(&chain, 5).unwrap();
    let data = dagassoc::causal::sample_gaussian_data(&f.sigma, 4000, 17);
    let rows: Vec<String> = data
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(","))
        .collect();
    let path = write_temp("chain.csv", &rows.join("\n"));
    let out = bin()
        .args(["sp"])
        .arg(&path)
        .args(["--algo", "exhaustive", "--alpha", "0.01", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_edges"], serde_json::json!(2));
    assert_eq!(
        v["essential_graphs"][0]["undirected"],
        serde_json::json!([[1, 2], [2, 3]])
    );
}

#[test]
fn tsv_format_is_flat() {
    let g = example_graph();
    let out = bin()
        .args(["dsep"])
        .arg(&g)
        .args(["1", "2", "--format", "tsv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.lines().any(|l| l.starts_with("independent\t")));
}
