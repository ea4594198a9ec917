//! End-to-end runs of the `f1` binary: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f1"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn spec_sl2_json_is_deterministic() {
    let a = run(&["spec", &fixture("sl2.f1"), "--format", "json"]);
    let b = run(&["spec", &fixture("sl2.f1"), "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.contains("\"object\": \"SL2\""));
    assert!(text.contains("{ \"id\": \"p_T1_T4\", \"generators\": [\"T1\", \"T4\"] }"));
    assert_eq!(text.matches("\"id\"").count(), 7);
    assert_eq!(text.matches("[\"p_").count(), 8, "eight cover pairs");
}

#[test]
fn spec_gm_has_one_point() {
    let out = run(&["spec", &fixture("gm.f1"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Gm: 1 points"));
}

#[test]
fn qcount_gl3_at_two() {
    let out = run(&["qcount", "--gl", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "168\n");
}

#[test]
fn qcount_gauss_polynomial() {
    let out = run(&["qcount", "--gauss", "3", "1"]);
    assert_eq!(stdout(&out), "q^2 + q + 1\n");
    let out = run(&["qcount", "--gauss", "4", "2", "--q", "1"]);
    assert_eq!(stdout(&out), "6\n");
}

#[test]
fn qcount_limit_gl_is_factorial() {
    let out = run(&["qcount", "--limit-gl", "4"]);
    assert_eq!(stdout(&out), "24\n");
}

#[test]
fn weyl_sl2_reports_z2() {
    let out = run(&["weyl", &fixture("sl2.f1")]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"group\": \"Z/2\""));
    assert!(text.contains("\"identity\": \"p_T2_T3\""));
    assert!(text.contains("F1squared-torus(1)"));
}

#[test]
fn weyl_gl2_reports_z2() {
    let out = run(&["weyl", &fixture("gl2.f1")]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"group\": \"Z/2\""));
    assert!(text.contains("F1-torus(2)"));
}

#[test]
fn weyl_rejects_unrecognized_shapes() {
    let dir = std::env::temp_dir().join("f1_weyl_unrecognized.f1");
    std::fs::write(&dir, "monoid M { gens: a, b, c; }").unwrap();
    let out = run(&["weyl", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn basechange_renders_presentations() {
    let out = run(&["basechange", &fixture("sl2.f1")]);
    assert_eq!(stdout(&out), "Z[T1,T2,T3,T4] / (T1*T4 - T2*T3 - 1)\n");
    let out = run(&["basechange", &fixture("gm.f1")]);
    assert_eq!(stdout(&out), "Z[T,T_inv] / (T*T_inv - 1)\n");
    let out = run(&["basechange", &fixture("sl2.f1"), "--target", "n"]);
    assert_eq!(stdout(&out), "N[T1,T2,T3,T4] // (T1*T4 ~ T2*T3 + 1)\n");
}

#[test]
fn zeta_output() {
    let out = run(&["zeta", "--q", "3", "--series", "3", "--places", "2"]);
    let text = stdout(&out);
    assert!(text.contains("Z(T) = (1) / (3*T^2 - 4*T + 1)"));
    assert!(text.contains("T^2\t13\t13"));
    assert!(text.contains("places\t1\t4"));
    assert!(text.contains("places\t2\t3"));
}

#[test]
fn balance_accepts_and_rejects() {
    let ok = run(&["balance", &fixture("curve.f1")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "balanced\n");

    let bad = run(&["balance", &fixture("unbalanced.f1")]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("unbalanced"));
    assert!(text.contains("vertex v2: defect (-1, 0)"));
    assert!(text.contains("vertex v3: defect (1, 0)"));
}

#[test]
fn builtin_objects_resolve_by_name() {
    let p2 = run(&["spec", "P2", "--format", "json"]);
    assert_eq!(p2.status.code(), Some(0));
    let text = stdout(&p2);
    assert!(text.contains("\"object\": \"P2\""));
    assert_eq!(text.matches("\"id\"").count(), 7);
    assert!(text.contains("[\"[1:1:1]\", \"[1:1:0]\"]"));

    let a1 = run(&["spec", "A1", "--format", "text"]);
    assert!(stdout(&a1).contains("cover p_ < p_T"));

    let gm = run(&["render", "Gm1", "--format", "dot"]);
    assert!(stdout(&gm).contains("\"p_\";"));
}

#[test]
fn render_emits_dot() {
    let out = run(&["render", &fixture("sl2.f1")]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph {"));
    assert!(text.contains("\"p_\" -> \"p_T1\";"));
}

#[test]
fn parse_errors_use_exit_code_three() {
    let dir = std::env::temp_dir().join("f1_bad_input.f1");
    std::fs::write(&dir, "monoid Bad { gens: T; rel: S = 1; }").unwrap();
    let out = run(&["spec", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("unknown generator S at 1:28"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["spec", "/nonexistent/nothing.f1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn geometry_exports() {
    let tsv = run(&["qcount", "--geometry", "3", "2"]);
    let text = stdout(&tsv);
    assert_eq!(text.matches("element\t1\t").count(), 7);
    assert_eq!(text.matches("element\t2\t").count(), 7);
    assert_eq!(text.matches("incidence\t").count(), 21);

    let dot = run(&["qcount", "--geometry", "3", "2", "--format", "dot"]);
    let text = stdout(&dot);
    assert!(text.starts_with("graph {"));
    assert!(text.contains("subgraph cluster_1"));

    let limit = run(&["qcount", "--limit-geometry", "3"]);
    let text = stdout(&limit);
    assert_eq!(text.matches("incidence\t").count(), 6);
    assert!(text.contains("incidence\t{1}\t{1,2}"));
}

#[test]
fn rank_reports_the_sl2_layers() {
    let out = run(&["rank", &fixture("sl2.f1")]);
    let text = stdout(&out);
    assert!(text.contains("\"rank\": 1,"));
    assert!(text.contains("{ \"id\": \"p_\", \"rank\": 3 }"));
    assert!(text.contains("{ \"id\": \"p_T1_T4\", \"rank\": 1 }"));
    assert!(text.contains("{ \"id\": \"p_T2_T3\", \"type\": \"F1-torus(1)\" }"));
}

#[test]
fn starved_budget_reports_undecided() {
    // A one-step chain budget cannot confirm the comultiplication.
    let out = run(&["weyl", &fixture("sl2.f1"), "--budget-steps", "1"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("undecided"));
}

#[test]
fn rank_reports_the_gl2_rank_space() {
    let out = run(&["rank", &fixture("gl2.f1")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"rank\": 2,"));
    assert!(text.contains("{ \"id\": \"p_\", \"rank\": 4 }"));
    assert!(text.contains("{ \"id\": \"p_T1_T4\", \"type\": \"F1squared-torus(2)\" }"));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("ok")));
}
