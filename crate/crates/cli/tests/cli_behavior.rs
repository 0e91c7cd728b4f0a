//! End-to-end tests of the `renorm` binary: report content, exit codes,
//! error reporting, and byte-stability of repeated runs.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output};

use renorm_cli::dsl::{parse_graph_dsl, render_dsl};
use renorm_cli::CORPUS_DSL;
use renorm_core::corpus;

fn renorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn degrees_tabulates_both_degrees_for_the_built_in_corpus() {
    let out = renorm(&["degrees"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    // The chain of two-point graphs climbs 2, 4, 6 in the second degree
    // while the first stays at 2.
    for (name, omega, abar) in [("B1", 2, 2), ("N2", 2, 4), ("N3", 2, 6)] {
        let row = text
            .lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("row for {name}"));
        let cols: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cols[5], omega.to_string(), "omega of {name}");
        assert_eq!(cols[6], abar.to_string(), "abar of {name}");
    }
    // Non-divergent inputs are listed too; the tadpole triangle sits at
    // zero in both columns.
    let t1 = text.lines().find(|l| l.starts_with("T1")).expect("T1 row");
    let cols: Vec<&str> = t1.split_whitespace().collect();
    assert_eq!((cols[5], cols[6]), ("0", "0"));
}

#[test]
fn wood_lists_exactly_three_spinneys_for_the_disjoint_bubble_graph() {
    let out = renorm(&["wood"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("graph O3 (theory phi3): 3 spinneys"),
        "O3 header missing in:\n{text}"
    );
    let o3_block: String = text
        .lines()
        .skip_while(|l| !l.starts_with("graph O3"))
        .take_while(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n");
    // Two singleton spinneys and the disjoint pair.
    assert_eq!(o3_block.matches("S1:").count(), 1);
    assert_eq!(o3_block.matches("S3:").count(), 1);
    assert!(
        o3_block.contains("{e2,e3} {e6,e7}"),
        "pair spinney missing in:\n{o3_block}"
    );
}

#[test]
fn coproduct_shows_the_disjoint_pair_expansion() {
    let out = renorm(&["coproduct"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("Δ(O3) = 1 ⊗ O3 + 2·B1 ⊗ N2 + B1^2 ⊗ B1 + O3 ⊗ 1"),
        "unexpected O3 line in:\n{text}"
    );
}

#[test]
fn compare_on_the_series_model_reports_identical_methods() {
    let out = renorm(&["compare", "--scheme", "pole", "random:seed=5"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("all methods identical"));
}

#[test]
fn compare_on_the_momentum_model_detects_the_right_handed_difference() {
    let out = renorm(&[
        "compare",
        "--scheme",
        "minimal",
        "--max-grade",
        "2",
        "random:seed=5",
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("forest value(s) differ"), "got:\n{text}");
    assert!(text.contains("exp-right"));
}

#[test]
fn classify_minimal_refutes_the_counterterm_identity_with_a_witness() {
    let out = renorm(&["classify", "--scheme", "minimal", "--samples", "30"]);
    // The renormalised identity is confirmed, so the command succeeds.
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("counterterm identity: refuted"));
    assert!(text.contains("renormalised identity: confirmed on corpus"));
    assert!(text.contains("first counterexample: graph"));
}

#[test]
fn selftest_reports_one_line_per_criterion() {
    // Keep this cheap: the full suite runs in the dedicated acceptance
    // test; here we only check the report shape on a JSON run.
    let out = renorm(&["selftest", "--format", "json"]);
    let text = stdout_of(&out);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(value["command"], "selftest");
    assert_eq!(value["criteria"].as_array().expect("array").len(), 10);
    assert_eq!(value["pass"], true);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn a_malformed_dsl_file_yields_exit_two_and_every_violation() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.g");
    std::fs::write(
        &path,
        "theory phi3 { dimension 6; valence 3; }\n\
         graph bad: phi3 {\n\
           vertices a b;\n\
           edge a b;\n\
           edge a c;\n\
           leg a;\n\
         }\n\
         graph worse: nope {\n\
           vertices z;\n\
         }\n",
    )
    .expect("write");
    let out = renorm(&["degrees", path.to_str().expect("utf-8 path")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    // Both graphs' problems are reported, each with a position.
    assert!(err.contains("unknown vertex 'c'"), "got:\n{err}");
    assert!(err.contains("unknown theory 'nope'"), "got:\n{err}");
    assert!(err.contains("line 5"), "positions missing in:\n{err}");
}

#[test]
fn json_documents_are_accepted_as_inputs() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("one.json");
    let doc = serde_json::json!({
        "theories": [{"name": "phi3", "dimension": 6, "valence": 3}],
        "graphs": [{
            "name": "bubble",
            "theory": "phi3",
            "vertices": ["u", "w"],
            "edges": [["u", "w"], ["u", "w"]],
            "legs": [["1", "u"], ["2", "w"]],
        }],
    });
    let mut f = std::fs::File::create(&path).expect("create");
    write!(f, "{doc}").expect("write");
    let out = renorm(&["degrees", path.to_str().expect("utf-8 path")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("bubble"))
        .expect("bubble row");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!((cols[5], cols[6]), ("2", "2"), "bubble degrees");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["degrees", "--format", "json"],
        vec!["wood"],
        vec!["classify", "--scheme", "minimal", "--samples", "10", "--seed", "4", "--format", "json"],
        vec!["renormalize", "--scheme", "pole", "random:seed=11"],
    ] {
        let first = renorm(&args);
        let second = renorm(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs between runs of {args:?}"
        );
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn the_embedded_corpus_matches_the_programmatic_one() {
    let parsed = parse_graph_dsl(CORPUS_DSL);
    assert!(
        parsed.diagnostics.is_empty(),
        "shipped corpus has diagnostics: {:?}",
        parsed.diagnostics
    );
    let built = corpus::all();
    assert_eq!(parsed.graphs.len(), built.len());
    for ((dsl_name, dsl_graph), (name, graph)) in parsed.graphs.iter().zip(&built) {
        assert_eq!(dsl_name, name);
        assert_eq!(
            dsl_graph.canonical_key(),
            graph.canonical_key(),
            "class of {name} differs"
        );
    }
}

#[test]
fn rendering_and_reparsing_the_corpus_is_the_identity_on_classes() {
    let parsed = parse_graph_dsl(CORPUS_DSL);
    let rendered = render_dsl(&parsed.theories, &parsed.graphs);
    let again = parse_graph_dsl(&rendered);
    assert!(again.diagnostics.is_empty(), "{:?}", again.diagnostics);
    assert_eq!(parsed.graphs.len(), again.graphs.len());
    for ((n1, g1), (n2, g2)) in parsed.graphs.iter().zip(&again.graphs) {
        assert_eq!(n1, n2);
        assert_eq!(g1.canonical_key(), g2.canonical_key());
    }
    // And the rendering itself is stable.
    assert_eq!(rendered, render_dsl(&again.theories, &again.graphs));
}

#[test]
fn a_custom_scheme_file_drives_the_subtraction_orders() {
    // Name-keyed orders for every class the built-in corpus produces,
    // including the class discovered while closing the session.
    let session = renorm_core::hopf::Session::with_corpus(1).expect("session");
    let mut orders = std::collections::BTreeMap::new();
    for id in session.generators() {
        orders.insert(session.name(id).to_string(), session.omega(id) + 2);
    }
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("orders.json");
    std::fs::write(&path, serde_json::to_string(&orders).expect("encode")).expect("write");
    let spec = format!("custom:{}", path.display());
    let out = renorm(&["renormalize", "--scheme", &spec, "--max-grade", "1", "random:seed=2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("scheme: custom"));
}

#[test]
fn missing_input_files_are_a_usage_error() {
    let out = renorm(&["degrees", "/nonexistent/??.g"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr_of(&out).is_empty());
}

fn assert_is_file(p: &Path) {
    assert!(p.is_file(), "{} missing", p.display());
}

#[test]
fn the_shipped_corpus_file_is_the_embedded_one() {
    // `include_str!` guarantees equality at compile time; this test
    // documents where the file lives for users reading the tree.
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("src/corpus.g");
    assert_is_file(&path);
    let on_disk = std::fs::read_to_string(&path).expect("readable");
    assert_eq!(on_disk, CORPUS_DSL);
}
