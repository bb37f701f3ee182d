use std::path::PathBuf;
use std::process::{Command, Output};

use gensub::{ExportOptions, GraphExport};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.gs"))
}

fn gensub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gensub")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn parse_summaries() {
    let o = gensub(&["parse", corpus("sample").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("table sample: 6 classes"));
    let o = gensub(&["parse", corpus("fbounded").to_str().unwrap()]);
    assert!(stdout(&o).contains("Comparable<T extends Comparable<T>>"));
    assert!(stdout(&o).contains("[f-bounded]"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = write(&dir, "cyc.gs", "class A extends B\nclass B extends A\n");
    let o = gensub(&["parse", cyc.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("CyclicSubclassing"));
    let bad = write(&dir, "bad.gs", "class A\nclass List<T\n");
    let o = gensub(&["parse", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.gs:3:1"), "{}", stderr(&o));
    let o = gensub(&["parse", dir.path().join("missing.gs").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn build_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = gensub(&["build", corpus("alist").to_str().unwrap(), "--depth", "1", "--format", "json", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let g = GraphExport::from_json(&text).unwrap();
    assert_eq!(g.nodes.len(), 8);
    assert_eq!(g.meta.depth, 1);
    assert_eq!(g.meta.table, "alist");
    // re-export of the same construction is identical
    let t = gensub::corpus::corpus_table("alist").unwrap().load().unwrap();
    let built = gensub::construct(&t, 1, &Default::default()).unwrap();
    assert_eq!(GraphExport::from_graph(&built, ExportOptions::default()), g);
    assert_eq!(GraphExport::from_json(&g.to_json()).unwrap(), g);
}

#[test]
fn build_variants() {
    let o = gensub(&["build", corpus("sample").to_str().unwrap(), "--depth", "0"]);
    let g = GraphExport::from_json(&stdout(&o)).unwrap();
    assert_eq!(g.nodes.len(), 5);
    let o = gensub(&["build", corpus("sample").to_str().unwrap(), "--depth", "1", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"LinkedList<String>\" -> \"List<?>\""));
    let o = gensub(&["build", corpus("alist").to_str().unwrap(), "--no-null", "--hasse"]);
    let g = GraphExport::from_json(&stdout(&o)).unwrap();
    assert!(g.nodes.iter().all(|n| n.text != "Null"));
    assert!(g.edges.len() < 20);
}

#[test]
fn resource_limit_exits_three() {
    let o = gensub(&["build", corpus("alist").to_str().unwrap(), "--depth", "2", "--node-cap", "10"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("ResourceLimit"));
    let o = gensub(&["check", corpus("pair").to_str().unwrap(), "--depth", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn check_passes_and_mutation_fails() {
    let o = gensub(&["check", corpus("sample").to_str().unwrap(), "--depth", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 8);
    let o = gensub(&["check", corpus("alist").to_str().unwrap(), "--depth", "1", "--laws", "oracle", "--mutate", "reversed-lower"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL oracle/edge set"));
    assert!(stdout(&o).contains("missing"));
    let dir = tempfile::tempdir().unwrap();
    let empty = write(&dir, "empty.gs", "// nothing\n");
    let o = gensub(&["check", empty.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn check_json_and_bad_law_names() {
    let o = gensub(&["check", corpus("fbounded").to_str().unwrap(), "--depth", "2", "--laws", "galois", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["violations"], 0);
    let o = gensub(&["check", corpus("alist").to_str().unwrap(), "--laws", "galois,nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn yoneda_command() {
    let o = gensub(&["yoneda", corpus("alist").to_str().unwrap(), "--class", "List", "--depth", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("List<X_1 extends Object>"));
    assert!(s.contains("= 5, |f(List)| = 5, bijective"));
    let o = gensub(&["yoneda", corpus("sample").to_str().unwrap(), "--class", "Object"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("placeholders   0"));
    let o = gensub(&["yoneda", corpus("bounded").to_str().unwrap(), "--class", "List"]);
    assert_eq!(code(&o), 4);
    let o = gensub(&["yoneda", corpus("alist").to_str().unwrap(), "--class", "Nope"]);
    assert_eq!(code(&o), 2);
}
