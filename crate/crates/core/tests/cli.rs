use std::process::{Command, Output};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/a3_in_s3.txt");

fn xmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xmod"))
        .args(args)
        .env_remove("XMOD_SIZE_CAP")
        .output()
        .expect("run xmod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn difference_of_equal_maps_is_trivial() {
    let o = xmod(&["commutator", "--kind", "difference", "--f", "id:S3", "--g", "id:S3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("order 1 (trivial)"));
}

#[test]
fn normal_subgroup_is_a_crossed_module() {
    let o = xmod(&["-i", FIXTURE, "check", "xmod", "--boundary", "incl", "--action", "conjA3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("crossed: yes; class: normal-subobject"));
}

#[test]
fn huq_and_twisted_commutators() {
    let o = xmod(&["-i", FIXTURE, "commutator", "--kind", "huq", "--f", "incl", "--g", "id:S3"]);
    assert!(stdout(&o).contains("elements: 0 3 4\norder 3\nnormal: yes"));
    let o = xmod(&["--format", "tsv", "commutator", "--kind", "twisted", "--action", "trivial:Z2:Z3", "--f", "id:Z3", "--g", "zero:Z2:Z3"]);
    assert_eq!(stdout(&o), "elements\t0\norder\t1\nnormal\tyes\n");
}

#[test]
fn cooperators() {
    let o = xmod(&["cooperator", "--f", "id:Z3", "--g", "zero:Z2:Z3"]);
    // product pairs (x, b) sit at index 2x + b
    assert_eq!(stdout(&o), "0 0 1 1 2 2\n");
    let o = xmod(&["cooperator", "--f", "id:S3", "--g", "id:S3"]);
    assert_eq!(stdout(&o), "none\n");
}

#[test]
fn graph_queries() {
    let base = ["-i", FIXTURE, "graph"];
    let tail = ["--boundary", "incl", "--action", "conjA3"];
    let run = |q: &str| stdout(&xmod(&[&base[..], &[q], &tail[..]].concat()));
    assert!(run("pi0").starts_with("order: 2\n"));
    assert_eq!(run("connected"), "connected: no\n");
    assert_eq!(run("star-mult"), "star-multiplicative: yes\n");
    assert_eq!(run("mult"), "multiplicative: yes\n");
}

#[test]
fn semidirect_output_reparses() {
    let o = xmod(&["semidirect", "conj:S3"]);
    assert!(o.status.success());
    let w = xmod::io::parse(&stdout(&o)).unwrap();
    assert_eq!(w.groups["S3:S3"].order(), 36);
    assert_eq!(w.homs.len(), 3);
}

#[test]
fn census_tsv_is_stable_across_thread_counts() {
    let one = xmod(&["--format", "tsv", "--jobs", "1", "census", "--x", "klein4", "--b", "S3"]);
    let four = xmod(&["--format", "tsv", "--jobs", "4", "census", "--x", "klein4", "--b", "S3"]);
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).contains("summary\tcrossed\t10\n"));
}

#[test]
fn census_emit_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.txt");
    let p = path.to_str().unwrap();
    assert!(xmod(&["census", "--x", "Z4", "--b", "Z2", "--emit", p]).status.success());
    let first = std::fs::read_to_string(&path).unwrap();
    let w = xmod::io::parse(&first).unwrap();
    assert_eq!(xmod::io::serialize(&w), first);
    let again = dir.path().join("again.txt");
    let o = xmod(&["-i", p, "census", "--x", "Z4", "--b", "Z2", "--emit", again.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&again).unwrap(), first);
}

#[test]
fn exit_statuses() {
    assert_eq!(xmod(&["show", "nothing"]).status.code(), Some(3));
    assert_eq!(xmod(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "group G 2\n0 1\n").unwrap();
    assert_eq!(xmod(&["-i", bad.to_str().unwrap(), "show", "G"]).status.code(), Some(2));
    std::fs::write(&bad, "group G 2\n0 1\n1 1\n").unwrap();
    assert_eq!(xmod(&["-i", bad.to_str().unwrap(), "show", "G"]).status.code(), Some(1));
    let o = xmod(&["check", "pcm", "--boundary", "id:S3", "--action", "trivial:S3:Z3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = xmod(&["--size-cap", "10", "semidirect", "conj:S3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_paper_small() {
    let o = xmod(&["--format", "tsv", "verify-paper", "--max-order", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("statement\tinstances\tfailures\tmillis"));
    assert!(lines.all(|l| l.split('\t').nth(2) == Some("0")));
}
