//! Black-box tests of the `starlit` binary: exit codes, file handling, and
//! output determinism.

use std::path::Path;
use std::process::{Command, Output};

use starlit::format;
use starlit::verifier;

fn starlit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starlit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const K4: &str = "p 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";
const C4: &str = "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
const K5: &str = "p 5 10\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn color_writes_a_verified_coloring_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "k4.txt", K4);
    let out = dir.path().join("k4.coloring");
    let result = starlit(
        &["color", &graph, out.to_str().unwrap(), "--uniform-k", "7"],
        dir.path(),
    );
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let g = format::parse_graph(K4).unwrap();
    let c = format::parse_coloring(&std::fs::read_to_string(&out).unwrap(), 6).unwrap();
    assert_eq!(verifier::find_violation(&g, &c).unwrap(), None);
}

#[test]
fn color_without_out_path_prints_the_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c4.txt", C4);
    let result = starlit(&["color", &graph, "--uniform-k", "7"], dir.path());
    assert_eq!(result.status.code(), Some(0));
    let c = format::parse_coloring(&stdout(&result), 4).unwrap();
    assert!(c.is_total());
}

#[test]
fn color_rejects_malformed_and_oversized_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "p 2 1\ne 0 two\n");
    let result = starlit(&["color", &bad, "--uniform-k", "7"], dir.path());
    assert_eq!(result.status.code(), Some(2));
    let k5 = write(dir.path(), "k5.txt", K5);
    let result = starlit(&["color", &k5, "--uniform-k", "7"], dir.path());
    assert_eq!(result.status.code(), Some(2));
    let missing = dir.path().join("nope.txt");
    let result = starlit(
        &["color", missing.to_str().unwrap(), "--uniform-k", "7"],
        dir.path(),
    );
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn color_requires_a_list_source() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c4.txt", C4);
    let result = starlit(&["color", &graph], dir.path());
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn color_honors_a_lists_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c4.txt", C4);
    let lists_text = "l 0 1 2 3 4 5 6 7\nl 1 11 12 13 14 15 16 17\nl 2 1 2 3 4 5 6 7\nl 3 21 22 23 24 25 26 27\n";
    let lists = write(dir.path(), "c4.lists", lists_text);
    let result = starlit(&["color", &graph, "--lists", &lists], dir.path());
    assert_eq!(result.status.code(), Some(0));
    let c = format::parse_coloring(&stdout(&result), 4).unwrap();
    let l = format::parse_lists(lists_text, 4).unwrap();
    assert!(verifier::respects_lists(&c, &l).unwrap());
}

#[test]
fn color_dump_cactus_reports_stages_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let prism = "p 6 9\ne 0 1\ne 1 2\ne 2 0\ne 3 4\ne 4 5\ne 5 3\ne 0 3\ne 1 4\ne 2 5\n";
    let graph = write(dir.path(), "prism.txt", prism);
    let result = starlit(
        &["color", &graph, "--uniform-k", "7", "--dump-cactus"],
        dir.path(),
    );
    assert_eq!(result.status.code(), Some(0));
    let err = String::from_utf8_lossy(&result.stderr);
    assert!(err.contains("cycle"), "{err}");
    assert!(err.contains("leftover"), "{err}");
}

#[test]
fn verify_distinguishes_valid_and_invalid_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c4.txt", C4);
    let bad = write(dir.path(), "bad.coloring", "c 0 1\nc 1 2\nc 2 1\nc 3 2\n");
    let result = starlit(&["verify", &graph, &bad], dir.path());
    assert_eq!(result.status.code(), Some(1));
    assert!(stdout(&result).contains("bichromatic_cycle"), "{result:?}");
    let good = write(dir.path(), "good.coloring", "c 0 1\nc 1 2\nc 2 1\nc 3 3\n");
    let result = starlit(&["verify", &graph, &good], dir.path());
    assert_eq!(result.status.code(), Some(0));
}

#[test]
fn verify_rejects_unknown_edge_ids() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "c4.txt", C4);
    let coloring = write(dir.path(), "oops.coloring", "c 0 1\nc 1 2\nc 2 1\nc 9 3\n");
    let result = starlit(&["verify", &graph, &coloring], dir.path());
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn verify_checks_lists_when_given() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "edge.txt", "p 2 1\ne 0 1\n");
    let coloring = write(dir.path(), "edge.coloring", "c 0 9\n");
    let lists = write(dir.path(), "edge.lists", "l 0 1 2 3\n");
    let result = starlit(&["verify", &graph, &coloring, "--lists", &lists], dir.path());
    assert_eq!(result.status.code(), Some(1));
    assert!(stdout(&result).contains("lists"));
}

#[test]
fn gen_named_produces_the_fixture_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let result = starlit(&["gen", "named", "k33"], dir.path());
    assert_eq!(result.status.code(), Some(0));
    let g = format::parse_graph(&stdout(&result)).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
    let result = starlit(&["gen", "named", "cube_q3"], dir.path());
    let g = format::parse_graph(&stdout(&result)).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
}

#[test]
fn gen_rejects_unknown_kinds_and_names() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        starlit(&["gen", "named", "nope"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        starlit(&["gen", "nope"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        starlit(&["gen", "named"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        starlit(&["gen", "random_cubic"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn gen_random_graphs_are_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "random_cubic", "--n", "10", "--seed", "1"];
    let a = starlit(&args, dir.path());
    let b = starlit(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let g = format::parse_graph(&stdout(&a)).unwrap();
    assert_eq!(g.vertex_count(), 10);
    assert!((0..10).all(|v| g.degree(v) == 3));
    let other = starlit(
        &["gen", "random_cubic", "--n", "10", "--seed", "2"],
        dir.path(),
    );
    assert_ne!(stdout(&a), stdout(&other));
    let sub = starlit(
        &["gen", "random_subcubic", "--n", "11", "--seed", "4"],
        dir.path(),
    );
    assert_eq!(sub.status.code(), Some(0));
    let g = format::parse_graph(&stdout(&sub)).unwrap();
    assert!(g.is_subcubic());
}

#[test]
fn chi_star_prints_the_index_or_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n";
    let graph = write(dir.path(), "c5.txt", c5);
    let result = starlit(&["chi-star", &graph], dir.path());
    assert_eq!(result.status.code(), Some(0));
    assert_eq!(stdout(&result).trim(), "4");
    let result = starlit(&["chi-star", &graph, "--max-k", "3"], dir.path());
    assert_eq!(result.status.code(), Some(0));
    assert_eq!(stdout(&result).trim(), ">3");
}

#[test]
fn fuzz_reports_and_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let result = starlit(
        &["fuzz", "--count", "5", "--max-n", "10", "--seed", "3"],
        dir.path(),
    );
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    assert!(stdout(&result).contains("instances 5 failures 0"));
    let result = starlit(&["fuzz", "--count", "0"], dir.path());
    assert_eq!(result.status.code(), Some(0));
    let result = starlit(&["fuzz", "--count", "1", "--palette", "6"], dir.path());
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn unknown_subcommands_and_flags_exit_with_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(starlit(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(
        starlit(&["chi-star", "--bogus"], dir.path()).status.code(),
        Some(2)
    );
}
