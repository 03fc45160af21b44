use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spiderweb(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiderweb"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn generate_then_validate_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = spiderweb(dir.path(), &["generate", "--family", "dyadic_web", "--depth", "4", "--out", "web.txt"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = spiderweb(dir.path(), &["validate", "--in", "web.txt"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn weaktype_on_zero_function_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    spiderweb(dir.path(), &["generate", "--family", "homogeneous_tree", "--q", "2", "--depth", "3", "--out", "t.txt"]);
    let out = spiderweb(dir.path(), &["weaktype", "--in", "t.txt", "--tau", "1", "--function", "const:0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(spiderweb(dir.path(), &["generate", "--depth", "notanumber"]).status.code(), Some(1));
    assert_eq!(spiderweb(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(spiderweb(dir.path(), &["generate", "--family", "nosuch", "--depth", "3"]).status.code(), Some(1));
}

#[test]
fn missing_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(spiderweb(dir.path(), &["validate", "--in", "absent.txt"]).status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "family=dyadic_web\ndepth=3\nout=web.txt\n").unwrap();
    let out = spiderweb(dir.path(), &["--config", "run.cfg", "generate", "--depth", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = fs::read_to_string(dir.path().join("generate.manifest")).unwrap();
    assert!(manifest.lines().any(|l| l == "depth=5"));
}

#[test]
fn manifest_rerun_reproduces_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    spiderweb(d, &["generate", "--family", "random_spiderweb", "--a", "2", "--b", "3", "--depth", "6", "--seed", "4", "--out", "g.txt"]);
    let first = spiderweb(d, &["--seed", "9", "paircount", "--in", "g.txt", "--a", "2", "--b", "3", "--sizes", "5,20", "--trials", "3", "--rmax", "5", "--out", "pc1.csv"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let manifest = fs::read_to_string(d.join("paircount.manifest")).unwrap();
    let rerun: String = manifest.lines().map(|l| if l.starts_with("out=") { "out=pc2.csv" } else { l }).collect::<Vec<_>>().join("\n");
    fs::write(d.join("rerun.cfg"), rerun).unwrap();
    let second = spiderweb(d, &["--config", "rerun.cfg", "paircount"]);
    assert_eq!(second.status.code(), Some(0), "{}", String::from_utf8_lossy(&second.stderr));
    assert_eq!(fs::read_to_string(d.join("pc1.csv")).unwrap(), fs::read_to_string(d.join("pc2.csv")).unwrap());
}

#[test]
fn geodesic_on_a_tree_passes_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    spiderweb(d, &["generate", "--family", "random_ab_tree", "--a", "2", "--b", "3", "--depth", "3", "--seed", "1", "--out", "t.txt"]);
    let out = spiderweb(d, &["geodesic", "--in", "t.txt", "--pairs", "200", "--out", "geo.csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(d.join("geo.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("x,y,len,asc,horiz,desc,bound_ok"));
    assert_eq!(csv.lines().count(), 201);
}
