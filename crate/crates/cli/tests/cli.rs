use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bbcompress"));
    cmd.env_remove("BBCOMPRESS_CONFIG");
    cmd
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    out
}

fn error_kind(out: &Output) -> String {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().unwrap_or_default();
    let v: serde_json::Value = serde_json::from_str(line).expect("json error on stderr");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn missing_instance_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args(["generate", "no/such/file.mps", "--out"])
        .arg(dir.path().join("t.jsonl")));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "usage");
}

#[test]
fn empty_report_glob_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = dir.path().join("*.csv");
    let out = run(bin()
        .arg("report")
        .arg(pattern.to_str().unwrap())
        .arg("--out")
        .arg(dir.path().join("r.csv")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(bin().args(["compress", "--bogus"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn node_limit_one_gives_a_single_node() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("k.tree.jsonl");
    let out = run(bin()
        .arg("generate")
        .arg(data("knapsack.mps"))
        .args(["--rule", "fsb", "--node-limit", "1", "--out"])
        .arg(&tree));
    assert!(out.status.success());
    let text = std::fs::read_to_string(&tree).unwrap();
    assert_eq!(
        text.lines().filter(|l| !l.trim().is_empty()).count(),
        2,
        "header plus one node"
    );
    assert!(dir.path().join("k.tree.jsonl.manifest.json").exists());
}

#[test]
fn exact_compression_of_the_box_example() {
    let dir = tempfile::tempdir().unwrap();
    let out_tree = dir.path().join("c.tree.jsonl");
    let out = run(bin()
        .arg("compress")
        .arg(fixture("box_fifth.tree.jsonl"))
        .arg("--instance")
        .arg(fixture("box_fifth.json"))
        .args(["--method", "exact", "--virtual-clock", "--out"])
        .arg(&out_tree));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("7 -> 3 (57.14%)"), "{stdout}");

    let log = dir.path().join("c.tree.jsonl.log.jsonl");
    let report = dir.path().join("r.csv");
    let out = run(bin().arg("report").arg(log.to_str().unwrap()).arg("--out").arg(&report));
    assert!(out.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(
        text.starts_with("strategy,auc_pct_mean,ratio_15min,ratio_1h,ratio_4h\n"),
        "{text}"
    );
    assert!(text.contains("57.1429"), "{text}");
}

#[test]
fn tree_and_instance_must_match() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .arg("compress")
        .arg(fixture("box_fifth.tree.jsonl"))
        .arg("--instance")
        .arg(fixture("triangle.json"))
        .arg("--out")
        .arg(dir.path().join("c.jsonl")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "[generate]\nrule = \"fsb\"\nnode_limit = 1\n").unwrap();

    let from_file = dir.path().join("a.jsonl");
    let out = run(bin()
        .arg("generate")
        .arg(data("knapsack.mps"))
        .arg("--out")
        .arg(&from_file)
        .env("BBCOMPRESS_CONFIG", &cfg));
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&from_file).unwrap().lines().count(), 2);

    let overridden = dir.path().join("b.jsonl");
    let out = run(bin()
        .arg("generate")
        .arg(data("knapsack.mps"))
        .arg("--config")
        .arg(&cfg)
        .args(["--node-limit", "3", "--out"])
        .arg(&overridden));
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&overridden).unwrap().lines().count(), 4);

    std::fs::write(&cfg, "[generate]\nrulez = \"fsb\"\n").unwrap();
    let out = run(bin()
        .arg("generate")
        .arg(data("knapsack.mps"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("c.jsonl")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn full_pipeline_on_the_box() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let inst = data("box_fifth.mps");
    assert!(run(bin()
        .arg("generate")
        .arg(&inst)
        .args(["--rule", "rb", "--out"])
        .arg(p("t.jsonl")))
    .status
    .success());
    assert!(run(bin()
        .arg("precompute")
        .arg(p("t.jsonl"))
        .arg("--instance")
        .arg(&inst)
        .args(["--virtual-clock", "--out"])
        .arg(p("rec.jsonl")))
    .status
    .success());
    assert!(run(bin()
        .arg("simulate")
        .arg(p("t.jsonl"))
        .arg("--instance")
        .arg(&inst)
        .arg("--records")
        .arg(p("rec.jsonl"))
        .args(["--strategy", "all", "--horizon", "1,inf", "--out"])
        .arg(p("sim.csv")))
    .status
    .success());
    let csv = std::fs::read_to_string(p("sim.csv")).unwrap();
    assert!(
        csv.starts_with("instance,strategy,T,auc_pct,ratio_pct,nodes_processed\n"),
        "{csv}"
    );
    assert_eq!(csv.lines().count(), 1 + 6 * 2);
}
