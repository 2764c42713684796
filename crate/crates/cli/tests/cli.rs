use std::process::{Command, Output};

use tempfile::TempDir;

fn advicepack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advicepack"))
        .args(args)
        .env_remove("ADVICEPACK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_then_opt() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("pairs.json");
    let out = advicepack(&[
        "generate",
        "pairs",
        "--n",
        "6",
        "--seed",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = advicepack(&["opt", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("cost 3\n"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("bin ")).count(), 3);
}

#[test]
fn seed_env_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_advicepack"));
        cmd.args(["generate", "uniform", "--n", "5", "--seed", seed]);
        match env {
            Some(v) => cmd.env("ADVICEPACK_SEED", v),
            None => cmd.env_remove("ADVICEPACK_SEED"),
        };
        stdout(&cmd.output().unwrap())
    };
    assert_eq!(run(Some("9"), "1"), run(None, "9"));
    assert_ne!(run(None, "1"), run(None, "9"));
}

#[test]
fn run_writes_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("r.csv");
    let json = dir.path().join("r.json");
    let out = advicepack(&[
        "run",
        "--algo",
        "ff,bf,three-halves",
        "--generator",
        "uniform",
        "--n",
        "9",
        "--repetitions",
        "4",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,opt,algorithm,cost,ratio,advice_bits,flags,runtime_ms,error"
    );
    assert_eq!(lines.count(), 12);
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 12);
}

#[test]
fn run_is_reproducible() {
    let args = [
        "run",
        "--algo",
        "nf,distinct,four-thirds:1/12",
        "--generator",
        "triples",
        "--n",
        "9",
        "--repetitions",
        "3",
    ];
    let a = advicepack(&args);
    let b = advicepack(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tape_replay_matches_oracle_run() {
    let dir = TempDir::new().unwrap();
    let tapes = dir.path().join("tapes.json");
    let base = [
        "run",
        "--algo",
        "full-index",
        "--generator",
        "uniform",
        "--n",
        "10",
        "--seed",
        "4",
    ];
    let first = advicepack(&[&base[..], &["--dump-tapes", tapes.to_str().unwrap()]].concat());
    assert!(first.status.success());
    let records: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tapes).unwrap()).unwrap();
    let tape = records[0]["tape"].as_str().unwrap().to_string();
    let replay = advicepack(&[&base[..], &["--tape", &tape]].concat());
    assert_eq!(first.stdout, replay.stdout);
}

#[test]
fn corrupted_tape_is_a_violation() {
    // all-zero tape: three-halves reads a width of zero and the advice count
    // check fails
    let out = advicepack(&[
        "run",
        "--algo",
        "three-halves",
        "--generator",
        "uniform",
        "--n",
        "10",
        "--tape",
        "8:00",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("over-budget"));
}

#[test]
fn run_on_files() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"n": 4, "items": ["0.6", "0.4", "0.7", "0.3"]}"#,
    );
    let b = write(&dir, "b.json", r#"{"n": 2, "items": ["1/2", "1/2"]}"#);
    let out = advicepack(&["run", "--algo", "pair", &a, &b]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with(&format!("{a},4,2,pair,2,")));
    assert!(rows[1].starts_with(&format!("{b},2,1,pair,1,")));
}

#[test]
fn families() {
    let out = advicepack(&["family", "t1", "--n", "8", "--k", "3", "--all"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9);
    let out = advicepack(&["family", "t1", "--n", "8", "--k", "3", "--index", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = advicepack(&[
        "family", "t2", "--n", "30", "--m", "6", "--levels", "7,0,0,2",
    ]);
    let seq: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(seq["n"], 30);
}

#[test]
fn reduce_reports_trace() {
    let dir = TempDir::new().unwrap();
    let bits = write(&dir, "bits.txt", "0110 1001\n");
    let out = advicepack(&["reduce", "--inner", "bf", "--bits", &bits]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("bits 8\n"));
    assert!(text.contains("items 16\n"));
    assert!(text.contains("opt 8\n"));
    let out = advicepack(&["reduce", "--bits", "random:1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = advicepack(&[
        "reduce", "--inner", "pair", "--bits", "random:1", "--n", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_prints_both_values() {
    let out = advicepack(&["bound", "--c", "17/16", "--n", "1000"]);
    let text = stdout(&out);
    assert!(text.contains("coefficient 0.188722"), "{text}");
    assert!(text.contains("bound "));
    let out = advicepack(&["bound", "--c", "9/8", "--n", "1000"]);
    assert!(stdout(&out).contains("coefficient 0.000000"));
    let out = advicepack(&["bound", "--c", "2", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_packings() {
    let dir = TempDir::new().unwrap();
    let inst = write(
        &dir,
        "i.json",
        r#"{"n": 3, "items": ["1/2", "1/2", "3/4"]}"#,
    );
    let good = write(&dir, "good.json", r#"{"bins": [[0, 1], [2]]}"#);
    let bad = write(&dir, "bad.json", r#"{"bins": [[0, 2], [1]]}"#);
    let missing = write(&dir, "missing.json", r#"{"bins": [[0, 1]]}"#);
    assert!(advicepack(&["verify", &inst, &good]).status.success());
    assert_eq!(advicepack(&["verify", &inst, &bad]).status.code(), Some(1));
    assert_eq!(
        advicepack(&["verify", &inst, &missing]).status.code(),
        Some(1)
    );
    assert_eq!(
        advicepack(&["verify", &inst, "nothing.json"]).status.code(),
        Some(2)
    );
}
