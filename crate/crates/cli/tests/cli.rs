use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques")).args(args).env("ENRIQUES_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", data("branch.json").to_str().unwrap()]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).contains("admissible: yes"));

    let hit = run(&["check", data("branch_fixed_point.json").to_str().unwrap()]);
    assert_eq!(code(&hit), 1);
    assert!(stdout(&hit).contains("contains ((1:0),(1:0))"));

    let bad = run(&["check", data("malformed.json").to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    let missing = run(&["check", "/nonexistent/branch.json"]);
    assert_eq!(code(&missing), 2);
    assert_eq!(code(&run(&["check"])), 2);
}

#[test]
fn tangency_and_severi() {
    let o = run(&["tangency", data("branch.json").to_str().unwrap(), data("line.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("p_a of preimage: 1"));

    let o = run(&["severi-dim", "--K", "-2,-2", "--T", "4,4", "--L", "1,1", "--gamma", "0", "--alpha", "2,3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("expected dimension: 0"));
    assert!(stdout(&o).contains("alpha_i: 1\n"));

    // I alpha must equal L.T
    let o = run(&["severi-dim", "--L", "1,1", "--alpha", "2,2"]);
    assert_eq!(code(&o), 1);
    let o = run(&["severi-dim", "--L", "1", "--alpha", "2,3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn lattice_commands() {
    let o = run(&["phi", "--class", "2,2,0,0,0,0,0,0,0,0", "--radius", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("phi = 2\n"));
    let o = run(&["phi", "--class", "1,-1,0,0,0,0,0,0,0,0"]);
    assert_eq!(code(&o), 1);
    let o = run(&["phi", "--class", "1,2,3"]);
    assert_eq!(code(&o), 2);

    let o = run(&["lattice", "hs", "--m", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("determinant 6144, signature (1,10)"));
    let o = run(&["lattice", "scan", "--radius", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("59049 vectors"));
}

#[test]
fn table_rows() {
    let o = run(&["table", "--m-max", "26"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let row = |m: &str| text.lines().find(|l| l.split_whitespace().next() == Some(m)).unwrap().to_string();
    assert_eq!(row("1").split_whitespace().collect::<Vec<_>>(), ["1", "1", "[2,1]", "0", "1"]);
    assert_eq!(row("2").split_whitespace().nth(1), Some("5"));
    assert_eq!(row("26").split_whitespace().nth(1), Some("101"));
    assert!(text.contains("covers every k = 1 mod 4 up to 101: yes"));
}

#[test]
fn help_for_every_subcommand() {
    for sub in ["check", "tangency", "severi-dim", "seek", "verify", "phi", "lattice", "table"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        assert!(stdout(&o).contains("Usage"), "{sub}");
    }
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn seek_replay_and_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let branch = data("branch.json");
    let mut outs = Vec::new();
    for (i, threads) in ["1", "3"].iter().enumerate() {
        let dir = tmp.path().join(format!("run{i}"));
        let o = Command::new(env!("CARGO_BIN_EXE_enriques"))
            .args(["seek", branch.to_str().unwrap(), "--m", "2", "--seeds", "30", "--master-seed", "5"])
            .arg("--out")
            .arg(&dir)
            .env("ENRIQUES_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(stdout(&o).contains("p_a = 5 (4m-3 = 5), phi = 2"));
        outs.push(dir);
    }
    let a = files(&outs[0]);
    assert_eq!(a, files(&outs[1]));
    let certs: Vec<_> = a.iter().filter(|(n, _)| n.starts_with("cert_")).collect();
    assert!(!certs.is_empty());
    for (name, _) in &certs {
        let o = run(&["verify", outs[0].join(name).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }

    // tampering with the stored residual or alpha is caught
    let path = outs[0].join(&certs[0].0);
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let r = v["residual_norm"].as_f64().unwrap();
    v["residual_norm"] = serde_json::json!(r * 10.0 + 1e-12);
    let bad = tmp.path().join("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("stored_values"));

    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["alpha"] = serde_json::json!([4, 2]);
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("alpha"));

    std::fs::write(&bad, "{").unwrap();
    assert_eq!(code(&run(&["verify", bad.to_str().unwrap()])), 2);
}

#[test]
fn seek_lines_and_failures() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["seek", data("branch.json").to_str().unwrap(), "--m", "1", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m = 1: 24 start(s)"));
    let any = files(tmp.path()).into_iter().find(|(n, _)| n.starts_with("cert_")).unwrap();
    assert_eq!(code(&run(&["verify", tmp.path().join(any.0).to_str().unwrap()])), 0);

    let o = run(&["seek", data("branch_fixed_point.json").to_str().unwrap(), "--m", "2", "--seeds", "2"]);
    assert_eq!(code(&o), 1);
    let o = run(&["seek", data("branch.json").to_str().unwrap(), "--m", "0"]);
    assert_eq!(code(&o), 2);
    let o = run(&["seek", data("branch.json").to_str().unwrap(), "--m", "2", "--tol-res", "0"]);
    assert_eq!(code(&o), 2);
    // a budget too small for any start yields nothing
    let o = run(&["seek", data("branch.json").to_str().unwrap(), "--m", "2", "--budget", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("budget exhausted"));
}
