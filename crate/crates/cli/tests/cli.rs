use std::fs;
use std::process::{Command, Output};

fn egz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egz"))
        .args(args)
        .env_remove("EGZ_THREADS")
        .output()
        .expect("failed to run egz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_exact() {
    let o = egz(&["compute", "--ring", "3", "--m", "2", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("Exact 6\n"), "{out}");
    assert!(out.contains("witness: {0:1, 1:2, 2:2}"));
    assert!(out.contains("method: FrontierExhaustive"));
}

#[test]
fn compute_product_ring() {
    let o = egz(&["compute", "--ring", "2,2", "--m", "1", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Exact 5\n"));
}

#[test]
fn davenport() {
    let o = egz(&["davenport", "--ring", "9", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Exact 9\n"));
}

#[test]
fn infinite_reports_obstruction() {
    let o = egz(&["compute", "--ring", "10", "--m", "2", "--t", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("Infinite\n"));
    assert!(out.contains("C(8,2) = 28 ≡ 8 (mod 10)"), "{out}");
    assert!(out.contains("witness: {1:8}"));
}

#[test]
fn low_cap_is_inconclusive() {
    let o = egz(&["compute", "--ring", "8", "--m", "2", "--t", "16", "--cap", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("AtLeast 21\n"));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(egz(&["compute", "--ring", "0", "--m", "1", "--t", "1"]).status.code(), Some(1));
    assert_eq!(egz(&["compute", "--ring", "3", "--m", "4", "--t", "2"]).status.code(), Some(1));
    assert_eq!(egz(&["lconst", "--n", "1", "--m", "2"]).status.code(), Some(1));
    assert_eq!(egz(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(egz(&["--help"]).status.code(), Some(0));
}

#[test]
fn lconst() {
    let o = egz(&["lconst", "--n", "25", "--m", "5"]);
    assert_eq!(stdout(&o), "125\n");
    let o = egz(&["--json", "lconst", "--n", "9", "--m", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["L"], 9);
}

#[test]
fn smembers() {
    let o = egz(&["smembers", "--k", "4", "--m", "2", "--max", "20"]);
    assert_eq!(stdout(&o), "8\n9\n16\n17\n");
}

#[test]
fn newton_girard() {
    let o = egz(&["newton-girard", "--m", "4"]);
    let out = stdout(&o);
    assert!(out.contains("24·e_4 = p1^4 - 6·p1^2·p2 + 3·p2^2 + 8·p1·p3 - 6·p4"), "{out}");
    assert!(out.contains("t(4) = 3: {p1, p2, p4}"));
}

#[test]
fn certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let o = egz(&["compute", "--ring", "5", "--m", "2", "--t", "5", "--cert", p]);
    assert_eq!(o.status.code(), Some(0));

    let o = egz(&["verify-cert", p, "--rerun"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("certificate verified"));

    let mut cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    cert["outcome"]["value"] = serde_json::json!(9);
    fs::write(&path, cert.to_string()).unwrap();
    let o = egz(&["verify-cert", p, "--rerun"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("certificate REJECTED"));
}

#[test]
fn json_is_independent_of_thread_count() {
    let args = ["compute", "--ring", "9", "--m", "2", "--t", "9", "--json"];
    let one = egz(&[&args[..], &["--threads", "1"]].concat());
    let three = egz(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, three.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["outcome"]["value"], 17);
}

#[test]
fn brink_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let linear: Vec<_> = (0..6).map(|i| serde_json::json!({ "coeff": 1, "vars": [i] })).collect();
    let mut pairs = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            pairs.push(serde_json::json!({ "coeff": 1, "vars": [i, j] }));
        }
    }
    let inst = serde_json::json!({
        "n": 6,
        "p": 2,
        "system": [{ "poly": pairs, "v": 1 }, { "poly": linear, "v": 2 }],
    });
    fs::write(&path, inst.to_string()).unwrap();
    let o = egz(&["brink", "--instance", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("solutions: 16"), "{out}");
    assert!(out.contains("degree condition: holds (5 < 6)"));
}

#[test]
fn check_theorems_filter() {
    let o = egz(&["check-theorems", "--filter", "egz-3-3-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn bound_query() {
    let o = egz(&["bound", "--query", r#"{"theorem":"degree-three-upper","k":5}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Upper 17\n"));
    assert_eq!(egz(&["bound", "--query", "{}"]).status.code(), Some(1));
}
