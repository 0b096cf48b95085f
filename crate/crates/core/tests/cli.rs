use std::path::PathBuf;
use std::process::{Command, Output};

use concordant::circuit::{Circuit, InitialState, LocalBasis, QuditRegister};
use concordant::exactnum::rational::ratio;
use concordant::generate::{cnot, g_exc1};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordant")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("concordant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_circuit(name: &str, gates: Vec<concordant::circuit::Gate>) -> String {
    let probs = vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(1, 5), ratio(4, 5)]];
    let initial = InitialState::new(LocalBasis::computational(&[2, 2]), probs).unwrap();
    let c = Circuit::new(QuditRegister::qubits(2), initial, gates).unwrap();
    let path = scratch(name);
    std::fs::write(&path, c.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lbf_on_exc1_is_a_herald() {
    let path = write_circuit("exc1.json", vec![g_exc1(vec![0, 1])]);
    let o = bin(&["lbf", "--circuit", &path, "--gate", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Local-basis ambiguity at time step"));
    let o = bin(&["simulate", "--circuit", &path, "--shots", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_shots_give_an_empty_report() {
    let path = write_circuit("cnot0.json", vec![cnot(vec![0, 1])]);
    let o = bin(&["simulate", "--circuit", &path, "--shots", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!({}));
}

#[test]
fn simulate_is_reproducible_across_thread_counts() {
    let path = write_circuit("cnot1.json", vec![cnot(vec![0, 1])]);
    let run = |threads: &str| stdout(&bin(&["--threads", threads, "simulate", "--circuit", &path, "--shots", "3000", "--seed", "7"]));
    let a = run("1");
    assert_eq!(a, run("4"));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    // |0> w.p. 1/3 on the control, |0> w.p. 1/5 on the target: P(00) = 1/15.
    assert_eq!(v["exact"]["00"], "1/15");
}

#[test]
fn marginals_and_update_rule() {
    let path = write_circuit("cnot2.json", vec![cnot(vec![0, 1])]);
    let o = bin(&["marginals", "--circuit", &path, "--measure", "1:Z"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Target reads 0 when (c, t) is (0, 0) or (1, 1): 1/15 + 8/15.
    assert_eq!(v["0"], "3/5");
    let rule = scratch("rule.txt");
    let o = bin(&["update-rule", "--circuit", &path, "-o", rule.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(rule).unwrap();
    assert!(text.contains("step 1 support [0, 1]"));
    assert!(text.contains("10 -> 11"));
}

#[test]
fn bad_measure_token_is_named() {
    let path = write_circuit("cnot3.json", vec![cnot(vec![0, 1])]);
    for spec in ["0:Z,7:Z", "0:Z,x:Z", "0", "1:/no/such/file.json"] {
        let o = bin(&["marginals", "--circuit", &path, "--measure", spec]);
        assert_eq!(o.status.code(), Some(1), "{spec}");
        let err = String::from_utf8_lossy(&o.stderr);
        let token = spec.split(',').next_back().unwrap();
        assert!(err.contains(token), "{spec}: {err}");
    }
}

#[test]
fn custom_basis_file() {
    let path = write_circuit("cnot4.json", vec![cnot(vec![0, 1])]);
    let basis = scratch("pm.json");
    std::fs::write(&basis, r#"[[["1/2","1/2"],["1/2","1/2"]],[["1/2","-1/2"],["-1/2","1/2"]]]"#).unwrap();
    let spec = format!("0:{}", basis.display());
    let o = bin(&["marginals", "--circuit", &path, "--measure", &spec]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["0"], "1/2");
    let o = bin(&["marginals", "--circuit", &path, "--measure", "0:X"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["0"], "1/2");
}

#[test]
fn gen_then_verify() {
    let out = scratch("gen5.json");
    let o = bin(&["gen", "--qudits", "2,2,2,2,2", "--seed", "11", "--gates", "10", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["verify", "--circuit", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("NOT"));
    assert!(text.contains("marginals: equal"));
    assert_eq!(bin(&["gen", "--qudits", "2,1"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
}
