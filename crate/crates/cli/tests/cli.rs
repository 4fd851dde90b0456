use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn jkres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jkres")).args(args).output().expect("runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = jkres(args);
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn file(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn nbc_basis_of_a2() {
    let (code, out, _) = run(&["nbc-basis", &file("a2.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "b1 = ((1,0),(0,1))\nb2 = ((1,0),(1,1))\n");
}

#[test]
fn nbc_basis_of_a3_has_six_elements() {
    let (code, out, _) = run(&["nbc-basis", &file("a3.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn inverse_laplace_of_a2() {
    let (code, out, _) = run(&["inverse-laplace", &file("a2.json"), "--delta-witness", "2,1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"h1 on chamber(1,2)"));
    assert!(lines.contains(&"h2 on chamber(2,1)"));
    assert_eq!(lines.iter().filter(|l| l.starts_with("0 on ")).count(), 4);
    let (_, at, _) = run(&["inverse-laplace", &file("a2.json"), "--point", "3,1"]);
    assert!(at.contains("value at (3,1): 1"), "{at}");
}

#[test]
fn residue_and_separation() {
    let (_, out, _) = run(&["jk-residue", &file("a2_terms.json")]);
    assert_eq!(out, "((1,0),(0,1)): 1\n((1,0),(1,1)): -1\n");
    let (_, out, _) = run(&["jk-residue", &file("a2.json"), "--exp-sign", "-1"]);
    assert_eq!(out, "((1,0),(0,1)): -h1\n((1,0),(1,1)): h1 - h2\n");
    let (_, out, _) = run(&["dual-check", &file("a3.json")]);
    assert!(out.ends_with("identity: true\n"));
}

#[test]
fn checks_pass() {
    for cmd in ["jump-check", "smoothness", "split", "wall-residue", "chambers", "separate"] {
        let (code, _, err) = run(&[cmd, &file("a2.json")]);
        assert_eq!(code, 0, "{cmd}: {err}");
    }
    let (_, out, _) = run(&["jump-check", &file("a3.json")]);
    assert!(out.contains("holds") && !out.contains("FAILS"));
    let (_, out, _) = run(&["smoothness", &file("a2.json")]);
    assert_eq!(out, "vanish order: 2\nclass: C^0\n");
}

#[test]
fn fourier_value() {
    let (code, out, _) = run(&["fourier", &file("a2.json"), "--gamma-witness", "2,1", "--point", "1,1"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("value at (1,1): 1\n"), "{out}");
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["split", &file("bad.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("span"), "{err}");
    let (code, _, err) = run(&["normalize", &file("broken.json")]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: parse error"), "{err}");
    let (code, _, _) = run(&["normalize", &file("missing.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["inverse-laplace", &file("a2.json"), "--delta-witness", "1,x"]);
    assert_eq!(code, 1);
}

#[test]
fn json_terms_round_trip() {
    let (code, out, _) = run(&["normalize", "--json", &file("a2.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let problem = serde_json::json!({"dim": 2, "vectors": ["1,0", "0,1", "1,1"], "expression": v["terms"]});
    let dir = std::env::temp_dir().join(format!("jkres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("terms.json");
    std::fs::write(&p, problem.to_string()).unwrap();
    let (code, again, _) = run(&["normalize", "--json", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let w: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(v["result"], w["result"]);
    assert_eq!(v["terms"], w["terms"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic() {
    for cmd in ["normalize", "inverse-laplace", "jump-check", "chambers"] {
        let a = jkres(&[cmd, "--json", &file("a3.json")]);
        let b = jkres(&[cmd, "--json", &file("a3.json")]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn plot_writes_svg() {
    let dir = std::env::temp_dir().join(format!("jkres-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("fan.svg");
    let (code, _, _) = run(&["plot", &file("a2.json"), "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&p).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains(">h1<"));
    let (code, _, _) = run(&["plot", &file("a3.json")]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_passes() {
    let o = Command::new(env!("CARGO_BIN_EXE_jkres")).arg("selftest").env("JKRES_SEED", "7").output().unwrap();
    assert!(o.status.success());
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("seed 7\n"));
    assert!(out.lines().skip(1).all(|l| l.ends_with("PASS")), "{out}");
}
