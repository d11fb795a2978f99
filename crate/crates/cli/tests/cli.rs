use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coxrank::classify::{system_type, SphericalType};
use coxrank::io::read_cox;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn coxrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxrank")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn spectrum_summary_line() {
    let o = coxrank(&["spectrum", path_str(&data("a1_d23_d26.cox"))]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("k=1 l=1 spectrum=[4,6]"));
}

#[test]
fn spectrum_json_has_schema() {
    let o = coxrank(&["spectrum", "--json", path_str(&data("c3_d23.cox"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["spectrum"], serde_json::json!([5, 6]));
    assert_eq!(v["max_script"].as_array().unwrap().len(), 1);
}

#[test]
fn blowup_then_blowdown() {
    let dir = tempfile::tempdir().unwrap();
    let up = dir.path().join("up.cox");
    let o = coxrank(&["blowup", path_str(&data("c3_d23.cox")), "--base", "c1,c2,c3", "--out", path_str(&up)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = read_cox(&up).unwrap();
    assert_eq!(m.rank(), 6);
    let mut want = vec![SphericalType::b(3).canonical(), SphericalType::a(1), SphericalType::d2(3)];
    want.sort();
    assert_eq!(system_type(&m).unwrap(), want);

    let down = dir.path().join("down.cox");
    let o = coxrank(&["blowdown", path_str(&up), "--base", "d1,d2", "--out", path_str(&down)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut want = vec![SphericalType::b(3).canonical(), SphericalType::d2(6)];
    want.sort();
    assert_eq!(system_type(&read_cox(&down).unwrap()).unwrap(), want);

    for rec in [up.with_extension("json"), down.with_extension("json")] {
        let o = coxrank(&["verify", path_str(&rec)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn tampered_record_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.cox");
    let o = coxrank(&["blowdown", path_str(&data("pendant.cox")), "--base", "x,y", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec = out.with_extension("json");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let img = v[1]["backward"]["x"].as_str().unwrap().to_string();
    v[1]["backward"]["x"] = serde_json::Value::String(format!("{img} x"));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = coxrank(&["verify", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CERTIFICATION_FAILED"));
}

#[test]
fn user_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.cox");
    std::fs::write(&f, "coxeter v1\ngen x y\nedge x y 1\n").unwrap();
    let o = coxrank(&["classify", path_str(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("BAD_M") && err.contains("line 3"), "{err}");

    let o = coxrank(&["blowup", path_str(&data("c3_d23.cox")), "--base", "d1,d2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = coxrank(&["blowdown", path_str(&data("a2.cox")), "--base", "x1,x2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_and_bases_text() {
    let o = coxrank(&["classify", path_str(&data("c3_d23.cox"))]);
    assert_eq!(stdout(&o), "c1,c2,c3: C3\nd1,d2: D2(3) (= A2)\n");
    let o = coxrank(&["bases", path_str(&data("c3_d23.cox"))]);
    assert_eq!(stdout(&o), "c1,c2,c3 C3 four_end=c3\nd1,d2 D2(3) split_ends=d1,d2\n");
}

#[test]
fn dot_views() {
    let o = coxrank(&["dot", path_str(&data("a2.cox")), "--view", "c"]);
    assert_eq!(stdout(&o).matches("--").count(), 1);
    let o = coxrank(&["dot", path_str(&data("c3_d23.cox")), "--view", "p"]);
    assert_eq!(stdout(&o).matches("--").count(), 10);
    let o = coxrank(&["dot", path_str(&data("a2.cox")), "--view", "nope"]);
    assert!(!o.status.success());
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["eligibility", "spectrum"] {
        let a = coxrank(&[cmd, "--json", path_str(&data("a1_d23_d26.cox"))]);
        let b = coxrank(&[cmd, "--json", path_str(&data("a1_d23_d26.cox"))]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn twist_command() {
    // t hangs off y; twisting by the longest element of {x,y} moves it to x.
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t.cox");
    std::fs::write(&f, "coxeter v1\ngen x y t\nedge x y 3\nedge y t 3\n").unwrap();
    let o = coxrank(&["twist", path_str(&f), "--base", "x,y", "--s1", "x,y", "--s2", "x,y,t"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "coxeter v1\ngen x y t!1\nedge x y 3\nedge x t!1 3\n");
}
