use std::process::{Command, Output};

fn rfsms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfsms")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rfsms(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails_with(args: &[&str], code: i32) -> String {
    let out = rfsms(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "));
    err
}

#[test]
fn classify_family_b() {
    assert_eq!(stdout(&["classify", "A:5/f=1/t=2"]), "valid, family (b), simples=5, r=5\n");
    assert!(stdout(&["classify", "A:4/f=1/t=2"]).starts_with("invalid, "));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["classify", "D:6/f=1/3/t=1", "--format", "json"])).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["type"]["frequency"], "1/3");
    assert_eq!(json["simples"], "2");
}

#[test]
fn orbit_counts() {
    assert_eq!(stdout(&["orbits", "--type", "D:4/f=1/t=1"]).lines().next(), Some("2 orbits"));
    assert_eq!(stdout(&["orbits", "--type", "A:3/f=1/t=2"]).lines().next(), Some("1 orbit"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["orbits", "--type", "A:5/f=1/t=2", "--format", "json"])).unwrap();
    assert_eq!(json["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn worked_mutation() {
    let out = stdout(&["mutate", "--algebra", "nakayama:4:5", "--sms", "simples", "--at", "2,3", "--allow-composite"]);
    assert_eq!(out, "M(1,3)\t1/2/3\nM(2,4)\t2/3/4/1\nM(3,4)\t3/4/1/2\nM(4,1)\t4\n");
    let back = stdout(&["mutate", "--algebra", "nakayama:4:5", "--sms", "1:3,2:4,3:4,4:1", "--at", "2,3", "--dir", "right", "--allow-composite"]);
    assert_eq!(back, "M(1,1)\t1\nM(2,1)\t2\nM(3,1)\t3\nM(4,1)\t4\n");
}

#[test]
fn composite_site_needs_the_flag() {
    fails_with(&["mutate", "--algebra", "nakayama:4:5", "--at", "2,3"], 2);
    fails_with(&["mutate", "--algebra", "nakayama:4:3", "--at", "1", "--allow-composite"], 2);
    assert_eq!(stdout(&["mutate", "--algebra", "nakayama:4:3", "--at", "1,3"]).lines().count(), 4);
}

#[test]
fn hom_golden_files() {
    for (ty, file) in [
        ("A:2/f=1/t=1", include_str!("golden/hom_a2_f1_t1.tsv")),
        ("A:2/f=1/2/t=1", include_str!("golden/hom_a2_f1_2_t1.tsv")),
        ("A:3/f=1/t=2", include_str!("golden/hom_a3_f1_t2.tsv")),
        ("D:4/f=1/t=1", include_str!("golden/hom_d4_f1_t1.tsv")),
    ] {
        assert_eq!(stdout(&["hom", "--type", ty]), file, "{ty}");
    }
}

#[test]
fn enumerate_and_sms_counts() {
    assert_eq!(stdout(&["enumerate", "--type", "A:4/f=1/t=1"]).lines().count(), 14);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["enumerate", "--type", "A:3/f=1/t=2", "--format", "json"])).unwrap();
    assert_eq!(json["count"], "3");
    assert_eq!(json["configurations"][0]["vertices"], serde_json::json!([[0, 1], [0, 3], [1, 2]]));
    assert_eq!(stdout(&["sms", "--algebra", "nakayama:4:5"]), "14 sms\n");
    assert_eq!(stdout(&["sms", "--algebra", "nakayama:2:3", "--list"]).lines().count(), 3);
    assert_eq!(stdout(&["brauer", "--edges", "4"]), "3\n");
    assert_eq!(stdout(&["brauer", "--edges", "1", "--multiplicity", "3"]), "1\n");
}

#[test]
fn quiver_exports_are_deterministic() {
    let args = ["quiver", "--algebra", "nakayama:3:4", "--start", "simples", "--dir", "left", "--out", "dot"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(a.starts_with("digraph"));
    let single = stdout(&["quiver", "--algebra", "nakayama:1:2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&single).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 1);
    assert!(json["arrows"].as_array().unwrap().is_empty());
}

#[test]
fn errors_are_one_line() {
    fails_with(&["classify"], 2);
    fails_with(&["orbits", "--type", "Z:4/f=1/t=1"], 2);
    fails_with(&["enumerate", "--type", "A:4/f=1/t=2"], 2);
    fails_with(&["hom", "--type", "A:2/f=1/t=1", "--format", "dot"], 2);
    fails_with(&["mutate", "--algebra", "nakayama:4:5", "--at", "7"], 2);
    fails_with(&["mutate", "--algebra", "nakayama:4:5", "--sms", "1:1,2:1", "--at", "1"], 2);
    fails_with(&["sms", "--algebra", "nakayama:0:5"], 2);
    fails_with(&["--threads", "0", "brauer", "--edges", "2"], 2);
    let err = fails_with(&["sms", "--algebra", "nakayama:4:9"], 1);
    assert!(err.starts_with("error: compute: bound exceeded"));
    fails_with(&["quiver", "--algebra", "nakayama:4:5", "--max-depth", "1"], 1);
}

#[test]
fn check_runs_selected_criteria() {
    let out = stdout(&["--threads", "2", "check", "--only", "1,2,4"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS criterion")).count(), 3);
    assert_eq!(out.lines().last(), Some("3 of 3 criteria passed"));
    fails_with(&["check", "--only", "11"], 2);
}
