use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truncwitt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("truncwitt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["khat", "--p", "3", "--f", "1", "--a", "2", "--q", "2"]).status.code(), Some(0));
    assert_eq!(run(&["khat", "--p", "3", "--a", "6", "--q", "1"]).status.code(), Some(3));
    assert_eq!(run(&["khat", "--p", "2", "--a", "3", "--q", "20", "--oracle"]).status.code(), Some(4));
    assert_eq!(run(&["khat", "--q", "1"]).status.code(), Some(2));
    let o = run(&["ktilde", "--p", "2", "--a", "4", "--deg", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty() && o.stdout.is_empty());
}

#[test]
fn e1_page_keeps_going_when_p_divides_a() {
    let o = run(&["e1", "--p", "2", "--a", "2,4", "--q", "1", "--hat"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["row"]["columns"][2]["exponent"], 8);
}

#[test]
fn witt_round_trip_through_files() {
    let x = r#"{"set":{"n":1,"points":[[1],[2]]},"ring":{"kind":"finite_field","p":2,"f":1},"components":[[[1],"1"]]}"#;
    let path = temp_file("x.json", x);
    let p = path.to_str().unwrap();
    let o = run(&["witt", "add", p, p]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"], serde_json::json!([[[2], "1"]]));
    // output re-parses as a vector
    let sum = temp_file("sum.json", &stdout(&o));
    let o = run(&["witt", "ghost", sum.to_str().unwrap(), "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("point"));

    let z = r#"{"set":{"n":2,"points":[[1,1],[1,2],[2,2],[2,4]]},"ring":{"kind":"integers"},"components":[[[1,2],"3"],[[2,4],"5"]]}"#;
    let zp = temp_file("z.json", z);
    let o = run(&["witt", "frob", zp.to_str().unwrap(), "--axis", "1", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["set"]["points"], serde_json::json!([[1, 2], [1, 4]]));

    let f3 = r#"{"set":{"n":1,"points":[[1],[2],[3],[4]]},"ring":{"kind":"finite_field","p":3,"f":1},"components":[[[1],"2"],[[3],"1"]]}"#;
    let fp = temp_file("f3.json", f3);
    let o = run(&["witt", "split", fp.to_str().unwrap(), "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn trunc_commands() {
    let o = run(&["trunc", "closure", "4,6", "3,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"], serde_json::json!([[2, 3], [3, 1], [4, 6]]));
    let bad = temp_file("bad.json", r#"{"n":1,"points":[[1],[6]]}"#);
    let o = run(&["trunc", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let good = temp_file("good.json", r#"{"n":1,"points":[[1],[2],[3],[6]]}"#);
    assert_eq!(run(&["trunc", "validate", good.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["zrank", "--a", "2,3,4", "--deg-max", "12", "--format", "csv"][..],
        &["tf", "--p", "3", "--a", "2", "--I", "1", "--s", "4", "--deg", "5"][..],
        &["euclid", "--s1", "123456", "--s2", "7890", "--a", "35"][..],
        &["e1", "--p", "5", "--f", "2", "--a", "2,3", "--q", "2", "--format", "table"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
