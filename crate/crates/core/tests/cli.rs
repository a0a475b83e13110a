mod common;

use common::kquiver;
use std::fs;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let o = kquiver(&full);
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn cartan_info_on_one_vertex() {
    let v = json(&[
        "cartan", "info", "--type", "A1", "--w", "2", "--height", "2",
    ]);
    let dims: Vec<i64> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, [0, 2, 0]);
}

#[test]
fn quiver_dims_on_a2() {
    let v = json(&["quiver", "dims", "--type", "A2", "--w", "1,1"]);
    let row = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["v"] == serde_json::json!([1, 1]))
        .unwrap()
        .clone();
    assert_eq!(row["dim"], 2);
}

#[test]
fn empty_graph_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("kq-empty-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.json");
    fs::write(&g, r#"{"vertices": [], "edges": []}"#).unwrap();
    let o = kquiver(&["cartan", "info", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty vertex list"));
}

#[test]
fn rep_verify_reports_five_families() {
    let o = kquiver(&["rep", "verify", "--type", "A2", "--w", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["rep", "verify", "--type", "A2", "--w", "1,0"]);
    assert_eq!(v["result"]["families"].as_array().unwrap().len(), 5);
    assert_eq!(v["passed"], true);
}

#[test]
fn corrupted_module_fails_with_counterexample() {
    let dir = std::env::temp_dir().join(format!("kq-mod-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let p = path.to_str().unwrap();
    assert!(
        kquiver(&["rep", "build", "--type", "A2", "--w", "1,0", "--json", p])
            .status
            .success()
    );
    let mut m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    m["generators"][0]["matrix"] = serde_json::json!([["-2"]]);
    fs::write(&path, m.to_string()).unwrap();
    let o = kquiver(&["rep", "verify", "--module-file", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn braid_differences_vanish() {
    let v = json(&[
        "braid", "eval", "--type", "A2", "--w", "1,0", "--word", "T1 T2 T1", "--minus", "T2 T1 T2",
    ]);
    assert_eq!(v["result"]["zero"], true);
    let v = json(&[
        "braid", "eval", "--type", "A1xA1", "--w", "1,1", "--word", "T1 T2", "--minus", "T2 T1",
    ]);
    assert_eq!(v["result"]["zero"], true);
    assert!(kquiver(&["braid", "verify", "--type", "A2", "--w", "1,1"])
        .status
        .success());
}

#[test]
fn ktheory_selected_check_passes() {
    let o = kquiver(&["ktheory", "verify", "--N", "4", "--checks", "lemma73-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = kquiver(&["ktheory", "verify", "--N", "3", "--checks", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_commutator_on_sl2() {
    let v = json(&[
        "rep", "eval", "--type", "A1", "--w", "2", "--term", "E1 F1", "--term", "-F1 E1",
    ]);
    let diag: Vec<&str> = v["result"]["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["matrix"][0][0].as_str().unwrap())
        .collect();
    assert_eq!(diag, ["-q - q^-1", "0", "q + q^-1"]);
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "ktheory", "verify", "--N", "3", "--seed", "7", "--json", "-",
    ];
    let a = kquiver(&args);
    let b = kquiver(&[
        "--jobs", "1", "ktheory", "verify", "--N", "3", "--seed", "7", "--json", "-",
    ]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}
