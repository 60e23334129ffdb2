use std::process::Command;

use serde_json::Value;

fn vlimit(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vlimit")).args(args).output().expect("binary runs");
    (out.status.success(), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn config(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("vlimit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn char_k2_order6() {
    let path = config("char.toml", "[char]\nk = 2\norder = 6\n");
    let (ok, out) = vlimit(&["char", "--config", &path, "--format", "csv"]);
    assert!(ok);
    let coeffs: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(coeffs, ["1", "0", "1", "1", "2", "2", "4"]);
}

#[test]
fn dims_show_saturation() {
    let (ok, out) = vlimit(&["dims", "--cutoff", "3", "--n-max", "6"]);
    assert!(ok);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["tool"], "vlimit");
    assert_eq!(doc["config_hash"].as_str().unwrap().len(), 64);
    let sat: Vec<i64> = doc["summary"]["saturation"].as_array().unwrap().iter().map(|x| x["saturation"].as_i64().unwrap()).collect();
    assert_eq!(sat, [1, 1, 2, 3]);
    let b3: Vec<i64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["n"] == 3)
        .map(|r| r["b_n"].as_i64().unwrap())
        .collect();
    assert_eq!(b3, [3, 5, 6, 6, 6, 6]);
}

#[test]
fn sc_methods_agree_on_s2() {
    let path = config("sc.toml", "n_min = 2\nn_max = 2\ncutoff = 2\n[sc]\nmax_total = 2\n");
    let (ok, out) = vlimit(&["sc", "--config", &path]);
    assert!(ok);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["summary"]["methods_agree"], true);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len() as i64, 3 * doc["summary"]["triples"].as_i64().unwrap());
    assert!(rows.iter().all(|r| r["value_exact"].is_string() && r["value_float"].is_number()));
}

#[test]
fn output_is_byte_identical() {
    let path = config("lim.toml", "n_max = 5\n[limit]\nmax_total = 3\n");
    let a = vlimit(&["limit", "--config", &path, "--jobs", "3"]);
    let b = vlimit(&["limit", "--config", &path, "--jobs", "1"]);
    assert!(a.0 && a == b);
}

#[test]
fn out_directory_and_json_config() {
    let path = config("w.json", r#"{"wick": {"insertions": [0, 0], "z": ["3", "1"]}}"#);
    let dir = std::env::temp_dir().join(format!("vlimit-cli-out-{}", std::process::id()));
    let (ok, stdout) = vlimit(&["wick", "--config", &path, "--out", dir.to_str().unwrap()]);
    assert!(ok && stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("wick.json")).unwrap()).unwrap();
    assert_eq!(doc["summary"]["value_at_z"]["exact"], "1/4");
    assert_eq!(doc["summary"]["mode_mismatches"], 0);
}

#[test]
fn bad_config_gives_error_object() {
    let (ok, out) = vlimit(&["dims", "--n-min", "5", "--n-max", "3"]);
    assert!(!ok);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["error"]["kind"], "config");
    let path = config("bad.toml", "cutof = 3\n");
    let (ok, out) = vlimit(&["dims", "--config", &path]);
    assert!(!ok);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], "config");
}
