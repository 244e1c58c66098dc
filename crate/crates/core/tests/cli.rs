use std::process::Command;

fn square_ice(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_square-ice")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_theorem_main_exits_zero() {
    let (code, out, _) = square_ice(&["verify", "--model", "dwbc", "--size", "3", "--mode", "omega6", "--checks", "theorem-main"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"verdict\":\"pass\""));
}

#[test]
fn verify_failure_exits_one() {
    let (code, out, _) = square_ice(&["verify", "--size", "3", "--checks", "theorem-main"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"verdict\":\"fail\""));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(square_ice(&["verify", "--checks", "theorem-main,nope"]).0, 2);
    assert_eq!(square_ice(&["verify", "--size", "0"]).0, 2);
    assert_eq!(square_ice(&["verify", "--trials", "0"]).0, 2);
    assert_eq!(square_ice(&["counts", "--sizes", "0..3"]).0, 2);
    let (code, _, err) = square_ice(&["partition", "--size", "2", "--mode", "omega6", "--eval", "x1=0, y1=1/x"]);
    assert_eq!(code, 2);
    assert!(err.contains("x1") && err.contains("y1"), "{err}");
}

#[test]
fn counts_agree_with_oracle() {
    let (code, out, _) = square_ice(&["counts", "--model", "dwbc", "--sizes", "1..5"]);
    assert_eq!(code, 0);
    let states: Vec<String> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .map(|v| {
            assert_eq!(v["agree"], true);
            v["states"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(states, ["1", "2", "7", "42", "429"]);
}

#[test]
fn partition_value_example() {
    let (code, out, _) = square_ice(&["partition", "--model", "dwbc", "--size", "2", "--mode", "omega6", "--eval", "all=1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!({"p": "18", "q": "0"}));
    assert_eq!(v["state_count"], 2);
}

#[test]
fn symbolic_partition_has_split_for_ht() {
    let (code, out, _) = square_ice(&["partition", "--model", "ht-even", "--size", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["mode"], "generic-a");
    assert!(v["split"]["or1"]["terms"].is_array());
    assert_eq!(v["split_labels"]["or1"], "↑");
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["verify", "--model", "dwbc", "--size", "4", "--mode", "omega6", "--checks", "theorem-main", "--seed", "9"];
    let (_, a, _) = square_ice(&args);
    let (_, b, _) = square_ice(&args);
    assert_eq!(a, b);
    let (_, a, _) = square_ice(&["partition", "--model", "dwbc", "--size", "3"]);
    let (_, b, _) = square_ice(&["partition", "--model", "dwbc", "--size", "3"]);
    assert_eq!(a, b);
}

#[test]
fn enumerate_streams_asms() {
    let (code, out, _) = square_ice(&["enumerate", "--model", "dwbc", "--size", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("\"asm\":[[0,1,0],[1,-1,1],[0,1,0]]"));
}

#[test]
fn out_file_is_written() {
    let path = std::env::temp_dir().join(format!("square-ice-counts-{}.json", std::process::id()));
    let (code, out, _) = square_ice(&["counts", "--sizes", "1,2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
    std::fs::remove_file(path).unwrap();
}
