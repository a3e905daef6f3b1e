use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use symchar::charvalues::character_value;
use symchar::Partition;

fn symchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_line(text: &str) -> Value {
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn value_commands() {
    let o = symchar(&["eval", "--lambda", "2,1", "--mu", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");
    assert_eq!(stdout(&symchar(&["degree", "--lambda", "4,3,1"])).trim(), "70");
    assert_eq!(stdout(&symchar(&["xi", "--n", "4", "--nu", "2,2"])).trim(), "1,-1,-1,1");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(symchar(&["eval", "--lambda", "2,1", "--mu", "4"]).status.code(), Some(2));
    assert_eq!(symchar(&["eval", "--lambda", "1,2", "--mu", "3"]).status.code(), Some(2));
    assert_eq!(symchar(&["degree"]).status.code(), Some(2));
    assert_eq!(symchar(&["table", "--n", "20"]).status.code(), Some(2));
    assert_eq!(
        symchar(&["identify-char", "--n", "3", "--simulate", "2,1", "--oracle", "external"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn identify_char_simulated() {
    let o = symchar(&["identify-char", "--n", "8", "--simulate", "4,3,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("RESULT 4,3,1"));
    let v = json_line(&text);
    assert_eq!(v["result"], "4,3,1");
    assert_eq!(v["queries"], 6);
    assert_eq!(v["log"].as_array().unwrap().len(), 6);
    assert_eq!(v["log"][0]["cycle_type"], "1,1,1,1,1,1,1,1");
    assert_eq!(v["log"][0]["value"], 70);

    let o = symchar(&["identify-char", "--n", "3", "--simulate-sum", "2,1+3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("RESULT NOT_IRREDUCIBLE"));
    assert_eq!(json_line(&text)["irreducible"], false);
}

#[test]
fn identify_char_from_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s6.csv");
    let path_str = path.to_str().unwrap();
    assert!(symchar(&["table", "--n", "6", "--csv", path_str]).status.success());
    for row in ["3,2,1", "4,1,1", "2,2,2"] {
        let o = symchar(&["identify-char", "--n", "6", "--table-file", path_str, "--row", row]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).lines().next().unwrap(), format!("RESULT {row}"));
    }
}

#[test]
fn table_json_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    assert!(symchar(&["table", "--n", "4", "--json", path.to_str().unwrap()]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["values"][0][0], 1);
}

fn loopback(lambda: &str, corrupt_after: Option<usize>) -> (Option<i32>, String) {
    let lambda: Partition = lambda.parse().unwrap();
    let n = lambda.weight().to_string();
    let mut child = Command::new(env!("CARGO_BIN_EXE_symchar"))
        .args(["identify-char", "--n", &n, "--oracle", "external"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let mut to_tool = child.stdin.take().unwrap();
    let from_tool = BufReader::new(child.stdout.take().unwrap());
    let mut transcript = String::new();
    let mut answered = 0;
    for line in from_tool.lines() {
        let line = line.unwrap();
        transcript.push_str(&line);
        transcript.push('\n');
        let Some(mu) = line.strip_prefix("Q ") else {
            continue;
        };
        if corrupt_after == Some(answered) {
            let _ = writeln!(to_tool, "A not-a-number");
            continue;
        }
        let value = character_value(&lambda, &mu.parse().unwrap()).unwrap();
        writeln!(to_tool, "A {value}").unwrap();
        to_tool.flush().unwrap();
        answered += 1;
    }
    (child.wait().unwrap().code(), transcript)
}

#[test]
fn external_oracle_loopback() {
    for lambda in symchar::partitions::enumerate_partitions(5) {
        let (code, transcript) = loopback(&lambda.to_string(), None);
        assert_eq!(code, Some(0), "{transcript}");
        let result = transcript.lines().find(|l| l.starts_with("RESULT ")).unwrap();
        assert_eq!(result, format!("RESULT {lambda}"));
        let summary = json_line(&transcript);
        let queries = transcript.lines().filter(|l| l.starts_with("Q ")).count();
        assert_eq!(summary["queries"], queries);
    }
}

#[test]
fn external_oracle_protocol_error() {
    let (code, _) = loopback("3,2", Some(1));
    assert_eq!(code, Some(3));
}

#[test]
fn identify_class_command() {
    let o = symchar(&["identify-class", "--n", "6", "--xi", "1,1,-2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("2,2,1,1"));
    assert_eq!(json_line(&text)["class"], "2,2,1,1");
    let o = symchar(&["identify-class", "--n", "6", "--xi", "-1,1,-1"]);
    assert_eq!(stdout(&o).lines().next(), Some("6"));
    assert_eq!(json_line(&stdout(&o))["xi"][0], -1);
    assert_eq!(symchar(&["identify-class", "--n", "6", "--xi", "1,1"]).status.code(), Some(2));
}

#[test]
fn table_game_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("game.json");
    let o = symchar(&["table-game", "--n", "9", "--seed", "4", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["n", "p_n", "seed", "uncovered", "bound", "fraction", "steps", "ok"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["n"], 9);
    assert_eq!(v["p_n"], 30);
    assert_eq!(v["seed"], 4);
    assert_eq!(v["ok"], true);
    assert_eq!(v["bound"], 609);
    let steps = v["steps"].as_object().unwrap();
    let total: u64 = steps.values().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(Some(total), v["uncovered"].as_u64());
    assert!(v["fraction"].as_f64().unwrap() <= 609.0 / 900.0);

    let again = symchar(&["table-game", "--n", "9", "--seed", "4"]);
    assert_eq!(stdout(&again), stdout(&o));
    assert_eq!(symchar(&["table-game", "--n", "6"]).status.code(), Some(1));
}

#[test]
fn stats_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stats.csv");
    let o = symchar(&[
        "stats", "--n-from", "5", "--n-to", "8", "--seeds", "2", "--csv", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["n", "p_n", "uncovered", "bound", "fraction", "seed"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    // n = 6 is skipped.
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[0] != "6"));
}

#[test]
fn verify_commands() {
    let o = symchar(&["verify", "sign-partitions", "--max-n", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=6: 5 sign partitions, qualifying (3,2,1) (6)"));
    let o = symchar(&["verify", "hook-degrees", "--max-n", "14"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=12: known exception"));
    assert!(symchar(&["verify", "orthogonality", "--max-n", "10"]).status.success());
    assert_eq!(symchar(&["verify", "orthogonality", "--max-n", "40"]).status.code(), Some(2));
}
