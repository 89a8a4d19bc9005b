use std::process::{Command, Output};

use permchar::verify::Report;

fn permchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permchar")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_hexad_action() {
    let o = permchar(&["decompose", "--family", "m22", "--subgroup", "hexad"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1a+21a+55a");
    let o = permchar(&["decompose", "--family", "m22/hexad"]);
    assert_eq!(stdout(&o).trim(), "1a+21a+55a");
}

#[test]
fn quaternion_indicators() {
    let o = permchar(&["fsind", "--family", "q8"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.ends_with(" 2 -1")), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(permchar(&["verify", "theorem-d", "--family", "c6"]).status.code(), Some(0));
    assert_eq!(permchar(&["bogus"]).status.code(), Some(2));
    assert_eq!(permchar(&["verify", "no-such-statement", "--family", "c6"]).status.code(), Some(2));
    let o = permchar(&["table"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(permchar(&["table", "--family", "nonsense:1:2:3"]).status.code(), Some(2));
}

#[test]
fn json_reports_round_trip_and_agree_with_text() {
    let args = ["verify", "theorem-a", "--family", "s4", "--jobs", "2"];
    let text = stdout(&permchar(&args));
    let o = permchar(&[&args[..], &["--json"]].concat());
    assert!(o.status.success());
    let reports: Vec<Report> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!reports.is_empty());
    let verdicts: Vec<&str> = text.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(verdicts.len(), reports.len());
    for (line, r) in verdicts.iter().zip(&reports) {
        assert_eq!(line.starts_with("PASS"), r.pass);
        assert!(r.pass);
    }
    let again: Vec<Report> = serde_json::from_str(&serde_json::to_string(&reports).unwrap()).unwrap();
    assert_eq!(again, reports);
}

#[test]
fn table_file_and_group_file() {
    let data = permchar::corpus::default_data_dir();
    let table = data.join("tables").join("a5.ctbl");
    let o = permchar(&["real-classes", "--family", "a5", "--table-file", table.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).split_whitespace().count(), 5);
    let grp = data.join("groups").join("m11.grp");
    let o = permchar(&["decompose", "--group-file", grp.to_str().unwrap(), "--subgroup", "sylow2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn reproduce_m11() {
    let o = permchar(&["reproduce", "--family", "m11"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
