use std::path::Path;
use std::process::{Command, Output};

use cstre::io::reports_from_json;
use serde_json::Value;

fn cstre_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstre"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const BELL_MIXTURE: &str = "# 0.7 |phi+><phi+| + 0.3 I/4
dim 4
0.425 0 0 0.35
0 0.075 0 0
0 0 0.075 0
0.35 0 0 0.425
";

#[test]
fn w3_table_rows() {
    let o = cstre_cmd(&["table", "--family", "w", "--nqubits", "3", "--criteria", "cstre,ar,vn,ppt"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let reports = reports_from_json(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 8);
    let want = [0.1547, 0.2, 0.5695, 0.1547, 0.3509, 0.4286, 0.7645, 0.1547];
    for (r, w) in reports.iter().zip(want) {
        assert!((r.x_star - w).abs() < 1e-3, "{} {}: {}", r.partition, r.criterion, r.x_star);
    }
}

#[test]
fn ghz4_last_cut() {
    let o = cstre_cmd(&["table", "--family", "ghz", "--nqubits", "4", "--partitions", "ABC:D"]);
    assert_eq!(code(&o), 0);
    let reports = reports_from_json(&stdout(&o)).unwrap();
    let x = |c: &str| reports.iter().find(|r| r.criterion.to_string() == c).unwrap().x_star;
    assert!((x("cstre") - 0.375).abs() < 1e-3);
    assert!((x("ar") - 0.375).abs() < 1e-3);
    assert!((x("ppt") - 0.0909).abs() < 1e-3);
}

#[test]
fn index_partitions_match_letters() {
    let a = cstre_cmd(&["table", "--family", "w", "--nqubits", "3", "--partition", "0:1,2", "--criteria", "ppt"]);
    let b = cstre_cmd(&["table", "--family", "w", "--nqubits", "3", "--partition", "A:BC", "--criteria", "ppt"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn empty_criteria_is_a_usage_error() {
    assert_eq!(code(&cstre_cmd(&["table", "--criteria", ""])), 64);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&cstre_cmd(&["frobnicate"])), 64);
    assert_eq!(code(&cstre_cmd(&["table", "--nqubits", "1"])), 64);
    assert_eq!(code(&cstre_cmd(&["table", "--nqubits", "3", "--partitions", "A:B"])), 64);
    assert_eq!(code(&cstre_cmd(&["curve", "--family", "w", "--nqubits", "3", "--xgrid", "0:2:0.1"])), 64);
    assert_eq!(code(&cstre_cmd(&["entropy", "--family", "w", "--x", "1.5"])), 64);
    assert_eq!(code(&cstre_cmd(&["entropy"])), 64);
    assert_eq!(code(&cstre_cmd(&["entropy", "--builtin", "iso-entangled", "--q", "-1"])), 64);
    assert_eq!(code(&cstre_cmd(&["--help"])), 0);
    assert_eq!(code(&cstre_cmd(&["--version"])), 0);
}

#[test]
fn short_schedule_exits_two_with_output() {
    let o = cstre_cmd(&[
        "table", "--family", "w", "--nqubits", "3", "--partitions", "A:BC", "--criteria", "cstre", "--qgrid", "2:5:2",
        "--format", "csv",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains(",summary,,"));
    assert!(stdout(&o).trim_end().ends_with("false"));
}

#[test]
fn curve_at_q_one_is_von_neumann() {
    let base = ["curve", "--family", "w", "--nqubits", "3", "--xgrid", "0:1:0.05", "--q", "1"];
    let c: Value = serde_json::from_str(&stdout(&cstre_cmd(&[&base[..], &["--criterion", "cstre"]].concat()))).unwrap();
    let v: Value = serde_json::from_str(&stdout(&cstre_cmd(&[&base[..], &["--criterion", "vn"]].concat()))).unwrap();
    let (c, v) = (c.as_array().unwrap(), v.as_array().unwrap());
    assert_eq!(c.len(), 21);
    for (a, b) in c.iter().zip(v) {
        let (a, b) = (a["value"].as_f64().unwrap(), b["value"].as_f64().unwrap());
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn curve_csv_shape() {
    let o = cstre_cmd(&["curve", "--family", "ghz", "--nqubits", "3", "--xgrid", "0:1:0.25", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,value");
    assert_eq!(lines.len(), 6);
}

#[test]
fn implicit_endpoints() {
    let o = cstre_cmd(&["implicit", "--family", "w", "--nqubits", "3", "--partition", "A:BC", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let last = |c: &str| -> f64 {
        let line = text.lines().rfind(|l| l.starts_with(&format!("{c},"))).unwrap();
        line.rsplit(',').next().unwrap().parse().unwrap()
    };
    assert!((last("cstre") - 0.1547).abs() < 1e-3);
    assert!((last("ar") - 0.2).abs() < 1e-3);

    let o = cstre_cmd(&["implicit", "--family", "w", "--nqubits", "4", "--partition", "A:BCD", "--criteria", "cstre,ar"]);
    let pts: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = |c: &str| {
        pts.as_array().unwrap().iter().rfind(|p| p["criterion"] == c).unwrap()["x_star"].as_f64().unwrap()
    };
    assert!((last("cstre") - 0.1124).abs() < 1e-3);
    assert!((last("ar") - 0.1666).abs() < 1e-3);
}

#[test]
fn entropy_of_isospectral_state() {
    let o = cstre_cmd(&["entropy", "--builtin", "iso-entangled", "--partition", "A:B", "--q", "2"]);
    assert_eq!(code(&o), 0);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v + 0.13807).abs() < 1e-5);

    let o = cstre_cmd(&["entropy", "--builtin", "iso-entangled", "--verbose", "--format", "json"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["gammas"].as_array().unwrap().len(), 4);
    assert!(j["q_tilde"].as_f64().unwrap() > 1.0);
}

#[test]
fn ar_equals_cstre_with_maximally_mixed_marginal() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bell.txt", BELL_MIXTURE);
    for q in ["0.5", "2", "4"] {
        let get = |c: &str| -> f64 {
            stdout(&cstre_cmd(&["entropy", "--input", &f, "--criterion", c, "--q", q])).trim().parse().unwrap()
        };
        assert!((get("ar") - get("cstre")).abs() < 1e-9);
    }
}

#[test]
fn malformed_matrix_names_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "dim 2\n0.5 0\n0 0.5x\n");
    let o = cstre_cmd(&["entropy", "--input", &f]);
    assert_eq!(code(&o), 65);
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));

    let f = write(dir.path(), "herm.txt", "dim 4\n0.25 1 0 0\n0 0.25 0 0\n0 0 0.25 0\n0 0 0 0.25\n");
    assert_eq!(code(&cstre_cmd(&["entropy", "--input", &f])), 65);

    let f = write(dir.path(), "odd.txt", "dim 3\n1 0 0\n0 0 0\n0 0 0\n");
    assert_eq!(code(&cstre_cmd(&["entropy", "--input", &f])), 65);

    assert_eq!(code(&cstre_cmd(&["entropy", "--input", "/nonexistent/rho.txt"])), 1);
}

#[test]
fn check_verdicts() {
    let verdict = |args: &[&str]| {
        let o = cstre_cmd(&[&["check"], args].concat());
        assert_eq!(code(&o), 0);
        stdout(&o).trim().to_string()
    };
    assert_eq!(verdict(&["--builtin", "iso-entangled", "--q", "2"]), "ENTANGLED");
    assert_eq!(verdict(&["--builtin", "iso-separable", "--q", "2"]), "INCONCLUSIVE");
    assert_eq!(verdict(&["--builtin", "iso-separable", "--criterion", "ppt"]), "SEPARABLE");
    assert_eq!(verdict(&["--family", "w", "--nqubits", "3", "--x", "0.1", "--criterion", "ppt"]), "INCONCLUSIVE");
    assert_eq!(verdict(&["--family", "w", "--nqubits", "3", "--x", "0.9"]), "ENTANGLED");
}

#[test]
fn isospectral_report() {
    let o = cstre_cmd(&["isospectral", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,entangled,separable");
    assert_eq!(lines.len(), 8);
    let j: Value = serde_json::from_str(&stdout(&cstre_cmd(&["isospectral", "--format", "json"]))).unwrap();
    assert_eq!(j["entangled_detected"], true);
    assert_eq!(j["separable_consistent"], true);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = cstre_cmd(&[
            "table", "--family", "ghz", "--nqubits", "3", "--qgrid", "1:800:8", "--output", p.to_str().unwrap(),
        ]);
        assert!(o.stdout.is_empty());
        std::fs::read_to_string(p).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let back = reports_from_json(&a).unwrap();
    assert_eq!(cstre::io::reports_to_json(&back).unwrap(), a);
    assert!(!a.contains('\r'));
}
