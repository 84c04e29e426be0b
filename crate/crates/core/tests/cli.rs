use std::process::Command;

use qtorus::cli::{render_verify, Format};
use qtorus::verify::{HomFailure, HomReport, VerifyReport, VerifySpec};
use qtorus::ExponentWindow;

fn qtorus(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn act_prints_canonical_poly() {
    let o = qtorus(&["--l", "3", "act", "E[2,3]*s", "x3(0,0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x2(1,0)\n");
}

#[test]
fn act_in_root_of_unity_mode() {
    let o = qtorus(&["--q", "root:4", "act", "E[1,2]*s^-1*t^-1", "x2(1,1)"]);
    assert_eq!(stdout(&o), "-q\n");
}

#[test]
fn json_output_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qtorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = qtorus(&[
        "report",
        "--mu",
        "0",
        "--max-k",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "reducible_consistent");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    for args in [
        vec!["act", "E[0,1]", "1"],
        vec!["act", "E[1,2]", "x2(0"],
        vec!["--q", "root:0", "verify"],
        vec!["--mu", "q^", "verify"],
        vec!["--window", "1:0", "report"],
        vec!["hwv", "--kvec", "1,1"],
        vec![],
    ] {
        let o = qtorus(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn sampled_verify_exits_zero() {
    let o = qtorus(&[
        "--l",
        "4",
        "--q",
        "rational:2/3",
        "--samples",
        "40",
        "--seed",
        "9",
        "verify",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn failing_report_renders_witnesses() {
    let w = ExponentWindow::centered(0);
    let r = VerifyReport {
        l: 2,
        q: "generic".into(),
        mu: "1".into(),
        spec: VerifySpec::exhaustive(w, 1),
        axioms: Vec::new(),
        homomorphism: HomReport {
            name: "homomorphism".into(),
            checked: 1,
            failures: vec![HomFailure {
                x: "E[1,2]".into(),
                y: "E[2,1]".into(),
                p: "1".into(),
                lhs: "1".into(),
                rhs: "0".into(),
            }],
        },
    };
    assert!(!r.passed());
    let text = render_verify(&r, Format::Text);
    assert!(text.contains("FAIL x=E[1,2] y=E[2,1] p=1"));
    assert!(text.ends_with("FAIL\n"));
    let json: serde_json::Value = serde_json::from_str(&render_verify(&r, Format::Json)).unwrap();
    assert_eq!(json["homomorphism"]["failures"][0]["lhs"], "1");
}
