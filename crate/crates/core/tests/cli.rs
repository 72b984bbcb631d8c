use std::io::Write;
use std::process::{Command, Stdio};

fn bhsets(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bhsets"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn certify_and_margin() {
    assert_eq!(
        bhsets(&["certify", "--h", "2"], "[1, 3, 9]"),
        (0, "{\"delta\":\"2\",\"radius\":\"1/2\",\"squared\":false}\n".into())
    );
    let g = r#"{"backend": "gaussian", "elements": ["0", "3+4i", "1-1i"]}"#;
    assert_eq!(
        bhsets(&["margin", "--h", "1"], g),
        (0, "{\"delta\":\"2\",\"radius\":\"1/2\",\"squared\":true}\n".into())
    );
    assert_eq!(bhsets(&["margin", "--h", "2"], "[1, 2, 3]").0, 1);
    assert_eq!(bhsets(&["--backend", "float", "certify", "--h", "2"], "[1, 3, 9]").0, 2);
}

#[test]
fn repair_output() {
    let expected = "{\"c\":[\"37/36\",\"25/12\",\"13/4\"],\"lambda\":\"1/36\",\"delta_u\":\"1\",\"verified\":true}\n";
    assert_eq!(
        bhsets(&["repair", "--h", "2", "--epsilon", "1/2"], "[1, 2, 3]"),
        (0, expected.into())
    );
    assert_eq!(
        bhsets(&["--oracle", "repair", "--h", "2", "--epsilon", "1/2"], "[1, 2, 3]"),
        (0, expected.into())
    );
    assert_eq!(bhsets(&["repair", "--h", "2", "--epsilon", "0"], "[1, 2, 3]").0, 2);
}

#[test]
fn profile_json_and_csv() {
    let (code, out) = bhsets(&["profile", "--h", "2"], "[1, 2, 3]");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["g_max"], 2);
    assert_eq!(v["sums"][2]["value"], "4");
    assert_eq!(v["sums"][2]["reps"], serde_json::json!([[1, 0, 1], [0, 2, 0]]));
    assert_eq!(bhsets(&["--oracle", "profile", "--h", "2"], "[1, 2, 3]").1, out);

    let (_, csv) = bhsets(&["--format", "csv", "profile", "--h", "2"], "[1, 2, 3]");
    assert_eq!(csv, "value,multiplicity\n2,1\n3,1\n4,2\n5,1\n6,1\n");
}

#[test]
fn streams_several_documents() {
    let (code, out) = bhsets(&["check", "--h", "2"], "[1, 3, 9]\n[1, 2, 3]\n");
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn sweep_and_probe() {
    let (_, out) = bhsets(&["sweep", "--h", "3"], "[1, 3, 9]");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sweep"].as_array().unwrap().len(), 3);

    let (code, out) = bhsets(
        &[
            "probe",
            "--h",
            "2",
            "--g",
            "1",
            "--radius",
            "1/3",
            "--samples",
            "50",
            "--seed",
            "1",
        ],
        "[1, 3, 9]",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "evidence");
    assert_eq!(v["frequencies"]["1"], 50);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
}

#[test]
fn sample_summary() {
    let (code, out) = bhsets(
        &[
            "sample",
            "--n",
            "3",
            "--h",
            "2",
            "--samples",
            "3",
            "--seed",
            "1",
            "--range",
            "5",
        ],
        "",
    );
    assert_eq!(code, 0);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["samples"], 3);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn budget_is_enforced() {
    assert_eq!(
        bhsets(&["--budget", "10", "margin", "--h", "4"], "[1, 5, 25, 125]").0,
        3
    );
}
