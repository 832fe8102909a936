use std::process::{Command, Output};

use serde_json::Value;

fn hdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdiv"))
        .args(args)
        .output()
        .expect("spawn hdiv")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn exit_codes() {
    assert_eq!(
        hdiv(&["dims", "--element", "tri", "--order", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(hdiv(&["--help"]).status.code(), Some(0));
    assert_eq!(
        hdiv(&["dims", "--element", "tri", "--order", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hdiv(&["dims", "--element", "tri", "--order", "99"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hdiv(&["dims", "--element", "pentagon"]).status.code(),
        Some(2)
    );
    assert_eq!(hdiv(&["mass"]).status.code(), Some(2));
    assert_eq!(
        hdiv(&["cond", "--element", "tet", "--variant", "ac"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hdiv(&["bogus"]).status.code(), Some(2));
    let io = hdiv(&[
        "dims",
        "--element",
        "quad",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(io.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&io.stderr).contains("cannot write"));
}

#[test]
fn report_shape() {
    let out = hdiv(&["cond", "--element", "tri", "--order", "2"]);
    let v = json(&out);
    for key in [
        "command",
        "element",
        "order",
        "variant",
        "path",
        "passed",
        "payload",
        "toolchain",
        "timestamp",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "cond");
    assert_eq!(v["passed"], true);
    assert!(v["timestamp"].is_null());
    let kappa = v["payload"]["mass"]["kappa"].as_f64().unwrap();
    assert!((kappa - 8.8042e1).abs() < 1e-2);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("e1,") || text.contains("e1\n"),
        "floats use 17-digit exponent form"
    );
}

#[test]
fn degeneracy_reports_the_relation() {
    let v = json(&hdiv(&[
        "degeneracy",
        "--element",
        "tet",
        "--order",
        "2",
        "--variant",
        "ac",
    ]));
    assert_eq!(v["payload"]["count"], 24);
    assert_eq!(v["payload"]["rank"], 23);
    assert_eq!(v["payload"]["nullspace"].as_array().unwrap().len(), 1);
}

#[test]
fn csv_matrix() {
    let out = hdiv(&[
        "mass",
        "--element",
        "quad",
        "--order",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.split(',').count() == 12));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "augment-demo",
            "--element",
            "tet",
            "--order",
            "2",
            "--seed",
            "7",
        ][..],
        &[
            "check-orthonormal",
            "--element",
            "hex",
            "--order",
            "2",
            "--path",
            "quadrature",
        ][..],
        &["stiffness", "--element", "tri", "--order", "3"][..],
    ] {
        let (a, b) = (hdiv(args), hdiv(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn tables_match_golden() {
    let out = hdiv(&["tables"]);
    assert!(out.status.success());
    let golden = include_str!("golden/tables.json");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim_end(),
        golden.trim_end()
    );
}
