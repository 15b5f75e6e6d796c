use std::process::{Command, Output};

fn flab(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_flab"));
    cmd.args(args).env_remove("FLAB_MAX_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("run flab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_json_schema_and_ordering() {
    let o = flab(
        &["verify", "--check", "baer-a1", "--max-order", "30", "--format", "json"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["check", "elapsed_ms", "params", "rows", "summary"]);
    assert_eq!(r["summary"]["fail"], 0);
    let rows = r["rows"].as_array().unwrap();
    let keyed: Vec<(u64, String)> = rows
        .iter()
        .map(|x| (x["order"].as_u64().unwrap(), x["group"].as_str().unwrap().to_string()))
        .collect();
    let mut sorted = keyed.clone();
    sorted.sort();
    assert_eq!(keyed, sorted);
    let s3 = rows.iter().find(|x| x["group"] == "S3").unwrap();
    assert_eq!((s3["lhs_order"].as_u64(), s3["rhs_order"].as_u64()), (Some(1), Some(1)));
    assert!(s3.get("witness").is_none());
}

#[test]
fn output_is_reproducible_without_timing() {
    let args = [
        "verify",
        "--check",
        "lemmas",
        "--max-order",
        "40",
        "--format",
        "json",
        "--no-timing",
    ];
    let a = flab(&args, &[]);
    let b = flab(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn probes_report_witnesses_without_failing() {
    let dir = std::env::temp_dir().join(format!("flab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("corpus.txt");
    std::fs::write(
        &file,
        "# witness for the supersoluble probe\nsd(E(7^2),S3,[b,a;b,a^6*b^6])\nS4\n",
    )
    .unwrap();
    let path = file.to_str().unwrap();
    let o = flab(
        &[
            "verify",
            "--check",
            "theorem-b",
            "--formation",
            "U",
            "--corpus",
            path,
            "--format",
            "json",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["summary"]["fail"], 1);
    assert!(r["params"]["note"].as_str().unwrap().contains("probe"));
    let w = &r["rows"][1]["witness"];
    assert_eq!((w["lhs_order"].as_u64(), w["rhs_order"].as_u64()), (Some(294), Some(1)));

    let o = flab(&["verify", "--check", "boundary", "--corpus", path], &[]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn theorem_a_table_for_a_partition() {
    let o = flab(
        &[
            "verify",
            "--check",
            "theorem-a",
            "--partition",
            "{2,3};{5}",
            "--max-order",
            "30",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check theorem-a"));
    let row = text.lines().find(|l| l.starts_with("S3 x C5 ")).unwrap();
    assert!(row.split_whitespace().eq(["S3", "x", "C5", "30", "30", "30", "pass"]));
    assert!(text.contains("summary:"));
}

#[test]
fn max_order_from_environment() {
    let o = flab(
        &["verify", "--check", "cor-a4", "--format", "json"],
        &[("FLAB_MAX_ORDER", "12")],
    );
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["params"]["max_order"], "12");
    assert!(r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["order"].as_u64().unwrap() <= 12));
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["verify", "--check", "nope"][..],
        &["verify", "--check", "prop1", "--formation", "X{2}"],
        &["verify", "--check", "theorem-a", "--partition", "{4}"],
        &["verify", "--check", "prop1", "--corpus", "/nonexistent/corpus.txt"],
        &["analyze", "--group", "C0 x", "--formation", "N"],
        &["lattice"],
        &["frobnicate"],
    ] {
        assert_eq!(flab(args, &[]).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn analyze_prints_all_constructions() {
    let o = flab(
        &[
            "analyze",
            "--group",
            "S3 x C5",
            "--formation",
            "cross[{2,3};{5}]",
            "--sigma",
            "cyclic",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for label in ["Z_F", "Int_F", "NI_F", "Delta_F", "SI_cyclic"] {
        let line = text
            .lines()
            .find(|l| l.starts_with(label))
            .unwrap_or_else(|| panic!("{label}"));
        assert!(line.contains("order    30"), "{line}");
    }
}

#[test]
fn lattice_summary() {
    let o = flab(&["lattice", "--group", "S4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("subgroups  30 in 11 classes"), "{text}");
    assert!(text.contains("normal     4"));
}
