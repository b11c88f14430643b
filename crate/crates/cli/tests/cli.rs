use std::process::Command;

fn xychain(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_xychain"))
        .args(args)
        .env_remove("XYCHAIN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = xychain(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn zero_field_pair_is_separable() {
    let out = stdout(&["concurrence", "--m", "2", "--h", "0", "--T", "0"]);
    assert!(out.starts_with("# xychain "));
    let rows = data_rows(&out);
    assert_eq!(rows[0][3], "0.00000000000e0");
}

#[test]
fn onset_field_for_next_nearest_neighbours() {
    let rows = data_rows(&stdout(&["critical-field", "--m", "2"]));
    let h: f64 = rows[0][1].parse().unwrap();
    assert!((h - 0.5).abs() <= 1e-3);
}

#[test]
fn saturated_correlators() {
    let rows = data_rows(&stdout(&[
        "fn-table", "--h", "2", "--T", "0", "--n-max", "3",
    ]));
    let f: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(f, vec![1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn sweep_files_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, threads) in [(&a, "1"), (&b, "1")] {
        let out = xychain(&[
            "sweep",
            "--m",
            "3",
            "--h-range",
            "0.6:1.2:0.1",
            "--T-range",
            "0:0.2:0.05",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 7 * 5);
    assert_eq!(rows[0][1], "6.00000000000e-1");
    assert_eq!(rows[1][2], "5.00000000000e-2");
}

#[test]
fn json_output_parses() {
    let out = stdout(&[
        "--format",
        "json",
        "critical-temps",
        "--m",
        "2",
        "--h",
        "1.05",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "critical-temps");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\nm = 2\nh = 0.8\nT = 0.05\n").unwrap();
    let from_file = data_rows(&stdout(&["concurrence", "--config", cfg.to_str().unwrap()]));
    assert_eq!(from_file[0][1], "8.00000000000e-1");
    let overridden = data_rows(&stdout(&[
        "concurrence",
        "--config",
        cfg.to_str().unwrap(),
        "--h",
        "0.9",
    ]));
    assert_eq!(overridden[0][1], "9.00000000000e-1");
    assert_eq!(overridden[0][2], "5.00000000000e-2");
}

#[test]
fn ed_singlet_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("state.bin");
    let out = stdout(&[
        "ed",
        "--n",
        "2",
        "--ground",
        "--pair",
        "0",
        "1",
        "--bc",
        "open",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert!(out.contains("bc=open"));
    let rows = data_rows(&out);
    let c: f64 = rows[0][9].parse().unwrap();
    assert!((c - 1.0).abs() < 1e-10);
    let bytes = std::fs::read(&dump).unwrap();
    assert_eq!(&bytes[..4], b"XXST");
    assert_eq!(bytes.len(), 36 + 2 * 8);
}

#[test]
fn errors_carry_a_category_and_exit_code() {
    let cases: [(&[&str], &str, i32); 4] = [
        (
            &[
                "sweep",
                "--m",
                "2",
                "--h-range",
                "1:0:0.1",
                "--T-range",
                "0",
            ],
            "range",
            2,
        ),
        (&["critical-field", "--m", "2", "--nope"], "usage", 2),
        (
            &["ed", "--n", "14", "--T", "0.1", "--pair", "0", "1"],
            "oracle",
            6,
        ),
        (
            &[
                "concurrence",
                "--m",
                "2",
                "--h",
                "0",
                "--T",
                "0",
                "--out",
                "/nonexistent/dir/x.csv",
            ],
            "output",
            4,
        ),
    ];
    for (args, category, code) in cases {
        let out = xychain(args);
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {err}");
        assert!(err.starts_with(&format!("error[{category}]")), "{err}");
    }
}

#[test]
fn verify_subset_reports_a_table() {
    let out = xychain(&["verify", "--only", "2,7"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[1] == "PASS"));
}
