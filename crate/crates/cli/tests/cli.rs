use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-spectra"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_trivial_connection_has_zero_mode() {
    let out = run(&["spectrum", "--t", "0", "--nmax", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,eigenvalue,multiplicity\n0,0,2\n");
}

#[test]
fn spectrum_window_row_count() {
    let out = run(&["spectrum", "--t", "0.5", "--nmax", "3"]);
    let rows = csv_rows(&stdout(&out));
    // n runs over -5..=3 and the two lines with zero multiplicity are dropped
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r[2].parse::<u64>().unwrap() > 0));
}

#[test]
fn spectrum_cutoff_matches_eigenvalue_bound() {
    let out = run(&["spectrum", "--t", "cubic", "--emax", "20"]);
    let rows = csv_rows(&stdout(&out));
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() <= 20.0));
}

#[test]
fn spectrum_su3_lines() {
    let out = run(&["spectrum", "--weight", "1,1", "--t", "0.5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("sign,gamma,eigenvalue,multiplicity\n"));
    assert!(text.lines().count() > 2);
}

#[test]
fn out_of_range_t_is_a_usage_error() {
    let out = run(&["spectrum", "--t", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--t"));
    let out = run(&["spectrum", "--t", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_scale_is_a_usage_error() {
    let out = run(&["action", "--lambda", "-3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--lambda"));
}

#[test]
fn unsupported_kind_is_a_usage_error() {
    let out = run(&["shifted-action", "--h", "gaussian"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gaussian"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--mmax", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn verify_detects_corrupted_structure_constant() {
    let out = run(&["verify", "--mmax", "4", "--corrupt-structure-constant", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Jacobi"));
    assert!(stdout(&out).contains(",fail"));
}

#[test]
fn action_direct_matches_asymptotic() {
    for t in ["0", "cubic", "0.5", "1"] {
        let v = json(&["action", "--t", t, "--lambda", "8"]);
        assert!(v["rel_diff"].as_f64().unwrap() <= 1e-10, "t={t}: {v}");
    }
}

#[test]
fn product_action_reports_printed_form() {
    let v = json(&["product-action", "--lambda", "4", "--beta", "2"]);
    assert!(v["rel_diff"].as_f64().unwrap() <= 1e-10);
    assert!(v["printed_rel_diff"].as_f64().unwrap() > 1e-3);
}

#[test]
fn shifted_action_matches() {
    let v = json(&["shifted-action", "--lambda", "6", "--x", "0.4", "--h", "polyexp:1,0.5"]);
    assert!(v["rel_diff"].as_f64().unwrap() <= 1e-10, "{v}");
}

#[test]
fn plateau_rederived_is_closer() {
    let v = json(&["plateau", "--lambda", "32", "--x", "0.3"]);
    let re = v["rederived_rel_diff"].as_f64().unwrap();
    let verb = v["verbatim_rel_diff"].as_f64().unwrap();
    assert!(re < 1e-4 && verb > 1e-3, "{v}");
    assert_eq!(v["rederived_terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["verbatim_terms"].as_array().unwrap().len(), 6);
}

#[test]
fn plateau_rejects_shift_past_plateau() {
    let out = run(&["plateau", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn slowroll_table() {
    let out = run(&["slowroll", "--t", "0.5", "--lambda-a", "2", "--x", "0.5:2.0:0.5"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[8] == "ok"));

    let out = run(&["slowroll", "--x", "0,1"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0][8], "singular");
    assert_eq!(rows[0][6], "");
}

#[test]
fn slowroll_independent_of_beta() {
    let cols = |beta: &str| -> Vec<String> {
        let out = run(&[
            "slowroll",
            "--h",
            "polyexp:1",
            "--t",
            "0.3333333333",
            "--beta",
            beta,
            "--x",
            "0:2:0.25",
        ]);
        csv_rows(&stdout(&out))
            .into_iter()
            .map(|r| r[6..=9].join(","))
            .collect()
    };
    assert_eq!(cols("1"), cols("7"));
}

#[test]
fn slowroll_t_sweep_adds_column() {
    let out = run(&["slowroll", "--ts", "0,0.5,1", "--x", "0.5,1"]);
    let text = stdout(&out);
    assert!(text.starts_with("t,x,"));
    assert_eq!(csv_rows(&text).len(), 6);
}

#[test]
fn potential_columns() {
    let out = run(&["potential", "--x", "0:1:0.25"]);
    let text = stdout(&out);
    assert!(text.starts_with("x,curlyV,curlyW,V,Vp,Vpp\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][1], "0");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["product-action", "--lambda", "6", "--beta", "3", "--t", "cubic"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["slowroll", "--x", "0:2:0.125", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let out = run(&["spectrum", "--nmax", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, run(&["spectrum", "--nmax", "2"]).stdout);
}

#[test]
fn json_and_csv_agree() {
    let csv = stdout(&run(&["potential", "--x", "0.25,0.75"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["potential", "--x", "0.25,0.75", "--format", "json"]))).unwrap();
    for (row, obj) in csv_rows(&csv).iter().zip(json.as_array().unwrap()) {
        for (cell, key) in row.iter().zip(["x", "curlyV", "curlyW", "V", "Vp", "Vpp"]) {
            assert_eq!(cell.parse::<f64>().unwrap(), obj[key].as_f64().unwrap());
        }
    }
}
