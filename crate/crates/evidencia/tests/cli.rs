use std::path::Path;
use std::process::{Command, Output};

use evidencia::commands::{select_profile, select_table};
use evidencia::input::read_dataset;
use evidencia_core::criteria::{argmin_k, Criterion};
use evidencia_core::linmodel::BasisSpec;
use evidencia_core::simlab::{cosine_design, generate_draw, SimConfig};
use serde_json::Value;

fn evidencia(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_evidencia"));
    cmd.args(args)
        .env_remove("EVIDENCIA_THREADS")
        .env_remove("SOURCE_DATE_EPOCH");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn two_point_exact_fit() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.csv");
    std::fs::write(
        &input,
        "x,y,sigma\n0.7853981633974483,1.5,0.5\n2.356194490192345,0.5,0.5\n",
    )
    .unwrap();
    let out = evidencia(&["select", "--input", path_str(&input)], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("K,chi_sq,F_sq,AIC,AICc,BIC,RobustExact"));
    let last: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(last[0], "2");
    assert_eq!(last[1].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn missing_sigma_column() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.csv");
    std::fs::write(&input, "x,y\n1,2\n2,3\n").unwrap();
    let out = evidencia(&["select", "--input", path_str(&input)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column 'sigma' not found"));
}

#[test]
fn malformed_value_names_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.csv");
    std::fs::write(&input, "# header follows\nx,y,sigma\n1,2,1\n2,oops,1\n").unwrap();
    let out = evidencia(&["select", "--input", path_str(&input)], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("line 4, column 'y'"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn singular_design_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.csv");
    let basis = dir.path().join("basis.csv");
    std::fs::write(&input, "x,y,sigma\n0,1,1\n1,2,1\n2,2.5,1\n3,4,1\n").unwrap();
    std::fs::write(&basis, "f1,f2\n1,2\n1,2\n1,2\n1,2\n").unwrap();
    let out = evidencia(
        &[
            "select",
            "--input",
            path_str(&input),
            "--basis",
            path_str(&basis),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("singular design"));
}

#[test]
fn table_basis_and_sidecar_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.csv");
    let basis = dir.path().join("basis.csv");
    let output = dir.path().join("table.csv");
    std::fs::write(
        &input,
        "x,y,sigma\n0,1,1\n1,2.2,1\n2,2.9,1\n3,4.1,1\n4,5,2\n",
    )
    .unwrap();
    std::fs::write(&basis, "one,x,x2\n1,0,0\n1,1,1\n1,2,4\n1,3,9\n1,4,16\n").unwrap();
    let out = evidencia(
        &[
            "select",
            "--input",
            path_str(&input),
            "--basis",
            path_str(&basis),
            "--output",
            path_str(&output),
        ],
        &[("SOURCE_DATE_EPOCH", "1700000000")],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let table = std::fs::read_to_string(&output).unwrap();
    assert_eq!(table.lines().count(), 4);
    let manifest: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("table.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["subcommand"], "select");
    assert_eq!(manifest["timestamp"], 1_700_000_000u64);
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn emitted_data_round_trips_through_select() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let out = evidencia(
        &[
            "simulate",
            "--a",
            "5",
            "--b",
            "1",
            "--replicates",
            "8",
            "--seed",
            "7",
            "--emit-data",
            path_str(&data),
            "--emit-ksim",
            "6",
            "--emit-replicate",
            "3",
            "--output",
            path_str(&dir.path().join("rates.csv")),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let cfg = SimConfig::new(32, 5.0, 1.0, 8, 7).unwrap();
    let draw = generate_draw(&cfg, &cosine_design(32), 3);
    let parsed = read_dataset(std::fs::File::open(&data).unwrap()).unwrap();
    let column = draw.d.column(5);
    assert!(parsed
        .y()
        .iter()
        .zip(&column)
        .all(|(a, b)| a.to_bits() == b.to_bits()));

    let via_cli = evidencia(&["select", "--input", path_str(&data)], &[]);
    assert_eq!(via_cli.status.code(), Some(0));
    let profile = select_profile(&parsed, &BasisSpec::Cosine, 32).unwrap();
    let in_process = select_table(&profile).to_csv().unwrap();
    assert_eq!(via_cli.stdout, in_process);

    // The mode-sum shortcut used by the simulator picks the same model.
    let sums = draw.mode_sums(6);
    let shortcut: Vec<f64> = (1..=32)
        .map(|k| {
            Criterion::RobustLargeK
                .evaluate(sums.chi_sq[k - 1], sums.f_sq[k - 1], sums.z_sq, k, 32)
                .unwrap()
        })
        .collect();
    assert_eq!(
        argmin_k(&shortcut),
        profile.get(Criterion::RobustLargeK).unwrap().selected_k
    );
}

#[test]
fn simulate_is_deterministic_across_runs_and_workers() {
    let args = [
        "simulate",
        "--a",
        "1",
        "--b",
        "1",
        "--replicates",
        "300",
        "--seed",
        "7",
    ];
    let one = evidencia(&args, &[("EVIDENCIA_THREADS", "1")]);
    let four = evidencia(&args, &[("EVIDENCIA_THREADS", "4")]);
    let auto = evidencia(&args, &[]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, auto.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("criterion,Ksim,successes,rate,std_error")
    );
    assert_eq!(text.lines().count(), 1 + 4 * 32);
}

#[test]
fn simulate_rejects_bad_flags() {
    assert_eq!(
        evidencia(&["simulate", "--replicates", "0"], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        evidencia(&["simulate", "--criteria", "Mallows"], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        evidencia(&["simulate", "--a", "-1"], &[]).status.code(),
        Some(2)
    );
    let bad_threads = evidencia(
        &["simulate", "--replicates", "2"],
        &[("EVIDENCIA_THREADS", "many")],
    );
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn json_output_embeds_the_manifest() {
    let out = evidencia(
        &[
            "simulate",
            "--replicates",
            "16",
            "--seed",
            "0x10",
            "--criteria",
            "AIC,RobustExact",
            "--format",
            "json",
        ],
        &[("SOURCE_DATE_EPOCH", "42")],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["manifest"]["seed"], 16);
    assert_eq!(doc["manifest"]["timestamp"], 42);
    assert_eq!(
        doc["manifest"]["config"]["criteria"],
        serde_json::json!(["AIC", "RobustExact"])
    );
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 64);
    assert_eq!(rows[0]["criterion"], "AIC");
    assert_eq!(rows[0]["Ksim"], 1);
}

#[test]
fn curves_reproduce_expected_residuals() {
    let out = evidencia(
        &["curves", "--a", "3", "--b", "0", "--s", "8", "--n", "32"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let chi: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!([chi[3], chi[7], chi[11]], [64.0, 24.0, 20.0]);

    let weak = evidencia(
        &[
            "curves", "--a", "1", "--b", "0", "--s", "8", "--format", "json",
        ],
        &[],
    );
    let doc: Value = serde_json::from_slice(&weak.stdout).unwrap();
    let robust: Vec<f64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["RobustLargeK"].as_f64().unwrap())
        .collect();
    assert_eq!(argmin_k(&robust), Some(8));

    assert_eq!(
        evidencia(&["curves", "--s", "40"], &[]).status.code(),
        Some(2)
    );
}

#[test]
fn selfcheck_exit_codes() {
    let ok = evidencia(&["selfcheck"], &[]);
    assert_eq!(ok.status.code(), Some(0));
    let report = String::from_utf8(ok.stdout).unwrap();
    assert!(report.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(report.contains("error"));
    let failing = evidencia(&["selfcheck", "--tolerance-scale", "0"], &[]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(String::from_utf8(failing.stdout).unwrap().contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(evidencia(&[], &[]).status.code(), Some(2));
    assert_eq!(evidencia(&["select"], &[]).status.code(), Some(2));
    assert_eq!(evidencia(&["frobnicate"], &[]).status.code(), Some(2));
}
