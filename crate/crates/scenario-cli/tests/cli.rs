//! End-to-end tests of the scenario-cli binary: every subcommand runs
//! as a subprocess against real scenario files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scenario-cli"))
}

fn write_scenario(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn two_by_two(mode: &str) -> String {
    format!(
        r#"{{
            "grid": {{"rows": 2, "cols": 2, "ignition": {{"row": 1, "col": 1}}}},
            "weather": [{{"time": 0.0, "humidity_pct": 45.0, "wind_kmh": 35.0}}],
            "mode": "{mode}",
            "conventional_tau_min": 1.0
        }}"#
    )
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn run_reports_in_plain_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("conventional"));
    let output = binary().arg("run").arg(&path).output().unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(text.contains("mode: conventional"), "{text}");
    assert!(text.contains("forest consumption (to ash): 2.2 min"), "{text}");
    assert!(text.contains("burned 4"), "{text}");
}

#[test]
fn run_reports_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("conventional"));
    let output = binary().arg("run").arg(&path).arg("--json").output().unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["mode"], "conventional");
    assert_eq!(report["burned_cell_count"], 4);
    assert_eq!(report["forest_consumption_to_ash_min"], 2.2);
    assert_eq!(report["trace_sha256"].as_str().unwrap().len(), 64);
    assert!(report.get("trace_text").is_none());
}

#[test]
fn run_dumps_the_trace_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("conventional"));
    let trace_path = dir.path().join("events.trace");
    let output = binary()
        .arg("run")
        .arg(&path)
        .arg("--trace")
        .arg(&trace_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let trace = std::fs::read_to_string(&trace_path).unwrap();
    assert!(trace.starts_with("0\tforest.generator\toutput\tFireOut=ignite"), "{trace}");
    assert!(trace.contains("forest.cell_2_2"), "{trace}");
}

#[test]
fn malformed_json_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "bad.json", "{\"grid\": nonsense");
    let output = binary().arg("run").arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("malformed scenario JSON"));
}

#[test]
fn unknown_fields_exit_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = two_by_two("fuzzy").replace("\"mode\"", "\"wind_age\": 1, \"mode\"");
    let path = write_scenario(dir.path(), "bad.json", &text);
    let output = binary().arg("run").arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("wind_age"), "{}", stderr_of(&output));
}

#[test]
fn conventional_without_tau_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = two_by_two("conventional").replace(",\n            \"conventional_tau_min\": 1.0", "");
    let path = write_scenario(dir.path(), "bad.json", &text);
    let output = binary().arg("run").arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("conventional_tau_min"), "{}", stderr_of(&output));
}

#[test]
fn missing_file_exits_with_usage_error() {
    let output = binary().arg("run").arg("/no/such/file.json").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("cannot read scenario"));
}

#[test]
fn compare_prints_both_modes_and_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("fuzzy"));
    let output = binary().arg("compare").arg(&path).output().unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(text.contains("conventional"), "{text}");
    assert!(text.contains("forest time ratio (fuzzy / conventional):"), "{text}");

    let output = binary().arg("compare").arg(&path).arg("--json").output().unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let comparison: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let cell_ratio = comparison["cell_time_ratio"].as_f64().unwrap();
    assert!((cell_ratio - 0.55).abs() < 1e-9, "{cell_ratio}");
    assert_eq!(comparison["conventional"]["mode"], "conventional");
    assert_eq!(comparison["fuzzy"]["mode"], "fuzzy");
}

#[test]
fn fis_eval_prints_crisp_value_and_activations() {
    let output = binary()
        .args(["fis-eval", "--h", "45", "--v", "35"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let crisp_line = text
        .lines()
        .find(|line| line.starts_with("crisp lifetime:"))
        .unwrap();
    let crisp: f64 = crisp_line
        .trim_start_matches("crisp lifetime:")
        .trim_end_matches("min")
        .trim()
        .parse()
        .unwrap();
    assert!((crisp - 0.55).abs() < 1e-9, "{crisp}");
    assert!(text.contains("dry & calm"), "{text}");
    assert!(text.contains("wet & power"), "{text}");
}

#[test]
fn fis_eval_writes_a_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let curve_path = dir.path().join("curve.csv");
    let output = binary()
        .args(["fis-eval", "--h", "45", "--v", "35", "--samples", "11"])
        .arg("--curve")
        .arg(&curve_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let csv = std::fs::read_to_string(&curve_path).unwrap();
    assert!(csv.starts_with("u,mu\n"), "{csv}");
    assert_eq!(csv.lines().count(), 12);
}

#[test]
fn fis_eval_accepts_a_scenario_or_bare_controller_config() {
    let dir = tempfile::tempdir().unwrap();
    let controller = r#"{
        "humidity": {"universe": [0, 100], "terms": [
            {"name": "dry", "trapezoid": [0, 0, 50, 50]},
            {"name": "wet", "trapezoid": [50, 50, 100, 100]}
        ]},
        "wind": {"universe": [0, 100], "terms": [
            {"name": "calm", "trapezoid": [0, 0, 50, 50]},
            {"name": "power", "trapezoid": [50, 50, 100, 100]}
        ]},
        "lifetime": {"universe": [0.0, 1.0], "terms": [
            {"name": "fast", "trapezoid": [0.0, 0.0, 0.2, 0.4]},
            {"name": "slow", "trapezoid": [0.6, 0.8, 1.0, 1.0]}
        ]},
        "rules": [
            {"if": ["dry", "calm"], "then": "slow"},
            {"if": ["dry", "power"], "then": "fast"},
            {"if": ["wet", "calm"], "then": "slow"},
            {"if": ["wet", "power"], "then": "slow"}
        ]
    }"#;
    let bare = write_scenario(dir.path(), "controller.json", controller);
    let output = binary()
        .args(["fis-eval", "--h", "20", "--v", "80"])
        .arg("--config")
        .arg(&bare)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let bare_text = stdout_of(&output);

    let scenario = format!(
        r#"{{
            "grid": {{"rows": 1, "cols": 1, "ignition": {{"row": 1, "col": 1}}}},
            "weather": [{{"time": 0.0, "humidity_pct": 20.0, "wind_kmh": 80.0}}],
            "mode": "fuzzy",
            "fuzzy_config": {controller}
        }}"#
    );
    let full = write_scenario(dir.path(), "scenario.json", &scenario);
    let output = binary()
        .args(["fis-eval", "--h", "20", "--v", "80"])
        .arg("--config")
        .arg(&full)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert_eq!(stdout_of(&output), bare_text);
}

#[test]
fn fis_eval_reports_zero_activation_with_all_activations() {
    let dir = tempfile::tempdir().unwrap();
    let controller = r#"{
        "humidity": {"universe": [0, 10], "terms": [
            {"name": "low", "trapezoid": [0, 0, 1, 2]}
        ]},
        "wind": {"universe": [0, 10], "terms": [
            {"name": "low", "trapezoid": [0, 0, 1, 2]}
        ]},
        "lifetime": {"universe": [0, 1], "terms": [
            {"name": "x", "trapezoid": [0, 0, 1, 1]}
        ]},
        "rules": [{"if": ["low", "low"], "then": "x"}]
    }"#;
    let path = write_scenario(dir.path(), "controller.json", controller);
    let output = binary()
        .args(["fis-eval", "--h", "9", "--v", "9"])
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = stderr_of(&output);
    assert!(err.contains("no rule fires"), "{err}");
    assert!(err.contains("low & low -> x: 0"), "{err}");
}

#[test]
fn export_csv_matches_the_documented_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("conventional"));
    let out = dir.path().join("grid.csv");
    let output = binary()
        .arg("export")
        .arg(&path)
        .args(["--format", "csv"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "0,1\n1,1\n");
}

#[test]
fn export_pgm_writes_a_binary_image() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "s.json", &two_by_two("conventional"));
    let out = dir.path().join("grid.pgm");
    let output = binary()
        .arg("export")
        .arg(&path)
        .args(["--format", "pgm"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let pgm = std::fs::read(&out).unwrap();
    let header = b"P5\n2 2\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    assert_eq!(pgm.len(), header.len() + 4);
    assert_eq!(pgm[header.len()], 255);
}

#[test]
fn export_csv_marks_unburned_cells() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{
        "grid": {
            "rows": 1,
            "cols": 3,
            "nonflammable": [[1, 2]],
            "ignition": {"row": 1, "col": 1}
        },
        "mode": "conventional",
        "conventional_tau_min": 0.5
    }"#;
    let path = write_scenario(dir.path(), "s.json", scenario);
    let out = dir.path().join("grid.csv");
    let output = binary()
        .arg("export")
        .arg(&path)
        .args(["--format", "csv"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "0,-1,-1\n");
}

#[test]
fn shipped_scenario_runs_and_compares() {
    let scenario = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/forest-90x90.json");
    let output = binary().arg("run").arg(&scenario).arg("--json").output().unwrap();
    assert!(output.status.success(), "{}", stderr_of(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["burned_cell_count"], 8100);
    let ash = report["forest_consumption_to_ash_min"].as_f64().unwrap();
    assert!((ash - 49.61).abs() < 1e-9, "{ash}");
}
