use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzy_core::{defaults, RuleBase};
use scenario_cli::{
    aggregate_curve_csv, compare_scenario, evaluate_controller, ignition_csv, ignition_pgm,
    run_scenario, Comparison, FuzzyConfig, RunError, RunReport, Scenario, ScenarioError,
};

#[derive(Parser)]
#[command(
    name = "scenario-cli",
    about = "Wildfire spread simulation with fuzzy burn durations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file to quiescence and report.
    Run {
        scenario: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write the full event trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a scenario in both modes and relate the results.
    Compare {
        scenario: PathBuf,
        /// Emit the comparison as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the fuzzy controller at one (humidity, wind) point.
    FisEval {
        /// Humidity in percent.
        #[arg(long = "h")]
        humidity: f64,
        /// Wind speed in km/h.
        #[arg(long = "v")]
        wind: f64,
        /// Scenario file (or bare fuzzy_config JSON) providing the controller.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the sampled aggregate curve to this CSV file.
        #[arg(long)]
        curve: Option<PathBuf>,
        /// Number of curve samples.
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Run a scenario and write the ignition-time grid to a file.
    Export {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Output file path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Pgm,
}

enum CliError {
    /// Bad input: unreadable or invalid scenario, bad arguments.
    Usage(String),
    /// The simulation itself failed.
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(message) | CliError::Runtime(message) => message,
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(err: ScenarioError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<RunError> for CliError {
    fn from(err: RunError) -> Self {
        match err {
            RunError::Scenario(inner) => CliError::Usage(inner.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|err| CliError::Runtime(format!("cannot write {}: {err}", path.display())))
}

/// A reader closing the pipe early (`| head`) is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(err) => Err(CliError::Runtime(format!("cannot write output: {err}"))),
    }
}

fn render_report(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", report.mode);
    let _ = writeln!(
        out,
        "grid: {}x{} ({} flammable cells), burned {}",
        report.rows, report.cols, report.flammable_cell_count, report.burned_cell_count
    );
    let _ = writeln!(
        out,
        "cell consumption time: {} min",
        report.cell_consumption_time_min
    );
    match report.forest_consumption_to_ember_min {
        Some(t) => {
            let _ = writeln!(out, "forest consumption (to ember): {t} min");
        }
        None => {
            let _ = writeln!(out, "forest consumption (to ember): never");
        }
    }
    match report.forest_consumption_to_ash_min {
        Some(t) => {
            let _ = writeln!(out, "forest consumption (to ash): {t} min");
        }
        None => {
            let _ = writeln!(out, "forest consumption (to ash): never");
        }
    }
    let _ = writeln!(
        out,
        "events: {} (internal {}, external {})",
        report.event_count, report.internal_events, report.external_events
    );
    let _ = writeln!(out, "final event time: {} min", report.final_time_min);
    let _ = writeln!(out, "wall clock: {:.3} s", report.wall_clock_s);
    let _ = writeln!(out, "trace sha256: {}", report.trace_sha256);
    out
}

fn render_comparison(comparison: &Comparison) -> String {
    let conventional = &comparison.conventional;
    let fuzzy = &comparison.fuzzy;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<36}  {:>20}  {:>20}",
        "metric", "conventional", "fuzzy"
    );
    let row = |label: &str, a: String, b: String| format!("{label:<36}  {a:>20}  {b:>20}\n");
    out.push_str(&row(
        "cell consumption time (min)",
        conventional.cell_consumption_time_min.to_string(),
        fuzzy.cell_consumption_time_min.to_string(),
    ));
    let fmt_opt = |t: Option<f64>| t.map_or("never".to_string(), |v| v.to_string());
    out.push_str(&row(
        "forest consumption to ember (min)",
        fmt_opt(conventional.forest_consumption_to_ember_min),
        fmt_opt(fuzzy.forest_consumption_to_ember_min),
    ));
    out.push_str(&row(
        "forest consumption to ash (min)",
        fmt_opt(conventional.forest_consumption_to_ash_min),
        fmt_opt(fuzzy.forest_consumption_to_ash_min),
    ));
    out.push_str(&row(
        "burned cells",
        conventional.burned_cell_count.to_string(),
        fuzzy.burned_cell_count.to_string(),
    ));
    out.push_str(&row(
        "events",
        conventional.event_count.to_string(),
        fuzzy.event_count.to_string(),
    ));
    out.push_str(&row(
        "wall clock (s)",
        format!("{:.3}", conventional.wall_clock_s),
        format!("{:.3}", fuzzy.wall_clock_s),
    ));
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "forest time ratio (fuzzy / conventional): {}",
        comparison.forest_time_ratio
    );
    let _ = writeln!(
        out,
        "cell time ratio (fuzzy / conventional): {}",
        comparison.cell_time_ratio
    );
    out
}

/// The --config file may be a full scenario or a bare controller block.
fn load_rule_base(path: Option<&Path>) -> Result<RuleBase, CliError> {
    let Some(path) = path else {
        return Ok(defaults::wildfire_rule_base());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Usage(format!("cannot read {}: {err}", path.display())))?;
    if let Ok(scenario) = Scenario::from_json(&text) {
        return Ok(scenario.rule_base()?);
    }
    match serde_json::from_str::<FuzzyConfig>(&text) {
        Ok(config) => Ok(config.rule_base()?),
        Err(err) => Err(CliError::Usage(format!(
            "{} is neither a valid scenario nor a fuzzy_config block: {err}",
            path.display()
        ))),
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            scenario,
            json,
            trace,
        } => {
            let mut scenario = Scenario::load(&scenario)?;
            if trace.is_some() {
                scenario.trace = true;
            }
            let mut report = run_scenario(&scenario)?;
            if let Some(path) = &trace {
                let text = report
                    .trace_text
                    .take()
                    .expect("trace text was requested above");
                write_file(path, text.as_bytes())?;
                report.trace_text = None;
            }
            if json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                emit(&format!("{text}\n"))
            } else {
                emit(&render_report(&report))
            }
        }
        Command::Compare { scenario, json } => {
            let scenario = Scenario::load(&scenario)?;
            let comparison = compare_scenario(&scenario)?;
            if json {
                let text =
                    serde_json::to_string_pretty(&comparison).expect("comparison serializes");
                emit(&format!("{text}\n"))
            } else {
                emit(&render_comparison(&comparison))
            }
        }
        Command::FisEval {
            humidity,
            wind,
            config,
            curve,
            samples,
        } => {
            if samples < 2 {
                return Err(CliError::Usage("--samples must be at least 2".into()));
            }
            let rule_base = load_rule_base(config.as_deref())?;
            let report = evaluate_controller(&rule_base, humidity, wind)?;
            let mut text = String::new();
            let _ = writeln!(text, "humidity: {}", report.humidity);
            let _ = writeln!(text, "wind: {}", report.wind);
            let _ = writeln!(text, "crisp lifetime: {} min", report.crisp);
            let _ = writeln!(text);
            let _ = writeln!(text, "{:<24}{:>12}  {}", "rule", "activation", "consequent");
            for row in &report.activations {
                let _ = writeln!(
                    text,
                    "{:<24}{:>12}  {}",
                    row.rule, row.activation, row.consequent
                );
            }
            emit(&text)?;
            if let Some(path) = curve {
                let csv = aggregate_curve_csv(&rule_base, humidity, wind, samples)?;
                write_file(&path, csv.as_bytes())?;
            }
            Ok(())
        }
        Command::Export {
            scenario,
            format,
            out,
        } => {
            let scenario = Scenario::load(&scenario)?;
            let report = run_scenario(&scenario)?;
            match format {
                ExportFormat::Csv => {
                    write_file(&out, ignition_csv(&report.ignition_times).as_bytes())
                }
                ExportFormat::Pgm => write_file(&out, &ignition_pgm(&report.ignition_times)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
