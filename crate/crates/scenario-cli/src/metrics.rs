//! Runs a scenario to quiescence and boils the event trace down to the
//! numbers worth comparing: per-cell ignition times, consumption times
//! for the whole forest and a hash of the trace for determinism checks.

use std::time::Instant;

use devs_kernel::{BuildError, EventKind, EventValue, Kernel, KernelError, SimTime, Trace};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;
use wildfire::{build_forest, parse_cell_name};

use crate::config::{Mode, Scenario, ScenarioError};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("model construction failed: {0}")]
    Build(#[from] BuildError),
    #[error("simulation failed: {0}")]
    Kernel(#[from] KernelError),
}

/// Everything one run produces. Wall clock time is informational only;
/// repeated runs of the same scenario agree on every other field.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub mode: Mode,
    pub rows: usize,
    pub cols: usize,
    /// Burn duration of a single cell in minutes. In fuzzy mode this is
    /// the first duration the controller inferred.
    pub cell_consumption_time_min: f64,
    /// Minute the last burning cell turned to ember.
    pub forest_consumption_to_ember_min: Option<f64>,
    /// Minute the last ember turned to ash.
    pub forest_consumption_to_ash_min: Option<f64>,
    pub burned_cell_count: usize,
    pub flammable_cell_count: usize,
    pub internal_events: u64,
    pub external_events: u64,
    pub event_count: u64,
    /// Time of the last processed event.
    pub final_time_min: f64,
    pub wall_clock_s: f64,
    pub trace_sha256: String,
    /// Ignition minute per cell, row-major; None for cells that never burned.
    #[serde(skip)]
    pub ignition_times: Vec<Vec<Option<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_text: Option<String>,
}

impl RunReport {
    pub fn ignition_time(&self, row: usize, col: usize) -> Option<f64> {
        self.ignition_times[row - 1][col - 1]
    }
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|byte| format!("{byte:02x}"))
        .collect()
}

struct CellLifecycle {
    ignited_at: Option<f64>,
    ember_at: Option<f64>,
    ash_at: Option<f64>,
}

fn scan_trace(trace: &Trace, rows: usize, cols: usize) -> (Vec<Vec<CellLifecycle>>, Option<f64>) {
    let mut cells: Vec<Vec<CellLifecycle>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| CellLifecycle {
                    ignited_at: None,
                    ember_at: None,
                    ash_at: None,
                })
                .collect()
        })
        .collect();
    let mut inferred_duration = None;

    for entry in trace.entries() {
        let Some(name) = entry.component.strip_prefix("forest.") else {
            continue;
        };
        if name == "fis.defuzz" && entry.kind == EventKind::Output {
            if inferred_duration.is_none() {
                if let Some(message) = entry.messages.first() {
                    if let EventValue::Number(value) = message.value {
                        inferred_duration = Some(value);
                    }
                }
            }
            continue;
        }
        let Some((row, col)) = parse_cell_name(name) else {
            continue;
        };
        let cell = &mut cells[row - 1][col - 1];
        let time = entry.time.as_minutes();
        match entry.kind {
            EventKind::External => {
                let sparked = entry
                    .messages
                    .iter()
                    .any(|message| message.value == EventValue::Ignite);
                if sparked && cell.ignited_at.is_none() {
                    cell.ignited_at = Some(time);
                }
            }
            EventKind::Internal => {
                if cell.ember_at.is_none() {
                    cell.ember_at = Some(time);
                } else if cell.ash_at.is_none() {
                    cell.ash_at = Some(time);
                }
            }
            _ => {}
        }
    }
    for cell in cells.iter_mut().flatten() {
        if cell.ember_at.is_none() {
            cell.ignited_at = None;
        }
    }
    (cells, inferred_duration)
}

/// Builds the forest, runs it until no event remains and reports.
pub fn run_scenario(scenario: &Scenario) -> Result<RunReport, RunError> {
    scenario.validate()?;
    let spec = scenario.forest_spec()?;
    let forest = build_forest(&spec);

    let started = Instant::now();
    let mut kernel = Kernel::new(forest, SimTime::ZERO)?;
    let final_time = kernel.run_until(SimTime::INFINITY)?;
    let wall_clock_s = started.elapsed().as_secs_f64();

    let trace = kernel.take_trace();
    let (cells, inferred_duration) = scan_trace(&trace, spec.rows, spec.cols);

    let cell_consumption_time_min = match scenario.mode {
        Mode::Conventional => scenario
            .conventional_tau_min
            .expect("validated conventional scenario carries a duration"),
        Mode::Fuzzy => inferred_duration.ok_or_else(|| {
            ScenarioError::Invalid("the controller never produced a burn duration".into())
        })?,
    };

    let mut burned_cell_count = 0;
    let mut forest_ember: Option<f64> = None;
    let mut forest_ash: Option<f64> = None;
    let mut ignition_times = Vec::with_capacity(spec.rows);
    for row in &cells {
        let mut times = Vec::with_capacity(spec.cols);
        for cell in row {
            times.push(cell.ignited_at);
            if cell.ignited_at.is_some() {
                burned_cell_count += 1;
            }
            if let Some(t) = cell.ember_at {
                forest_ember = Some(forest_ember.map_or(t, |m: f64| m.max(t)));
            }
            if let Some(t) = cell.ash_at {
                forest_ash = Some(forest_ash.map_or(t, |m: f64| m.max(t)));
            }
        }
        ignition_times.push(times);
    }

    let trace_text = trace.to_text();
    Ok(RunReport {
        mode: scenario.mode,
        rows: spec.rows,
        cols: spec.cols,
        cell_consumption_time_min,
        forest_consumption_to_ember_min: forest_ember,
        forest_consumption_to_ash_min: forest_ash,
        burned_cell_count,
        flammable_cell_count: spec.rows * spec.cols - spec.nonflammable.len(),
        internal_events: kernel.internal_events(),
        external_events: kernel.external_events(),
        event_count: kernel.internal_events() + kernel.external_events(),
        final_time_min: final_time.as_minutes(),
        wall_clock_s,
        trace_sha256: sha256_hex(&trace_text),
        ignition_times,
        trace_text: scenario.trace.then_some(trace_text),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub conventional: RunReport,
    pub fuzzy: RunReport,
    /// Fuzzy over conventional, using the to-ash consumption times.
    pub forest_time_ratio: f64,
    /// Fuzzy over conventional single-cell burn duration.
    pub cell_time_ratio: f64,
}

/// Runs the same scenario in both modes; the scenario must carry
/// everything both need. The two runs execute concurrently.
pub fn compare_scenario(scenario: &Scenario) -> Result<Comparison, RunError> {
    let mut conventional = scenario.clone();
    conventional.mode = Mode::Conventional;
    conventional.validate()?;
    let mut fuzzy = scenario.clone();
    fuzzy.mode = Mode::Fuzzy;
    fuzzy.validate()?;

    let (conventional_run, fuzzy_run) = std::thread::scope(|scope| {
        let conventional_handle = scope.spawn(|| run_scenario(&conventional));
        let fuzzy_handle = scope.spawn(|| run_scenario(&fuzzy));
        (
            conventional_handle.join().expect("conventional run panicked"),
            fuzzy_handle.join().expect("fuzzy run panicked"),
        )
    });
    let conventional = conventional_run?;
    let fuzzy = fuzzy_run?;

    let ash_pair = conventional
        .forest_consumption_to_ash_min
        .zip(fuzzy.forest_consumption_to_ash_min);
    let forest_time_ratio = match ash_pair {
        Some((base, inferred)) if base > 0.0 => inferred / base,
        _ => {
            return Err(RunError::Scenario(ScenarioError::Invalid(
                "the forest never finished burning, so times cannot be compared".into(),
            )))
        }
    };
    let cell_time_ratio = fuzzy.cell_consumption_time_min / conventional.cell_consumption_time_min;

    Ok(Comparison {
        conventional,
        fuzzy,
        forest_time_ratio,
        cell_time_ratio,
    })
}
