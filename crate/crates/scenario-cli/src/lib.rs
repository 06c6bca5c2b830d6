//! Scenario front end for the wildfire simulation: JSON scenario files
//! in, run reports, mode comparisons, controller evaluations and grid
//! exports out. The `scenario-cli` binary wraps this crate.

pub mod config;
pub mod export;
pub mod fis_eval;
pub mod metrics;

pub use config::{
    FuzzyConfig, GridConfig, IgnitionConfig, Mode, RuleConfig, Scenario, ScenarioError,
    TermConfig, VariableConfig, WeatherSample,
};
pub use export::{ignition_csv, ignition_pgm, parse_ignition_csv};
pub use fis_eval::{aggregate_curve_csv, evaluate_controller, FisReport, RuleActivation};
pub use metrics::{compare_scenario, run_scenario, Comparison, RunError, RunReport};
