//! Scenario files: a JSON description of one forest run, covering the
//! lattice, the weather timeline, the burn mode and an optional custom
//! fuzzy controller.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use fuzzy_core::{
    defaults, FuzzyError, FuzzyRule, LinguisticVariable, MembershipFunction, RuleBase, Term,
    Universe,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use wildfire::{BurnModel, ForestSpec};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed scenario JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("invalid fuzzy controller ({context}): {source}")]
    Controller {
        context: String,
        source: FuzzyError,
    },
}

fn invalid(message: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid(message.into())
}

/// How cell burn durations are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every cell burns for `conventional_tau_min` minutes.
    Conventional,
    /// A fuzzy controller infers the duration from the weather.
    Fuzzy,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Conventional => write!(f, "conventional"),
            Mode::Fuzzy => write!(f, "fuzzy"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IgnitionConfig {
    pub row: usize,
    pub col: usize,
    /// Minute at which the spark arrives.
    #[serde(default)]
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub rows: usize,
    pub cols: usize,
    /// 1-based (row, col) pairs that can never burn.
    #[serde(default)]
    pub nonflammable: Vec<(usize, usize)>,
    pub ignition: IgnitionConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherSample {
    pub time: f64,
    pub humidity_pct: f64,
    pub wind_kmh: f64,
}

/// One linguistic term; exactly one shape field must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trapezoid: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crisp: Option<[f64; 2]>,
}

impl TermConfig {
    fn shape(&self, context: &str) -> Result<MembershipFunction, ScenarioError> {
        let given = [
            self.trapezoid.is_some(),
            self.triangle.is_some(),
            self.crisp.is_some(),
        ]
        .iter()
        .filter(|present| **present)
        .count();
        if given != 1 {
            return Err(invalid(format!(
                "term '{}' in {context} must carry exactly one of trapezoid, triangle or crisp",
                self.name
            )));
        }
        let shape = if let Some([a, b, c, d]) = self.trapezoid {
            MembershipFunction::trapezoid(a, b, c, d)
        } else if let Some([a, b, c]) = self.triangle {
            MembershipFunction::triangle(a, b, c)
        } else {
            let [a, b] = self.crisp.unwrap();
            MembershipFunction::crisp(a, b)
        };
        shape.map_err(|source| ScenarioError::Controller {
            context: format!("term '{}' in {context}", self.name),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableConfig {
    pub universe: [f64; 2],
    pub terms: Vec<TermConfig>,
}

impl VariableConfig {
    fn variable(&self, name: &str) -> Result<LinguisticVariable, ScenarioError> {
        let [lo, hi] = self.universe;
        let universe = Universe::new(lo, hi).map_err(|source| ScenarioError::Controller {
            context: format!("universe of '{name}'"),
            source,
        })?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            terms.push(Term::new(term.name.clone(), term.shape(name)?));
        }
        LinguisticVariable::new(name, universe, terms).map_err(|source| {
            ScenarioError::Controller {
                context: format!("variable '{name}'"),
                source,
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    /// Antecedent terms, one for humidity and one for wind.
    #[serde(rename = "if")]
    pub antecedents: [String; 2],
    pub then: String,
}

/// Replacement controller. Omitted sections are impossible: a custom
/// controller spells out all three variables and the full rule table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyConfig {
    pub humidity: VariableConfig,
    pub wind: VariableConfig,
    pub lifetime: VariableConfig,
    pub rules: Vec<RuleConfig>,
}

impl FuzzyConfig {
    pub fn rule_base(&self) -> Result<RuleBase, ScenarioError> {
        let humidity = self.humidity.variable("humidity")?;
        let wind = self.wind.variable("wind")?;
        let lifetime = self.lifetime.variable("lifetime")?;
        let rules = self
            .rules
            .iter()
            .map(|rule| {
                FuzzyRule::new(rule.antecedents.to_vec(), rule.then.clone())
            })
            .collect();
        RuleBase::new(vec![humidity, wind], lifetime, rules).map_err(|source| {
            ScenarioError::Controller {
                context: "rule table".into(),
                source,
            }
        })
    }
}

fn default_ember_fraction() -> f64 {
    0.2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub grid: GridConfig,
    /// Weather timeline; each sample is broadcast to the controller.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weather: Vec<WeatherSample>,
    pub mode: Mode,
    /// Fixed burn duration in minutes; required in conventional mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conventional_tau_min: Option<f64>,
    /// Ember lifetime as a fraction of the burn duration.
    #[serde(default = "default_ember_fraction")]
    pub ember_fraction: f64,
    /// When true, run reports keep the full event trace text.
    #[serde(default)]
    pub trace: bool,
    /// Custom controller; the stock wildfire controller applies when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy_config: Option<FuzzyConfig>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Scenario = serde_json::from_str(text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Normalized dump: parsing it back yields an equal scenario.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let grid = &self.grid;
        if grid.rows < 1 || grid.cols < 1 {
            return Err(invalid("the grid needs at least one row and one column"));
        }
        for &(row, col) in &grid.nonflammable {
            if !(1..=grid.rows).contains(&row) || !(1..=grid.cols).contains(&col) {
                return Err(invalid(format!(
                    "nonflammable cell ({row}, {col}) lies outside the {}x{} grid",
                    grid.rows, grid.cols
                )));
            }
        }
        let ignition = &grid.ignition;
        if !(1..=grid.rows).contains(&ignition.row) || !(1..=grid.cols).contains(&ignition.col) {
            return Err(invalid(format!(
                "ignition cell ({}, {}) lies outside the {}x{} grid",
                ignition.row, ignition.col, grid.rows, grid.cols
            )));
        }
        if grid.nonflammable.contains(&(ignition.row, ignition.col)) {
            return Err(invalid(format!(
                "ignition cell ({}, {}) is marked nonflammable",
                ignition.row, ignition.col
            )));
        }
        if !ignition.time.is_finite() || ignition.time < 0.0 {
            return Err(invalid("ignition time must be finite and non-negative"));
        }
        let mut previous = f64::NEG_INFINITY;
        for sample in &self.weather {
            if !sample.time.is_finite()
                || !sample.humidity_pct.is_finite()
                || !sample.wind_kmh.is_finite()
            {
                return Err(invalid("weather samples must be finite"));
            }
            if sample.time < 0.0 {
                return Err(invalid("weather sample times must be non-negative"));
            }
            if sample.time <= previous {
                return Err(invalid("weather sample times must be strictly increasing"));
            }
            previous = sample.time;
        }
        if !self.ember_fraction.is_finite() || self.ember_fraction < 0.0 {
            return Err(invalid("ember_fraction must be finite and non-negative"));
        }
        match self.mode {
            Mode::Conventional => match self.conventional_tau_min {
                Some(tau) if tau.is_finite() && tau > 0.0 => {}
                Some(_) => {
                    return Err(invalid("conventional_tau_min must be finite and positive"))
                }
                None => {
                    return Err(invalid(
                        "conventional mode needs conventional_tau_min to be set",
                    ))
                }
            },
            Mode::Fuzzy => {
                let covered = self
                    .weather
                    .iter()
                    .any(|sample| sample.time <= ignition.time);
                if !covered {
                    return Err(invalid(format!(
                        "fuzzy mode needs a weather sample at or before the ignition time {}",
                        ignition.time
                    )));
                }
            }
        }
        if let Some(tau) = self.conventional_tau_min {
            if !tau.is_finite() || tau <= 0.0 {
                return Err(invalid("conventional_tau_min must be finite and positive"));
            }
        }
        if let Some(config) = &self.fuzzy_config {
            config.rule_base()?;
        }
        Ok(())
    }

    /// Controller the scenario runs with: the custom one when given,
    /// otherwise the stock wildfire controller.
    pub fn rule_base(&self) -> Result<RuleBase, ScenarioError> {
        match &self.fuzzy_config {
            Some(config) => config.rule_base(),
            None => Ok(defaults::wildfire_rule_base()),
        }
    }

    pub fn forest_spec(&self) -> Result<ForestSpec, ScenarioError> {
        let burn_model = match self.mode {
            Mode::Conventional => {
                let tau = self.conventional_tau_min.ok_or_else(|| {
                    invalid("conventional mode needs conventional_tau_min to be set")
                })?;
                BurnModel::FixedLifetime(tau)
            }
            Mode::Fuzzy => BurnModel::Inferred(self.rule_base()?),
        };
        Ok(ForestSpec {
            rows: self.grid.rows,
            cols: self.grid.cols,
            nonflammable: self.grid.nonflammable.iter().copied().collect::<HashSet<_>>(),
            ignition: (self.grid.ignition.row, self.grid.ignition.col),
            ignition_time: self.grid.ignition.time,
            weather: self
                .weather
                .iter()
                .map(|sample| (sample.time, sample.humidity_pct, sample.wind_kmh))
                .collect(),
            ember_fraction: self.ember_fraction,
            burn_model,
        })
    }
}
