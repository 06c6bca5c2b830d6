//! One-shot controller evaluation outside any simulation: crisp output,
//! the activation of every rule and an optional sampled aggregate curve.

use fuzzy_core::{FuzzyError, RuleBase};
use serde::Serialize;

use crate::config::ScenarioError;

#[derive(Debug, Clone, Serialize)]
pub struct RuleActivation {
    /// Antecedent terms joined with " & ".
    pub rule: String,
    pub activation: f64,
    pub consequent: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FisReport {
    pub humidity: f64,
    pub wind: f64,
    pub crisp: f64,
    pub activations: Vec<RuleActivation>,
}

fn rule_activations(rule_base: &RuleBase, inputs: &[f64]) -> Vec<RuleActivation> {
    rule_base
        .rules()
        .iter()
        .map(|rule| {
            let mut level = f64::INFINITY;
            for (position, (variable, term)) in
                rule_base.inputs().iter().zip(&rule.antecedents).enumerate()
            {
                let x = variable.universe().clamp(inputs[position]);
                let degree = variable
                    .membership(term, x)
                    .expect("rule bases only hold known terms");
                level = level.min(degree);
            }
            RuleActivation {
                rule: rule.antecedents.join(" & "),
                activation: level,
                consequent: rule.consequent.clone(),
            }
        })
        .collect()
}

/// Evaluates the controller at one (humidity, wind) point. When every
/// rule activation is zero the error spells the activations out.
pub fn evaluate_controller(
    rule_base: &RuleBase,
    humidity: f64,
    wind: f64,
) -> Result<FisReport, ScenarioError> {
    if !humidity.is_finite() || !wind.is_finite() {
        return Err(ScenarioError::Invalid(
            "humidity and wind must be finite".into(),
        ));
    }
    let inputs = [humidity, wind];
    let activations = rule_activations(rule_base, &inputs);
    let crisp = match rule_base.evaluate(&inputs) {
        Ok(value) => value,
        Err(FuzzyError::ZeroActivation) => {
            let listing: Vec<String> = activations
                .iter()
                .map(|row| format!("{} -> {}: {}", row.rule, row.consequent, row.activation))
                .collect();
            return Err(ScenarioError::Invalid(format!(
                "no rule fires at h={humidity}, v={wind}; activations: [{}]",
                listing.join(", ")
            )));
        }
        Err(source) => {
            return Err(ScenarioError::Controller {
                context: "evaluation".into(),
                source,
            })
        }
    };
    Ok(FisReport {
        humidity,
        wind,
        crisp,
        activations,
    })
}

/// Samples the aggregated output curve on an even grid over the output
/// universe, as CSV with a `u,mu` header.
pub fn aggregate_curve_csv(
    rule_base: &RuleBase,
    humidity: f64,
    wind: f64,
    samples: usize,
) -> Result<String, ScenarioError> {
    assert!(samples >= 2, "a curve needs at least two samples");
    let evaluation = rule_base
        .evaluate_detailed(&[humidity, wind])
        .map_err(|source| ScenarioError::Controller {
            context: "evaluation".into(),
            source,
        })?;
    let universe = rule_base.output().universe();
    let (lo, hi) = (universe.lo(), universe.hi());
    let mut out = String::from("u,mu\n");
    for i in 0..samples {
        let u = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let mu = evaluation.aggregate.eval(u);
        out.push_str(&format!("{u},{mu}\n"));
    }
    Ok(out)
}
