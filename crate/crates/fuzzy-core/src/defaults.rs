//! Stock controller for the wildfire model: humidity and wind speed in,
//! cell burn lifetime in minutes out.

use crate::trapezoid::MembershipFunction;
use crate::variable::{FuzzyRule, LinguisticVariable, RuleBase, Term, Universe};

/// Humidity in percent, partitioned into "dry" and "wet".
pub fn humidity_variable() -> LinguisticVariable {
    LinguisticVariable::new(
        "humidity",
        Universe::new(0.0, 100.0).expect("stock universe"),
        vec![
            Term::new("dry", MembershipFunction::trapezoid(0.0, 0.0, 30.0, 70.0).expect("stock shape")),
            Term::new("wet", MembershipFunction::trapezoid(30.0, 70.0, 100.0, 100.0).expect("stock shape")),
        ],
    )
    .expect("stock variable")
}

/// Wind speed in km/h, partitioned into "calm" and "power".
pub fn wind_variable() -> LinguisticVariable {
    LinguisticVariable::new(
        "wind",
        Universe::new(0.0, 100.0).expect("stock universe"),
        vec![
            Term::new("calm", MembershipFunction::trapezoid(0.0, 0.0, 20.0, 50.0).expect("stock shape")),
            Term::new("power", MembershipFunction::trapezoid(20.0, 50.0, 100.0, 100.0).expect("stock shape")),
        ],
    )
    .expect("stock variable")
}

/// Burn lifetime in minutes, partitioned into "fast" and "slow".
pub fn lifetime_variable() -> LinguisticVariable {
    LinguisticVariable::new(
        "lifetime",
        Universe::new(0.3, 0.8).expect("stock universe"),
        vec![
            Term::new("fast", MembershipFunction::trapezoid(0.3, 0.3, 0.4, 0.6).expect("stock shape")),
            Term::new("slow", MembershipFunction::trapezoid(0.4, 0.6, 0.8, 0.8).expect("stock shape")),
        ],
    )
    .expect("stock variable")
}

/// Full stock rule base. Only a dry forest under power wind burns fast;
/// every other combination burns slow.
pub fn wildfire_rule_base() -> RuleBase {
    RuleBase::new(
        vec![humidity_variable(), wind_variable()],
        lifetime_variable(),
        vec![
            FuzzyRule::new(vec!["dry", "calm"], "slow"),
            FuzzyRule::new(vec!["wet", "calm"], "slow"),
            FuzzyRule::new(vec!["dry", "power"], "fast"),
            FuzzyRule::new(vec!["wet", "power"], "slow"),
        ],
    )
    .expect("stock rule base")
}
