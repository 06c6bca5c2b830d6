//! Fuzzy inference expressed as discrete-event components.
//!
//! The pipeline mirrors the functional one from `fuzzy-core`, split into
//! message-passing stages: fuzzifiers turn a crisp sample into membership
//! degrees, rule components fire at the minimum of their antecedents and
//! the defuzzifier overlays every clipped consequent and answers with its
//! centroid. All stages have zero lifetime while holding an answer, so a
//! sample injected at time t yields the crisp result at time t and the
//! whole assembly is passive in between.
//!
//! [`build_fis_coupled`] wires the stages from any validated two-input
//! rule base.

mod builder;
mod defuzzify;
mod fuzzify;
mod rule;

pub use builder::{
    build_fis_coupled, fuzzifier_name, rule_component_name, INPUT_PORTS, OUTPUT_PORT,
};
pub use defuzzify::DefuzzificationAm;
pub use fuzzify::{FuzzificationAm, WeatherAxis};
pub use rule::RuleAm;
