//! Mamdani fuzzy inference over trapezoidal membership functions.
//!
//! The crate implements the classic five-step pass: membership degrees,
//! rule activation by minimum, consequent clipping, aggregation by pointwise
//! maximum and centre-of-gravity defuzzification. Aggregation builds an
//! exact piecewise-linear envelope (corners, clip crossings and
//! inter-contribution crossings all become breakpoints), and the centroid is
//! integrated segment by segment in closed form. A trapezoidal-quadrature
//! estimate is available to cross-check the exact path.

pub mod defaults;
mod error;
mod inference;
mod piecewise;
mod trapezoid;
mod variable;

pub use error::FuzzyError;
pub use inference::{aggregate, clip_consequent, rule_activation, Evaluation};
pub use piecewise::PiecewiseLinearFn;
pub use trapezoid::{ClippedSet, MembershipFunction, Trapezoid};
pub use variable::{FuzzyRule, LinguisticVariable, RuleBase, Term, Universe};
