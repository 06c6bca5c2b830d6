use std::fmt;

use crate::message::Message;
use crate::time::SimTime;

/// Error raised inside a model transition. The kernel wraps it with the
/// component path and the simulation time before aborting the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelError(String);

impl ModelError {
    pub fn new(message: impl Into<String>) -> Self {
        Self(message.into())
    }

    pub fn message(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ModelError {}

/// Behaviour contract for an atomic component.
///
/// The kernel owns the clock; a model only ever sees its own state. `ta`
/// reports the remaining lifetime of the current state. When it expires the
/// kernel calls `lambda` and then `delta_int` at the same instant. Messages
/// arriving at one instant are handed to `delta_ext` as a single bag,
/// together with the time elapsed since the model's last transition.
pub trait Atomic: Send {
    /// Remaining lifetime of the current state; `SimTime::INFINITY` when passive.
    fn ta(&self) -> SimTime;

    /// Output for the expiring state. Called immediately before `delta_int`.
    fn lambda(&self) -> Vec<Message>;

    /// Internal transition at the end of the current lifetime.
    fn delta_int(&mut self) -> Result<(), ModelError>;

    /// External transition. `elapsed` is the time since the last transition
    /// of this component; `bag` holds every message delivered at this
    /// instant. Returned strings are recorded in the trace as warnings.
    fn delta_ext(&mut self, elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError>;

    /// Input ports this model accepts; couplings to others are rejected.
    fn input_ports(&self) -> &[&'static str];

    /// Output ports this model may emit on; emitting elsewhere aborts the run.
    fn output_ports(&self) -> &[&'static str];
}
