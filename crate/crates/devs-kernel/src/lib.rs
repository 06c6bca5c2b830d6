//! Discrete-event simulation kernel for hierarchical component models.
//!
//! A model is either atomic (implements [`Atomic`]) or coupled (a
//! [`CoupledModel`] wiring children through explicit port couplings). The
//! [`Kernel`] flattens the hierarchy once, resolves every coupling chain to
//! direct atomic-to-atomic routes and then runs a sequential event loop:
//!
//! * the clock jumps to the earliest scheduled event, never in fixed ticks;
//! * at one instant, components fire one at a time in a total select order
//!   derived from the hierarchy, so runs are reproducible;
//! * outputs are buffered per destination and handed over as one bag per
//!   external transition, so a receiver sees all same-time inputs together;
//! * every output, transition and warning is recorded in a [`Trace`].
//!
//! Time is a non-negative `f64` in minutes wrapped in [`SimTime`], with
//! infinity standing for "never"; a component whose lifetime is infinite
//! stays passive until a message wakes it.

mod atomic;
mod coupled;
mod kernel;
mod message;
mod time;
mod trace;

pub use atomic::{Atomic, ModelError};
pub use coupled::{Component, CoupledModel, PortRef, RouteTarget};
pub use kernel::{select_imminent, BuildError, Kernel, KernelError, StepOutcome, BAG_EPSILON};
pub use message::{EventValue, Message};
pub use time::SimTime;
pub use trace::{EventKind, Trace, TraceEntry};
