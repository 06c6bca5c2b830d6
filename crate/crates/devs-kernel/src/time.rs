use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

/// Point on the simulation clock, in minutes. May be positive infinity,
/// which stands for "never". Values are always non-negative and never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimTime(f64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0.0);
    pub const INFINITY: SimTime = SimTime(f64::INFINITY);

    /// Finite or infinite, but never negative or NaN.
    pub fn minutes(m: f64) -> SimTime {
        assert!(m >= 0.0, "simulation time must be non-negative, got {m}");
        SimTime(m)
    }

    pub fn as_minutes(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl Add for SimTime {
    type Output = SimTime;

    /// Infinity absorbs addition.
    fn add(self, rhs: SimTime) -> SimTime {
        SimTime(self.0 + rhs.0)
    }
}

impl Sub for SimTime {
    type Output = SimTime;

    /// Difference saturated at zero, so rounding can never produce a
    /// negative time. Infinity minus a finite value stays infinity.
    fn sub(self, rhs: SimTime) -> SimTime {
        if self.0.is_infinite() {
            return SimTime::INFINITY;
        }
        SimTime((self.0 - rhs.0).max(0.0))
    }
}

impl Eq for SimTime {}

impl PartialOrd for SimTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimTime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
