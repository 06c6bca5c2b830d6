use std::fmt;

use fuzzy_core::ClippedSet;

/// Payload carried by one port event.
#[derive(Debug, Clone, PartialEq)]
pub enum EventValue {
    /// Crisp real value.
    Number(f64),
    /// Clipped consequent shape emitted by a fired inference rule.
    Contribution(ClippedSet),
    /// Ignition token for the cell space.
    Ignite,
    /// Environment sample: relative humidity in percent, wind speed in km/h.
    WeatherPair { humidity: f64, wind: f64 },
}

impl fmt::Display for EventValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Number(x) => write!(f, "{x}"),
            Self::Contribution(c) => {
                let [a, b, cc, d] = c.base().corners();
                write!(f, "contribution(level={}, base=[{}, {}, {}, {}])", c.level(), a, b, cc, d)
            }
            Self::Ignite => write!(f, "ignite"),
            Self::WeatherPair { humidity, wind } => write!(f, "weather(h={humidity}, v={wind})"),
        }
    }
}

/// One event on a named port. While routing, the port is rewritten from the
/// sender's output port to each receiver's input port.
#[derive(Debug, Clone, PartialEq)]
pub struct Message {
    pub port: String,
    pub value: EventValue,
}

impl Message {
    pub fn new(port: impl Into<String>, value: EventValue) -> Self {
        Self {
            port: port.into(),
            value,
        }
    }

    pub fn number(port: impl Into<String>, x: f64) -> Self {
        Self::new(port, EventValue::Number(x))
    }
}
