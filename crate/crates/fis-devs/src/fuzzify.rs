use devs_kernel::{Atomic, EventValue, Message, ModelError, SimTime};
use fuzzy_core::{MembershipFunction, Universe};

/// Which half of a weather sample a fuzzifier reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeatherAxis {
    Humidity,
    Wind,
}

/// Turns one crisp input into the membership degree of one linguistic term.
///
/// The component is passive until a value arrives, then answers on `Out`
/// within the same instant and goes passive again. Inputs are clamped to
/// the variable's universe before evaluation.
pub struct FuzzificationAm {
    shape: MembershipFunction,
    universe: Universe,
    axis: Option<WeatherAxis>,
    pending: Option<f64>,
}

impl FuzzificationAm {
    /// Accepts plain numbers only.
    pub fn new(shape: MembershipFunction, universe: Universe) -> Self {
        Self {
            shape,
            universe,
            axis: None,
            pending: None,
        }
    }

    /// Additionally accepts weather samples, reading the given axis.
    pub fn for_pair_axis(shape: MembershipFunction, universe: Universe, axis: WeatherAxis) -> Self {
        Self {
            shape,
            universe,
            axis: Some(axis),
            pending: None,
        }
    }
}

impl Atomic for FuzzificationAm {
    fn ta(&self) -> SimTime {
        if self.pending.is_some() {
            SimTime::ZERO
        } else {
            SimTime::INFINITY
        }
    }

    fn lambda(&self) -> Vec<Message> {
        self.pending
            .map_or(Vec::new(), |degree| vec![Message::number("Out", degree)])
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        self.pending = None;
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError> {
        let mut warnings = Vec::new();
        for message in bag {
            let x = match (&message.value, self.axis) {
                (EventValue::Number(x), _) => Some(*x),
                (EventValue::WeatherPair { humidity, .. }, Some(WeatherAxis::Humidity)) => {
                    Some(*humidity)
                }
                (EventValue::WeatherPair { wind, .. }, Some(WeatherAxis::Wind)) => Some(*wind),
                _ => None,
            };
            match x {
                Some(x) if x.is_finite() => {
                    self.pending = Some(self.shape.eval(self.universe.clamp(x)));
                }
                Some(x) => return Err(ModelError::new(format!("non-finite input {x}"))),
                None => warnings.push(format!(
                    "ignored unusable input {}={}",
                    message.port, message.value
                )),
            }
        }
        Ok(warnings)
    }

    fn input_ports(&self) -> &[&'static str] {
        &["In"]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["Out"]
    }
}
