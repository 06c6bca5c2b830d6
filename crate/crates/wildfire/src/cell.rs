use std::fmt;

use devs_kernel::{Atomic, EventValue, Message, ModelError, SimTime};

/// Life stages of one patch of vegetation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellPhase {
    /// Water, rock or cleared ground; never burns.
    Nonflammable,
    /// Fuel waiting for a spark.
    Unburned,
    /// On fire; sparks the neighbourhood when the flame dies down.
    Burning,
    /// Glowing remains, unable to ignite anything.
    Ember,
    /// Burnt out.
    Ash,
}

impl fmt::Display for CellPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nonflammable => "nonflammable",
            Self::Unburned => "unburned",
            Self::Burning => "burning",
            Self::Ember => "ember",
            Self::Ash => "ash",
        })
    }
}

/// One cell of the fire lattice.
///
/// The first spark moves an unburned cell to burning for its current burn
/// duration. The spark for the neighbourhood leaves at the end of that
/// phase; the cell then glows as an ember for a fixed fraction of the burn
/// duration and finally turns to ash for good. Duration updates arriving
/// in the same bag as a spark are applied before it, so an inferred
/// lifetime always beats the spark it travelled with. Sparks hitting a
/// cell that is already past unburned change nothing.
pub struct CellAm {
    phase: CellPhase,
    burn_duration: f64,
    ember_fraction: f64,
    sigma: SimTime,
}

impl CellAm {
    pub fn new(burn_duration: f64, ember_fraction: f64) -> Self {
        assert!(
            burn_duration.is_finite() && burn_duration > 0.0,
            "burn duration must be positive and finite, got {burn_duration}"
        );
        assert!(
            ember_fraction.is_finite() && ember_fraction >= 0.0,
            "ember fraction must be non-negative and finite, got {ember_fraction}"
        );
        Self {
            phase: CellPhase::Unburned,
            burn_duration,
            ember_fraction,
            sigma: SimTime::INFINITY,
        }
    }

    pub fn nonflammable() -> Self {
        Self {
            phase: CellPhase::Nonflammable,
            burn_duration: 1.0,
            ember_fraction: 0.0,
            sigma: SimTime::INFINITY,
        }
    }

    pub fn phase(&self) -> CellPhase {
        self.phase
    }

    pub fn burn_duration(&self) -> f64 {
        self.burn_duration
    }
}

impl Atomic for CellAm {
    fn ta(&self) -> SimTime {
        self.sigma
    }

    fn lambda(&self) -> Vec<Message> {
        if self.phase == CellPhase::Burning {
            vec![Message::new("Ignite", EventValue::Ignite)]
        } else {
            Vec::new()
        }
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        match self.phase {
            CellPhase::Burning => {
                self.phase = CellPhase::Ember;
                self.sigma = SimTime::minutes(self.ember_fraction * self.burn_duration);
                Ok(())
            }
            CellPhase::Ember => {
                self.phase = CellPhase::Ash;
                self.sigma = SimTime::INFINITY;
                Ok(())
            }
            other => Err(ModelError::new(format!(
                "no internal event is defined in phase {other}"
            ))),
        }
    }

    fn delta_ext(&mut self, elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError> {
        self.sigma = self.sigma - elapsed;
        let mut warnings = Vec::new();
        let mut spark = false;
        for message in bag {
            match (&message.value, message.port.as_str()) {
                (EventValue::Number(d), "Duration") => {
                    if !(d.is_finite() && *d > 0.0) {
                        return Err(ModelError::new(format!(
                            "burn duration must be positive and finite, got {d}"
                        )));
                    }
                    self.burn_duration = *d;
                }
                (EventValue::Ignite, "Ignite") => spark = true,
                _ => warnings.push(format!(
                    "ignored unusable input {}={}",
                    message.port, message.value
                )),
            }
        }
        if spark && self.phase == CellPhase::Unburned {
            self.phase = CellPhase::Burning;
            self.sigma = SimTime::minutes(self.burn_duration);
        }
        Ok(warnings)
    }

    fn input_ports(&self) -> &[&'static str] {
        &["Ignite", "Duration"]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["Ignite"]
    }
}
