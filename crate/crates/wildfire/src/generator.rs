use std::collections::VecDeque;

use devs_kernel::{Atomic, EventValue, Message, ModelError, SimTime};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Happening {
    time: f64,
    weather: Option<(f64, f64)>,
    spark: bool,
}

/// Scripted source of weather samples and ignition sparks.
///
/// Weather leaves on `EnvOut` as a combined humidity and wind sample,
/// sparks leave on `FireOut`. Entries falling on the same instant leave in
/// one output, so a downstream inference pass and the first ignition can
/// share the instant.
pub struct GeneratorAm {
    timeline: VecDeque<Happening>,
    now: f64,
}

impl GeneratorAm {
    /// `weather` holds (time, humidity, wind) samples, `sparks` holds
    /// ignition times. Both are merged into one chronological timeline.
    pub fn new(weather: &[(f64, f64, f64)], sparks: &[f64]) -> Self {
        let mut all: Vec<Happening> = Vec::new();
        for (time, humidity, wind) in weather {
            assert!(
                time.is_finite() && *time >= 0.0,
                "weather times must be non-negative and finite, got {time}"
            );
            assert!(
                humidity.is_finite() && wind.is_finite(),
                "weather samples must be finite, got ({humidity}, {wind})"
            );
            all.push(Happening {
                time: *time,
                weather: Some((*humidity, *wind)),
                spark: false,
            });
        }
        for time in sparks {
            assert!(
                time.is_finite() && *time >= 0.0,
                "spark times must be non-negative and finite, got {time}"
            );
            all.push(Happening {
                time: *time,
                weather: None,
                spark: true,
            });
        }
        all.sort_by(|a, b| a.time.total_cmp(&b.time));

        let mut timeline: Vec<Happening> = Vec::new();
        for happening in all {
            match timeline.last_mut() {
                Some(last) if last.time == happening.time => {
                    if happening.weather.is_some() {
                        last.weather = happening.weather;
                    }
                    last.spark |= happening.spark;
                }
                _ => timeline.push(happening),
            }
        }
        Self {
            timeline: timeline.into(),
            now: 0.0,
        }
    }
}

impl Atomic for GeneratorAm {
    fn ta(&self) -> SimTime {
        self.timeline
            .front()
            .map_or(SimTime::INFINITY, |h| SimTime::minutes(h.time - self.now))
    }

    fn lambda(&self) -> Vec<Message> {
        let Some(happening) = self.timeline.front() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let Some((humidity, wind)) = happening.weather {
            out.push(Message::new(
                "EnvOut",
                EventValue::WeatherPair { humidity, wind },
            ));
        }
        if happening.spark {
            out.push(Message::new("FireOut", EventValue::Ignite));
        }
        out
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        if let Some(happening) = self.timeline.pop_front() {
            self.now = happening.time;
        }
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, _bag: &[Message]) -> Result<Vec<String>, ModelError> {
        Err(ModelError::new("the generator accepts no input"))
    }

    fn input_ports(&self) -> &[&'static str] {
        &[]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["EnvOut", "FireOut"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_weather_and_sparks_chronologically() {
        let mut g = GeneratorAm::new(&[(5.0, 40.0, 20.0), (1.0, 50.0, 30.0)], &[3.0]);

        assert_eq!(g.ta(), SimTime::minutes(1.0));
        assert_eq!(g.lambda().len(), 1);
        g.delta_int().unwrap();

        assert_eq!(g.ta(), SimTime::minutes(2.0));
        assert_eq!(g.lambda(), vec![Message::new("FireOut", EventValue::Ignite)]);
        g.delta_int().unwrap();

        assert_eq!(g.ta(), SimTime::minutes(2.0));
        g.delta_int().unwrap();
        assert!(g.ta().is_infinite());
    }

    #[test]
    fn simultaneous_weather_and_spark_leave_together() {
        let g = GeneratorAm::new(&[(0.0, 45.0, 35.0)], &[0.0]);
        let out = g.lambda();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].port, "EnvOut");
        assert_eq!(
            out[0].value,
            EventValue::WeatherPair { humidity: 45.0, wind: 35.0 }
        );
        assert_eq!(out[1], Message::new("FireOut", EventValue::Ignite));
    }

    #[test]
    fn an_empty_script_stays_passive() {
        let g = GeneratorAm::new(&[], &[]);
        assert!(g.ta().is_infinite());
        assert!(g.lambda().is_empty());
    }
}
