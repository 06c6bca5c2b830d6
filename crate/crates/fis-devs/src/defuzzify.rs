use devs_kernel::{Atomic, EventValue, Message, ModelError, SimTime};
use fuzzy_core::{aggregate, ClippedSet, Universe};

/// Collects one clipped consequent per rule, overlays them pointwise and
/// answers with the centroid of the combined shape on `OutNum`.
///
/// Contributions are held until the expected count is reached, normally
/// within a single bag because upstream rules fire at the same instant.
/// If every contribution arrives at level zero there is no shape to take a
/// centroid of, and the run is aborted rather than answering with a guess.
pub struct DefuzzificationAm {
    universe: Universe,
    expected: usize,
    received: Vec<ClippedSet>,
    pending: Option<f64>,
}

impl DefuzzificationAm {
    /// Expects one contribution from each of four rules.
    pub fn new(universe: Universe) -> Self {
        Self::with_expected(universe, 4)
    }

    pub fn with_expected(universe: Universe, expected: usize) -> Self {
        assert!(expected >= 1, "a defuzzifier needs at least one rule");
        Self {
            universe,
            expected,
            received: Vec::new(),
            pending: None,
        }
    }
}

impl Atomic for DefuzzificationAm {
    fn ta(&self) -> SimTime {
        if self.pending.is_some() {
            SimTime::ZERO
        } else {
            SimTime::INFINITY
        }
    }

    fn lambda(&self) -> Vec<Message> {
        self.pending
            .map_or(Vec::new(), |crisp| vec![Message::number("OutNum", crisp)])
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        self.pending = None;
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError> {
        let mut warnings = Vec::new();
        for message in bag {
            match &message.value {
                EventValue::Contribution(c) => self.received.push(*c),
                other => warnings.push(format!(
                    "ignored unusable input {}={other}",
                    message.port
                )),
            }
        }
        if self.received.len() > self.expected {
            return Err(ModelError::new(format!(
                "received {} contributions, expected {}",
                self.received.len(),
                self.expected
            )));
        }
        if self.received.len() == self.expected {
            let contributions = std::mem::take(&mut self.received);
            let curve = aggregate(&contributions, self.universe)
                .map_err(|e| ModelError::new(e.to_string()))?;
            let crisp = curve.centroid().map_err(|_| {
                let levels: Vec<f64> = contributions.iter().map(ClippedSet::level).collect();
                ModelError::new(format!(
                    "cannot defuzzify: every rule activation is zero (levels {levels:?})"
                ))
            })?;
            self.pending = Some(crisp);
        } else if !self.received.is_empty() {
            warnings.push(format!(
                "holding {} of {} contributions",
                self.received.len(),
                self.expected
            ));
        }
        Ok(warnings)
    }

    fn input_ports(&self) -> &[&'static str] {
        &["InFuz"]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["OutNum"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzy_core::{clip_consequent, defaults, Trapezoid};

    fn contribution(corners: [f64; 4], level: f64) -> Message {
        let base = Trapezoid::new(corners[0], corners[1], corners[2], corners[3]).unwrap();
        Message::new(
            "InFuz",
            EventValue::Contribution(clip_consequent(&base, level).unwrap()),
        )
    }

    fn stock_defuzz() -> DefuzzificationAm {
        DefuzzificationAm::new(defaults::lifetime_variable().universe())
    }

    #[test]
    fn mirrored_contributions_answer_the_band_midpoint() {
        let mut d = stock_defuzz();
        let bag = [
            contribution([0.3, 0.3, 0.4, 0.6], 0.5),
            contribution([0.4, 0.6, 0.8, 0.8], 0.5),
            contribution([0.3, 0.3, 0.4, 0.6], 0.0),
            contribution([0.4, 0.6, 0.8, 0.8], 0.0),
        ];
        let warnings = d.delta_ext(SimTime::ZERO, &bag).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(d.ta(), SimTime::ZERO);

        let out = d.lambda();
        match out[0].value {
            EventValue::Number(x) => assert!((x - 0.55).abs() < 1e-12, "got {x}"),
            ref other => panic!("unexpected payload {other}"),
        }
        d.delta_int().unwrap();
        assert!(d.ta().is_infinite());
    }

    #[test]
    fn waits_for_the_full_set_of_contributions() {
        let mut d = stock_defuzz();
        let warnings = d
            .delta_ext(SimTime::ZERO, &[contribution([0.3, 0.3, 0.4, 0.6], 0.5)])
            .unwrap();
        assert_eq!(warnings, vec!["holding 1 of 4 contributions".to_string()]);
        assert!(d.ta().is_infinite());
    }

    #[test]
    fn all_zero_activations_abort_instead_of_guessing() {
        let mut d = DefuzzificationAm::with_expected(
            defaults::lifetime_variable().universe(),
            2,
        );
        let bag = [
            contribution([0.3, 0.3, 0.4, 0.6], 0.0),
            contribution([0.4, 0.6, 0.8, 0.8], 0.0),
        ];
        let err = d.delta_ext(SimTime::ZERO, &bag).unwrap_err();
        assert!(err.message().contains("every rule activation is zero"));
    }

    #[test]
    fn surplus_contributions_are_an_error() {
        let mut d = DefuzzificationAm::with_expected(
            defaults::lifetime_variable().universe(),
            1,
        );
        let bag = [
            contribution([0.3, 0.3, 0.4, 0.6], 0.5),
            contribution([0.4, 0.6, 0.8, 0.8], 0.5),
        ];
        assert!(d.delta_ext(SimTime::ZERO, &bag).is_err());
    }
}
