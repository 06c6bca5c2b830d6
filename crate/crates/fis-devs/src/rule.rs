use devs_kernel::{Atomic, EventValue, Message, ModelError, SimTime};
use fuzzy_core::{clip_consequent, rule_activation, ClippedSet, Trapezoid};

/// One inference rule over two antecedent degrees.
///
/// Both degrees must arrive in the same bag. The rule fires at the minimum
/// of the two and emits its consequent shape clipped at that level, even at
/// level zero, so the defuzzifier downstream can count one contribution per
/// rule. A partial bag is dropped with a warning; the next complete bag
/// works normally.
pub struct RuleAm {
    consequent: Trapezoid,
    pending: Option<ClippedSet>,
}

impl RuleAm {
    pub fn new(consequent: Trapezoid) -> Self {
        Self {
            consequent,
            pending: None,
        }
    }
}

impl Atomic for RuleAm {
    fn ta(&self) -> SimTime {
        if self.pending.is_some() {
            SimTime::ZERO
        } else {
            SimTime::INFINITY
        }
    }

    fn lambda(&self) -> Vec<Message> {
        self.pending.map_or(Vec::new(), |clipped| {
            vec![Message::new("OutFuz", EventValue::Contribution(clipped))]
        })
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        self.pending = None;
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError> {
        let mut first = None;
        let mut second = None;
        for message in bag {
            if let EventValue::Number(x) = message.value {
                match message.port.as_str() {
                    "InNum1" => first = Some(x),
                    "InNum2" => second = Some(x),
                    _ => {}
                }
            }
        }
        match (first, second) {
            (Some(a), Some(b)) => {
                let level =
                    rule_activation(&[a, b]).map_err(|e| ModelError::new(e.to_string()))?;
                let clipped = clip_consequent(&self.consequent, level)
                    .map_err(|e| ModelError::new(e.to_string()))?;
                self.pending = Some(clipped);
                Ok(Vec::new())
            }
            (None, None) => Ok(vec!["dropped bag with no antecedent degrees".to_string()]),
            _ => Ok(vec![
                "dropped incomplete antecedent bag (1 of 2 degrees)".to_string()
            ]),
        }
    }

    fn input_ports(&self) -> &[&'static str] {
        &["InNum1", "InNum2"]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["OutFuz"]
    }
}
