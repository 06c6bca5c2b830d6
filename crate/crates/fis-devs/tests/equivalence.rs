use std::collections::VecDeque;
use std::sync::{Arc, Mutex};

use devs_kernel::{
    Atomic, CoupledModel, EventKind, EventValue, Kernel, Message, ModelError, SimTime,
};
use fis_devs::build_fis_coupled;
use fuzzy_core::defaults;

/// Feeds scheduled samples into the inference assembly. Each entry is a gap
/// from the previous event plus an optional value per input; `as_pair`
/// sends one combined weather sample instead of two numbers.
struct Driver {
    schedule: VecDeque<(f64, Option<f64>, Option<f64>)>,
    as_pair: bool,
}

impl Driver {
    fn numbers(samples: &[(f64, f64, f64)]) -> Self {
        Self {
            schedule: samples.iter().map(|(g, h, v)| (*g, Some(*h), Some(*v))).collect(),
            as_pair: false,
        }
    }

    fn pairs(samples: &[(f64, f64, f64)]) -> Self {
        let mut d = Self::numbers(samples);
        d.as_pair = true;
        d
    }

    fn sparse(schedule: &[(f64, Option<f64>, Option<f64>)]) -> Self {
        Self {
            schedule: schedule.iter().copied().collect(),
            as_pair: false,
        }
    }
}

impl Atomic for Driver {
    fn ta(&self) -> SimTime {
        self.schedule
            .front()
            .map_or(SimTime::INFINITY, |(gap, _, _)| SimTime::minutes(*gap))
    }

    fn lambda(&self) -> Vec<Message> {
        let Some((_, h, v)) = self.schedule.front() else {
            return Vec::new();
        };
        if self.as_pair {
            let (Some(h), Some(v)) = (h, v) else {
                return Vec::new();
            };
            return vec![Message::new(
                "OutEnv",
                EventValue::WeatherPair { humidity: *h, wind: *v },
            )];
        }
        let mut out = Vec::new();
        if let Some(h) = h {
            out.push(Message::number("OutH", *h));
        }
        if let Some(v) = v {
            out.push(Message::number("OutV", *v));
        }
        out
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        self.schedule.pop_front();
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, _bag: &[Message]) -> Result<Vec<String>, ModelError> {
        Err(ModelError::new("driver accepts no input"))
    }

    fn input_ports(&self) -> &[&'static str] {
        &[]
    }

    fn output_ports(&self) -> &[&'static str] {
        &["OutH", "OutV", "OutEnv"]
    }
}

type Answers = Arc<Mutex<Vec<f64>>>;

struct Sink {
    answers: Answers,
}

impl Sink {
    fn new() -> (Self, Answers) {
        let answers: Answers = Arc::default();
        (
            Self {
                answers: Arc::clone(&answers),
            },
            answers,
        )
    }
}

impl Atomic for Sink {
    fn ta(&self) -> SimTime {
        SimTime::INFINITY
    }

    fn lambda(&self) -> Vec<Message> {
        Vec::new()
    }

    fn delta_int(&mut self) -> Result<(), ModelError> {
        Ok(())
    }

    fn delta_ext(&mut self, _elapsed: SimTime, bag: &[Message]) -> Result<Vec<String>, ModelError> {
        for message in bag {
            if let EventValue::Number(x) = message.value {
                self.answers.lock().unwrap().push(x);
            }
        }
        Ok(Vec::new())
    }

    fn input_ports(&self) -> &[&'static str] {
        &["In"]
    }

    fn output_ports(&self) -> &[&'static str] {
        &[]
    }
}

fn rig(driver: Driver) -> (Kernel, Answers) {
    let mut root = CoupledModel::new("root");
    root.add_atomic("driver", driver);
    root.add_coupled("fis", build_fis_coupled("fis", &defaults::wildfire_rule_base()));
    let (sink, answers) = Sink::new();
    root.add_atomic("sink", sink);
    root.couple("driver", "OutH", "fis", "InH");
    root.couple("driver", "OutV", "fis", "InV");
    root.couple("driver", "OutEnv", "fis", "InH");
    root.couple("driver", "OutEnv", "fis", "InV");
    root.couple("fis", "OutNum", "sink", "In");
    (Kernel::new(root, SimTime::ZERO).unwrap(), answers)
}

#[test]
fn pipeline_matches_direct_evaluation_across_the_grid() {
    let rule_base = defaults::wildfire_rule_base();
    let mut samples = Vec::new();
    let mut expected = Vec::new();
    for i in 0..=32 {
        for j in 0..=32 {
            let h = f64::from(i) * 100.0 / 32.0;
            let v = f64::from(j) * 100.0 / 32.0;
            samples.push((1.0, h, v));
            expected.push(rule_base.evaluate(&[h, v]).unwrap());
        }
    }

    let (mut kernel, answers) = rig(Driver::numbers(&samples));
    kernel.run_until(SimTime::minutes(samples.len() as f64 + 1.0)).unwrap();
    assert!(kernel.is_quiescent());

    let answers = answers.lock().unwrap();
    assert_eq!(answers.len(), expected.len());
    for (got, want) in answers.iter().zip(&expected) {
        assert!((got - want).abs() <= 1e-9, "pipeline {got} vs direct {want}");
    }
}

#[test]
fn the_answer_arrives_within_the_injection_instant() {
    let (mut kernel, answers) = rig(Driver::numbers(&[(7.0, 45.0, 35.0)]));
    kernel.run_until(SimTime::minutes(100.0)).unwrap();

    assert_eq!(answers.lock().unwrap().len(), 1);
    let sink_delivery = kernel
        .trace()
        .entries()
        .iter()
        .find(|e| &*e.component == "root.sink" && e.kind == EventKind::External)
        .expect("sink never heard an answer");
    assert_eq!(sink_delivery.time, SimTime::minutes(7.0));
    assert!(kernel.is_quiescent());
}

#[test]
fn weather_pairs_and_split_numbers_agree() {
    let samples = [(1.0, 45.0, 35.0), (1.0, 80.0, 10.0), (1.0, 3.0, 97.0)];

    let (mut split, split_answers) = rig(Driver::numbers(&samples));
    split.run_until(SimTime::minutes(10.0)).unwrap();
    let (mut paired, paired_answers) = rig(Driver::pairs(&samples));
    paired.run_until(SimTime::minutes(10.0)).unwrap();

    assert_eq!(*split_answers.lock().unwrap(), *paired_answers.lock().unwrap());
    assert_eq!(split_answers.lock().unwrap().len(), samples.len());
}

#[test]
fn known_inputs_hit_frozen_answers() {
    let cases = [
        (45.0, 35.0, 0.55),
        (80.0, 10.0, 0.6444444444444445),
        (0.0, 100.0, 0.4083333333333333),
    ];
    for (h, v, want) in cases {
        let (mut kernel, answers) = rig(Driver::numbers(&[(1.0, h, v)]));
        kernel.run_until(SimTime::minutes(2.0)).unwrap();
        let got = answers.lock().unwrap()[0];
        assert!((got - want).abs() < 1e-12, "({h}, {v}) gave {got}, want {want}");
    }
}

#[test]
fn generated_assembly_has_one_component_per_stage() {
    let fis = build_fis_coupled("fis", &defaults::wildfire_rule_base());
    let kernel = Kernel::new(fis, SimTime::ZERO).unwrap();
    assert_eq!(
        kernel.component_paths(),
        vec![
            "fis.fuzz_humidity_dry",
            "fis.fuzz_humidity_wet",
            "fis.fuzz_wind_calm",
            "fis.fuzz_wind_power",
            "fis.rule_dry_calm",
            "fis.rule_wet_calm",
            "fis.rule_dry_power",
            "fis.rule_wet_power",
            "fis.defuzz",
        ]
    );
}

#[test]
fn a_lone_humidity_number_warns_then_recovers() {
    let schedule = [
        (1.0, Some(45.0), None),
        (1.0, Some(45.0), Some(35.0)),
    ];
    let (mut kernel, answers) = rig(Driver::sparse(&schedule));
    kernel.run_until(SimTime::minutes(10.0)).unwrap();

    let warnings: Vec<_> = kernel
        .trace()
        .entries()
        .iter()
        .filter(|e| e.kind == EventKind::Warning && e.time == SimTime::minutes(1.0))
        .collect();
    assert!(
        warnings
            .iter()
            .any(|e| e.note.as_deref().unwrap_or("").contains("incomplete antecedent")),
        "expected rule components to flag the partial sample"
    );

    let answers = answers.lock().unwrap();
    assert_eq!(answers.len(), 1);
    assert!((answers[0] - 0.55).abs() < 1e-12);
}
