use devs_kernel::CoupledModel;
use fuzzy_core::RuleBase;

use crate::defuzzify::DefuzzificationAm;
use crate::fuzzify::{FuzzificationAm, WeatherAxis};
use crate::rule::RuleAm;

/// Input ports of the generated coupled model, one per input variable in
/// rule-base order.
pub const INPUT_PORTS: [&str; 2] = ["InH", "InV"];
/// Output port carrying the crisp answer.
pub const OUTPUT_PORT: &str = "OutNum";

const ANTECEDENT_PORTS: [&str; 2] = ["InNum1", "InNum2"];

/// Component name for the fuzzifier of one term of one input variable.
pub fn fuzzifier_name(variable: &str, term: &str) -> String {
    format!("fuzz_{variable}_{term}")
}

/// Component name for one rule, keyed by its antecedent terms.
pub fn rule_component_name(antecedents: &[String]) -> String {
    format!("rule_{}", antecedents.join("_"))
}

/// Wires a two-input rule base into a coupled model: one fuzzifier per
/// linguistic term, one component per rule and a single defuzzifier.
///
/// Crisp numbers fed to `InH` and `InV` produce the crisp answer on
/// `OutNum` within the same instant. A weather sample duplicated to both
/// input ports works too; each fuzzifier then reads its own axis. The
/// select order runs fuzzifiers, then rules, then the defuzzifier, so the
/// whole cascade resolves before anything scheduled later at that instant.
pub fn build_fis_coupled(name: &str, rule_base: &RuleBase) -> CoupledModel {
    let inputs = rule_base.inputs();
    assert_eq!(inputs.len(), 2, "the generated wiring is two-input");

    let mut fis = CoupledModel::new(name);
    fis.add_input_port(INPUT_PORTS[0]);
    fis.add_input_port(INPUT_PORTS[1]);
    fis.add_output_port(OUTPUT_PORT);

    let mut order: Vec<String> = Vec::new();

    for (i, variable) in inputs.iter().enumerate() {
        let axis = if i == 0 {
            WeatherAxis::Humidity
        } else {
            WeatherAxis::Wind
        };
        for term in variable.terms() {
            let component = fuzzifier_name(variable.name(), &term.name);
            fis.add_atomic(
                &component,
                FuzzificationAm::for_pair_axis(term.shape, variable.universe(), axis),
            );
            fis.couple_input(INPUT_PORTS[i], &component, "In");
            order.push(component);
        }
    }

    for rule in rule_base.rules() {
        let component = rule_component_name(&rule.antecedents);
        let shape = rule_base
            .output()
            .term(&rule.consequent)
            .expect("rule bases only hold known consequents")
            .shape;
        fis.add_atomic(&component, RuleAm::new(*shape.as_trapezoid()));
        for (i, (variable, term)) in inputs.iter().zip(&rule.antecedents).enumerate() {
            let from = fuzzifier_name(variable.name(), term);
            fis.couple(&from, "Out", &component, ANTECEDENT_PORTS[i]);
        }
        fis.couple(&component, "OutFuz", "defuzz", "InFuz");
        order.push(component);
    }

    fis.add_atomic(
        "defuzz",
        DefuzzificationAm::with_expected(rule_base.output().universe(), rule_base.rules().len()),
    );
    fis.couple_output("defuzz", "OutNum", OUTPUT_PORT);
    order.push("defuzz".to_string());

    fis.set_select_order(order);
    fis
}
