use crate::error::FuzzyError;
use crate::trapezoid::MembershipFunction;

/// Closed interval of admissible values for one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe {
    lo: f64,
    hi: f64,
}

impl Universe {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(FuzzyError::UniverseBounds { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

/// Named term of a linguistic variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub name: String,
    pub shape: MembershipFunction,
}

impl Term {
    pub fn new(name: impl Into<String>, shape: MembershipFunction) -> Self {
        Self {
            name: name.into(),
            shape,
        }
    }
}

/// A named variable with a universe of discourse and an ordered term list.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: Universe,
    terms: Vec<Term>,
}

impl LinguisticVariable {
    /// Validates that at least one term exists, term names are unique and
    /// every term's support lies inside the universe.
    pub fn new(name: impl Into<String>, universe: Universe, terms: Vec<Term>) -> Result<Self, FuzzyError> {
        let name = name.into();
        if terms.is_empty() {
            return Err(FuzzyError::NoTerms { variable: name });
        }
        for (i, term) in terms.iter().enumerate() {
            if terms[..i].iter().any(|t| t.name == term.name) {
                return Err(FuzzyError::DuplicateTerm {
                    variable: name,
                    term: term.name.clone(),
                });
            }
            let (lo, hi) = term.shape.support();
            if lo < universe.lo() || hi > universe.hi() {
                return Err(FuzzyError::TermOutsideUniverse {
                    variable: name,
                    term: term.name.clone(),
                });
            }
        }
        Ok(Self {
            name,
            universe,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, name: &str) -> Result<&Term, FuzzyError> {
        self.terms.iter().find(|t| t.name == name).ok_or_else(|| FuzzyError::UnknownTerm {
            variable: self.name.clone(),
            term: name.to_string(),
        })
    }

    /// Membership degree of `x` in the named term.
    pub fn membership(&self, term: &str, x: f64) -> Result<f64, FuzzyError> {
        Ok(self.term(term)?.shape.eval(x))
    }
}

/// One inference rule: a conjunction of per-input terms implying an output term.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRule {
    pub antecedents: Vec<String>,
    pub consequent: String,
}

impl FuzzyRule {
    pub fn new<S: Into<String>>(antecedents: Vec<S>, consequent: impl Into<String>) -> Self {
        Self {
            antecedents: antecedents.into_iter().map(Into::into).collect(),
            consequent: consequent.into(),
        }
    }
}

/// Input variables, an output variable and a rule table covering every
/// combination of input terms exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<FuzzyRule>,
}

impl RuleBase {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<FuzzyRule>,
    ) -> Result<Self, FuzzyError> {
        if inputs.is_empty() {
            return Err(FuzzyError::NoInputs);
        }
        for rule in &rules {
            if rule.antecedents.len() != inputs.len() {
                return Err(FuzzyError::RuleArity {
                    expected: inputs.len(),
                    got: rule.antecedents.len(),
                });
            }
            for (variable, term) in inputs.iter().zip(&rule.antecedents) {
                variable.term(term)?;
            }
            output.term(&rule.consequent)?;
        }

        let mut seen: Vec<&[String]> = Vec::with_capacity(rules.len());
        for rule in &rules {
            if seen.contains(&rule.antecedents.as_slice()) {
                return Err(FuzzyError::DuplicateRule {
                    cell: rule.antecedents.join(" & "),
                });
            }
            seen.push(&rule.antecedents);
        }

        let missing: Vec<String> = term_combinations(&inputs)
            .into_iter()
            .filter(|combo| !seen.iter().any(|s| s == combo))
            .map(|combo| combo.join(" & "))
            .collect();
        if !missing.is_empty() {
            return Err(FuzzyError::MissingRules { missing });
        }

        Ok(Self {
            inputs,
            output,
            rules,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }
}

/// Cartesian product of term names across all input variables, in declared order.
fn term_combinations(inputs: &[LinguisticVariable]) -> Vec<Vec<String>> {
    let mut combos: Vec<Vec<String>> = vec![Vec::new()];
    for variable in inputs {
        let mut next = Vec::with_capacity(combos.len() * variable.terms().len());
        for combo in &combos {
            for term in variable.terms() {
                let mut extended = combo.clone();
                extended.push(term.name.clone());
                next.push(extended);
            }
        }
        combos = next;
    }
    combos
}
