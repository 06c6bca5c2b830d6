use thiserror::Error;

/// Errors raised while building fuzzy sets or running inference.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("trapezoid corners must be finite and ordered left to right, got {corners:?}")]
    TrapezoidCorners { corners: [f64; 4] },

    #[error("universe bounds must be finite with lo < hi, got [{lo}, {hi}]")]
    UniverseBounds { lo: f64, hi: f64 },

    #[error("variable '{variable}' must declare at least one term")]
    NoTerms { variable: String },

    #[error("variable '{variable}' declares term '{term}' more than once")]
    DuplicateTerm { variable: String, term: String },

    #[error("term '{term}' of variable '{variable}' reaches outside the universe")]
    TermOutsideUniverse { variable: String, term: String },

    #[error("variable '{variable}' has no term named '{term}'")]
    UnknownTerm { variable: String, term: String },

    #[error("rule base needs at least one input variable")]
    NoInputs,

    #[error("rule names {got} antecedent terms but there are {expected} input variables")]
    RuleArity { expected: usize, got: usize },

    #[error("rule base misses antecedent combinations: {missing:?}")]
    MissingRules { missing: Vec<String> },

    #[error("rule base covers antecedent combination {cell} more than once")]
    DuplicateRule { cell: String },

    #[error("activation degree {0} is outside [0, 1]")]
    DegreeOutOfRange(f64),

    #[error("cannot take the activation of an empty degree list")]
    NoDegrees,

    #[error("cannot aggregate an empty contribution list")]
    NoContributions,

    #[error("clipped set with support [{support_lo}, {support_hi}] reaches outside the universe [{lo}, {hi}]")]
    SupportOutsideUniverse {
        support_lo: f64,
        support_hi: f64,
        lo: f64,
        hi: f64,
    },

    #[error("piecewise-linear breakpoints must be finite, strictly increasing in u and within [0, 1] in value")]
    BadBreakpoints,

    #[error("curve encloses no area, centroid is undefined")]
    ZeroActivation,

    #[error("quadrature needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("expected {expected} crisp inputs, got {got}")]
    InputArity { expected: usize, got: usize },

    #[error("crisp input {0} is not a finite number")]
    NonFiniteInput(f64),
}
