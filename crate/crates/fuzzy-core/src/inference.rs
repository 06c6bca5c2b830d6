use crate::error::FuzzyError;
use crate::piecewise::PiecewiseLinearFn;
use crate::trapezoid::{ClippedSet, Trapezoid};
use crate::variable::{RuleBase, Universe};

/// Conjunction strength of a rule: the minimum of its antecedent degrees.
pub fn rule_activation(degrees: &[f64]) -> Result<f64, FuzzyError> {
    if degrees.is_empty() {
        return Err(FuzzyError::NoDegrees);
    }
    let mut min = 1.0f64;
    for &d in degrees {
        if !(0.0..=1.0).contains(&d) {
            return Err(FuzzyError::DegreeOutOfRange(d));
        }
        min = min.min(d);
    }
    Ok(min)
}

/// Cuts a consequent shape at the rule's activation level.
pub fn clip_consequent(shape: &Trapezoid, level: f64) -> Result<ClippedSet, FuzzyError> {
    ClippedSet::new(level, *shape)
}

/// Pointwise maximum of the clipped consequents over the output universe,
/// returned as an exact piecewise-linear curve.
///
/// The breakpoint set contains the universe bounds, every corner and clip
/// crossing of every contribution, and every abscissa where two contributions
/// cross. Between neighbouring breakpoints the maximum is attained by a
/// single linear piece, so interpolating the sampled maxima is exact.
pub fn aggregate(contributions: &[ClippedSet], universe: Universe) -> Result<PiecewiseLinearFn, FuzzyError> {
    if contributions.is_empty() {
        return Err(FuzzyError::NoContributions);
    }
    for c in contributions {
        let (lo, hi) = c.base().support();
        if lo < universe.lo() || hi > universe.hi() {
            return Err(FuzzyError::SupportOutsideUniverse {
                support_lo: lo,
                support_hi: hi,
                lo: universe.lo(),
                hi: universe.hi(),
            });
        }
    }

    let mut xs: Vec<f64> = vec![universe.lo(), universe.hi()];
    for c in contributions {
        xs.extend(c.breakpoints());
    }
    for (i, a) in contributions.iter().enumerate() {
        for b in &contributions[i + 1..] {
            crossing_abscissas(a, b, &mut xs);
        }
    }

    xs.retain(|&x| x >= universe.lo() && x <= universe.hi());
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let points = xs
        .into_iter()
        .map(|x| {
            let mu = contributions.iter().map(|c| c.value(x)).fold(0.0, f64::max);
            (x, mu)
        })
        .collect();
    PiecewiseLinearFn::new(points)
}

/// Appends every abscissa where `a` and `b` take equal values with opposite
/// orderings on either side. Both curves are linear between their own
/// breakpoints, so it is enough to test each interval of the merged
/// breakpoint grid for a sign change of the difference.
fn crossing_abscissas(a: &ClippedSet, b: &ClippedSet, out: &mut Vec<f64>) {
    let mut grid: Vec<f64> = a.breakpoints();
    grid.extend(b.breakpoints());
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let d_lo = a.value(lo) - b.value(lo);
        let d_hi = a.value(hi) - b.value(hi);
        if (d_lo > 0.0 && d_hi < 0.0) || (d_lo < 0.0 && d_hi > 0.0) {
            out.push(lo + d_lo / (d_lo - d_hi) * (hi - lo));
        }
    }
}

/// Outcome of one full inference pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Defuzzified output value.
    pub crisp: f64,
    /// Activation level per rule, in rule-base order.
    pub activations: Vec<f64>,
    /// Aggregated output curve the crisp value was taken from.
    pub aggregate: PiecewiseLinearFn,
}

impl RuleBase {
    /// Runs the full Mamdani pass for one crisp input vector: membership
    /// degrees, per-rule activation by minimum, consequent clipping,
    /// aggregation by maximum and centroid defuzzification. Inputs are
    /// clamped to their universes first.
    pub fn evaluate_detailed(&self, inputs: &[f64]) -> Result<Evaluation, FuzzyError> {
        if inputs.len() != self.inputs().len() {
            return Err(FuzzyError::InputArity {
                expected: self.inputs().len(),
                got: inputs.len(),
            });
        }
        for &x in inputs {
            if !x.is_finite() {
                return Err(FuzzyError::NonFiniteInput(x));
            }
        }
        let clamped: Vec<f64> = self
            .inputs()
            .iter()
            .zip(inputs)
            .map(|(variable, &x)| variable.universe().clamp(x))
            .collect();

        let mut activations = Vec::with_capacity(self.rules().len());
        let mut clipped = Vec::with_capacity(self.rules().len());
        for rule in self.rules() {
            let degrees: Vec<f64> = self
                .inputs()
                .iter()
                .zip(&rule.antecedents)
                .zip(&clamped)
                .map(|((variable, term), &x)| variable.membership(term, x))
                .collect::<Result<_, _>>()?;
            let level = rule_activation(&degrees)?;
            let shape = self.output().term(&rule.consequent)?.shape;
            clipped.push(clip_consequent(shape.as_trapezoid(), level)?);
            activations.push(level);
        }

        let aggregate = aggregate(&clipped, self.output().universe())?;
        let crisp = aggregate.centroid()?;
        Ok(Evaluation {
            crisp,
            activations,
            aggregate,
        })
    }

    /// Defuzzified output for one crisp input vector.
    pub fn evaluate(&self, inputs: &[f64]) -> Result<f64, FuzzyError> {
        Ok(self.evaluate_detailed(inputs)?.crisp)
    }
}
