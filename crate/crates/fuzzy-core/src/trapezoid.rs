use crate::error::FuzzyError;

/// Trapezoidal membership shape over the real line.
///
/// Membership rises linearly from `l_foot` to `l_shoulder`, holds 1 between
/// the shoulders and falls back to 0 at `r_foot`. Coinciding corners give
/// vertical edges, so triangles and crisp intervals are degenerate cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    l_foot: f64,
    l_shoulder: f64,
    r_shoulder: f64,
    r_foot: f64,
}

impl Trapezoid {
    /// Builds a trapezoid from corners ordered
    /// `l_foot <= l_shoulder <= r_shoulder <= r_foot`.
    pub fn new(l_foot: f64, l_shoulder: f64, r_shoulder: f64, r_foot: f64) -> Result<Self, FuzzyError> {
        let corners = [l_foot, l_shoulder, r_shoulder, r_foot];
        let ordered = l_foot <= l_shoulder && l_shoulder <= r_shoulder && r_shoulder <= r_foot;
        if !corners.iter().all(|c| c.is_finite()) || !ordered {
            return Err(FuzzyError::TrapezoidCorners { corners });
        }
        Ok(Self {
            l_foot,
            l_shoulder,
            r_shoulder,
            r_foot,
        })
    }

    pub fn l_foot(&self) -> f64 {
        self.l_foot
    }

    pub fn l_shoulder(&self) -> f64 {
        self.l_shoulder
    }

    pub fn r_shoulder(&self) -> f64 {
        self.r_shoulder
    }

    pub fn r_foot(&self) -> f64 {
        self.r_foot
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.l_foot, self.l_shoulder, self.r_shoulder, self.r_foot]
    }

    /// Interval outside which membership is zero.
    pub fn support(&self) -> (f64, f64) {
        (self.l_foot, self.r_foot)
    }

    /// Membership degree at `x`, always within `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.l_foot || x > self.r_foot {
            0.0
        } else if x < self.l_shoulder {
            (x - self.l_foot) / (self.l_shoulder - self.l_foot)
        } else if x <= self.r_shoulder {
            1.0
        } else {
            (self.r_foot - x) / (self.r_foot - self.r_shoulder)
        }
    }
}

/// Membership shapes accepted by linguistic variables.
///
/// Every shape is stored as a trapezoid; the variants keep the declared kind
/// visible for reporting and serialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    Trapezoid(Trapezoid),
    Triangle(Trapezoid),
    Crisp(Trapezoid),
}

impl MembershipFunction {
    pub fn trapezoid(l_foot: f64, l_shoulder: f64, r_shoulder: f64, r_foot: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(l_foot, l_shoulder, r_shoulder, r_foot).map(Self::Trapezoid)
    }

    /// Triangle with both shoulders at `peak`.
    pub fn triangle(l_foot: f64, peak: f64, r_foot: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(l_foot, peak, peak, r_foot).map(Self::Triangle)
    }

    /// Crisp interval: membership 1 on `[lo, hi]`, 0 elsewhere.
    pub fn crisp(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(lo, lo, hi, hi).map(Self::Crisp)
    }

    pub fn as_trapezoid(&self) -> &Trapezoid {
        match self {
            Self::Trapezoid(t) | Self::Triangle(t) | Self::Crisp(t) => t,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.as_trapezoid().support()
    }

    /// Membership degree at `x`, always within `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        self.as_trapezoid().eval(x)
    }
}

/// A consequent shape cut off at a rule's activation level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClippedSet {
    level: f64,
    base: Trapezoid,
}

impl ClippedSet {
    pub fn new(level: f64, base: Trapezoid) -> Result<Self, FuzzyError> {
        if !(0.0..=1.0).contains(&level) {
            return Err(FuzzyError::DegreeOutOfRange(level));
        }
        Ok(Self { level, base })
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn base(&self) -> &Trapezoid {
        &self.base
    }

    /// `min(level, base membership)` at `u`.
    pub fn value(&self, u: f64) -> f64 {
        self.level.min(self.base.eval(u))
    }

    /// Abscissas where this clipped shape changes slope: the base corners
    /// plus the two points where a ramp crosses the clip level.
    pub fn breakpoints(&self) -> Vec<f64> {
        let t = &self.base;
        let mut xs = vec![t.l_foot(), t.l_shoulder(), t.r_shoulder(), t.r_foot()];
        if self.level > 0.0 && self.level < 1.0 {
            if t.l_shoulder() > t.l_foot() {
                xs.push(t.l_foot() + self.level * (t.l_shoulder() - t.l_foot()));
            }
            if t.r_foot() > t.r_shoulder() {
                xs.push(t.r_foot() - self.level * (t.r_foot() - t.r_shoulder()));
            }
        }
        xs
    }
}
