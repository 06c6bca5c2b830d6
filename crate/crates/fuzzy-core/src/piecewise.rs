use crate::error::FuzzyError;

/// Piecewise-linear membership curve.
///
/// Breakpoints have strictly increasing abscissas and values in `[0, 1]`.
/// The curve interpolates linearly between neighbouring breakpoints and is
/// zero outside the span.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinearFn {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, FuzzyError> {
        if points.len() < 2 {
            return Err(FuzzyError::BadBreakpoints);
        }
        for window in points.windows(2) {
            if !(window[0].0 < window[1].0) {
                return Err(FuzzyError::BadBreakpoints);
            }
        }
        for &(u, mu) in &points {
            if !u.is_finite() || !(0.0..=1.0).contains(&mu) {
                return Err(FuzzyError::BadBreakpoints);
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Abscissa range covered by the breakpoints.
    pub fn span(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    /// Value at `u`: linear interpolation inside the span, zero outside.
    pub fn eval(&self, u: f64) -> f64 {
        let (lo, hi) = self.span();
        if u < lo || u > hi {
            return 0.0;
        }
        let idx = self.points.partition_point(|&(x, _)| x <= u);
        if idx == 0 {
            return self.points[0].1;
        }
        if idx == self.points.len() {
            return self.points[idx - 1].1;
        }
        let (x1, y1) = self.points[idx - 1];
        let (x2, y2) = self.points[idx];
        y1 + (y2 - y1) * (u - x1) / (x2 - x1)
    }

    /// Exact area under the curve.
    pub fn area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let ((x1, y1), (x2, y2)) = (w[0], w[1]);
                (x2 - x1) * (y1 + y2) / 2.0
            })
            .sum()
    }

    /// Exact first moment of the area about the origin.
    pub fn moment(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let ((x1, y1), (x2, y2)) = (w[0], w[1]);
                (x2 - x1) / 6.0 * (x1 * (2.0 * y1 + y2) + x2 * (y1 + 2.0 * y2))
            })
            .sum()
    }

    /// Centre of gravity of the area under the curve, computed segment by
    /// segment in closed form.
    pub fn centroid(&self) -> Result<f64, FuzzyError> {
        let area = self.area();
        if area <= 0.0 {
            return Err(FuzzyError::ZeroActivation);
        }
        Ok(self.moment() / area)
    }

    /// Centre of gravity estimated with composite trapezoidal quadrature over
    /// `samples` evenly spaced points across the span. Slower and inexact on
    /// purpose; it exists to cross-check `centroid` without sharing its
    /// closed-form segment integrals.
    pub fn centroid_numeric(&self, samples: usize) -> Result<f64, FuzzyError> {
        if samples < 2 {
            return Err(FuzzyError::TooFewSamples(samples));
        }
        let (lo, hi) = self.span();
        let du = (hi - lo) / (samples - 1) as f64;
        let mut area = 0.0;
        let mut moment = 0.0;
        let mut prev_u = lo;
        let mut prev_mu = self.eval(lo);
        for i in 1..samples {
            let u = lo + du * i as f64;
            let mu = self.eval(u);
            area += (prev_mu + mu) / 2.0 * du;
            moment += (prev_u * prev_mu + u * mu) / 2.0 * du;
            prev_u = u;
            prev_mu = mu;
        }
        if area <= 0.0 {
            return Err(FuzzyError::ZeroActivation);
        }
        Ok(moment / area)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_half() -> PiecewiseLinearFn {
        PiecewiseLinearFn::new(vec![(0.3, 0.5), (0.8, 0.5)]).unwrap()
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(PiecewiseLinearFn::new(vec![(0.0, 0.5)]).is_err());
        assert!(PiecewiseLinearFn::new(vec![(0.0, 0.5), (0.0, 0.6)]).is_err());
        assert!(PiecewiseLinearFn::new(vec![(1.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(PiecewiseLinearFn::new(vec![(0.0, 1.2), (1.0, 0.5)]).is_err());
    }

    #[test]
    fn eval_interpolates_and_is_zero_outside() {
        let f = PiecewiseLinearFn::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        assert_eq!(f.eval(-0.1), 0.0);
        assert_eq!(f.eval(0.5), 0.5);
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.eval(1.5), 0.5);
        assert_eq!(f.eval(2.1), 0.0);
    }

    #[test]
    fn centroid_of_constant_band() {
        // Area 0.5 * 0.5 = 0.25, moment 0.1375, centre at the midpoint 0.55.
        assert_eq!(flat_half().centroid().unwrap(), 0.55);
    }

    #[test]
    fn centroid_of_full_consequent_shapes() {
        // slow: ramp (0.4,0)-(0.6,1) then plateau to 0.8.
        // Hand integration: area 0.1 + 0.2 = 0.3, moment 0.0533… + 0.14 = 0.19333…
        let slow = PiecewiseLinearFn::new(vec![(0.4, 0.0), (0.6, 1.0), (0.8, 1.0)]).unwrap();
        let c = slow.centroid().unwrap();
        assert!((c - 0.6444444444444445).abs() < 1e-12, "got {c}");

        // fast: plateau (0.3,1)-(0.4,1) then ramp down to (0.6,0).
        // Hand integration: area 0.2, moment 0.035 + 0.0466… = 0.0816…
        let fast = PiecewiseLinearFn::new(vec![(0.3, 1.0), (0.4, 1.0), (0.6, 0.0)]).unwrap();
        let c = fast.centroid().unwrap();
        assert!((c - 0.4083333333333333).abs() < 1e-12, "got {c}");
    }

    #[test]
    fn zero_area_has_no_centroid() {
        let silent = PiecewiseLinearFn::new(vec![(0.3, 0.0), (0.8, 0.0)]).unwrap();
        assert_eq!(silent.centroid(), Err(FuzzyError::ZeroActivation));
        assert_eq!(silent.centroid_numeric(101), Err(FuzzyError::ZeroActivation));
    }

    #[test]
    fn quadrature_matches_exact_centroid() {
        assert!((flat_half().centroid_numeric(10_001).unwrap() - 0.55).abs() < 1e-9);

        let slow = PiecewiseLinearFn::new(vec![(0.4, 0.0), (0.6, 1.0), (0.8, 1.0)]).unwrap();
        let exact = slow.centroid().unwrap();
        let approx = slow.centroid_numeric(10_001).unwrap();
        assert!((exact - approx).abs() < 1e-4, "exact {exact} vs quadrature {approx}");
    }

    #[test]
    fn quadrature_needs_two_samples() {
        assert_eq!(flat_half().centroid_numeric(1), Err(FuzzyError::TooFewSamples(1)));
    }
}
