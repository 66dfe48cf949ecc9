/// Relative tolerance shared by every feasibility comparison.
///
/// A length `x` fits within `ell` iff `x <= ell * (1 + eps)`. Ceilings are
/// taken on `x / (1 + eps)` and floors on `x * (1 + eps)` so that ratios which
/// are integers in exact arithmetic do not pick up an off-by-one from rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: DEFAULT_EPS }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        assert!(eps >= 0.0 && eps.is_finite(), "epsilon must be finite and non-negative");
        Tolerance { eps }
    }

    #[inline]
    pub fn fits(&self, x: f64, ell: f64) -> bool {
        x <= ell * (1.0 + self.eps)
    }

    /// Effective tiling step for covers of nominal length `ell`.
    #[inline]
    pub fn stretch(&self, ell: f64) -> f64 {
        ell * (1.0 + self.eps)
    }

    #[inline]
    pub fn ceil(&self, x: f64) -> f64 {
        (x / (1.0 + self.eps)).ceil()
    }

    #[inline]
    pub fn floor(&self, x: f64) -> f64 {
        (x * (1.0 + self.eps)).floor()
    }

    /// `|a - b| <= eps * scale`, with `scale` defaulting to the larger magnitude.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        (a - b).abs() <= self.eps * scale
    }
}
