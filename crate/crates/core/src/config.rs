//! Tolerances and run-level configuration shared by every module.

use crate::exec::Execution;

/// Numerical thresholds. Every value must be strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues with `|λ| <= zero * max|λ|` count as zero.
    pub zero: f64,
    /// `|q(x)| <= boundary` classifies a chart point as lying on ∂D.
    pub boundary: f64,
    /// Coordinates `>= -simplex` count as nonnegative for conv(Δ̂) membership.
    pub simplex: f64,
    /// Relative threshold for the sign of a root coordinate.
    pub descent: f64,
    /// `|v|_1 <= chart * ‖v‖` is treated as the V₀ singularity.
    pub chart: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero: 1e-8,
            boundary: 1e-10,
            simplex: 1e-12,
            descent: 1e-9,
            chart: 1e-14,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> crate::Result<()> {
        let all = [
            ("zero", self.zero),
            ("boundary", self.boundary),
            ("simplex", self.simplex),
            ("descent", self.descent),
            ("chart", self.chart),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(crate::Error::InvalidInput(format!(
                    "tolerance `{name}` must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Everything a command-line run needs to be replayed exactly.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    /// Depth of Cayley balls used for orbit enumeration.
    pub depth: usize,
    /// Depth of the horoball orbit used when building the truncated space.
    pub horoball_depth: usize,
    /// Fixed horoball level; searched when `None`.
    pub horoball_level: Option<f64>,
    pub seed: u64,
    /// Random rays per Cannon–Thurston run and their word length.
    pub ct_trials: usize,
    pub ct_word_length: usize,
    /// Cap on enumerated elements before the BFS gives up.
    pub max_elements: usize,
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            depth: 8,
            horoball_depth: 6,
            horoball_level: None,
            seed: 0,
            ct_trials: 20,
            ct_word_length: 40,
            max_elements: 5_000_000,
            execution: Execution::default(),
        }
    }
}
