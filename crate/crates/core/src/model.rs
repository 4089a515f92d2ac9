//! Parameter and path types shared by every other module, with validation of
//! the standing model assumptions.
//!
//! The process family is `dX = (alpha - gamma X) dt + sqrt(eps) sigma dB`
//! with an optional reflecting boundary at 0 and optionally a second one at
//! `d > 0`. Reflected runs additionally require `alpha > 0` so the drift
//! points away from the lower boundary.

use crate::num::fm;
use crate::{Error, Result};
use alloc::vec::Vec;

/// Absolute tolerance for boundary containment and regulator bookkeeping.
///
/// Reflection is enforced by projection, so violations beyond this are bugs,
/// not discretization error.
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// Boundary regime of the process.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Boundary {
    /// Unconstrained Ornstein-Uhlenbeck.
    Free,
    /// Reflected at 0 (requires `alpha > 0`).
    LowerAtZero,
    /// Doubly reflected on `[0, d]`.
    Double {
        /// Upper boundary level, `d > 0`.
        d: f64,
    },
}

/// Model coefficients, noise scale, boundary regime, and initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelParams {
    /// Drift level.
    pub alpha: f64,
    /// Mean-reversion rate (1/time), `> 0`.
    pub gamma: f64,
    /// Diffusion coefficient, `> 0`.
    pub sigma: f64,
    /// Noise scale multiplying the diffusion as `sqrt(epsilon)`, `> 0`.
    pub epsilon: f64,
    /// Boundary regime.
    pub boundary: Boundary,
    /// Initial state.
    pub x0: f64,
}

impl ModelParams {
    /// Free OU process.
    pub fn free(alpha: f64, gamma: f64, sigma: f64, epsilon: f64, x0: f64) -> Self {
        ModelParams {
            alpha,
            gamma,
            sigma,
            epsilon,
            boundary: Boundary::Free,
            x0,
        }
    }

    /// Reflected at 0.
    pub fn reflected(alpha: f64, gamma: f64, sigma: f64, epsilon: f64, x0: f64) -> Self {
        ModelParams {
            boundary: Boundary::LowerAtZero,
            ..Self::free(alpha, gamma, sigma, epsilon, x0)
        }
    }

    /// Doubly reflected on `[0, d]`.
    pub fn double(alpha: f64, gamma: f64, sigma: f64, epsilon: f64, d: f64, x0: f64) -> Self {
        ModelParams {
            boundary: Boundary::Double { d },
            ..Self::free(alpha, gamma, sigma, epsilon, x0)
        }
    }

    /// Drift `b(x) = alpha - gamma x`.
    #[inline]
    pub fn drift(&self, x: f64) -> f64 {
        self.alpha - self.gamma * x
    }

    /// Mean-reversion level `alpha / gamma`.
    #[inline]
    pub fn mean_level(&self) -> f64 {
        self.alpha / self.gamma
    }

    /// Upper boundary level, if doubly reflected.
    pub fn upper_level(&self) -> Option<f64> {
        match self.boundary {
            Boundary::Double { d } => Some(d),
            _ => None,
        }
    }

    /// For the doubly reflected regime: whether `alpha/gamma < d`, i.e. the
    /// mean-reversion level sits below the upper boundary. `None` otherwise.
    pub fn mean_below_upper(&self) -> Option<bool> {
        self.upper_level().map(|d| self.mean_level() < d)
    }

    /// Check every standing assumption; returns `self` unchanged on success.
    ///
    /// Reports the first violated assumption by name.
    pub fn validate(&self) -> Result<&Self> {
        self.validate_inner(false)
    }

    /// Validation with the noise-positivity requirement relaxed.
    ///
    /// `sigma = 0` / `epsilon = 0` runs are only meaningful as deterministic
    /// simulation test modes, so this is opt-in.
    pub fn validate_allowing_zero_noise(&self) -> Result<&Self> {
        self.validate_inner(true)
    }

    fn validate_inner(&self, allow_zero_noise: bool) -> Result<&Self> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("sigma", self.sigma),
            ("epsilon", self.epsilon),
            ("x0", self.x0),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(alloc::format!("{name} must be finite")));
            }
        }
        if self.gamma <= 0.0 {
            return Err(Error::invalid("gamma must be > 0"));
        }
        if self.sigma < 0.0 || (!allow_zero_noise && self.sigma == 0.0) {
            return Err(Error::invalid("sigma must be > 0"));
        }
        if self.epsilon < 0.0 || (!allow_zero_noise && self.epsilon == 0.0) {
            return Err(Error::invalid("epsilon must be > 0"));
        }
        match self.boundary {
            Boundary::Free => {}
            Boundary::LowerAtZero => {
                if self.alpha <= 0.0 {
                    return Err(Error::invalid(
                        "alpha must be > 0 for reflected lower boundary",
                    ));
                }
                if self.x0 < 0.0 {
                    return Err(Error::invalid("x0 must be >= 0 for reflected lower boundary"));
                }
            }
            Boundary::Double { d } => {
                if !d.is_finite() || d <= 0.0 {
                    return Err(Error::invalid("upper boundary d must be > 0"));
                }
                if self.alpha <= 0.0 {
                    return Err(Error::invalid(
                        "alpha must be > 0 for reflected lower boundary",
                    ));
                }
                if self.x0 < 0.0 || self.x0 > d {
                    return Err(Error::invalid("x0 must lie in [0, d]"));
                }
            }
        }
        Ok(self)
    }

    /// Copy with a different noise scale (the law of the process is fully
    /// determined by one `ModelParams` value).
    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        ModelParams { epsilon, ..*self }
    }
}

/// A path sampled on a uniform time grid, the common currency between
/// simulation, functionals, and file output.
///
/// The horizon `T = (len - 1) * dt` is exactly reproducible from the fields.
/// Consumers interpret the samples as a piecewise-linear interpolant.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiscretePath {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
}

impl DiscretePath {
    /// Build from raw parts. `dt` must be positive and at least two samples
    /// are required.
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::invalid("dt must be > 0"));
        }
        if values.len() < 2 {
            return Err(Error::invalid("a path needs at least two samples"));
        }
        if !t0.is_finite() {
            return Err(Error::invalid("t0 must be finite"));
        }
        Ok(DiscretePath { t0, dt, values })
    }

    /// Sample `f` at `n_steps + 1` grid points starting at `t0`.
    pub fn from_fn(t0: f64, dt: f64, n_steps: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::invalid("a path needs at least one step"));
        }
        let values = (0..=n_steps).map(|k| f(t0 + k as f64 * dt)).collect();
        DiscretePath::new(t0, dt, values)
    }

    /// Start time of the grid.
    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Grid step.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of samples (grid points), `>= 2`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Never true; paths have at least two samples.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Horizon `T = (len - 1) * dt`.
    pub fn horizon(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.dt
    }

    /// Time of the `k`-th sample.
    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    /// The sample values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// First sample.
    pub fn first(&self) -> f64 {
        self.values[0]
    }

    /// Last sample (the terminal value).
    pub fn terminal(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Piecewise-linear interpolation at time `t`, clamped to the grid range.
    pub fn value_at(&self, t: f64) -> f64 {
        let s = (t - self.t0) / self.dt;
        if s <= 0.0 {
            return self.values[0];
        }
        let last = (self.values.len() - 1) as f64;
        if s >= last {
            return self.terminal();
        }
        let k = s as usize;
        let frac = s - k as f64;
        self.values[k] + frac * (self.values[k + 1] - self.values[k])
    }

    /// Iterate over `(t_k, x_k)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.time(k), v))
    }

    pub(crate) fn map(&self, f: impl FnMut(f64) -> f64) -> DiscretePath {
        DiscretePath {
            t0: self.t0,
            dt: self.dt,
            values: self.values.iter().copied().map(f).collect(),
        }
    }
}

/// Joint output of reflected simulation or the two-sided Skorokhod map: the
/// constrained state path plus the two nondecreasing regulators.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReflectedTriple {
    /// Constrained state path (`Y` or `Z`).
    pub state: DiscretePath,
    /// Lower regulator (`L`, the idleness process), nondecreasing from 0.
    pub lower: DiscretePath,
    /// Upper regulator (`U`, the loss process), nondecreasing from 0.
    pub upper: DiscretePath,
}

impl ReflectedTriple {
    /// Assert the structural invariants at tolerance [`CONTAINMENT_TOL`]:
    /// regulators start at 0 and are nondecreasing, the state stays inside
    /// the domain, and each regulator only increases on steps that end at
    /// (or were projected onto) its boundary.
    pub fn check(&self, boundary: &Boundary) -> Result<()> {
        let n = self.state.len();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::invalid("triple paths must share one grid"));
        }
        let tol = CONTAINMENT_TOL;
        for (name, reg) in [("lower", &self.lower), ("upper", &self.upper)] {
            if fm::abs(reg.values()[0]) > tol {
                return Err(Error::invalid(alloc::format!(
                    "{name} regulator must start at 0"
                )));
            }
            for k in 1..n {
                if reg.values()[k] < reg.values()[k - 1] - tol {
                    return Err(Error::invalid(alloc::format!(
                        "{name} regulator decreases at step {k}"
                    )));
                }
            }
        }
        let d = match *boundary {
            Boundary::Free => f64::INFINITY,
            Boundary::LowerAtZero => f64::INFINITY,
            Boundary::Double { d } => d,
        };
        let constrained = !matches!(boundary, Boundary::Free);
        for k in 0..n {
            let z = self.state.values()[k];
            if constrained && (z < -tol || z > d + tol) {
                return Err(Error::invalid(alloc::format!(
                    "state leaves the domain at step {k}: {z}"
                )));
            }
        }
        for k in 1..n {
            let dl = self.lower.values()[k] - self.lower.values()[k - 1];
            let du = self.upper.values()[k] - self.upper.values()[k - 1];
            let z = self.state.values()[k];
            if dl > tol && fm::abs(z) > tol {
                return Err(Error::invalid(alloc::format!(
                    "lower regulator grows off the boundary at step {k} (state {z})"
                )));
            }
            if du > tol && fm::abs(z - d) > tol {
                return Err(Error::invalid(alloc::format!(
                    "upper regulator grows off the boundary at step {k} (state {z})"
                )));
            }
        }
        Ok(())
    }
}

/// Query describing a transient tail event `P(X_T >= b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QueryParams {
    /// Horizon `T > 0`.
    #[cfg_attr(feature = "serde", serde(rename = "horizon_T"))]
    pub horizon_t: f64,
    /// Target level `b`.
    pub level_b: f64,
    /// Optional terminal pin `a` (used by most-likely-path queries).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub level_a: Option<f64>,
}

impl QueryParams {
    /// Validate the horizon; rarity of the event is checked by consumers.
    pub fn validate(&self) -> Result<&Self> {
        if !(self.horizon_t > 0.0) || !self.horizon_t.is_finite() {
            return Err(Error::invalid("horizon_T must be > 0"));
        }
        if !self.level_b.is_finite() {
            return Err(Error::invalid("level_b must be finite"));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference() -> ModelParams {
        ModelParams::reflected(1.0, 1.0, 1.0, 0.1, 0.0)
    }

    #[test]
    fn validate_accepts_reference_params() {
        assert!(reference().validate().is_ok());
    }

    #[test]
    fn validate_records_mean_below_upper_flag() {
        let p = ModelParams::double(1.0, 1.0, 1.0, 0.1, 0.5, 0.0);
        assert!(p.validate().is_ok());
        assert_eq!(p.mean_below_upper(), Some(false)); // alpha/gamma = 1 > d = 0.5
        let q = ModelParams::double(1.0, 1.0, 1.0, 0.1, 2.0, 0.0);
        assert_eq!(q.mean_below_upper(), Some(true));
        assert_eq!(reference().mean_below_upper(), None);
    }

    #[test]
    fn validate_rejects_nonpositive_gamma() {
        let p = ModelParams {
            gamma: -1.0,
            ..reference()
        };
        let err = p.validate().unwrap_err();
        assert!(matches!(err, Error::InvalidParams(ref m) if m == "gamma must be > 0"));
    }

    #[test]
    fn validate_rejects_nonpositive_alpha_for_reflected() {
        let p = ModelParams {
            alpha: 0.0,
            ..reference()
        };
        let err = p.validate().unwrap_err();
        assert!(matches!(err, Error::InvalidParams(ref m) if m.contains("alpha must be > 0")));
        // But a free OU run with alpha = 0 is fine.
        let q = ModelParams::free(0.0, 1.0, 1.0, 1.0, 0.5);
        assert!(q.validate().is_ok());
    }

    #[test]
    fn validate_zero_noise_only_with_relaxation() {
        let p = ModelParams {
            sigma: 0.0,
            ..reference()
        };
        assert!(p.validate().is_err());
        assert!(p.validate_allowing_zero_noise().is_ok());
    }

    #[test]
    fn validate_checks_initial_point_domain() {
        let p = ModelParams::double(1.0, 1.0, 1.0, 1.0, 2.0, 2.5);
        assert!(p.validate().is_err());
        let q = ModelParams::reflected(1.0, 1.0, 1.0, 1.0, -0.1);
        assert!(q.validate().is_err());
    }

    #[test]
    fn path_horizon_is_reproducible() {
        let p = DiscretePath::from_fn(0.0, 0.25, 8, |t| t).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.horizon(), 2.0);
        assert_eq!(p.time(8), 2.0);
    }

    #[test]
    fn path_rejects_degenerate_grids() {
        assert!(DiscretePath::new(0.0, 0.0, alloc::vec![0.0, 1.0]).is_err());
        assert!(DiscretePath::new(0.0, -0.1, alloc::vec![0.0, 1.0]).is_err());
        assert!(DiscretePath::new(0.0, 0.1, alloc::vec![0.0]).is_err());
    }

    #[test]
    fn path_linear_interpolation() {
        let p = DiscretePath::new(1.0, 0.5, alloc::vec![0.0, 1.0, 4.0]).unwrap();
        assert_abs_diff_eq!(p.value_at(1.25), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.value_at(1.75), 2.5, epsilon = 1e-15);
        assert_eq!(p.value_at(0.0), 0.0); // clamped left
        assert_eq!(p.value_at(9.0), 4.0); // clamped right
    }

    #[test]
    fn triple_check_catches_violations() {
        let grid = |v: Vec<f64>| DiscretePath::new(0.0, 1.0, v).unwrap();
        let good = ReflectedTriple {
            state: grid(alloc::vec![0.5, 0.0, 0.3]),
            lower: grid(alloc::vec![0.0, 0.2, 0.2]),
            upper: grid(alloc::vec![0.0, 0.0, 0.0]),
        };
        assert!(good.check(&Boundary::LowerAtZero).is_ok());

        let decreasing = ReflectedTriple {
            lower: grid(alloc::vec![0.0, 0.2, 0.1]),
            ..good.clone()
        };
        assert!(decreasing.check(&Boundary::LowerAtZero).is_err());

        let off_boundary_growth = ReflectedTriple {
            state: grid(alloc::vec![0.5, 0.4, 0.3]),
            ..good.clone()
        };
        assert!(off_boundary_growth.check(&Boundary::LowerAtZero).is_err());

        let escaped = ReflectedTriple {
            state: grid(alloc::vec![0.5, 0.0, 2.5]),
            lower: grid(alloc::vec![0.0, 0.2, 0.2]),
            upper: grid(alloc::vec![0.0, 0.0, 0.0]),
        };
        assert!(escaped.check(&Boundary::Double { d: 2.0 }).is_err());
    }

    #[cfg(feature = "serde")]
    #[test]
    fn params_json_roundtrip_is_bitwise() {
        let p = ModelParams::double(1.0, 1.5, 0.7, 0.123456789012345678, 2.0, 0.3);
        let text = serde_json::to_string(&p).unwrap();
        let back: ModelParams = serde_json::from_str(&text).unwrap();
        assert_eq!(p.alpha.to_bits(), back.alpha.to_bits());
        assert_eq!(p.gamma.to_bits(), back.gamma.to_bits());
        assert_eq!(p.sigma.to_bits(), back.sigma.to_bits());
        assert_eq!(p.epsilon.to_bits(), back.epsilon.to_bits());
        assert_eq!(p.x0.to_bits(), back.x0.to_bits());
        assert_eq!(p.upper_level().unwrap().to_bits(), back.upper_level().unwrap().to_bits());
    }

    #[cfg(feature = "serde")]
    #[test]
    fn query_params_use_spec_field_names() {
        let q = QueryParams {
            horizon_t: 1.0,
            level_b: 2.0,
            level_a: None,
        };
        let text = serde_json::to_string(&q).unwrap();
        assert!(text.contains("\"horizon_T\":1.0"));
        assert!(text.contains("\"level_b\":2.0"));
        assert!(!text.contains("level_a"));
    }
}
