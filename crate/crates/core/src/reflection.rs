//! Deterministic Skorokhod maps on discrete paths: reflection at 0 and on
//! `[0, d]`.
//!
//! The one-sided map is the classical running-maximum solution
//!
//! ```text
//! L(t) = max(0, sup_{s <= t} (-x(s))),     h(t) = x(t) + L(t),
//! ```
//!
//! realized as a running-maximum recursion over the grid. For piecewise-linear
//! input the supremum over each segment is attained at a grid point, so the
//! grid samples of the output are exact, not approximate.
//!
//! The two-sided map alternates the lower and upper one-sided maps until the
//! constrained path stops moving (fixed point of the double Skorokhod
//! problem). Each sweep is a monotone update, and on a finite grid the
//! iteration contracts; non-convergence within the sweep budget signals
//! pathological input.

use crate::model::{DiscretePath, ReflectedTriple, CONTAINMENT_TOL};
use crate::num::fm;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Output of a Skorokhod map: the constrained path and the two monotone
/// regulator components (the total-variation regulator split into its
/// lower/upper parts, which is an equivalent representation on an interval).
#[derive(Debug, Clone, PartialEq)]
pub struct SkorokhodSolution {
    /// The constrained path `h`.
    pub constrained: DiscretePath,
    /// Lower regulator (pushes up at 0), nondecreasing from 0.
    pub regulator_lower: DiscretePath,
    /// Upper regulator (pushes down at `d`), nondecreasing from 0.
    pub regulator_upper: DiscretePath,
}

impl SkorokhodSolution {
    /// View as a [`ReflectedTriple`] (same shape, different naming).
    pub fn into_triple(self) -> ReflectedTriple {
        ReflectedTriple {
            state: self.constrained,
            lower: self.regulator_lower,
            upper: self.regulator_upper,
        }
    }
}

/// Default sweep budget for [`reflect_two_sided`].
pub const DEFAULT_MAX_SWEEPS: usize = 1000;
/// Default sup-norm stopping tolerance for the two-sided fixed point.
pub const DEFAULT_SWEEP_TOL: f64 = 1e-12;

/// Reflect `input` at the lower boundary 0.
///
/// Requires `input[0] >= 0`. The upper regulator of the result is
/// identically zero.
pub fn reflect_one_sided(input: &DiscretePath) -> Result<SkorokhodSolution> {
    if input.first() < 0.0 {
        return Err(Error::invalid("one-sided reflection needs input(0) >= 0"));
    }
    let x = input.values();
    let mut lower = Vec::with_capacity(x.len());
    let mut constrained = Vec::with_capacity(x.len());
    let mut running = 0.0f64;
    for &v in x {
        running = running.max(-v);
        lower.push(running);
        constrained.push(v + running);
    }
    let zero = input.map(|_| 0.0);
    Ok(SkorokhodSolution {
        constrained: DiscretePath::new(input.t0(), input.dt(), constrained)?,
        regulator_lower: DiscretePath::new(input.t0(), input.dt(), lower)?,
        regulator_upper: zero,
    })
}

/// Reflect `input` into `[0, d]` with the default sweep budget and tolerance.
pub fn reflect_two_sided(input: &DiscretePath, d: f64) -> Result<SkorokhodSolution> {
    reflect_two_sided_with(input, d, DEFAULT_MAX_SWEEPS, DEFAULT_SWEEP_TOL)
}

/// Reflect `input` into `[0, d]`, alternating one-sided maps until successive
/// constrained paths differ by less than `tol` in sup norm.
pub fn reflect_two_sided_with(
    input: &DiscretePath,
    d: f64,
    max_sweeps: usize,
    tol: f64,
) -> Result<SkorokhodSolution> {
    if !(d > 0.0) {
        return Err(Error::invalid("upper boundary d must be > 0"));
    }
    if input.first() < 0.0 || input.first() > d {
        return Err(Error::invalid("two-sided reflection needs input(0) in [0, d]"));
    }
    let x = input.values();
    let n = x.len();
    let mut lower = vec![0.0f64; n];
    let mut upper = vec![0.0f64; n];
    let mut constrained: Vec<f64> = x.to_vec();
    for _sweep in 0..max_sweeps {
        let mut delta = 0.0f64;
        // Lower pass: L = running max of (U - x)^+ given the current U.
        let mut running = 0.0f64;
        for k in 0..n {
            running = running.max(upper[k] - x[k]);
            lower[k] = running;
        }
        // Upper pass: U = running max of (x + L - d)^+ given the new L.
        running = 0.0;
        for k in 0..n {
            running = running.max(x[k] + lower[k] - d);
            upper[k] = running;
        }
        for k in 0..n {
            let h = x[k] + lower[k] - upper[k];
            delta = delta.max(fm::abs(h - constrained[k]));
            constrained[k] = h;
        }
        if delta < tol {
            return Ok(SkorokhodSolution {
                constrained: DiscretePath::new(input.t0(), input.dt(), constrained)?,
                regulator_lower: DiscretePath::new(input.t0(), input.dt(), lower)?,
                regulator_upper: DiscretePath::new(input.t0(), input.dt(), upper)?,
            });
        }
    }
    Err(Error::Reflection(alloc::format!(
        "no fixed point after {max_sweeps} sweeps (tol {tol:e}); input is pathological"
    )))
}

/// Check the defining properties of a Skorokhod solution at tolerance
/// [`CONTAINMENT_TOL`]: decomposition, monotonicity from zero, containment,
/// and minimality (regulators flat off their boundaries).
pub fn check_solution(input: &DiscretePath, sol: &SkorokhodSolution, d: f64) -> Result<()> {
    let tol = CONTAINMENT_TOL;
    let n = input.len();
    let x = input.values();
    let h = sol.constrained.values();
    let l = sol.regulator_lower.values();
    let u = sol.regulator_upper.values();
    if h.len() != n || l.len() != n || u.len() != n {
        return Err(Error::invalid("solution grids must match the input"));
    }
    for k in 0..n {
        if fm::abs(h[k] - (x[k] + l[k] - u[k])) > tol {
            return Err(Error::invalid(alloc::format!(
                "decomposition fails at step {k}"
            )));
        }
        if h[k] < -tol || h[k] > d + tol {
            return Err(Error::invalid(alloc::format!("containment fails at step {k}")));
        }
    }
    if fm::abs(l[0]) > tol || fm::abs(u[0]) > tol {
        return Err(Error::invalid("regulators must start at 0"));
    }
    for k in 1..n {
        if l[k] < l[k - 1] - tol || u[k] < u[k - 1] - tol {
            return Err(Error::invalid(alloc::format!(
                "regulator monotonicity fails at step {k}"
            )));
        }
        // Minimality at grid resolution: a regulator increment over a segment
        // leaves the constrained path exactly on its boundary at the segment
        // end (running-maximum structure of both maps).
        if l[k] > l[k - 1] + tol && fm::abs(h[k]) > tol {
            return Err(Error::invalid(alloc::format!(
                "lower regulator grows away from 0 at step {k}"
            )));
        }
        if u[k] > u[k - 1] + tol && fm::abs(h[k] - d) > tol {
            return Err(Error::invalid(alloc::format!(
                "upper regulator grows away from d at step {k}"
            )));
        }
    }
    Ok(())
}
