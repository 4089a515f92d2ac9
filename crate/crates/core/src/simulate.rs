//! Euler-Maruyama simulation of OU, ROU, and DROU with seeded, reproducible
//! randomness.
//!
//! The reflected scheme is projection Euler: propose the free step, book the
//! shortfall `max(0, -proposal)` on the lower regulator and the overshoot
//! `max(0, proposal - d)` on the upper one, then clamp the state. The
//! per-step increments are exactly the discrete Skorokhod regulators of the
//! proposed free increment, so the complementarity invariants of
//! [`ReflectedTriple`] hold by construction.
//!
//! Randomness is a counter-based stream (see [`crate::num::rng`]): the stream
//! key for replication `i` of a user seed is `stream_key(seed, i)`, and a
//! single simulation is replication 0. Free and reflected runs with the same
//! key consume the identical normal sequence, which enables coupled
//! comparisons.

use crate::model::{Boundary, DiscretePath, ModelParams, ReflectedTriple};
use crate::num::rng::NormalStream;
use crate::num::{fm, rng};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Discretization scheme for reflected simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Scheme {
    /// Propose a free Euler step, split the constraint violation into
    /// regulator increments, clamp the state.
    #[default]
    Projection,
}

/// Simulation configuration: step, horizon, seed, scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    /// Time step, `> 0`.
    pub dt: f64,
    /// Requested horizon; the realized horizon is `round(T/dt) * dt`.
    #[cfg_attr(feature = "serde", serde(rename = "horizon_T"))]
    pub horizon_t: f64,
    /// Seed for the counter-based stream.
    pub seed: u64,
    /// Discretization scheme.
    #[cfg_attr(feature = "serde", serde(default))]
    pub scheme: Scheme,
    /// Accept `sigma = 0` / `epsilon = 0` (deterministic test modes).
    #[cfg_attr(feature = "serde", serde(default))]
    pub allow_zero_noise: bool,
}

impl SimConfig {
    /// Standard configuration with the projection scheme.
    pub fn new(dt: f64, horizon_t: f64, seed: u64) -> Self {
        SimConfig {
            dt,
            horizon_t,
            seed,
            scheme: Scheme::Projection,
            allow_zero_noise: false,
        }
    }

    /// Validate step and horizon.
    pub fn validate(&self) -> Result<&Self> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid("dt must be > 0"));
        }
        if !(self.horizon_t > 0.0) || !self.horizon_t.is_finite() {
            return Err(Error::invalid("horizon_T must be > 0"));
        }
        Ok(self)
    }

    /// Number of Euler steps: `round(T / dt)`, at least 1.
    pub fn n_steps(&self) -> usize {
        let n = fm::round(self.horizon_t / self.dt);
        if n < 1.0 {
            1
        } else {
            n as usize
        }
    }

    /// The horizon actually simulated, `n_steps * dt`.
    pub fn realized_horizon(&self) -> f64 {
        self.n_steps() as f64 * self.dt
    }
}

/// Terminal values of one replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Terminal {
    /// Realized horizon of the run.
    pub t: f64,
    /// Terminal state.
    pub state: f64,
    /// Terminal value of the lower regulator (idleness `L_T`).
    pub lower: f64,
    /// Terminal value of the upper regulator (loss `U_T`).
    pub upper: f64,
}

/// One grid point of a streamed simulation.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    /// Step index (0 is the initial condition).
    pub k: usize,
    /// Time `k * dt`.
    pub t: f64,
    /// State value.
    pub state: f64,
    /// Cumulative lower regulator.
    pub lower: f64,
    /// Cumulative upper regulator.
    pub upper: f64,
}

fn validate_for_sim(params: &ModelParams, cfg: &SimConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.allow_zero_noise {
        params.validate_allowing_zero_noise()?;
    } else {
        params.validate()?;
    }
    Ok(())
}

/// Run one replication, streaming every grid point (including the initial
/// one) into `visit`. Works for all boundary regimes; for `Free` the
/// regulators stay at zero. Returns the terminal values.
///
/// `rep` selects the replication stream of `cfg.seed`.
pub fn simulate_stream_rep(
    params: &ModelParams,
    cfg: &SimConfig,
    rep: u64,
    mut visit: impl FnMut(Sample),
) -> Result<Terminal> {
    validate_for_sim(params, cfg)?;
    let n = cfg.n_steps();
    let dt = cfg.dt;
    let a = 1.0 - params.gamma * dt;
    let c = params.alpha * dt;
    let s = fm::sqrt(params.epsilon) * params.sigma * fm::sqrt(dt);
    let mut stream = NormalStream::for_replication(cfg.seed, rep);
    let mut x = params.x0;
    let mut l = 0.0f64;
    let mut u = 0.0f64;
    visit(Sample {
        k: 0,
        t: 0.0,
        state: x,
        lower: l,
        upper: u,
    });
    match params.boundary {
        Boundary::Free => {
            for k in 1..=n {
                x = a * x + c + s * stream.next_normal();
                visit(Sample {
                    k,
                    t: k as f64 * dt,
                    state: x,
                    lower: l,
                    upper: u,
                });
            }
        }
        Boundary::LowerAtZero => {
            for k in 1..=n {
                let p = a * x + c + s * stream.next_normal();
                if p < 0.0 {
                    l -= p;
                    x = 0.0;
                } else {
                    x = p;
                }
                visit(Sample {
                    k,
                    t: k as f64 * dt,
                    state: x,
                    lower: l,
                    upper: u,
                });
            }
        }
        Boundary::Double { d } => {
            for k in 1..=n {
                let p = a * x + c + s * stream.next_normal();
                if p < 0.0 {
                    l -= p;
                    x = 0.0;
                } else if p > d {
                    u += p - d;
                    x = d;
                } else {
                    x = p;
                }
                visit(Sample {
                    k,
                    t: k as f64 * dt,
                    state: x,
                    lower: l,
                    upper: u,
                });
            }
        }
    }
    Ok(Terminal {
        t: cfg.realized_horizon(),
        state: x,
        lower: l,
        upper: u,
    })
}

/// Stream replication 0 (the single-run stream) of `cfg.seed`.
pub fn simulate_stream(
    params: &ModelParams,
    cfg: &SimConfig,
    visit: impl FnMut(Sample),
) -> Result<Terminal> {
    simulate_stream_rep(params, cfg, 0, visit)
}

/// Simulate the free OU process, materializing the path.
///
/// Requires `params.boundary == Free`.
pub fn simulate_free(params: &ModelParams, cfg: &SimConfig) -> Result<DiscretePath> {
    if params.boundary != Boundary::Free {
        return Err(Error::invalid("simulate_free requires the Free boundary"));
    }
    let mut values = Vec::with_capacity(cfg.n_steps() + 1);
    simulate_stream(params, cfg, |s| values.push(s.state))?;
    DiscretePath::new(0.0, cfg.dt, values)
}

/// Simulate the reflected process (one- or two-sided), materializing the
/// state and both regulator paths.
pub fn simulate_reflected(params: &ModelParams, cfg: &SimConfig) -> Result<ReflectedTriple> {
    if params.boundary == Boundary::Free {
        return Err(Error::invalid(
            "simulate_reflected requires a reflecting boundary",
        ));
    }
    let cap = cfg.n_steps() + 1;
    let mut state = Vec::with_capacity(cap);
    let mut lower = Vec::with_capacity(cap);
    let mut upper = Vec::with_capacity(cap);
    simulate_stream(params, cfg, |s| {
        state.push(s.state);
        lower.push(s.lower);
        upper.push(s.upper);
    })?;
    Ok(ReflectedTriple {
        state: DiscretePath::new(0.0, cfg.dt, state)?,
        lower: DiscretePath::new(0.0, cfg.dt, lower)?,
        upper: DiscretePath::new(0.0, cfg.dt, upper)?,
    })
}

#[cfg(feature = "parallel")]
fn map_reps<T: Send>(reps: usize, f: impl Fn(usize) -> T + Send + Sync) -> Vec<T> {
    use rayon::prelude::*;
    (0..reps).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_reps<T>(reps: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..reps).map(f).collect()
}

/// Run `reps` independent replications and return their terminal values in
/// replication order.
///
/// Replication `i` uses the stream key `stream_key(seed, i)`, so the output
/// is bitwise identical for any parallelism degree, and replication 0 equals
/// the single-run result for the same configuration.
pub fn batch_terminals(
    params: &ModelParams,
    cfg: &SimConfig,
    reps: usize,
) -> Result<Vec<Terminal>> {
    if reps == 0 {
        return Err(Error::invalid("reps must be >= 1"));
    }
    validate_for_sim(params, cfg)?;
    Ok(map_reps(reps, |i| {
        simulate_stream_rep(params, cfg, i as u64, |_| {})
            .expect("validated before dispatch")
    }))
}

/// Run `reps` replications, mapping each materialized triple through `f`
/// (replication order). Use [`batch_terminals`] when terminal values
/// suffice; this variant materializes one full triple per replication.
pub fn batch_map_triples<T: Send>(
    params: &ModelParams,
    cfg: &SimConfig,
    reps: usize,
    f: impl Fn(usize, &ReflectedTriple) -> T + Sync,
) -> Result<Vec<T>> {
    if reps == 0 {
        return Err(Error::invalid("reps must be >= 1"));
    }
    validate_for_sim(params, cfg)?;
    if params.boundary == Boundary::Free {
        return Err(Error::invalid(
            "batch_map_triples requires a reflecting boundary",
        ));
    }
    Ok(map_reps(reps, |i| {
        let cap = cfg.n_steps() + 1;
        let mut state = Vec::with_capacity(cap);
        let mut lower = Vec::with_capacity(cap);
        let mut upper = Vec::with_capacity(cap);
        simulate_stream_rep(params, cfg, i as u64, |s| {
            state.push(s.state);
            lower.push(s.lower);
            upper.push(s.upper);
        })
        .expect("validated before dispatch");
        let triple = ReflectedTriple {
            state: DiscretePath::new(0.0, cfg.dt, state).expect("grid is valid"),
            lower: DiscretePath::new(0.0, cfg.dt, lower).expect("grid is valid"),
            upper: DiscretePath::new(0.0, cfg.dt, upper).expect("grid is valid"),
        };
        f(i, &triple)
    }))
}

/// Re-export of the replication seed mixing (splitmix-style, documented in
/// [`crate::num::rng`]).
pub fn mix_seed(seed: u64, rep: u64) -> u64 {
    rng::stream_key(seed, rep)
}
