//! Wave-speed bounds and time-step selection.

use crate::error::{Error, Result};
use crate::problem::{AxisPhysics, ProblemSpec, SolutionField};

/// Number of uniform samples used to estimate `max |f'|` and `max |g'|`.
pub const BOUND_SAMPLES: usize = 2048;

/// Below this a bound is treated as zero and the matching partial sum is skipped.
pub const DEGENERATE_BOUND: f64 = 1e-14;

/// `c = max |f'(u)|` and `b = max |g'(u)|` over the current solution range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveBounds {
    pub c: f64,
    pub b_diff: f64,
}

impl WaveBounds {
    pub fn new(c: f64, b_diff: f64) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite() && b_diff >= 0.0 && b_diff.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "bounds",
                reason: format!("need finite nonnegative bounds, got c={c}, b={b_diff}"),
            });
        }
        Ok(Self { c, b_diff })
    }

    pub fn has_advection(&self) -> bool {
        self.c >= DEGENERATE_BOUND
    }

    pub fn has_diffusion(&self) -> bool {
        self.b_diff >= DEGENERATE_BOUND
    }
}

/// Bounds of `phys` over `[min(u) - δ, max(u) + δ]`, `δ = 1e-6 (range + 1)`.
pub fn bounds_for(phys: AxisPhysics<'_>, values: &[f64]) -> Result<WaveBounds> {
    if values.is_empty() {
        return Err(Error::InvalidParameter {
            name: "u",
            reason: "empty field".into(),
        });
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in values {
        if !v.is_finite() {
            return Err(Error::NonFinite("solution values"));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let delta = 1e-6 * (hi - lo + 1.0);
    lo -= delta;
    hi += delta;
    let (mut c, mut b) = (0.0f64, 0.0f64);
    for s in 0..BOUND_SAMPLES {
        let u = lo + (hi - lo) * s as f64 / (BOUND_SAMPLES - 1) as f64;
        let df = (phys.flux_deriv)(u);
        let dg = (phys.diffusion_deriv)(u);
        if !df.is_finite() {
            return Err(Error::NonFinite("flux derivative"));
        }
        if !dg.is_finite() {
            return Err(Error::NonFinite("diffusion derivative"));
        }
        c = c.max(df.abs());
        b = b.max(dg.abs());
    }
    WaveBounds::new(c, b)
}

pub fn compute_bounds(problem: &ProblemSpec, u: &SolutionField) -> Result<WaveBounds> {
    bounds_for(problem.physics(), &u.values)
}

/// `Δt = CFL Δx / (b + c)`.
pub fn compute_dt(cfl: f64, bounds: WaveBounds, dx: f64) -> Result<f64> {
    let speed = bounds.c + bounds.b_diff;
    if speed <= 0.0 {
        return Err(Error::Stationary);
    }
    Ok(cfl * dx / speed)
}

/// `Δt = CFL / max((b_x + c_x)/Δx, (b_y + c_y)/Δy)`.
pub fn compute_dt_2d(cfl: f64, bx: WaveBounds, by: WaveBounds, dx: f64, dy: f64) -> Result<f64> {
    // Per-axis minimum of the 1D formula, so a y-independent run rounds like its 1D line.
    match (compute_dt(cfl, bx, dx), compute_dt(cfl, by, dy)) {
        (Ok(a), Ok(b)) => Ok(a.min(b)),
        (Ok(a), Err(Error::Stationary)) | (Err(Error::Stationary), Ok(a)) => Ok(a),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}
