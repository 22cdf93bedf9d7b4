//! Problem descriptions and solution fields.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Shared scalar function `R -> R`.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Exact solution `(x, t) -> u`.
pub type ExactFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Boundary regime of a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `u(a) = u(b)`, `u_x(a) = u_x(b)`; node `N` duplicates node `0`.
    Periodic,
    /// All derivatives vanish at both ends (solution constant near the boundary).
    Homogeneous,
}

/// Flux `f`, diffusion `g` and their derivatives along one axis.
#[derive(Clone, Copy)]
pub struct AxisPhysics<'a> {
    pub flux: &'a (dyn Fn(f64) -> f64 + Send + Sync),
    pub flux_deriv: &'a (dyn Fn(f64) -> f64 + Send + Sync),
    pub diffusion: &'a (dyn Fn(f64) -> f64 + Send + Sync),
    pub diffusion_deriv: &'a (dyn Fn(f64) -> f64 + Send + Sync),
}

/// `u_t + f(u)_x = g(u)_xx` with `g'(u) >= 0`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub flux: ScalarFn,
    pub flux_deriv: ScalarFn,
    pub diffusion: ScalarFn,
    pub diffusion_deriv: ScalarFn,
    pub initial: ScalarFn,
    pub bc: BoundaryKind,
    pub exact: Option<ExactFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("bc", &self.bc)
            .field("has_exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    /// Linear advection-diffusion `u_t + c u_x = b u_xx` (periodic, no initial data set).
    pub fn linear(c: f64, b: f64) -> Self {
        Self {
            flux: Arc::new(move |u| c * u),
            flux_deriv: Arc::new(move |_| c),
            diffusion: Arc::new(move |u| b * u),
            diffusion_deriv: Arc::new(move |_| b),
            initial: Arc::new(|_| 0.0),
            bc: BoundaryKind::Periodic,
            exact: None,
        }
    }

    pub fn with_initial(mut self, initial: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.initial = Arc::new(initial);
        self
    }

    pub fn with_bc(mut self, bc: BoundaryKind) -> Self {
        self.bc = bc;
        self
    }

    pub fn with_exact(mut self, exact: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(exact));
        self
    }

    pub fn physics(&self) -> AxisPhysics<'_> {
        AxisPhysics {
            flux: &*self.flux,
            flux_deriv: &*self.flux_deriv,
            diffusion: &*self.diffusion,
            diffusion_deriv: &*self.diffusion_deriv,
        }
    }

    /// Checks `g'(u) >= 0` on `samples` uniform points of `[lo, hi]`.
    pub fn check_degeneracy(&self, lo: f64, hi: f64, samples: usize) -> Result<()> {
        let n = samples.max(2);
        for s in 0..n {
            let u = lo + (hi - lo) * s as f64 / (n - 1) as f64;
            let d = (self.diffusion_deriv)(u);
            if !(d >= 0.0) {
                return Err(Error::InvalidParameter {
                    name: "diffusion_deriv",
                    reason: format!("g'({u}) = {d} is negative"),
                });
            }
        }
        Ok(())
    }

    /// Initial field on `grid` at time `t0`.
    pub fn initial_field(&self, grid: &Grid1D, t0: f64) -> SolutionField {
        let mut values = grid.sample(&*self.initial);
        if self.bc == BoundaryKind::Periodic {
            values[grid.n_cells()] = values[0];
        }
        SolutionField { values, time: t0 }
    }
}

/// Nodal values at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub values: Vec<f64>,
    pub time: f64,
}

impl SolutionField {
    pub fn new(values: Vec<f64>, time: f64) -> Self {
        Self { values, time }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
