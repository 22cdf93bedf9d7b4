//! Dimension-by-dimension solver for `u_t + f1(u)_x + f2(u)_y = g1(u)_xx + g2(u)_yy`.
//!
//! Fields are row-major with `x` fastest: `u[j * nx + i]`. Both sweeps act
//! on the same stage field and their results are summed; `y` lines go
//! through a transpose buffer so every sweep is stride-1.

use std::fmt;
use std::sync::Arc;

use crate::bounds::{bounds_for, compute_dt_2d, WaveBounds};
use crate::config::SchemeConfig;
use crate::error::{Error, Result};
use crate::exec::{for_each_chunk_init, Execution};
use crate::grid::Grid2D;
use crate::operator::{line_operator, LineSetup, LineWorkspace};
use crate::problem::{AxisPhysics, BoundaryKind, ScalarFn, SolutionField};
use crate::timestep::{drive, rk_step, Trajectory};

/// Flux and diffusion of one axis.
#[derive(Clone)]
pub struct AxisSpec {
    pub flux: ScalarFn,
    pub flux_deriv: ScalarFn,
    pub diffusion: ScalarFn,
    pub diffusion_deriv: ScalarFn,
    pub bc: BoundaryKind,
}

impl AxisSpec {
    pub fn physics(&self) -> AxisPhysics<'_> {
        AxisPhysics {
            flux: &*self.flux,
            flux_deriv: &*self.flux_deriv,
            diffusion: &*self.diffusion,
            diffusion_deriv: &*self.diffusion_deriv,
        }
    }

    /// `f = c u`, `g = b u`.
    pub fn linear(c: f64, b: f64, bc: BoundaryKind) -> Self {
        Self {
            flux: Arc::new(move |u| c * u),
            flux_deriv: Arc::new(move |_| c),
            diffusion: Arc::new(move |u| b * u),
            diffusion_deriv: Arc::new(move |_| b),
            bc,
        }
    }
}

#[derive(Clone)]
pub struct ProblemSpec2D {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub initial: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ProblemSpec2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec2D")
            .field("bc_x", &self.x.bc)
            .field("bc_y", &self.y.bc)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec2D {
    pub fn initial_field(&self, grid: &Grid2D, t0: f64) -> SolutionField {
        let mut u = grid.sample(|x, y| (self.initial)(x, y));
        sync_periodic(&mut u, grid, self.x.bc, self.y.bc);
        SolutionField::new(u, t0)
    }

    /// Same problem with the axes exchanged.
    pub fn transposed(&self) -> Self {
        let init = self.initial.clone();
        Self { x: self.y.clone(), y: self.x.clone(), initial: Arc::new(move |x, y| init(y, x)) }
    }
}

fn sync_periodic(u: &mut [f64], grid: &Grid2D, bx: BoundaryKind, by: BoundaryKind) {
    let (nx, ny) = (grid.gx.len(), grid.gy.len());
    if bx == BoundaryKind::Periodic {
        for row in u.chunks_mut(nx) {
            row[nx - 1] = row[0];
        }
    }
    if by == BoundaryKind::Periodic {
        let (first, rest) = u.split_at_mut(nx);
        rest[(ny - 2) * nx..].copy_from_slice(first);
    }
}

/// Transposes an `rows × cols` row-major array into `out` (`cols × rows`).
pub fn transpose(src: &[f64], rows: usize, cols: usize, out: &mut [f64]) {
    assert_eq!(src.len(), rows * cols);
    assert_eq!(out.len(), rows * cols);
    const B: usize = 32;
    for rb in (0..rows).step_by(B) {
        for cb in (0..cols).step_by(B) {
            for r in rb..(rb + B).min(rows) {
                for c in cb..(cb + B).min(cols) {
                    out[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

/// Per-axis bounds of the current field.
pub fn axis_bounds(problem: &ProblemSpec2D, u: &[f64]) -> Result<(WaveBounds, WaveBounds)> {
    Ok((bounds_for(problem.x.physics(), u)?, bounds_for(problem.y.physics(), u)?))
}

fn sweep_lines(
    u: &[f64],
    line_len: usize,
    setup: &LineSetup<'_>,
    exec: Execution,
    out: &mut [f64],
) -> Result<()> {
    let first_err = std::sync::Mutex::new(None::<Error>);
    for_each_chunk_init(exec, out, line_len, LineWorkspace::new, |ws, idx, line| {
        let src = &u[idx * line_len..(idx + 1) * line_len];
        if let Err(e) = line_operator(src, setup, ws, line) {
            first_err.lock().expect("poisoned").get_or_insert(e);
        }
    });
    match first_err.into_inner().expect("poisoned") {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// `H[u]` as the sum of `x` and `y` line operators, each with its own `α`.
#[allow(clippy::too_many_arguments)]
pub fn build_h_2d(
    u: &[f64],
    grid: &Grid2D,
    problem: &ProblemSpec2D,
    config: &SchemeConfig,
    bx: WaveBounds,
    by: WaveBounds,
    dt: f64,
    exec: Execution,
) -> Result<Vec<f64>> {
    let (nx, ny) = (grid.gx.len(), grid.gy.len());
    if u.len() != nx * ny {
        return Err(Error::LengthMismatch { expected: nx * ny, got: u.len() });
    }
    let mut h = vec![0.0; u.len()];
    let sx = LineSetup {
        phys: problem.x.physics(),
        config,
        bounds: bx,
        dt,
        dx: grid.gx.dx(),
        bc: problem.x.bc,
        beta: config.beta,
    };
    sweep_lines(u, nx, &sx, exec, &mut h)?;
    if by.has_advection() || by.has_diffusion() {
        let sy = LineSetup {
            phys: problem.y.physics(),
            bounds: by,
            dx: grid.gy.dx(),
            bc: problem.y.bc,
            ..sx
        };
        let mut ut = vec![0.0; u.len()];
        transpose(u, ny, nx, &mut ut);
        let mut ht = vec![0.0; u.len()];
        sweep_lines(&ut, ny, &sy, exec, &mut ht)?;
        transpose(&ht, nx, ny, &mut ut);
        for (a, b) in h.iter_mut().zip(&ut) {
            *a += b;
        }
    }
    Ok(h)
}

/// Advances a two-dimensional problem to `t_end`.
pub fn advance_2d(
    u0: &SolutionField,
    grid: &Grid2D,
    t_end: f64,
    problem: &ProblemSpec2D,
    config: &SchemeConfig,
    snapshots: &[f64],
    exec: Execution,
) -> Result<Trajectory> {
    config.validate()?;
    if u0.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), got: u0.len() });
    }
    let (dx, dy) = (grid.gx.dx(), grid.gy.dx());
    let propose = |u: &[f64]| -> Result<Option<f64>> {
        let (bx, by) = axis_bounds(problem, u)?;
        match compute_dt_2d(config.cfl, bx, by, dx, dy) {
            Ok(dt) => Ok(Some(dt)),
            Err(Error::Stationary) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let step = |u: &[f64], dt: f64| -> Result<Vec<f64>> {
        let (bx, by) = axis_bounds(problem, u)?;
        let mut next = rk_step(u, dt, config.order, |v, out| {
            let h = build_h_2d(v, grid, problem, config, bx, by, dt, exec)?;
            out.copy_from_slice(&h);
            Ok(())
        })?;
        sync_periodic(&mut next, grid, problem.x.bc, problem.y.bc);
        Ok(next)
    };
    drive(u0, t_end, snapshots, propose, step)
}
