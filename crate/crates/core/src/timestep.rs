//! SSP Runge-Kutta stepping of `u_t = H[u]`.

use crate::bounds::{compute_bounds, compute_dt};
use crate::config::{RkOrder, SchemeConfig};
use crate::error::{invalid, Error, Result};
use crate::grid::Grid1D;
use crate::operator::{line_operator, LineSetup, LineWorkspace};
use crate::problem::{BoundaryKind, ProblemSpec, SolutionField};

/// Relative slack under which a step is stretched to land on the next output time.
const LANDING_SLACK: f64 = 1e-12;

fn check_finite(u: &[f64]) -> Result<()> {
    if u.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("Runge-Kutta stage"))
    }
}

/// One SSP-RK step of order `k`; `h(v, out)` writes `H[v]` into `out`.
///
/// ```text
/// k=1: u + Δt H(u)
/// k=2: u1 = u + Δt H(u);  u^{n+1} = u/2 + (u1 + Δt H(u1))/2
/// k=3: u1 = u + Δt H(u);  u2 = 3u/4 + (u1 + Δt H(u1))/4;
///      u^{n+1} = u/3 + 2(u2 + Δt H(u2))/3
/// ```
pub fn rk_step<F>(u: &[f64], dt: f64, k: RkOrder, mut h: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<()>,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid("dt", format!("must be positive, got {dt}")));
    }
    let n = u.len();
    let mut hv = vec![0.0; n];
    let euler = |v: &[f64], hv: &[f64]| -> Vec<f64> { v.iter().zip(hv).map(|(a, b)| a + dt * b).collect() };

    h(u, &mut hv)?;
    let u1 = euler(u, &hv);
    check_finite(&u1)?;
    if k.get() == 1 {
        return Ok(u1);
    }
    h(&u1, &mut hv)?;
    let e1 = euler(&u1, &hv);
    if k.get() == 2 {
        let out: Vec<f64> = u.iter().zip(&e1).map(|(a, b)| 0.5 * a + 0.5 * b).collect();
        check_finite(&out)?;
        return Ok(out);
    }
    let u2: Vec<f64> = u.iter().zip(&e1).map(|(a, b)| 0.75 * a + 0.25 * b).collect();
    check_finite(&u2)?;
    h(&u2, &mut hv)?;
    let e2 = euler(&u2, &hv);
    let out: Vec<f64> = u.iter().zip(&e2).map(|(a, b)| a / 3.0 + 2.0 * b / 3.0).collect();
    check_finite(&out)?;
    Ok(out)
}

/// Final field, optional snapshots and the number of steps taken.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub last: SolutionField,
    pub snapshots: Vec<SolutionField>,
    pub steps: usize,
}

/// Generic time loop: `propose(u)` returns the stable `Δt` for the current
/// state (`None` when nothing moves), `step(u, dt)` takes one step.
pub(crate) fn drive<P, S>(u0: &SolutionField, t_end: f64, snapshots: &[f64], mut propose: P, mut step: S) -> Result<Trajectory>
where
    P: FnMut(&[f64]) -> Result<Option<f64>>,
    S: FnMut(&[f64], f64) -> Result<Vec<f64>>,
{
    if !(t_end >= u0.time) {
        return Err(invalid("T", format!("final time {t_end} precedes the initial time {}", u0.time)));
    }
    let mut targets: Vec<f64> = snapshots.iter().copied().filter(|&s| s > u0.time && s < t_end).collect();
    if snapshots.iter().any(|s| !s.is_finite()) {
        return Err(invalid("snapshots", "times must be finite"));
    }
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    let mut shots: Vec<SolutionField> = snapshots
        .iter()
        .filter(|&&s| s <= u0.time)
        .map(|_| u0.clone())
        .collect();
    targets.push(t_end);

    let mut u = u0.values.clone();
    let mut t = u0.time;
    let mut steps = 0;
    for (ti, &target) in targets.iter().enumerate() {
        while t < target {
            let remaining = target - t;
            match propose(&u)? {
                None => t = target,
                Some(dt) => {
                    let dt = if dt >= remaining * (1.0 - LANDING_SLACK) { remaining } else { dt };
                    u = step(&u, dt)?;
                    steps += 1;
                    t = if dt == remaining { target } else { t + dt };
                }
            }
        }
        if ti + 1 < targets.len() {
            shots.push(SolutionField::new(u.clone(), target));
        }
    }
    for &s in snapshots {
        if s >= t_end && s.is_finite() {
            shots.push(SolutionField::new(u.clone(), t_end));
        }
    }
    Ok(Trajectory { last: SolutionField::new(u, t), snapshots: shots, steps })
}

/// Advances a one-dimensional problem to `t_end`, recording a snapshot at
/// every requested time inside `(u0.time, t_end]`.
pub fn advance(
    u0: &SolutionField,
    grid: &Grid1D,
    t_end: f64,
    problem: &ProblemSpec,
    config: &SchemeConfig,
    snapshots: &[f64],
) -> Result<Trajectory> {
    config.validate()?;
    if u0.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), got: u0.len() });
    }
    let dx = grid.dx();
    let mut ws = LineWorkspace::new();
    let propose = |u: &[f64]| -> Result<Option<f64>> {
        let bounds = compute_bounds(problem, &SolutionField::new(u.to_vec(), 0.0))?;
        match compute_dt(config.cfl, bounds, dx) {
            Ok(dt) => Ok(Some(dt)),
            Err(Error::Stationary) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let step = |u: &[f64], dt: f64| -> Result<Vec<f64>> {
        let bounds = compute_bounds(problem, &SolutionField::new(u.to_vec(), 0.0))?;
        let setup = LineSetup {
            phys: problem.physics(),
            config,
            bounds,
            dt,
            dx,
            bc: problem.bc,
            beta: config.beta,
        };
        let mut next = rk_step(u, dt, config.order, |v, out| line_operator(v, &setup, &mut ws, out))?;
        if problem.bc == BoundaryKind::Periodic {
            let n = next.len();
            next[n - 1] = next[0];
        }
        Ok(next)
    };
    drive(u0, t_end, snapshots, propose, step)
}
