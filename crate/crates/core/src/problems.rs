//! Benchmark catalog, exact and reference solutions, error norms.

use std::sync::Arc;

use crate::config::{beta_max_combined, RkOrder, SchemeConfig};
use crate::error::{invalid, Error, Result};
use crate::exec::Execution;
use crate::grid::{Grid1D, Grid2D};
use crate::problem::{BoundaryKind, ProblemSpec, SolutionField};
use crate::solver2d::{advance_2d, AxisSpec, ProblemSpec2D};
use crate::timestep::{advance, Trajectory};

/// Names accepted by [`make_problem`].
pub const CASE_NAMES: [&str; 7] = [
    "linear_advdiff",
    "pme_barenblatt",
    "pme_two_box",
    "buckley_leverett",
    "strong_degenerate",
    "strong_degenerate_2d",
    "buckley_leverett_2d",
];

/// `e^{-bt} sin(x - ct)`.
pub fn exact_advdiff(x: f64, t: f64, c: f64, b: f64) -> f64 {
    (-b * t).exp() * (x - c * t).sin()
}

fn check_m(m: f64) -> Result<()> {
    if m > 1.0 && m.is_finite() {
        Ok(())
    } else {
        Err(invalid("m", format!("must exceed 1, got {m}")))
    }
}

/// Barenblatt profile `t^{-p} [1 - p(m-1)x²/(2m t^{2p})]_+^{1/(m-1)}`, `p = 1/(m+1)`.
pub fn barenblatt(x: f64, t: f64, m: f64) -> Result<f64> {
    check_m(m)?;
    if !(t > 0.0) {
        return Err(invalid("t", format!("must be positive, got {t}")));
    }
    let p = 1.0 / (m + 1.0);
    let bracket = 1.0 - p * (m - 1.0) * x * x / (2.0 * m * t.powf(2.0 * p));
    Ok(t.powf(-p) * bracket.max(0.0).powf(1.0 / (m - 1.0)))
}

/// Support half-width `a_m(t) = t^p sqrt(2m / (p(m-1)))`.
pub fn barenblatt_support(t: f64, m: f64) -> Result<f64> {
    check_m(m)?;
    let p = 1.0 / (m + 1.0);
    Ok(t.powf(p) * (2.0 * m / (p * (m - 1.0))).sqrt())
}

/// Optional overrides for [`make_problem`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaseParams {
    pub n: Option<usize>,
    pub ny: Option<usize>,
    /// Advection speed of `linear_advdiff`.
    pub c: Option<f64>,
    /// Diffusion coefficient of `linear_advdiff`.
    pub b: Option<f64>,
    /// PME exponent.
    pub m: Option<f64>,
    /// Buckley-Leverett with gravity.
    pub gravity: bool,
    pub epsilon: Option<f64>,
}

/// One- or two-dimensional problem with its grid.
#[derive(Debug, Clone)]
pub enum CaseSpec {
    OneD { problem: ProblemSpec, grid: Grid1D },
    TwoD { problem: ProblemSpec2D, grid: Grid2D },
}

/// Fully populated benchmark.
#[derive(Clone)]
pub struct BenchmarkCase {
    pub name: &'static str,
    pub spec: CaseSpec,
    pub t0: f64,
    pub t_final: f64,
    /// Scheme defaults of the benchmark; command-line flags override them.
    pub order: RkOrder,
    pub beta: f64,
    pub cfl: f64,
    pub snapshots: Vec<f64>,
    /// Exact solution `(x, t)` when known.
    pub exact: Option<Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>>,
}

impl std::fmt::Debug for BenchmarkCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BenchmarkCase")
            .field("name", &self.name)
            .field("spec", &self.spec)
            .field("t0", &self.t0)
            .field("t_final", &self.t_final)
            .field("has_exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

impl BenchmarkCase {
    pub fn default_config(&self) -> Result<SchemeConfig> {
        SchemeConfig::new(self.order, self.beta, self.cfl)
    }

    pub fn grid_1d(&self) -> Option<&Grid1D> {
        match &self.spec {
            CaseSpec::OneD { grid, .. } => Some(grid),
            CaseSpec::TwoD { .. } => None,
        }
    }

    pub fn is_2d(&self) -> bool {
        matches!(self.spec, CaseSpec::TwoD { .. })
    }

    pub fn initial_field(&self) -> SolutionField {
        match &self.spec {
            CaseSpec::OneD { problem, grid } => problem.initial_field(grid, self.t0),
            CaseSpec::TwoD { problem, grid } => problem.initial_field(grid, self.t0),
        }
    }

    /// Runs the case from `t0` to `t_end`.
    pub fn run(&self, config: &SchemeConfig, t_end: f64, snapshots: &[f64], exec: Execution) -> Result<Trajectory> {
        let u0 = self.initial_field();
        match &self.spec {
            CaseSpec::OneD { problem, grid } => advance(&u0, grid, t_end, problem, config, snapshots),
            CaseSpec::TwoD { problem, grid } => advance_2d(&u0, grid, t_end, problem, config, snapshots, exec),
        }
    }
}

fn arc(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    Arc::new(f)
}

fn pme(m: f64, bc: BoundaryKind) -> ProblemSpec {
    ProblemSpec {
        flux: arc(|_| 0.0),
        flux_deriv: arc(|_| 0.0),
        diffusion: arc(move |u: f64| u.signum() * u.abs().powf(m)),
        diffusion_deriv: arc(move |u: f64| m * u.abs().powf(m - 1.0)),
        initial: arc(|_| 0.0),
        bc,
        exact: None,
    }
}

fn bl_flux(u: f64) -> f64 {
    u * u / (u * u + (1.0 - u) * (1.0 - u))
}

fn bl_flux_deriv(u: f64) -> f64 {
    let d = u * u + (1.0 - u) * (1.0 - u);
    2.0 * u * (1.0 - u) / (d * d)
}

fn bl_gravity_flux(u: f64) -> f64 {
    bl_flux(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u))
}

fn bl_gravity_flux_deriv(u: f64) -> f64 {
    bl_flux_deriv(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)) + bl_flux(u) * 10.0 * (1.0 - u)
}

/// `ε ∫_0^u 4s(1-s) ds` with the mobility switched off outside `[0, 1]`.
fn bl_diffusion(eps: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let g = move |u: f64| {
        let v = u.clamp(0.0, 1.0);
        eps * (2.0 * v * v - 4.0 * v * v * v / 3.0)
    };
    let dg = move |u: f64| if (0.0..=1.0).contains(&u) { eps * 4.0 * u * (1.0 - u) } else { 0.0 };
    (g, dg)
}

/// `ε ∫_0^u 1{|s| > 1/4} ds`.
fn degenerate_diffusion(eps: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let g = move |u: f64| eps * u.signum() * (u.abs() - 0.25).max(0.0);
    let dg = move |u: f64| if u.abs() > 0.25 { eps } else { 0.0 };
    (g, dg)
}

fn burgers_degenerate(eps: f64, bc: BoundaryKind) -> AxisSpec {
    let (g, dg) = degenerate_diffusion(eps);
    AxisSpec { flux: arc(|u| u * u), flux_deriv: arc(|u| 2.0 * u), diffusion: arc(g), diffusion_deriv: arc(dg), bc }
}

/// Builds a benchmark by name.
pub fn make_problem(name: &str, params: &CaseParams) -> Result<BenchmarkCase> {
    let hom = BoundaryKind::Homogeneous;
    let case = match name {
        "linear_advdiff" => {
            let (c, b) = (params.c.unwrap_or(1.0), params.b.unwrap_or(1.0));
            if !(b >= 0.0) {
                return Err(invalid("b", format!("must be nonnegative, got {b}")));
            }
            let grid = Grid1D::new(-std::f64::consts::PI, std::f64::consts::PI, params.n.unwrap_or(160))?;
            let problem = ProblemSpec::linear(c, b)
                .with_initial(f64::sin)
                .with_exact(move |x, t| exact_advdiff(x, t, c, b));
            BenchmarkCase {
                name: "linear_advdiff",
                exact: Some(Arc::new(move |x, t| exact_advdiff(x, t, c, b))),
                spec: CaseSpec::OneD { problem, grid },
                t0: 0.0,
                t_final: 2.0,
                order: RkOrder::THIRD,
                beta: beta_max_combined(RkOrder::THIRD),
                cfl: 1.0,
                snapshots: vec![],
            }
        }
        "pme_barenblatt" => {
            let m = params.m.unwrap_or(2.0);
            check_m(m)?;
            let grid = Grid1D::new(-6.0, 6.0, params.n.unwrap_or(200))?;
            let problem = pme(m, hom)
                .with_initial(move |x| barenblatt(x, 1.0, m).unwrap_or(0.0))
                .with_exact(move |x, t| barenblatt(x, t, m).unwrap_or(0.0));
            BenchmarkCase {
                name: "pme_barenblatt",
                exact: Some(Arc::new(move |x, t| barenblatt(x, t, m).unwrap_or(0.0))),
                spec: CaseSpec::OneD { problem, grid },
                t0: 1.0,
                t_final: 2.0,
                order: RkOrder::THIRD,
                beta: 0.8,
                cfl: 1.0,
                snapshots: vec![],
            }
        }
        "pme_two_box" => {
            let m = params.m.unwrap_or(6.0);
            check_m(m)?;
            let grid = Grid1D::new(-6.0, 6.0, params.n.unwrap_or(400))?;
            let problem = pme(m, hom).with_initial(|x| {
                if x > -4.0 && x < -1.0 {
                    1.0
                } else if x > 0.0 && x < 3.0 {
                    2.0
                } else {
                    0.0
                }
            });
            BenchmarkCase {
                name: "pme_two_box",
                exact: None,
                spec: CaseSpec::OneD { problem, grid },
                t0: 0.0,
                t_final: 0.12,
                order: RkOrder::THIRD,
                beta: 0.8,
                cfl: 1.0,
                snapshots: vec![0.02, 0.04, 0.06, 0.12],
            }
        }
        "buckley_leverett" => {
            let eps = params.epsilon.unwrap_or(0.01);
            let (g, dg) = bl_diffusion(eps);
            let grid = Grid1D::new(0.0, 1.0, params.n.unwrap_or(200))?;
            let x0 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
            let (f, df): (fn(f64) -> f64, fn(f64) -> f64) = if params.gravity {
                (bl_gravity_flux, bl_gravity_flux_deriv)
            } else {
                (bl_flux, bl_flux_deriv)
            };
            let problem = ProblemSpec {
                flux: arc(f),
                flux_deriv: arc(df),
                diffusion: arc(g),
                diffusion_deriv: arc(dg),
                initial: arc(move |x| if x < x0 { 0.0 } else { 1.0 }),
                bc: hom,
                exact: None,
            };
            BenchmarkCase {
                name: "buckley_leverett",
                exact: None,
                spec: CaseSpec::OneD { problem, grid },
                t0: 0.0,
                t_final: 0.2,
                order: RkOrder::THIRD,
                beta: 0.4,
                cfl: 0.5,
                snapshots: vec![],
            }
        }
        "strong_degenerate" => {
            let eps = params.epsilon.unwrap_or(0.1);
            let axis = burgers_degenerate(eps, hom);
            let grid = Grid1D::new(-2.0, 2.0, params.n.unwrap_or(200))?;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let problem = ProblemSpec {
                flux: axis.flux,
                flux_deriv: axis.flux_deriv,
                diffusion: axis.diffusion,
                diffusion_deriv: axis.diffusion_deriv,
                initial: arc(move |x| {
                    if (x + s).abs() < 0.4 {
                        1.0
                    } else if (x - s).abs() < 0.4 {
                        -1.0
                    } else {
                        0.0
                    }
                }),
                bc: hom,
                exact: None,
            };
            BenchmarkCase {
                name: "strong_degenerate",
                exact: None,
                spec: CaseSpec::OneD { problem, grid },
                t0: 0.0,
                t_final: 0.7,
                order: RkOrder::THIRD,
                beta: 0.4,
                cfl: 0.5,
                snapshots: vec![],
            }
        }
        "strong_degenerate_2d" => {
            let eps = params.epsilon.unwrap_or(0.1);
            let n = params.n.unwrap_or(200);
            let grid = Grid2D::new(Grid1D::new(-1.5, 1.5, n)?, Grid1D::new(-1.5, 1.5, params.ny.unwrap_or(n))?);
            let problem = ProblemSpec2D {
                x: burgers_degenerate(eps, hom),
                y: burgers_degenerate(eps, hom),
                initial: Arc::new(|x, y| {
                    if (x + 0.5).powi(2) + (y + 0.5).powi(2) < 0.16 {
                        1.0
                    } else if (x - 0.5).powi(2) + (y - 0.5).powi(2) < 0.16 {
                        -1.0
                    } else {
                        0.0
                    }
                }),
            };
            BenchmarkCase {
                name: "strong_degenerate_2d",
                exact: None,
                spec: CaseSpec::TwoD { problem, grid },
                t0: 0.0,
                t_final: 0.5,
                order: RkOrder::THIRD,
                beta: 0.2,
                cfl: 0.5,
                snapshots: vec![],
            }
        }
        "buckley_leverett_2d" => {
            let eps = params.epsilon.unwrap_or(0.01);
            let n = params.n.unwrap_or(200);
            let grid = Grid2D::new(Grid1D::new(-1.5, 1.5, n)?, Grid1D::new(-1.5, 1.5, params.ny.unwrap_or(n))?);
            let diff = |bc| AxisSpec {
                flux: arc(|_| 0.0),
                flux_deriv: arc(|_| 0.0),
                diffusion: arc(move |u| eps * u),
                diffusion_deriv: arc(move |_| eps),
                bc,
            };
            let x = AxisSpec { flux: arc(bl_flux), flux_deriv: arc(bl_flux_deriv), ..diff(hom) };
            let y = AxisSpec { flux: arc(bl_gravity_flux), flux_deriv: arc(bl_gravity_flux_deriv), ..diff(hom) };
            let problem = ProblemSpec2D {
                x,
                y,
                initial: Arc::new(|x, y| if x * x + y * y < 0.5 { 1.0 } else { 0.0 }),
            };
            BenchmarkCase {
                name: "buckley_leverett_2d",
                exact: None,
                spec: CaseSpec::TwoD { problem, grid },
                t0: 0.0,
                t_final: 0.5,
                order: RkOrder::THIRD,
                beta: 0.2,
                cfl: 0.5,
                snapshots: vec![],
            }
        }
        other => return Err(Error::UnknownCase(other.to_string())),
    };
    Ok(case)
}

/// First-order upwind/central reference scheme on `n_ref` cells.
///
/// `c` and `b` are taken from the initial data and `Δt = 0.1Δx²/(cΔx + 2b)`.
/// Returns the reference grid and its final field.
pub fn reference_solution(case: &BenchmarkCase, t_end: f64, n_ref: usize) -> Result<(Grid1D, SolutionField)> {
    let CaseSpec::OneD { problem, grid } = &case.spec else {
        return Err(invalid("case", "reference solutions are one-dimensional"));
    };
    let rgrid = Grid1D::new(grid.a(), grid.b(), n_ref)?;
    let mut u = problem.initial_field(&rgrid, case.t0).values;
    if !(t_end >= case.t0) {
        return Err(invalid("T", format!("{t_end} precedes the initial time {}", case.t0)));
    }
    let bounds = crate::bounds::bounds_for(problem.physics(), &u)?;
    let (c, b) = (bounds.c, bounds.b_diff);
    if c == 0.0 && b == 0.0 {
        return Ok((rgrid, SolutionField::new(u, t_end)));
    }
    let dx = rgrid.dx();
    let dt_max = 0.1 * dx * dx / (c * dx + 2.0 * b);
    let n = u.len();
    let periodic = problem.bc == BoundaryKind::Periodic;
    let idx = |k: isize| -> usize {
        let last = (n - 1) as isize;
        if periodic { k.rem_euclid(last) as usize } else { k.clamp(0, last) as usize }
    };
    let (mut fp, mut fm, mut g) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut next = vec![0.0; n];
    let mut t = case.t0;
    while t < t_end {
        let dt = dt_max.min(t_end - t);
        for i in 0..n {
            let f = (problem.flux)(u[i]);
            fp[i] = 0.5 * (f + c * u[i]);
            fm[i] = 0.5 * (f - c * u[i]);
            g[i] = (problem.diffusion)(u[i]);
        }
        let (r1, r2) = (dt / dx, dt / (dx * dx));
        for i in 0..n {
            let (im, ip) = (idx(i as isize - 1), idx(i as isize + 1));
            next[i] = u[i] - r1 * (fp[i] - fp[im]) - r1 * (fm[ip] - fm[i]) + r2 * (g[ip] - 2.0 * g[i] + g[im]);
        }
        std::mem::swap(&mut u, &mut next);
        if periodic {
            u[n - 1] = u[0];
        }
        t = if dt == t_end - t { t_end } else { t + dt };
    }
    Ok((rgrid, SolutionField::new(u, t_end)))
}

/// Linear interpolation of nodal `values` on `from` at the nodes of `to`.
pub fn interpolate(from: &Grid1D, values: &[f64], to: &Grid1D) -> Vec<f64> {
    let n = from.n_cells();
    to.nodes()
        .iter()
        .map(|&x| {
            let s = ((x - from.a()) / from.dx()).clamp(0.0, n as f64);
            let i = (s.floor() as usize).min(n - 1);
            let w = s - i as f64;
            (1.0 - w) * values[i] + w * values[i + 1]
        })
        .collect()
}

/// Error norms of one run; `order_vs_previous` is filled by [`convergence_orders`].
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub linf: f64,
    pub l1: f64,
    pub n_cells: usize,
    pub order_vs_previous: Option<f64>,
}

/// `L∞ = max |u - truth|`, `L1 = Δx Σ |u - truth|`.
pub fn error_norms(u: &[f64], truth: &[f64], dx: f64) -> Result<ErrorReport> {
    if u.len() != truth.len() {
        return Err(Error::LengthMismatch { expected: truth.len(), got: u.len() });
    }
    let (mut linf, mut sum) = (0.0f64, 0.0);
    for (a, b) in u.iter().zip(truth) {
        let e = (a - b).abs();
        linf = linf.max(e);
        sum += e;
    }
    Ok(ErrorReport { linf, l1: dx * sum, n_cells: u.len().saturating_sub(1), order_vs_previous: None })
}

/// Observed `L∞` orders `log(e_prev/e) / log(N/N_prev)` along a refinement sequence.
pub fn convergence_orders(reports: &mut [ErrorReport]) {
    for i in 1..reports.len() {
        let (prev, cur) = (&reports[i - 1], &reports[i]);
        let ratio = cur.n_cells as f64 / prev.n_cells as f64;
        reports[i].order_vs_previous = Some((prev.linf / cur.linf).ln() / ratio.ln());
    }
}
