//! Von Neumann analysis of the linear scheme.
//!
//! For `u_j = û e^{iκx_j}` every operator becomes a multiplication by its
//! symbol. The semi-discrete symbols are
//!
//! ```text
//! D̂_L = iθ/(1 + iθ),  D̂_R = conj(D̂_L),  D̂_0 = θ²/(1 + θ²),  θ = κ/α,
//! ```
//!
//! and with the six-point linear quadrature
//!
//! ```text
//! D̂_L = 1 - Σ_r c_r e^{irκΔx} / (1 - e^{-ν - iκΔx}),   D̂_0 = Re D̂_L(ν_0).
//! ```
//!
//! One step multiplies a mode by `λ = R_k(z)` where `R_k` is the Taylor
//! polynomial of `e^z` of degree `k` and `z = -β Σ_p D̂^p`.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::config::{EquationKind, RkOrder};
use crate::error::{invalid, Result};
use crate::exec::{map_indices, Execution};
use crate::kernel::SideTag;
use crate::quadrature::linear_coefficients;

/// Gap allowed above one before a mode counts as amplified.
pub const AMPLIFICATION_TOL: f64 = 1e-10;

/// Width of the final `β` bracket in [`scan_beta_max`].
pub const BISECTION_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolMode {
    SemiDiscrete,
    FullyDiscreteLinear6,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolQuery {
    pub side: SideTag,
    pub kappa_dx: f64,
    pub nu: f64,
    pub mode: SymbolMode,
}

/// Symbol of `D_L`, `D_R` or `D_0` for one Fourier mode.
pub fn symbol_d(q: SymbolQuery) -> Result<Complex64> {
    if !(q.nu > 0.0 && q.nu.is_finite()) {
        return Err(invalid("nu", format!("must be positive, got {}", q.nu)));
    }
    match q.mode {
        SymbolMode::SemiDiscrete => {
            let theta = q.kappa_dx / q.nu;
            let dl = Complex64::new(0.0, theta) / Complex64::new(1.0, theta);
            Ok(match q.side {
                SideTag::Left => dl,
                SideTag::Right => dl.conj(),
                SideTag::Zero => Complex64::new(theta * theta / (1.0 + theta * theta), 0.0),
            })
        }
        SymbolMode::FullyDiscreteLinear6 => {
            let c = linear_coefficients(q.nu)?;
            Ok(discrete_symbol(&c, q.nu, q.kappa_dx, q.side))
        }
    }
}

fn discrete_symbol(c: &[f64; 6], nu: f64, kappa_dx: f64, side: SideTag) -> Complex64 {
    let phase = kappa_dx.rem_euclid(TAU);
    if phase == 0.0 || (TAU - phase) < 1e-14 {
        return Complex64::new(0.0, 0.0);
    }
    let num: Complex64 = (0..6).map(|j| c[j] * Complex64::from_polar(1.0, (j as f64 - 3.0) * kappa_dx)).sum();
    let den = Complex64::new(1.0, 0.0) - Complex64::from_polar((-nu).exp(), -kappa_dx);
    let dl = Complex64::new(1.0, 0.0) - num / den;
    match side {
        SideTag::Left => dl,
        SideTag::Right => dl.conj(),
        SideTag::Zero => Complex64::new(dl.re, 0.0),
    }
}

/// Multiplier `R_k(z)` of one SSP-RK step.
pub fn rk_polynomial(k: RkOrder, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for p in 1..=k.get() {
        term = term * z / p as f64;
        sum += term;
    }
    sum
}

/// Kernel `ν` for a step ratio: `β/s` (advection, `s = cΔt/Δx`) or
/// `sqrt(β/s)` (diffusion, `s = bΔt/Δx²`).
pub fn nu_for(kind: EquationKind, beta: f64, step_ratio: f64) -> f64 {
    match kind {
        EquationKind::Advection => beta / step_ratio,
        EquationKind::Diffusion => (beta / step_ratio).sqrt(),
    }
}

/// Amplification factor precomputed for one `ν` (coefficients cached).
#[derive(Debug, Clone)]
struct ModeEvaluator {
    k: RkOrder,
    kind: EquationKind,
    beta: f64,
    nu: f64,
    mode: SymbolMode,
    cross_term: bool,
    coeffs: Option<[f64; 6]>,
}

impl ModeEvaluator {
    fn new(k: RkOrder, kind: EquationKind, beta: f64, step_ratio: f64, mode: SymbolMode, cross_term: bool) -> Result<Self> {
        let nu = nu_for(kind, beta, step_ratio);
        let coeffs = match mode {
            SymbolMode::SemiDiscrete => None,
            SymbolMode::FullyDiscreteLinear6 => Some(linear_coefficients(nu)?),
        };
        Ok(Self { k, kind, beta, nu, mode, cross_term, coeffs })
    }

    fn symbol(&self, side: SideTag, kappa_dx: f64) -> Complex64 {
        match &self.coeffs {
            Some(c) => discrete_symbol(c, self.nu, kappa_dx, side),
            None => symbol_d(SymbolQuery { side, kappa_dx, nu: self.nu, mode: self.mode }).expect("validated nu"),
        }
    }

    fn lambda(&self, kappa_dx: f64) -> Complex64 {
        let side = match self.kind {
            EquationKind::Advection => SideTag::Left,
            EquationKind::Diffusion => SideTag::Zero,
        };
        let d = self.symbol(side, kappa_dx);
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for _ in 0..self.k.get() {
            power *= d;
            sum += power;
        }
        let mut z = -self.beta * sum;
        if self.cross_term && self.k.get() == 3 && self.kind == EquationKind::Advection {
            z += self.beta * self.symbol(SideTag::Zero, kappa_dx) * d * d;
        }
        rk_polynomial(self.k, z)
    }
}

/// `λ` for one mode and one step ratio.
pub fn amplification(
    k: RkOrder,
    kind: EquationKind,
    beta: f64,
    kappa_dx: f64,
    step_ratio: f64,
    mode: SymbolMode,
    cross_term: bool,
) -> Result<Complex64> {
    check_positive("beta", beta)?;
    check_positive("step_ratio", step_ratio)?;
    Ok(ModeEvaluator::new(k, kind, beta, step_ratio, mode, cross_term)?.lambda(kappa_dx))
}

fn check_positive(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {x}")))
    }
}

/// Sampling of the `(κΔx, step ratio)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    /// Uniform points on `[0, 2π]`, endpoints included.
    pub n_kappa: usize,
    /// Log-uniform points on `[ratio_min, ratio_max]`.
    pub n_ratio: usize,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self { n_kappa: 512, n_ratio: 256, ratio_min: 1e-3, ratio_max: 1e3 }
    }
}

impl ScanGrid {
    fn validate(&self) -> Result<()> {
        if self.n_kappa < 2 || self.n_ratio < 2 {
            return Err(invalid("scan grid", "need at least two points per axis"));
        }
        if !(self.ratio_min > 0.0 && self.ratio_max > self.ratio_min && self.ratio_max.is_finite()) {
            return Err(invalid("scan grid", "need 0 < ratio_min < ratio_max"));
        }
        Ok(())
    }

    pub fn kappa_axis(&self) -> Vec<f64> {
        (0..self.n_kappa).map(|i| TAU * i as f64 / (self.n_kappa - 1) as f64).collect()
    }

    pub fn ratio_axis(&self) -> Vec<f64> {
        let (lo, hi) = (self.ratio_min.ln(), self.ratio_max.ln());
        (0..self.n_ratio)
            .map(|i| (lo + (hi - lo) * i as f64 / (self.n_ratio - 1) as f64).exp())
            .collect()
    }
}

/// Settings shared by the scan operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub k: RkOrder,
    pub kind: EquationKind,
    pub mode: SymbolMode,
    pub cross_term: bool,
    pub grid: ScanGrid,
    pub exec: Execution,
}

impl ScanSpec {
    pub fn new(k: RkOrder, kind: EquationKind, mode: SymbolMode) -> Self {
        Self {
            k,
            kind,
            mode,
            cross_term: k.get() == 3 && kind == EquationKind::Advection,
            grid: ScanGrid::default(),
            exec: Execution::default(),
        }
    }
}

fn lambda_rows(spec: &ScanSpec, beta: f64) -> Result<Vec<Vec<f64>>> {
    check_positive("beta", beta)?;
    spec.grid.validate()?;
    let kappas = spec.grid.kappa_axis();
    let ratios = spec.grid.ratio_axis();
    let rows = map_indices(spec.exec, ratios.len(), |r| -> Result<Vec<f64>> {
        let ev = ModeEvaluator::new(spec.k, spec.kind, beta, ratios[r], spec.mode, spec.cross_term)?;
        Ok(kappas.iter().map(|&kd| ev.lambda(kd).norm()).collect())
    });
    rows.into_iter().collect()
}

/// `max |λ|` over the scan grid.
pub fn max_amplification(spec: &ScanSpec, beta: f64) -> Result<f64> {
    Ok(lambda_rows(spec, beta)?
        .iter()
        .flat_map(|r| r.iter().copied())
        .fold(0.0, f64::max))
}

/// Largest `β` on `[0, 4]` with `max |λ| <= 1 + 1e-10`, by bisection.
pub fn scan_beta_max(spec: &ScanSpec) -> Result<f64> {
    let stable = |b: f64| -> Result<bool> { Ok(max_amplification(spec, b)? <= 1.0 + AMPLIFICATION_TOL) };
    let (mut lo, mut hi) = (0.0, 4.0);
    if stable(hi)? {
        return Ok(hi);
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if stable(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `|λ|` over the scan grid for one `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub kind: EquationKind,
    pub k: RkOrder,
    pub beta: f64,
    pub mode: SymbolMode,
    pub kappa_dx: Vec<f64>,
    pub step_ratio: Vec<f64>,
    /// Row-major with `κΔx` fastest: `abs_lambda[r * n_kappa + i]`.
    pub abs_lambda: Vec<f64>,
    pub max_abs_lambda: f64,
    /// `None` unless requested in [`stability_report`].
    pub beta_max_estimate: Option<f64>,
}

pub fn stability_report(spec: &ScanSpec, beta: f64, with_beta_max: bool) -> Result<StabilityReport> {
    let rows = lambda_rows(spec, beta)?;
    let abs_lambda: Vec<f64> = rows.into_iter().flatten().collect();
    let max_abs_lambda = abs_lambda.iter().copied().fold(0.0, f64::max);
    Ok(StabilityReport {
        kind: spec.kind,
        k: spec.k,
        beta,
        mode: spec.mode,
        kappa_dx: spec.grid.kappa_axis(),
        step_ratio: spec.grid.ratio_axis(),
        abs_lambda,
        max_abs_lambda,
        beta_max_estimate: if with_beta_max { Some(scan_beta_max(spec)?) } else { None },
    })
}

/// Writes `kappa_dx,step_ratio,abs_lambda` rows, one per grid cell.
pub fn export_contours(report: &StabilityReport, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_contours(report, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_contours(report: &StabilityReport, w: &mut impl Write) -> Result<()> {
    writeln!(w, "kappa_dx,step_ratio,abs_lambda")?;
    let nk = report.kappa_dx.len();
    for (r, s) in report.step_ratio.iter().enumerate() {
        for (i, kd) in report.kappa_dx.iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", kd, s, report.abs_lambda[r * nk + i])?;
        }
    }
    Ok(())
}
