//! Spatial operator `H[u] ≈ -f(u)_x + g(u)_xx` along one line.

use crate::bounds::WaveBounds;
use crate::config::{Quadrature, SchemeConfig};
use crate::error::{invalid, Error, Result};
use crate::filter::{sigma_fields_into, xi};
use crate::grid::Grid1D;
use crate::kernel::{smoothness_into, Kernel, SideTag, Smoothness, Workspace};
use crate::problem::{AxisPhysics, BoundaryKind, ProblemSpec};
use crate::quadrature::WENO_EPSILON;

/// Lax-Friedrichs split flux `f± = (f ± c u) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitFlux {
    pub fplus: Vec<f64>,
    pub fminus: Vec<f64>,
    pub c: f64,
}

pub fn flux_split(problem: &ProblemSpec, u: &[f64], bounds: WaveBounds) -> SplitFlux {
    let mut fplus = vec![0.0; u.len()];
    let mut fminus = vec![0.0; u.len()];
    split_into(problem.physics(), u, bounds.c, &mut fplus, &mut fminus);
    SplitFlux { fplus, fminus, c: bounds.c }
}

fn split_into(phys: AxisPhysics<'_>, u: &[f64], c: f64, fp: &mut [f64], fm: &mut [f64]) {
    for i in 0..u.len() {
        let f = (phys.flux)(u[i]);
        fp[i] = 0.5 * (f + c * u[i]);
        fm[i] = 0.5 * (f - c * u[i]);
    }
}

/// Subtracts `v[0]` from every entry. `D` annihilates constants and the
/// smoothness indicators are shift invariant, so this changes nothing but
/// rounding; constant lines then give an exactly zero operator.
fn remove_offset(v: &mut [f64]) {
    if let Some(&v0) = v.first() {
        v.iter_mut().for_each(|x| *x -= v0);
    }
}

/// Per-line scratch memory for [`line_operator`].
#[derive(Debug, Default, Clone)]
pub struct LineWorkspace {
    kernel: Workspace,
    fp: Vec<f64>,
    fm: Vec<f64>,
    g: Vec<f64>,
    dl: Vec<Vec<f64>>,
    dr: Vec<Vec<f64>>,
    d0: Vec<Vec<f64>>,
    cross: Vec<Vec<f64>>,
    si_l: Smoothness,
    si_r: Smoothness,
    xi_l: Vec<f64>,
    xi_r: Vec<f64>,
    sigma_l: Vec<f64>,
    sigma_r: Vec<f64>,
}

impl LineWorkspace {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Everything [`line_operator`] needs besides the data.
#[derive(Clone, Copy)]
pub struct LineSetup<'a> {
    pub phys: AxisPhysics<'a>,
    pub config: &'a SchemeConfig,
    pub bounds: WaveBounds,
    pub dt: f64,
    pub dx: f64,
    pub bc: BoundaryKind,
    /// `β` used for the kernel parameters (already halved in 2D).
    pub beta: f64,
}

/// Writes `H[u]` of one line into `out`.
pub fn line_operator(u: &[f64], setup: &LineSetup<'_>, ws: &mut LineWorkspace, out: &mut [f64]) -> Result<()> {
    let n = u.len();
    if out.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: out.len() });
    }
    if !(setup.dt > 0.0 && setup.dt.is_finite()) {
        return Err(invalid("dt", format!("must be positive, got {}", setup.dt)));
    }
    let n_cells = n - 1;
    let cfg = setup.config;
    let k = cfg.order.get();
    out.fill(0.0);

    if setup.bounds.has_advection() {
        let c = setup.bounds.c;
        let alpha = setup.beta / (c * setup.dt);
        let kernel = Kernel::new(alpha, setup.dx, n_cells, setup.bc)?;
        ws.fp.resize(n, 0.0);
        ws.fm.resize(n, 0.0);
        split_into(setup.phys, u, c, &mut ws.fp, &mut ws.fm);
        remove_offset(&mut ws.fp);
        remove_offset(&mut ws.fm);
        ws.dl.resize(k, Vec::new());
        ws.dr.resize(k, Vec::new());

        let filtered = cfg.filter_enabled && (k >= 2);
        let capture = filtered && cfg.quadrature == Quadrature::Weno5;
        kernel.pair_chain(
            Some(&ws.fp),
            Some(&ws.fm),
            cfg.quadrature,
            &mut ws.kernel,
            &mut ws.dl,
            &mut ws.dr,
            capture.then_some(&mut ws.si_l),
            capture.then_some(&mut ws.si_r),
        )?;
        if filtered {
            if !capture {
                smoothness_into(&ws.fp, SideTag::Left, setup.bc, &mut ws.si_l);
                smoothness_into(&ws.fm, SideTag::Right, setup.bc, &mut ws.si_r);
            }
            ws.xi_l.clear();
            ws.xi_l.extend(ws.si_l.si0.iter().zip(&ws.si_l.si2).map(|(&a, &b)| xi(a, b, WENO_EPSILON)));
            ws.xi_r.clear();
            ws.xi_r.extend(ws.si_r.si0.iter().zip(&ws.si_r.si2).map(|(&a, &b)| xi(a, b, WENO_EPSILON)));
            ws.sigma_l.resize(n, 0.0);
            ws.sigma_r.resize(n, 0.0);
            sigma_fields_into(&ws.xi_l, &ws.xi_r, setup.bc, &mut ws.sigma_l, &mut ws.sigma_r);
        }

        for i in 0..n {
            let (sl, sr) = if filtered { (ws.sigma_l[i], ws.sigma_r[i]) } else { (1.0, 1.0) };
            let (mut left, mut right) = (0.0, 0.0);
            let (mut wl, mut wr) = (1.0, 1.0);
            for p in 0..k {
                left += wl * ws.dl[p][i];
                right += wr * ws.dr[p][i];
                wl *= sl;
                wr *= sr;
            }
            out[i] = alpha * (right - left);
        }

        if cfg.uses_cross_term() {
            // D_0[D_L^2[f+] - D_L^2[f-]] at the convection α.
            ws.cross.resize(4, Vec::new());
            let (chain, rest) = ws.cross.split_at_mut(2);
            kernel.pair_chain(Some(&ws.fm), None, Quadrature::Linear6, &mut ws.kernel, chain, &mut [], None, None)?;
            let (diff, d0) = rest.split_at_mut(1);
            let (diff, d0) = (&mut diff[0], &mut d0[0]);
            diff.clear();
            diff.extend(ws.dl[1].iter().zip(&chain[1]).map(|(a, b)| a - b));
            d0.resize(n, 0.0);
            kernel.d_zero_into(diff, Quadrature::Linear6, &mut ws.kernel, d0)?;
            for i in 0..n {
                let s = if filtered { ws.sigma_l[i] * ws.sigma_l[i] } else { 1.0 };
                out[i] += alpha * s * d0[i];
            }
        }
    }

    if setup.bounds.has_diffusion() {
        let b = setup.bounds.b_diff;
        let alpha0 = (setup.beta / (b * setup.dt)).sqrt();
        let kernel = Kernel::new(alpha0, setup.dx, n_cells, setup.bc)?;
        ws.g.clear();
        ws.g.extend(u.iter().map(|&x| (setup.phys.diffusion)(x)));
        remove_offset(&mut ws.g);
        ws.d0.resize(k, Vec::new());
        kernel.zero_chain(&ws.g, cfg.quadrature, &mut ws.kernel, &mut ws.d0)?;
        let scale = alpha0 * alpha0;
        for i in 0..n {
            let s: f64 = ws.d0.iter().map(|d| d[i]).sum();
            out[i] -= scale * s;
        }
    }
    Ok(())
}

/// `H[u]` on a one-dimensional grid.
pub fn build_h(
    u: &[f64],
    grid: &Grid1D,
    problem: &ProblemSpec,
    config: &SchemeConfig,
    bounds: WaveBounds,
    dt: f64,
) -> Result<Vec<f64>> {
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), got: u.len() });
    }
    config.validate()?;
    let setup = LineSetup {
        phys: problem.physics(),
        config,
        bounds,
        dt,
        dx: grid.dx(),
        bc: problem.bc,
        beta: config.beta,
    };
    let mut out = vec![0.0; u.len()];
    line_operator(u, &setup, &mut LineWorkspace::new(), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RkOrder;
    use std::sync::Arc;

    #[test]
    fn split_example() {
        let mut p = ProblemSpec::linear(0.0, 0.0);
        p.flux = Arc::new(|u| u * u);
        let s = flux_split(&p, &[0.5, 0.0], WaveBounds::new(2.0, 0.0).unwrap());
        assert_eq!(s.fplus, vec![0.625, 0.0]);
        assert_eq!(s.fminus, vec![-0.375, 0.0]);
    }

    #[test]
    fn constants_are_annihilated() {
        for bc in [BoundaryKind::Periodic, BoundaryKind::Homogeneous] {
            let mut p = ProblemSpec::linear(0.0, 0.0).with_bc(bc);
            p.flux = Arc::new(|u| u * u);
            p.diffusion = Arc::new(|u| u * u * u);
            let g = Grid1D::new(0.0, 1.0, 40).unwrap();
            for k in 1..=3 {
                let cfg = SchemeConfig::new(RkOrder::new(k).unwrap(), 0.4, 1.0).unwrap();
                let h = build_h(&[0.7; 41], &g, &p, &cfg, WaveBounds::new(1.4, 1.47).unwrap(), 0.01).unwrap();
                assert!(h.iter().all(|x| x.abs() < 1e-9), "{bc:?} k={k}: {h:?}");
            }
        }
    }

    #[test]
    fn rejects_nonpositive_dt() {
        let p = ProblemSpec::linear(1.0, 1.0);
        let g = Grid1D::new(0.0, 1.0, 10).unwrap();
        let cfg = SchemeConfig::new(RkOrder::FIRST, 1.0, 1.0).unwrap();
        assert!(build_h(&[0.0; 11], &g, &p, &cfg, WaveBounds::new(1.0, 1.0).unwrap(), 0.0).is_err());
    }
}
