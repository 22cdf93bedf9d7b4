//! Exponential-weighted cell quadrature.
//!
//! For the left orientation the local integral at node `i` is
//!
//! ```text
//! J_i = α ∫_{x_{i-1}}^{x_i} e^{-α (x_i - y)} v(y) dy,   ν = α Δx,
//! ```
//!
//! approximated on the six-point stencil `v_{i-3..=i+2}`. The three four-point
//! sub-stencils `S_r = {i-3+r, ..., i+r}` integrate their cubic interpolant
//! exactly; their combination with the linear weights `d_r` integrates the
//! quintic interpolant of the full stencil. The right orientation is the
//! mirror image about `x_i`.

mod series;

use crate::error::{invalid, Result};
use series::{D0_SERIES, D2_SERIES, SMALL_SERIES, TERMS};

/// Below this `ν` the coefficients are evaluated from their Taylor series.
pub const SERIES_THRESHOLD: f64 = 0.5;

/// Regularization of the nonlinear weights and of the filter.
pub const WENO_EPSILON: f64 = 1e-6;

/// `c^{(r)}_{-3+r+j}` for sub-stencil `r` and position `j` within it.
pub type SmallStencilTable = [[f64; 4]; 3];

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(invalid("nu", format!("must be positive and finite, got {nu}")))
    }
}

fn horner(coeffs: &[f64; TERMS], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn small_stencil_closed(nu: f64) -> SmallStencilTable {
    let e = (-nu).exp();
    let n2 = nu * nu;
    let n3 = n2 * nu;
    let mut t = [[0.0; 4]; 3];
    t[0][0] = (6.0 - 6.0 * nu + 2.0 * n2 - (6.0 - n2) * e) / (6.0 * n3);
    t[0][1] = -(6.0 - 8.0 * nu + 3.0 * n2 - (6.0 - 2.0 * nu - 2.0 * n2) * e) / (2.0 * n3);
    t[0][2] = (6.0 - 10.0 * nu + 6.0 * n2 - (6.0 - 4.0 * nu - n2 + 2.0 * n3) * e) / (2.0 * n3);
    t[0][3] = -(6.0 - 12.0 * nu + 11.0 * n2 - 6.0 * n3 - (6.0 - 6.0 * nu + 2.0 * n2) * e) / (6.0 * n3);
    t[1][0] = (6.0 - n2 - (6.0 + 6.0 * nu + 2.0 * n2) * e) / (6.0 * n3);
    t[1][1] = -(6.0 - 2.0 * nu - 2.0 * n2 - (6.0 + 4.0 * nu - n2 - 2.0 * n3) * e) / (2.0 * n3);
    t[1][2] = (6.0 - 4.0 * nu - n2 + 2.0 * n3 - (6.0 + 2.0 * nu - 2.0 * n2) * e) / (2.0 * n3);
    t[1][3] = -(6.0 - 6.0 * nu + 2.0 * n2 - (6.0 - n2) * e) / (6.0 * n3);
    t[2][0] = (6.0 + 6.0 * nu + 2.0 * n2 - (6.0 + 12.0 * nu + 11.0 * n2 + 6.0 * n3) * e) / (6.0 * n3);
    t[2][1] = -(6.0 + 4.0 * nu - n2 - 2.0 * n3 - (6.0 + 10.0 * nu + 6.0 * n2) * e) / (2.0 * n3);
    t[2][2] = (6.0 + 2.0 * nu - 2.0 * n2 - (6.0 + 8.0 * nu + 3.0 * n2) * e) / (2.0 * n3);
    t[2][3] = -(6.0 - n2 - (6.0 + 6.0 * nu + 2.0 * n2) * e) / (6.0 * n3);
    t
}

pub(crate) fn small_stencil_series(nu: f64) -> SmallStencilTable {
    let mut t = [[0.0; 4]; 3];
    for (row, coeffs) in t.iter_mut().zip(SMALL_SERIES.iter()) {
        for (c, s) in row.iter_mut().zip(coeffs.iter()) {
            *c = horner(s, nu);
        }
    }
    t
}

pub(crate) fn linear_weights_closed(nu: f64) -> [f64; 3] {
    let e = (-nu).exp();
    let n2 = nu * nu;
    let n3 = n2 * nu;
    let n4 = n2 * n2;
    let d0 = (60.0 - 15.0 * n2 + 2.0 * n4
        - (60.0 + 60.0 * nu + 15.0 * n2 - 5.0 * n3 - 3.0 * n4) * e)
        / (10.0 * n2 * (6.0 - 6.0 * nu + 2.0 * n2 - (6.0 - n2) * e));
    let d2 = (60.0 - 60.0 * nu + 15.0 * n2 + 5.0 * n3 - 3.0 * n4
        - (60.0 - 15.0 * n2 + 2.0 * n4) * e)
        / (10.0 * n2 * (6.0 - n2 - (6.0 + 6.0 * nu + 2.0 * n2) * e));
    [d0, 1.0 - d0 - d2, d2]
}

pub(crate) fn linear_weights_series(nu: f64) -> [f64; 3] {
    let d0 = horner(&D0_SERIES, nu);
    let d2 = horner(&D2_SERIES, nu);
    [d0, 1.0 - d0 - d2, d2]
}

/// The twelve sub-stencil coefficients for `ν = αΔx`.
pub fn small_stencil_coefficients(nu: f64) -> Result<SmallStencilTable> {
    check_nu(nu)?;
    Ok(if nu < SERIES_THRESHOLD {
        small_stencil_series(nu)
    } else {
        small_stencil_closed(nu)
    })
}

/// Linear weights `(d_0, d_1, d_2)`; `d_1 = 1 - d_0 - d_2`.
pub fn linear_weights(nu: f64) -> Result<[f64; 3]> {
    check_nu(nu)?;
    Ok(if nu < SERIES_THRESHOLD {
        linear_weights_series(nu)
    } else {
        linear_weights_closed(nu)
    })
}

fn assemble_linear(small: &SmallStencilTable, d: &[f64; 3]) -> [f64; 6] {
    let mut c = [0.0; 6];
    for r in 0..3 {
        for j in 0..4 {
            c[r + j] += d[r] * small[r][j];
        }
    }
    c
}

/// Six-point linear coefficients `c_{-3}, ..., c_2`.
pub fn linear_coefficients(nu: f64) -> Result<[f64; 6]> {
    Ok(assemble_linear(&small_stencil_coefficients(nu)?, &linear_weights(nu)?))
}

/// Six stencil values ordered by offset `-3..=2` in the left orientation.
///
/// A right-orientation window stores `v_{i+3}, v_{i+2}, ..., v_{i-2}` so that
/// the same coefficients apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWindow(pub [f64; 6]);

impl StencilWindow {
    pub fn reversed(&self) -> Self {
        let mut w = self.0;
        w.reverse();
        StencilWindow(w)
    }
}

/// Smoothness indicators of the three sub-stencils.
pub fn smoothness_indicators(w: &StencilWindow) -> [f64; 3] {
    let [a, b, c, d, e, f] = w.0; // v_{i-3}, v_{i-2}, v_{i-1}, v_i, v_{i+1}, v_{i+2}
    let jump = (c - d) * (c - d);
    let sq = |x: f64| x * x;
    let si0 = 781.0 / 720.0 * sq(-a + 3.0 * b - 3.0 * c + d) + 13.0 / 48.0 * sq(a - 5.0 * b + 7.0 * c - 3.0 * d) + jump;
    let si1 = 781.0 / 720.0 * sq(-b + 3.0 * c - 3.0 * d + e) + 13.0 / 48.0 * sq(b - c - d + e) + jump;
    let si2 = 781.0 / 720.0 * sq(-c + 3.0 * d - 3.0 * e + f) + 13.0 / 48.0 * sq(-3.0 * c + 7.0 * d - 5.0 * e + f) + jump;
    [si0, si1, si2]
}

/// `ω_r = ω̃_r / Σ ω̃_s` with `ω̃_r = d_r / (ε + SI_r)²`.
pub fn nonlinear_weights(si: &[f64; 3], d: &[f64; 3], epsilon: f64) -> [f64; 3] {
    let mut w = [0.0; 3];
    for r in 0..3 {
        let den = epsilon + si[r];
        w[r] = d[r] / (den * den);
    }
    let sum: f64 = w.iter().sum();
    if sum > 0.0 && sum.is_finite() {
        w.iter_mut().for_each(|x| *x /= sum);
        w
    } else {
        *d
    }
}

/// Linear and nonlinear weights of one WENO evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoWeights {
    pub d: [f64; 3],
    pub omega: [f64; 3],
    pub si: [f64; 3],
    pub epsilon: f64,
}

/// Result of a WENO cell integral: the value plus `SI_0`, `SI_2` for the filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoIntegral {
    pub value: f64,
    pub si0: f64,
    pub si2: f64,
}

/// All coefficients needed for one value of `ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nu: f64,
    pub small: SmallStencilTable,
    pub d: [f64; 3],
    pub linear: [f64; 6],
}

impl QuadratureRule {
    pub fn new(nu: f64) -> Result<Self> {
        let small = small_stencil_coefficients(nu)?;
        let d = linear_weights(nu)?;
        let linear = assemble_linear(&small, &d);
        Ok(Self { nu, small, d, linear })
    }

    #[inline]
    pub fn linear_integral(&self, w: &[f64; 6]) -> f64 {
        let c = &self.linear;
        c[0] * w[0] + c[1] * w[1] + c[2] * w[2] + c[3] * w[3] + c[4] * w[4] + c[5] * w[5]
    }

    /// Candidate integrals `J_{i,r}` of the three sub-stencils.
    #[inline]
    pub fn candidates(&self, w: &[f64; 6]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (r, o) in out.iter_mut().enumerate() {
            let c = &self.small[r];
            *o = c[0] * w[r] + c[1] * w[r + 1] + c[2] * w[r + 2] + c[3] * w[r + 3];
        }
        out
    }

    pub fn weno_weights(&self, w: &StencilWindow) -> WenoWeights {
        let si = smoothness_indicators(w);
        WenoWeights {
            d: self.d,
            omega: nonlinear_weights(&si, &self.d, WENO_EPSILON),
            si,
            epsilon: WENO_EPSILON,
        }
    }

    #[inline]
    pub fn weno_integral(&self, w: &StencilWindow) -> WenoIntegral {
        let weights = self.weno_weights(w);
        let cand = self.candidates(&w.0);
        let value = weights.omega[0] * cand[0] + weights.omega[1] * cand[1] + weights.omega[2] * cand[2];
        WenoIntegral {
            value,
            si0: weights.si[0],
            si2: weights.si[2],
        }
    }
}

/// One-off WENO cell integral for `window` at `ν`.
pub fn weno_local_integral(window: &StencilWindow, nu: f64) -> Result<WenoIntegral> {
    Ok(QuadratureRule::new(nu)?.weno_integral(window))
}
