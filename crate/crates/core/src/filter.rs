//! Nonlinear filter on the high-order convection terms.
//!
//! `ξ_i` compares the smoothness indicators of the outermost sub-stencils;
//! it is `1 + O(Δx^6)` on smooth data and tiny next to a jump. The filter
//! multiplies the `p`-th convection term by `σ^{p-1}`.

use crate::kernel::Smoothness;
use crate::problem::BoundaryKind;
use crate::quadrature::WENO_EPSILON;

/// Filter values of one line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterField {
    pub xi_left: Vec<f64>,
    pub xi_right: Vec<f64>,
    pub sigma_left: Vec<f64>,
    pub sigma_right: Vec<f64>,
    pub epsilon: f64,
}

/// `ξ = (1 + τ²/(SI_max+ε)²) / (1 + τ²/(SI_min+ε)²)` with `τ = |SI_0 - SI_2|`.
pub fn xi(si0: f64, si2: f64, epsilon: f64) -> f64 {
    let tau = (si0 - si2).abs();
    if tau == 0.0 {
        return 1.0;
    }
    let (lo, hi) = if si0 <= si2 { (si0, si2) } else { (si2, si0) };
    let t2 = tau * tau;
    let num = 1.0 + t2 / ((hi + epsilon) * (hi + epsilon));
    let den = 1.0 + t2 / ((lo + epsilon) * (lo + epsilon));
    (num / den).min(1.0)
}

/// `σ_{L,i} = min(ξ^L_i, ξ^L_{i+1})`, `σ_{R,i} = min(ξ^R_{i-1}, ξ^R_i)`.
///
/// Neighbours wrap over the `N` distinct nodes (periodic) or clamp at the ends.
pub fn sigma_fields(xi_left: &[f64], xi_right: &[f64], bc: BoundaryKind) -> (Vec<f64>, Vec<f64>) {
    let mut sl = vec![0.0; xi_left.len()];
    let mut sr = vec![0.0; xi_right.len()];
    sigma_fields_into(xi_left, xi_right, bc, &mut sl, &mut sr);
    (sl, sr)
}

pub(crate) fn sigma_fields_into(xi_left: &[f64], xi_right: &[f64], bc: BoundaryKind, sl: &mut [f64], sr: &mut [f64]) {
    let n = xi_left.len();
    let next = |i: usize| match bc {
        BoundaryKind::Periodic if i + 1 >= n - 1 => (i + 1) % (n - 1),
        _ => (i + 1).min(n - 1),
    };
    let prev = |i: usize| match (bc, i) {
        (BoundaryKind::Periodic, 0) => n - 2,
        (_, 0) => 0,
        _ => i - 1,
    };
    for i in 0..n {
        sl[i] = xi_left[i].min(xi_left[next(i)]);
        sr[i] = xi_right[prev(i)].min(xi_right[i]);
    }
}

/// Filter field from the smoothness indicators of the first-power WENO passes.
pub fn filter_field(left: &Smoothness, right: &Smoothness, bc: BoundaryKind) -> FilterField {
    let xl: Vec<f64> = left.si0.iter().zip(&left.si2).map(|(&a, &b)| xi(a, b, WENO_EPSILON)).collect();
    let xr: Vec<f64> = right.si0.iter().zip(&right.si2).map(|(&a, &b)| xi(a, b, WENO_EPSILON)).collect();
    let (sigma_left, sigma_right) = sigma_fields(&xl, &xr, bc);
    FilterField { xi_left: xl, xi_right: xr, sigma_left, sigma_right, epsilon: WENO_EPSILON }
}
