//! Convolution sweeps, boundary closures and the `D` operators.
//!
//! All arrays hold the `N + 1` grid nodes. With periodic boundaries node `N`
//! duplicates node `0` and stencil indices wrap modulo `N`; with homogeneous
//! boundaries stencils replicate the end values.
//!
//! The three kernels are
//!
//! ```text
//! I^L[v](x) = α ∫_a^x e^{-α(x-y)} v(y) dy
//! I^R[v](x) = α ∫_x^b e^{-α(y-x)} v(y) dy
//! I^0[v](x) = (I^L[v] + I^R[v]) / 2
//! ```
//!
//! evaluated in O(N) by the recursions `I^L_i = e^{-ν} I^L_{i-1} + J^L_i` and
//! `I^R_i = e^{-ν} I^R_{i+1} + J^R_i`. The inverse operators add homogeneous
//! solutions `A e^{-α(x-a)}`, `B e^{-α(b-x)}` whose coefficients close the
//! boundary conditions, and `D = I - L^{-1}`.

use crate::config::Quadrature;
use crate::error::{invalid, Error, Result};
use crate::problem::BoundaryKind;
use crate::quadrature::{QuadratureRule, StencilWindow};

/// Values below this are flushed to zero in decaying recursions to keep
/// subnormals out of the inner loops.
const FLUSH: f64 = 1e-280;

/// Which kernel an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideTag {
    /// Left-going kernel, `D_L` (upwind for positive speed).
    Left,
    /// Right-going kernel, `D_R`.
    Right,
    /// Symmetric kernel of the second derivative, `D_0`.
    Zero,
}

/// `α`, `ν = αΔx`, `μ = e^{-α(b-a)}` and `e^{-ν}` for one convolution family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub alpha: f64,
    pub nu: f64,
    pub mu: f64,
    pub decay: f64,
    pub n_cells: usize,
}

impl KernelParams {
    pub fn new(alpha: f64, dx: f64, n_cells: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(invalid("alpha", format!("must be positive and finite, got {alpha}")));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(invalid("dx", format!("must be positive and finite, got {dx}")));
        }
        if n_cells < crate::grid::MIN_CELLS {
            return Err(Error::InvalidGrid(format!("need at least {} cells, got {n_cells}", crate::grid::MIN_CELLS)));
        }
        let nu = alpha * dx;
        let mu = (-nu * n_cells as f64).exp();
        if !(mu < 1.0) {
            return Err(invalid("alpha", "kernel decay over the domain vanishes (mu >= 1)"));
        }
        Ok(Self { alpha, nu, mu, decay: (-nu).exp(), n_cells })
    }

    pub fn len(&self) -> usize {
        self.n_cells + 1
    }
}

/// Smoothness indicators `SI_0`, `SI_2` of the WENO pass at every node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Smoothness {
    pub si0: Vec<f64>,
    pub si2: Vec<f64>,
}

impl Smoothness {
    fn resize(&mut self, n: usize) {
        self.si0.resize(n, 0.0);
        self.si2.resize(n, 0.0);
    }
}

/// Result of one convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionResult {
    /// Global convolution at the nodes.
    pub i: Vec<f64>,
    /// Local cell integrals (left orientation for [`SideTag::Zero`]).
    pub j: Vec<f64>,
    /// Empty unless the WENO quadrature was used.
    pub si_left: Option<Smoothness>,
    pub si_right: Option<Smoothness>,
}

#[inline]
fn fetch(v: &[f64], k: isize, bc: BoundaryKind) -> f64 {
    let n_cells = (v.len() - 1) as isize;
    match bc {
        BoundaryKind::Periodic => v[k.rem_euclid(n_cells) as usize],
        BoundaryKind::Homogeneous => v[k.clamp(0, n_cells) as usize],
    }
}

#[inline]
fn left_window(v: &[f64], i: usize, bc: BoundaryKind) -> [f64; 6] {
    let n = v.len();
    if i >= 3 && i + 2 < n {
        [v[i - 3], v[i - 2], v[i - 1], v[i], v[i + 1], v[i + 2]]
    } else {
        let i = i as isize;
        std::array::from_fn(|r| fetch(v, i + r as isize - 3, bc))
    }
}

#[inline]
fn right_window(v: &[f64], i: usize, bc: BoundaryKind) -> [f64; 6] {
    let n = v.len();
    if i >= 2 && i + 3 < n {
        [v[i + 3], v[i + 2], v[i + 1], v[i], v[i - 1], v[i - 2]]
    } else {
        let i = i as isize;
        std::array::from_fn(|r| fetch(v, i + 3 - r as isize, bc))
    }
}

/// Local integrals `J_i` of one orientation (`side` must be Left or Right).
///
/// For `Left`, `J_0` is not a cell integral and is set to zero; for `Right`
/// the same holds for `J_N`. With [`Quadrature::Weno5`] the smoothness
/// indicators of the window centred at every node are written to `si`.
pub fn local_integrals_into(
    v: &[f64],
    rule: &QuadratureRule,
    quad: Quadrature,
    side: SideTag,
    bc: BoundaryKind,
    j: &mut [f64],
    mut si: Option<&mut Smoothness>,
) {
    let n = v.len();
    assert_eq!(j.len(), n);
    let window = match side {
        SideTag::Left => left_window,
        SideTag::Right => right_window,
        SideTag::Zero => panic!("local integrals are one-sided"),
    };
    match quad {
        Quadrature::Linear6 => {
            for (i, ji) in j.iter_mut().enumerate() {
                *ji = rule.linear_integral(&window(v, i, bc));
            }
        }
        Quadrature::Weno5 => {
            if let Some(s) = si.as_deref_mut() {
                s.resize(n);
            }
            for (i, ji) in j.iter_mut().enumerate() {
                let r = rule.weno_integral(&StencilWindow(window(v, i, bc)));
                *ji = r.value;
                if let Some(s) = si.as_deref_mut() {
                    s.si0[i] = r.si0;
                    s.si2[i] = r.si2;
                }
            }
        }
    }
    match side {
        SideTag::Left => j[0] = 0.0,
        _ => j[n - 1] = 0.0,
    }
}

/// Smoothness indicators of the window at every node, without the integrals.
pub fn smoothness_into(v: &[f64], side: SideTag, bc: BoundaryKind, out: &mut Smoothness) {
    let n = v.len();
    out.resize(n);
    let window = match side {
        SideTag::Left => left_window,
        SideTag::Right => right_window,
        SideTag::Zero => panic!("smoothness indicators are one-sided"),
    };
    for i in 0..n {
        let si = crate::quadrature::smoothness_indicators(&StencilWindow(window(v, i, bc)));
        out.si0[i] = si[0];
        out.si2[i] = si[2];
    }
}

/// `I_0 = 0`, `I_i = I_{i-1} e^{-ν} + J_i`.
pub fn sweep_left(j: &[f64], decay: f64, out: &mut [f64]) {
    assert_eq!(j.len(), out.len());
    let mut acc = 0.0;
    out[0] = 0.0;
    for i in 1..j.len() {
        acc = acc * decay + j[i];
        if acc.abs() < FLUSH {
            acc = 0.0;
        }
        out[i] = acc;
    }
}

/// `I_N = 0`, `I_i = I_{i+1} e^{-ν} + J_i`.
pub fn sweep_right(j: &[f64], decay: f64, out: &mut [f64]) {
    assert_eq!(j.len(), out.len());
    let n = j.len();
    let mut acc = 0.0;
    out[n - 1] = 0.0;
    for i in (0..n - 1).rev() {
        acc = acc * decay + j[i];
        if acc.abs() < FLUSH {
            acc = 0.0;
        }
        out[i] = acc;
    }
}

/// `I^0_i = (I^L_i + I^R_i) / 2`.
pub fn compose_i0(il: &[f64], ir: &[f64]) -> Result<Vec<f64>> {
    if il.len() != ir.len() {
        return Err(Error::LengthMismatch { expected: il.len(), got: ir.len() });
    }
    Ok(il.iter().zip(ir).map(|(a, b)| 0.5 * (a + b)).collect())
}

/// Convolution of one orientation with the local integrals computed on the fly.
///
/// The Linear6 path fuses quadrature and recursion into a single pass.
pub fn convolve_into(
    v: &[f64],
    params: &KernelParams,
    rule: &QuadratureRule,
    quad: Quadrature,
    side: SideTag,
    bc: BoundaryKind,
    out: &mut [f64],
    si: Option<&mut Smoothness>,
) {
    let n = v.len();
    assert_eq!(out.len(), n);
    let decay = params.decay;
    match (quad, side) {
        (Quadrature::Linear6, SideTag::Left) => {
            let c = rule.linear;
            let mut acc = 0.0;
            out[0] = 0.0;
            let lo = 3.min(n);
            let hi = n.saturating_sub(2).max(lo);
            let step = |acc: f64, w: [f64; 6]| {
                let a = acc * decay
                    + (c[0] * w[0] + c[1] * w[1] + c[2] * w[2] + c[3] * w[3] + c[4] * w[4] + c[5] * w[5]);
                if a.abs() < FLUSH { 0.0 } else { a }
            };
            for i in 1..lo {
                acc = step(acc, left_window(v, i, bc));
                out[i] = acc;
            }
            for i in lo..hi {
                let w = &v[i - 3..i + 3];
                acc = step(acc, [w[0], w[1], w[2], w[3], w[4], w[5]]);
                out[i] = acc;
            }
            for i in hi..n {
                acc = step(acc, left_window(v, i, bc));
                out[i] = acc;
            }
        }
        (Quadrature::Linear6, SideTag::Right) => {
            let c = rule.linear;
            let mut acc = 0.0;
            out[n - 1] = 0.0;
            let step = |acc: f64, w: [f64; 6]| {
                let a = acc * decay
                    + (c[0] * w[0] + c[1] * w[1] + c[2] * w[2] + c[3] * w[3] + c[4] * w[4] + c[5] * w[5]);
                if a.abs() < FLUSH { 0.0 } else { a }
            };
            // interior nodes: 2 <= i <= N-3
            let hi = n.saturating_sub(3).max(2);
            for i in (hi..n - 1).rev() {
                acc = step(acc, right_window(v, i, bc));
                out[i] = acc;
            }
            for i in (2..hi).rev() {
                let w = &v[i - 2..i + 4];
                acc = step(acc, [w[5], w[4], w[3], w[2], w[1], w[0]]);
                out[i] = acc;
            }
            for i in (0..2.min(n - 1)).rev() {
                acc = step(acc, right_window(v, i, bc));
                out[i] = acc;
            }
        }
        (Quadrature::Weno5, SideTag::Left) => {
            let mut j = vec![0.0; n];
            local_integrals_into(v, rule, quad, side, bc, &mut j, si);
            sweep_left(&j, decay, out);
        }
        (Quadrature::Weno5, SideTag::Right) => {
            let mut j = vec![0.0; n];
            local_integrals_into(v, rule, quad, side, bc, &mut j, si);
            sweep_right(&j, decay, out);
        }
        (_, SideTag::Zero) => panic!("convolve_into is one-sided; use convolve for the symmetric kernel"),
    }
}

/// Convolution `I` of the requested kernel (allocating convenience form).
pub fn convolve(v: &[f64], params: &KernelParams, quad: Quadrature, side: SideTag, bc: BoundaryKind) -> Result<ConvolutionResult> {
    check_len(v, params)?;
    let rule = QuadratureRule::new(params.nu)?;
    let n = v.len();
    let weno = quad == Quadrature::Weno5;
    let one_sided = |s: SideTag| {
        let mut j = vec![0.0; n];
        let mut si = weno.then(Smoothness::default);
        local_integrals_into(v, &rule, quad, s, bc, &mut j, si.as_mut());
        let mut i = vec![0.0; n];
        match s {
            SideTag::Left => sweep_left(&j, params.decay, &mut i),
            _ => sweep_right(&j, params.decay, &mut i),
        }
        (i, j, si)
    };
    Ok(match side {
        SideTag::Left => {
            let (i, j, si) = one_sided(SideTag::Left);
            ConvolutionResult { i, j, si_left: si, si_right: None }
        }
        SideTag::Right => {
            let (i, j, si) = one_sided(SideTag::Right);
            ConvolutionResult { i, j, si_left: None, si_right: si }
        }
        SideTag::Zero => {
            let (il, j, sl) = one_sided(SideTag::Left);
            let (ir, _, sr) = one_sided(SideTag::Right);
            ConvolutionResult { i: compose_i0(&il, &ir)?, j, si_left: sl, si_right: sr }
        }
    })
}

fn check_len(v: &[f64], params: &KernelParams) -> Result<()> {
    if v.len() != params.len() {
        return Err(Error::LengthMismatch { expected: params.len(), got: v.len() });
    }
    Ok(())
}

/// Operand and convolution values at the two endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EndValues {
    pub v_a: f64,
    pub v_b: f64,
    pub i_a: f64,
    pub i_b: f64,
}

impl EndValues {
    pub fn of(v: &[f64], i: &[f64]) -> Self {
        let n = v.len() - 1;
        Self { v_a: v[0], v_b: v[n], i_a: i[0], i_b: i[n] }
    }
}

/// Closure coefficients `(A, B)` of `L^{-1} = I + A e^{-α(x-a)} + B e^{-α(b-x)}`.
///
/// `Left` returns `(A_L, 0)`, `Right` returns `(0, B_R)`, `Zero` returns
/// `(A_0, B_0)`. In the homogeneous regime the one-sided closures couple the
/// left-chain operand with the right-chain operand; `partner` holds the end
/// values of the opposite chain (`None` means a zero partner).
pub fn boundary_coefficients(
    side: SideTag,
    bc: BoundaryKind,
    own: &EndValues,
    partner: Option<&EndValues>,
    mu: f64,
) -> Result<(f64, f64)> {
    if !(mu > 0.0 && mu < 1.0) && !(mu == 0.0) {
        return Err(invalid("mu", format!("must lie in [0, 1), got {mu}")));
    }
    let zero = EndValues::default();
    let p = partner.unwrap_or(&zero);
    Ok(match (bc, side) {
        (BoundaryKind::Periodic, SideTag::Left) => (own.i_b / (1.0 - mu), 0.0),
        (BoundaryKind::Periodic, SideTag::Right) => (0.0, own.i_a / (1.0 - mu)),
        (BoundaryKind::Periodic, SideTag::Zero) => (own.i_b / (1.0 - mu), own.i_a / (1.0 - mu)),
        (BoundaryKind::Homogeneous, SideTag::Zero) => {
            let ra = own.i_a - own.v_a;
            let rb = own.i_b - own.v_b;
            let den = 1.0 - mu * mu;
            ((mu * rb - ra) / den, (mu * ra - rb) / den)
        }
        (BoundaryKind::Homogeneous, SideTag::Left) => {
            let (al, _) = coupled(own, p, mu);
            (al, 0.0)
        }
        (BoundaryKind::Homogeneous, SideTag::Right) => {
            let (_, br) = coupled(p, own, mu);
            (0.0, br)
        }
    })
}

/// `(A_L, B_R)` making `D_L[v1] = D_R[v2]` at both endpoints.
fn coupled(left: &EndValues, right: &EndValues, mu: f64) -> (f64, f64) {
    let p = left.v_a - right.v_a + right.i_a;
    let q = right.v_b - left.v_b + left.i_b;
    let den = 1.0 - mu * mu;
    ((p + mu * q) / den, (q + mu * p) / den)
}

/// Adds `A e^{-iν} + B e^{-(N-i)ν}` to `w`.
fn add_homogeneous(w: &mut [f64], a: f64, b: f64, decay: f64) {
    let n = w.len();
    if a != 0.0 {
        let mut e = a;
        for wi in w.iter_mut() {
            if e.abs() < FLUSH {
                break;
            }
            *wi += e;
            e *= decay;
        }
    }
    if b != 0.0 {
        let mut e = b;
        for i in (0..n).rev() {
            if e.abs() < FLUSH {
                break;
            }
            w[i] += e;
            e *= decay;
        }
    }
}

/// Reusable buffers for one line; grows on demand, never shrinks.
#[derive(Debug, Default, Clone)]
pub struct Workspace {
    il: Vec<f64>,
    ir: Vec<f64>,
    j: Vec<f64>,
    cur_l: Vec<f64>,
    cur_r: Vec<f64>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    fn reserve(&mut self, n: usize) {
        for b in [&mut self.il, &mut self.ir, &mut self.j, &mut self.cur_l, &mut self.cur_r] {
            b.resize(n, 0.0);
        }
    }
}

/// Kernel family bound to one `α`, grid size and boundary regime.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub params: KernelParams,
    pub rule: QuadratureRule,
    pub bc: BoundaryKind,
}

impl Kernel {
    pub fn new(alpha: f64, dx: f64, n_cells: usize, bc: BoundaryKind) -> Result<Self> {
        let params = KernelParams::new(alpha, dx, n_cells)?;
        Ok(Self { rule: QuadratureRule::new(params.nu)?, params, bc })
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    fn conv(&self, v: &[f64], quad: Quadrature, side: SideTag, out: &mut [f64], si: Option<&mut Smoothness>, j: &mut [f64]) {
        match quad {
            Quadrature::Linear6 => convolve_into(v, &self.params, &self.rule, quad, side, self.bc, out, si),
            Quadrature::Weno5 => {
                local_integrals_into(v, &self.rule, quad, side, self.bc, j, si);
                match side {
                    SideTag::Left => sweep_left(j, self.params.decay, out),
                    _ => sweep_right(j, self.params.decay, out),
                }
            }
        }
    }

    /// `D_0[v]` written to `out`.
    pub fn d_zero_into(&self, v: &[f64], quad: Quadrature, ws: &mut Workspace, out: &mut [f64]) -> Result<()> {
        let n = self.len();
        check_len(v, &self.params)?;
        ws.reserve(n);
        let Workspace { il, ir, j, .. } = ws;
        self.conv(v, quad, SideTag::Left, il, None, j);
        self.conv(v, quad, SideTag::Right, ir, None, j);
        for i in 0..n {
            il[i] = 0.5 * (il[i] + ir[i]);
        }
        let ends = EndValues::of(v, il);
        let (a, b) = boundary_coefficients(SideTag::Zero, self.bc, &ends, None, self.params.mu)?;
        add_homogeneous(il, a, b, self.params.decay);
        for i in 0..n {
            out[i] = v[i] - il[i];
        }
        Ok(())
    }

    /// `D_L[v1]` and `D_R[v2]`, closed jointly in the homogeneous regime.
    ///
    /// A missing operand is treated as identically zero and its output is not
    /// written. Smoothness indicators are captured for the WENO quadrature.
    #[allow(clippy::too_many_arguments)]
    pub fn d_pair_into(
        &self,
        v1: Option<&[f64]>,
        v2: Option<&[f64]>,
        quad: Quadrature,
        ws: &mut Workspace,
        out_l: Option<&mut [f64]>,
        out_r: Option<&mut [f64]>,
        si_l: Option<&mut Smoothness>,
        si_r: Option<&mut Smoothness>,
    ) -> Result<()> {
        let n = self.len();
        ws.reserve(n);
        let mu = self.params.mu;
        let Workspace { il, ir, j, .. } = ws;
        let mut ends_l = None;
        let mut ends_r = None;
        if let Some(v) = v1 {
            check_len(v, &self.params)?;
            self.conv(v, quad, SideTag::Left, il, si_l, j);
            ends_l = Some(EndValues::of(v, il));
        }
        if let Some(v) = v2 {
            check_len(v, &self.params)?;
            self.conv(v, quad, SideTag::Right, ir, si_r, j);
            ends_r = Some(EndValues::of(v, ir));
        }
        if let (Some(v), Some(out), Some(e)) = (v1, out_l, ends_l.as_ref()) {
            let (a, _) = boundary_coefficients(SideTag::Left, self.bc, e, ends_r.as_ref(), mu)?;
            add_homogeneous(il, a, 0.0, self.params.decay);
            for i in 0..n {
                out[i] = v[i] - il[i];
            }
        }
        if let (Some(v), Some(out), Some(e)) = (v2, out_r, ends_r.as_ref()) {
            let (_, b) = boundary_coefficients(SideTag::Right, self.bc, e, ends_l.as_ref(), mu)?;
            add_homogeneous(ir, 0.0, b, self.params.decay);
            for i in 0..n {
                out[i] = v[i] - ir[i];
            }
        }
        Ok(())
    }

    /// `D_0^p[v]`, `p = 1..=outs.len()`; powers above one use Linear6.
    pub fn zero_chain(&self, v: &[f64], quad: Quadrature, ws: &mut Workspace, outs: &mut [Vec<f64>]) -> Result<()> {
        let n = self.len();
        let mut cur = std::mem::take(&mut ws.cur_l);
        cur.clear();
        cur.extend_from_slice(v);
        let mut res = Ok(());
        for (p, out) in outs.iter_mut().enumerate() {
            out.resize(n, 0.0);
            let q = if p == 0 { quad } else { Quadrature::Linear6 };
            res = self.d_zero_into(&cur, q, ws, out);
            if res.is_err() {
                break;
            }
            cur.copy_from_slice(out);
        }
        ws.cur_l = cur;
        res
    }

    /// `D_L^p[v1]` and `D_R^p[v2]` for `p = 1..=k`, closed jointly at every power.
    #[allow(clippy::too_many_arguments)]
    pub fn pair_chain(
        &self,
        v1: Option<&[f64]>,
        v2: Option<&[f64]>,
        quad: Quadrature,
        ws: &mut Workspace,
        outs_l: &mut [Vec<f64>],
        outs_r: &mut [Vec<f64>],
        mut si_l: Option<&mut Smoothness>,
        mut si_r: Option<&mut Smoothness>,
    ) -> Result<()> {
        let n = self.len();
        let k = outs_l.len().max(outs_r.len());
        let mut cur_l = std::mem::take(&mut ws.cur_l);
        let mut cur_r = std::mem::take(&mut ws.cur_r);
        if let Some(v) = v1 {
            cur_l.clear();
            cur_l.extend_from_slice(v);
        }
        if let Some(v) = v2 {
            cur_r.clear();
            cur_r.extend_from_slice(v);
        }
        let mut res = Ok(());
        for p in 0..k {
            let q = if p == 0 { quad } else { Quadrature::Linear6 };
            let ol = if v1.is_some() { outs_l.get_mut(p) } else { None };
            let or = if v2.is_some() { outs_r.get_mut(p) } else { None };
            let ol = ol.map(|o| {
                o.resize(n, 0.0);
                o.as_mut_slice()
            });
            let or = or.map(|o| {
                o.resize(n, 0.0);
                o.as_mut_slice()
            });
            let (sl, sr) = if p == 0 { (si_l.as_deref_mut(), si_r.as_deref_mut()) } else { (None, None) };
            res = self.d_pair_into(
                v1.map(|_| cur_l.as_slice()),
                v2.map(|_| cur_r.as_slice()),
                q,
                ws,
                ol,
                or,
                sl,
                sr,
            );
            if res.is_err() {
                break;
            }
            if v1.is_some() {
                cur_l.copy_from_slice(&outs_l[p]);
            }
            if v2.is_some() {
                cur_r.copy_from_slice(&outs_r[p]);
            }
        }
        ws.cur_l = cur_l;
        ws.cur_r = cur_r;
        res
    }
}

/// `L^{-1}[v]` for one kernel (single-side closure, zero partner).
pub fn apply_l_inverse(side: SideTag, v: &[f64], params: &KernelParams, bc: BoundaryKind, quad: Quadrature) -> Result<Vec<f64>> {
    let d = apply_d(side, v, params, bc, quad)?;
    Ok(v.iter().zip(&d).map(|(a, b)| a - b).collect())
}

/// `D[v] = v - L^{-1}[v]`.
pub fn apply_d(side: SideTag, v: &[f64], params: &KernelParams, bc: BoundaryKind, quad: Quadrature) -> Result<Vec<f64>> {
    let mut chain = apply_d_power_chain(side, v, params, bc, quad, 1, None)?;
    Ok(chain.pop().expect("one power"))
}

/// `D^1[v], ..., D^k[v]`; when `sigma` is given the `p`-th entry is scaled by `σ^{p-1}`.
pub fn apply_d_power_chain(
    side: SideTag,
    v: &[f64],
    params: &KernelParams,
    bc: BoundaryKind,
    quad: Quadrature,
    k: usize,
    sigma: Option<&[f64]>,
) -> Result<Vec<Vec<f64>>> {
    if !(1..=3).contains(&k) {
        return Err(invalid("k", format!("must be 1, 2 or 3, got {k}")));
    }
    check_len(v, params)?;
    if let Some(s) = sigma {
        check_len(s, params)?;
    }
    let kernel = Kernel { params: *params, rule: QuadratureRule::new(params.nu)?, bc };
    let mut ws = Workspace::new();
    let mut outs = vec![Vec::new(); k];
    match side {
        SideTag::Zero => kernel.zero_chain(v, quad, &mut ws, &mut outs)?,
        SideTag::Left => kernel.pair_chain(Some(v), None, quad, &mut ws, &mut outs, &mut [], None, None)?,
        SideTag::Right => kernel.pair_chain(None, Some(v), quad, &mut ws, &mut [], &mut outs, None, None)?,
    }
    if let Some(s) = sigma {
        for (p, out) in outs.iter_mut().enumerate().skip(1) {
            for (o, &si) in out.iter_mut().zip(s) {
                *o *= si.powi(p as i32);
            }
        }
    }
    Ok(outs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(nu: f64, n: usize) -> KernelParams {
        KernelParams::new(nu, 1.0, n).unwrap()
    }

    #[test]
    fn sweep_examples() {
        let mut out = [0.0; 4];
        sweep_left(&[9.0, 0.5, 0.5, 0.5], 0.5, &mut out);
        assert_eq!(out, [0.0, 0.5, 0.75, 0.875]);
        sweep_right(&[0.5, 0.5, 0.5, 9.0], 0.5, &mut out);
        assert_eq!(out, [0.875, 0.75, 0.5, 0.0]);
    }

    #[test]
    fn constants_give_geometric_series() {
        for bc in [BoundaryKind::Periodic, BoundaryKind::Homogeneous] {
            let p = params(0.3, 20);
            let v = vec![1.0; 21];
            for quad in [Quadrature::Linear6, Quadrature::Weno5] {
                let l = convolve(&v, &p, quad, SideTag::Left, bc).unwrap().i;
                let r = convolve(&v, &p, quad, SideTag::Right, bc).unwrap().i;
                let z = convolve(&v, &p, quad, SideTag::Zero, bc).unwrap().i;
                for i in 0..=20 {
                    let el = -(-(i as f64) * 0.3).exp_m1();
                    let er = -(-((20 - i) as f64) * 0.3).exp_m1();
                    assert!((l[i] - el).abs() < 1e-14);
                    assert!((r[i] - er).abs() < 1e-14);
                    assert!((z[i] - 0.5 * (el + er)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn fused_sweeps_match_two_pass() {
        let p = params(0.7, 13);
        let rule = QuadratureRule::new(p.nu).unwrap();
        let v: Vec<f64> = (0..14).map(|i| ((i * i) as f64 * 0.37).sin()).collect();
        for bc in [BoundaryKind::Periodic, BoundaryKind::Homogeneous] {
            for side in [SideTag::Left, SideTag::Right] {
                let mut j = vec![0.0; 14];
                local_integrals_into(&v, &rule, Quadrature::Linear6, side, bc, &mut j, None);
                let mut a = vec![0.0; 14];
                match side {
                    SideTag::Left => sweep_left(&j, p.decay, &mut a),
                    _ => sweep_right(&j, p.decay, &mut a),
                }
                let mut b = vec![0.0; 14];
                convolve_into(&v, &p, &rule, Quadrature::Linear6, side, bc, &mut b, None);
                for i in 0..14 {
                    assert!((a[i] - b[i]).abs() < 1e-15, "{side:?} {bc:?} {i}");
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let mu = 0.3;
        let i0b = 0.5 * (1.0 - mu);
        let per = EndValues { v_a: 1.0, v_b: 1.0, i_a: i0b, i_b: i0b };
        let (a, b) = boundary_coefficients(SideTag::Zero, BoundaryKind::Periodic, &per, None, mu).unwrap();
        assert!((a - 0.5).abs() < 1e-15 && (b - 0.5).abs() < 1e-15);
        let (a, b) = boundary_coefficients(SideTag::Zero, BoundaryKind::Homogeneous, &per, None, mu).unwrap();
        assert!((a - 0.5).abs() < 1e-15 && (b - 0.5).abs() < 1e-15);
        let zero = EndValues::default();
        for side in [SideTag::Left, SideTag::Right, SideTag::Zero] {
            let (a, b) = boundary_coefficients(side, BoundaryKind::Periodic, &zero, None, mu).unwrap();
            assert_eq!((a, b), (0.0, 0.0));
        }
        assert!(boundary_coefficients(SideTag::Zero, BoundaryKind::Periodic, &zero, None, 1.0).is_err());
    }

    #[test]
    fn constants_are_fixed_points() {
        for bc in [BoundaryKind::Periodic, BoundaryKind::Homogeneous] {
            let p = params(0.4, 30);
            let v = vec![2.5; 31];
            for side in [SideTag::Left, SideTag::Right, SideTag::Zero] {
                let w = apply_l_inverse(side, &v, &p, bc, Quadrature::Weno5).unwrap();
                let d = apply_d(side, &v, &p, bc, Quadrature::Weno5).unwrap();
                if !(bc == BoundaryKind::Homogeneous && side != SideTag::Zero) {
                    assert!(w.iter().all(|x| (x - 2.5).abs() < 1e-13), "{bc:?} {side:?}");
                }
                if side == SideTag::Zero || bc == BoundaryKind::Periodic {
                    assert!(d.iter().all(|x| x.abs() < 1e-13));
                }
            }
        }
    }

    #[test]
    fn homogeneous_pair_of_constants_vanishes() {
        let k = Kernel::new(0.4, 1.0, 30, BoundaryKind::Homogeneous).unwrap();
        let v = vec![1.5; 31];
        let mut ws = Workspace::new();
        let mut ol = vec![Vec::new(); 3];
        let mut or = vec![Vec::new(); 3];
        k.pair_chain(Some(&v), Some(&v), Quadrature::Weno5, &mut ws, &mut ol, &mut or, None, None).unwrap();
        for p in 0..3 {
            assert!(ol[p].iter().chain(&or[p]).all(|x| x.abs() < 1e-13));
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(KernelParams::new(0.0, 0.1, 10).is_err());
        assert!(KernelParams::new(1.0, 0.1, 3).is_err());
        let p = params(1.0, 10);
        assert!(apply_d(SideTag::Zero, &[0.0; 5], &p, BoundaryKind::Periodic, Quadrature::Linear6).is_err());
        assert!(apply_d_power_chain(SideTag::Zero, &[0.0; 11], &p, BoundaryKind::Periodic, Quadrature::Linear6, 4, None).is_err());
    }
}
