use proptest::prelude::*;

use succonv::kernel::{
    apply_d, apply_d_power_chain, apply_l_inverse, convolve, local_integrals_into, Kernel, KernelParams, SideTag,
    Workspace,
};
use succonv::quadrature::QuadratureRule;
use succonv::{BoundaryKind, Grid1D, Quadrature};

fn quad_of(weno: bool) -> Quadrature {
    if weno {
        Quadrature::Weno5
    } else {
        Quadrature::Linear6
    }
}

fn bc_of(periodic: bool) -> BoundaryKind {
    if periodic {
        BoundaryKind::Periodic
    } else {
        BoundaryKind::Homogeneous
    }
}

/// `Σ_{m<=i} e^{-ν(i-m)} J_m` and its mirror, summed term by term.
fn direct(j: &[f64], nu: f64, side: SideTag) -> Vec<f64> {
    let n = j.len();
    (0..n)
        .map(|i| match side {
            SideTag::Left => (1..=i).map(|m| (-nu * (i - m) as f64).exp() * j[m]).sum(),
            _ => (i..n - 1).map(|m| (-nu * (m - i) as f64).exp() * j[m]).sum(),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweeps_match_direct_summation(
        v in prop::collection::vec(-1.0f64..1.0, 7..300),
        log_nu in -3.0f64..1.7,
        left in any::<bool>(),
        weno in any::<bool>(),
        periodic in any::<bool>(),
    ) {
        let nu = 10f64.powf(log_nu);
        let n = v.len() - 1;
        let mut v = v;
        if periodic {
            v[n] = v[0];
        }
        let (side, quad, bc) = (if left { SideTag::Left } else { SideTag::Right }, quad_of(weno), bc_of(periodic));
        let params = KernelParams::new(nu, 1.0, n).unwrap();
        let rule = QuadratureRule::new(nu).unwrap();
        let mut j = vec![0.0; n + 1];
        local_integrals_into(&v, &rule, quad, side, bc, &mut j, None);
        let want = direct(&j, nu, side);
        let got = convolve(&v, &params, quad, side, bc).unwrap().i;
        for (a, b) in want.iter().zip(&got) {
            prop_assert!((a - b).abs() <= 1e-12 * n as f64, "{a} vs {b}");
        }
    }

    #[test]
    fn periodic_results_are_periodic(
        v in prop::collection::vec(-1.0f64..1.0, 7..200),
        log_nu in -2.0f64..1.0,
        weno in any::<bool>(),
    ) {
        let n = v.len() - 1;
        let mut v = v;
        v[n] = v[0];
        let params = KernelParams::new(10f64.powf(log_nu), 1.0, n).unwrap();
        for side in [SideTag::Left, SideTag::Right, SideTag::Zero] {
            let chain = apply_d_power_chain(side, &v, &params, BoundaryKind::Periodic, quad_of(weno), 3, None).unwrap();
            for d in &chain {
                prop_assert!((d[0] - d[n]).abs() <= 1e-12 * (1.0 + d[0].abs()), "{side:?}: {} vs {}", d[0], d[n]);
            }
        }
    }

    #[test]
    fn homogeneous_closures_hold_at_the_ends(
        v in prop::collection::vec(-1.0f64..1.0, 7..200),
        log_nu in -2.0f64..1.0,
        weno in any::<bool>(),
    ) {
        let n = v.len() - 1;
        let kernel = Kernel::new(10f64.powf(log_nu), 1.0, n, BoundaryKind::Homogeneous).unwrap();
        let mut ws = Workspace::new();
        let mut d0 = vec![Vec::new(); 3];
        kernel.zero_chain(&v, quad_of(weno), &mut ws, &mut d0).unwrap();
        for d in &d0 {
            prop_assert!(d[0].abs() < 1e-12 && d[n].abs() < 1e-12, "{} {}", d[0], d[n]);
        }
        let (mut dl, mut dr) = (vec![Vec::new(); 3], vec![Vec::new(); 3]);
        kernel.pair_chain(Some(&v), Some(&v), quad_of(weno), &mut ws, &mut dl, &mut dr, None, None).unwrap();
        for (l, r) in dl.iter().zip(&dr) {
            prop_assert!((l[0] - r[0]).abs() < 1e-12 && (l[n] - r[n]).abs() < 1e-12);
        }
    }

    #[test]
    fn operators_are_linear(
        pair in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 7..120),
        a in -2.0f64..2.0,
        periodic in any::<bool>(),
    ) {
        let n = pair.len() - 1;
        let bc = bc_of(periodic);
        let (mut x, mut y): (Vec<f64>, Vec<f64>) = pair.into_iter().unzip();
        if periodic {
            x[n] = x[0];
            y[n] = y[0];
        }
        let params = KernelParams::new(0.7, 1.0, n).unwrap();
        let xy: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + q).collect();
        for side in [SideTag::Left, SideTag::Right, SideTag::Zero] {
            let dx = apply_d(side, &x, &params, bc, Quadrature::Linear6).unwrap();
            let dy = apply_d(side, &y, &params, bc, Quadrature::Linear6).unwrap();
            let dxy = apply_d(side, &xy, &params, bc, Quadrature::Linear6).unwrap();
            for i in 0..=n {
                prop_assert!((a * dx[i] + dy[i] - dxy[i]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn second_derivative_identity() {
    // D_0[v] = -L_0^{-1}[v_xx] / α² for smooth periodic v.
    let grid = Grid1D::new(0.0, std::f64::consts::TAU, 400).unwrap();
    let v = grid.sample(|x| (2.0 * x).sin() + x.cos());
    let vxx = grid.sample(|x| -4.0 * (2.0 * x).sin() - x.cos());
    for alpha in [1.0, 5.0, 20.0] {
        let params = KernelParams::new(alpha, grid.dx(), grid.n_cells()).unwrap();
        let d0 = apply_d(SideTag::Zero, &v, &params, BoundaryKind::Periodic, Quadrature::Linear6).unwrap();
        let linv = apply_l_inverse(SideTag::Zero, &vxx, &params, BoundaryKind::Periodic, Quadrature::Linear6).unwrap();
        let err = d0.iter().zip(&linv).map(|(d, l)| (d + l / (alpha * alpha)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "α={alpha}: {err:e}");
    }
}

#[test]
fn fourier_mode_symbols() {
    // On e^{iκx}, D_L = iκ/(α+iκ) and D_0 = κ²/(α²+κ²) up to quadrature error.
    let grid = Grid1D::new(0.0, std::f64::consts::TAU, 512).unwrap();
    let (kappa, alpha) = (3.0, 4.0);
    let c = grid.sample(|x| (kappa * x).cos());
    let s = grid.sample(|x| (kappa * x).sin());
    let params = KernelParams::new(alpha, grid.dx(), grid.n_cells()).unwrap();
    let dlc = apply_d(SideTag::Left, &c, &params, BoundaryKind::Periodic, Quadrature::Linear6).unwrap();
    let dls = apply_d(SideTag::Left, &s, &params, BoundaryKind::Periodic, Quadrature::Linear6).unwrap();
    let d0c = apply_d(SideTag::Zero, &c, &params, BoundaryKind::Periodic, Quadrature::Linear6).unwrap();
    let (re, im) = {
        let den = alpha * alpha + kappa * kappa;
        (kappa * kappa / den, kappa * alpha / den)
    };
    for i in 0..grid.len() {
        // D_L[cos + i sin] = (re + i im)(cos + i sin)
        assert!((dlc[i] - (re * c[i] - im * s[i])).abs() < 1e-9);
        assert!((dls[i] - (re * s[i] + im * c[i])).abs() < 1e-9);
        assert!((d0c[i] - re * c[i]).abs() < 1e-9);
    }
}

#[test]
fn sigma_scales_higher_powers() {
    let n = 20;
    let v: Vec<f64> = (0..=n).map(|i| (i as f64 * 0.4).sin()).collect();
    let params = KernelParams::new(0.5, 1.0, n).unwrap();
    let sigma = vec![0.5; n + 1];
    let plain = apply_d_power_chain(SideTag::Left, &v, &params, BoundaryKind::Homogeneous, Quadrature::Linear6, 3, None).unwrap();
    let scaled =
        apply_d_power_chain(SideTag::Left, &v, &params, BoundaryKind::Homogeneous, Quadrature::Linear6, 3, Some(&sigma)).unwrap();
    for p in 0..3 {
        for i in 0..=n {
            assert!((scaled[p][i] - plain[p][i] * 0.5f64.powi(p as i32)).abs() < 1e-15);
        }
    }
}
