use std::f64::consts::TAU;
use std::sync::Arc;

use proptest::prelude::*;

use succonv::config::beta_max_combined;
use succonv::operator::build_h;
use succonv::problems::{make_problem, CaseParams};
use succonv::solver2d::{advance_2d, AxisSpec, ProblemSpec2D};
use succonv::timestep::advance;
use succonv::*;

fn burgers(eps: f64) -> ProblemSpec {
    let mut p = ProblemSpec::linear(0.0, 0.0);
    p.flux = Arc::new(|u| 0.5 * u * u);
    p.flux_deriv = Arc::new(|u| u);
    p.diffusion = Arc::new(move |u| eps * u * u * u);
    p.diffusion_deriv = Arc::new(move |u| 3.0 * eps * u * u);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constants_are_stationary(
        value in -3.0f64..3.0,
        k in 1u32..=3,
        periodic in any::<bool>(),
        weno in any::<bool>(),
        dt in 1e-4f64..1.0,
    ) {
        let bc = if periodic { BoundaryKind::Periodic } else { BoundaryKind::Homogeneous };
        let p = burgers(0.1).with_bc(bc);
        let grid = Grid1D::new(-1.0, 1.0, 32).unwrap();
        let quad = if weno { Quadrature::Weno5 } else { Quadrature::Linear6 };
        let cfg = SchemeConfig::new(RkOrder::new(k).unwrap(), 0.4, 1.0).unwrap().with_quadrature(quad);
        let bounds = WaveBounds::new(1.0, 0.5).unwrap();
        let h = build_h(&[value; 33], &grid, &p, &cfg, bounds, dt).unwrap();
        prop_assert!(h.iter().all(|&x| x == 0.0), "{h:?}");
    }
}

#[test]
fn operator_consistency_order() {
    // ‖H[sin] - (-c cos - b sin)‖ = O(dt^k), quadrature error subdominant. With
    // c = b the leading advection and diffusion errors cancel on a sine.
    let grid = Grid1D::new(0.0, TAU, 4000).unwrap();
    let u = grid.sample(f64::sin);
    let (c, b) = (1.0, 0.3);
    let p = ProblemSpec::linear(c, b);
    let bounds = WaveBounds::new(c, b).unwrap();
    let dts = [0.004, 0.002, 0.001, 0.0005];
    for k in 1..=3u32 {
        let cfg = SchemeConfig::new(RkOrder::new(k).unwrap(), 0.4, 1.0)
            .unwrap()
            .with_quadrature(Quadrature::Linear6)
            .with_filter(false);
        let errs: Vec<f64> = dts
            .iter()
            .map(|&dt| {
                let h = build_h(&u, &grid, &p, &cfg, bounds, dt).unwrap();
                h.iter()
                    .zip(grid.nodes())
                    .map(|(hv, &x)| (hv + c * x.cos() + b * x.sin()).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        let order = (errs[0] / errs[3]).ln() / 8f64.ln();
        assert!((order - k as f64).abs() < 0.2, "k={k}: {errs:?} order {order}");
    }
}

#[test]
fn filter_is_inert_for_first_order() {
    let grid = Grid1D::new(-1.0, 1.0, 40).unwrap();
    let u = grid.sample(|x| if x < 0.1 { 1.0 } else { -0.5 });
    let p = burgers(0.05).with_bc(BoundaryKind::Homogeneous);
    let bounds = WaveBounds::new(1.0, 0.15).unwrap();
    let on = SchemeConfig::new(RkOrder::FIRST, 1.0, 1.0).unwrap().with_filter(true);
    let off = on.clone().with_filter(false);
    assert_eq!(build_h(&u, &grid, &p, &on, bounds, 0.01).unwrap(), build_h(&u, &grid, &p, &off, bounds, 0.01).unwrap());
}

#[test]
fn large_cfl_runs_stay_bounded() {
    // β at the combined bound, CFL 2: no growth beyond the initial maximum.
    for k in 1..=3u32 {
        let order = RkOrder::new(k).unwrap();
        let case = make_problem("linear_advdiff", &CaseParams { n: Some(80), b: Some(0.01), ..Default::default() }).unwrap();
        let cfg = SchemeConfig::new(order, beta_max_combined(order), 2.0).unwrap();
        let times: Vec<f64> = (1..=40).map(|i| i as f64 * 0.1).collect();
        let tr = case.run(&cfg, 4.0, &times, Execution::Sequential).unwrap();
        let start = case.initial_field().max_abs();
        for s in tr.snapshots.iter().chain([&tr.last]) {
            assert!(s.max_abs() <= start + 1e-8, "k={k} t={}: {}", s.time, s.max_abs());
        }
    }
}

#[test]
fn snapshots_land_on_requested_times() {
    let case = make_problem("linear_advdiff", &CaseParams { n: Some(40), ..Default::default() }).unwrap();
    let cfg = case.default_config().unwrap();
    let tr = case.run(&cfg, 1.0, &[0.0, 0.3, 0.7, 1.0, 2.0], Execution::Sequential).unwrap();
    let times: Vec<f64> = tr.snapshots.iter().map(|s| s.time).collect();
    assert_eq!(times, vec![0.0, 0.3, 0.7, 1.0, 1.0]);
    assert_eq!(tr.last.time, 1.0);
}

#[test]
fn stationary_state_jumps_to_the_end() {
    let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
    let p = ProblemSpec::linear(0.0, 0.0);
    let cfg = SchemeConfig::new(RkOrder::THIRD, 0.4, 1.0).unwrap();
    let u0 = SolutionField::new(vec![0.25; 17], 0.0);
    let tr = advance(&u0, &grid, 5.0, &p, &cfg, &[]).unwrap();
    assert_eq!(tr.steps, 0);
    assert_eq!(tr.last, SolutionField::new(vec![0.25; 17], 5.0));
}

#[test]
fn rejects_mismatched_lengths_and_backwards_time() {
    let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
    let p = ProblemSpec::linear(1.0, 0.0);
    let cfg = SchemeConfig::new(RkOrder::FIRST, 1.0, 1.0).unwrap();
    assert!(advance(&SolutionField::new(vec![0.0; 5], 0.0), &grid, 1.0, &p, &cfg, &[]).is_err());
    assert!(advance(&SolutionField::new(vec![0.0; 17], 2.0), &grid, 1.0, &p, &cfg, &[]).is_err());
}

#[test]
fn transposed_problem_gives_transposed_result() {
    let grid = Grid2D::new(Grid1D::new(-1.0, 1.0, 24).unwrap(), Grid1D::new(-1.0, 1.0, 16).unwrap());
    let axis = |c: f64, eps: f64| AxisSpec {
        flux: Arc::new(move |u| c * u * u),
        flux_deriv: Arc::new(move |u| 2.0 * c * u),
        diffusion: Arc::new(move |u| eps * u),
        diffusion_deriv: Arc::new(move |_| eps),
        bc: BoundaryKind::Homogeneous,
    };
    let p = ProblemSpec2D {
        x: axis(1.0, 0.02),
        y: axis(0.5, 0.05),
        initial: Arc::new(|x, y| if x * x + 2.0 * y * y < 0.3 { 1.0 } else { 0.0 }),
    };
    let cfg = SchemeConfig::new(RkOrder::THIRD, 0.2, 0.5).unwrap();
    let a = advance_2d(&p.initial_field(&grid, 0.0), &grid, 0.2, &p, &cfg, &[], Execution::Sequential).unwrap();
    let gt = Grid2D::new(grid.gy.clone(), grid.gx.clone());
    let pt = p.transposed();
    let b = advance_2d(&pt.initial_field(&gt, 0.0), &gt, 0.2, &pt, &cfg, &[], Execution::Sequential).unwrap();
    let (nx, ny) = (grid.gx.len(), grid.gy.len());
    for j in 0..ny {
        for i in 0..nx {
            assert!((a.last.values[j * nx + i] - b.last.values[i * ny + j]).abs() < 1e-12);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let case = make_problem("strong_degenerate_2d", &CaseParams { n: Some(40), ..Default::default() }).unwrap();
    let cfg = case.default_config().unwrap();
    let s = case.run(&cfg, 0.05, &[], Execution::Sequential).unwrap();
    let p = case.run(&cfg, 0.05, &[], Execution::Parallel).unwrap();
    assert_eq!(s, p);
}
