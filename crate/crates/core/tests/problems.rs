use proptest::prelude::*;

use succonv::problems::{
    barenblatt, barenblatt_support, error_norms, exact_advdiff, interpolate, make_problem, reference_solution, CaseParams,
    CASE_NAMES,
};
use succonv::*;

fn barenblatt_mass(t: f64, m: f64) -> f64 {
    let a = barenblatt_support(t, m).unwrap();
    ::quadrature::integrate(|x| barenblatt(x, t, m).unwrap(), -a, a, 1e-12).integral
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn barenblatt_mass_is_time_independent(m in 1.5f64..9.0, t in 0.5f64..8.0) {
        let (m0, m1) = (barenblatt_mass(1.0, m), barenblatt_mass(t, m));
        prop_assert!((m0 - m1).abs() < 1e-6 * m0, "{m0} vs {m1}");
    }

    #[test]
    fn dt_is_homogeneous_in_dx(c in 0.0f64..5.0, b in 0.01f64..5.0, dx in 1e-4f64..1.0, s in 0.1f64..10.0) {
        let bounds = WaveBounds::new(c, b).unwrap();
        let a = compute_dt(0.7, bounds, dx).unwrap();
        let scaled = compute_dt(0.7, bounds, s * dx).unwrap();
        prop_assert!((scaled - s * a).abs() <= 1e-12 * scaled);
    }

    #[test]
    fn widening_the_range_never_shrinks_bounds(
        v in prop::collection::vec(-2.0f64..2.0, 1..20),
        extra in -4.0f64..4.0,
    ) {
        let mut p = ProblemSpec::linear(0.0, 0.0);
        p.flux_deriv = std::sync::Arc::new(|u| u * u - 0.5 * u);
        p.diffusion_deriv = std::sync::Arc::new(|u| (u - 0.3).max(0.0));
        let small = compute_bounds(&p, &SolutionField::new(v.clone(), 0.0)).unwrap();
        let mut w = v;
        w.push(extra);
        let large = compute_bounds(&p, &SolutionField::new(w, 0.0)).unwrap();
        prop_assert!(large.c >= small.c && large.b_diff >= small.b_diff);
    }
}

#[test]
fn every_case_builds_and_takes_a_step() {
    for name in CASE_NAMES {
        let params = CaseParams { n: Some(24), ..Default::default() };
        let case = make_problem(name, &params).unwrap();
        let cfg = case.default_config().unwrap();
        let t = case.t0 + 1e-3;
        let tr = case.run(&cfg, t, &[], Execution::Sequential).unwrap();
        assert!(tr.last.values.iter().all(|v| v.is_finite()), "{name}");
        assert_eq!(tr.last.time, t, "{name}");
    }
    assert!(make_problem("no_such_case", &CaseParams::default()).is_err());
}

#[test]
fn reference_scheme_converges_at_first_order() {
    let t = 0.25;
    let target = make_problem("linear_advdiff", &CaseParams { n: Some(50), ..Default::default() }).unwrap();
    let grid = target.grid_1d().unwrap().clone();
    let truth: Vec<f64> = grid.nodes().iter().map(|&x| exact_advdiff(x, t, 1.0, 1.0)).collect();
    let errs: Vec<f64> = [100, 200, 400]
        .iter()
        .map(|&n_ref| {
            let (rg, r) = reference_solution(&target, t, n_ref).unwrap();
            error_norms(&interpolate(&rg, &r.values, &grid), &truth, grid.dx()).unwrap().linf
        })
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((0.8..1.3).contains(&order), "{errs:?}");
    }
}

#[test]
fn reference_agrees_with_exact_at_fine_resolution() {
    let t = 0.05;
    let case = make_problem("linear_advdiff", &CaseParams::default()).unwrap();
    let (rg, r) = reference_solution(&case, t, 3000).unwrap();
    let err = rg
        .nodes()
        .iter()
        .zip(&r.values)
        .map(|(&x, u)| (u - exact_advdiff(x, t, 1.0, 1.0)).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-3, "{err}");
}

#[test]
fn reference_keeps_constants() {
    let mut case = make_problem("linear_advdiff", &CaseParams { n: Some(20), ..Default::default() }).unwrap();
    if let succonv::problems::CaseSpec::OneD { problem, .. } = &mut case.spec {
        problem.initial = std::sync::Arc::new(|_| 0.75);
    }
    let (_, r) = reference_solution(&case, 0.1, 60).unwrap();
    assert!(r.values.iter().all(|&v| (v - 0.75).abs() < 1e-14));
}
