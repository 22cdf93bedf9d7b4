use std::f64::consts::TAU;

use proptest::prelude::*;

use succonv::config::EquationKind;
use succonv::stability::{amplification, stability_report, write_contours, ScanGrid, ScanSpec, SymbolMode};
use succonv::RkOrder;

fn kind_of(advection: bool) -> EquationKind {
    if advection {
        EquationKind::Advection
    } else {
        EquationKind::Diffusion
    }
}

fn mode_of(linear6: bool) -> SymbolMode {
    if linear6 {
        SymbolMode::FullyDiscreteLinear6
    } else {
        SymbolMode::SemiDiscrete
    }
}

proptest! {
    #[test]
    fn zero_mode_is_neutral(
        k in 1u32..=3,
        advection in any::<bool>(),
        linear6 in any::<bool>(),
        beta in 0.01f64..4.0,
        log_ratio in -3.0f64..3.0,
    ) {
        let k = RkOrder::new(k).unwrap();
        let kind = kind_of(advection);
        let lam = amplification(k, kind, beta, 0.0, 10f64.powf(log_ratio), mode_of(linear6), k.get() == 3 && advection).unwrap();
        prop_assert!((lam.re - 1.0).abs() < 1e-12 && lam.im.abs() < 1e-12, "{lam}");
    }

    #[test]
    fn aliases_are_conjugate(
        k in 1u32..=3,
        advection in any::<bool>(),
        beta in 0.01f64..4.0,
        log_ratio in -3.0f64..3.0,
        kd in 0.01f64..3.1,
    ) {
        let k = RkOrder::new(k).unwrap();
        let kind = kind_of(advection);
        let cross = k.get() == 3 && advection;
        let s = 10f64.powf(log_ratio);
        let mode = SymbolMode::FullyDiscreteLinear6;
        let a = amplification(k, kind, beta, kd, s, mode, cross).unwrap();
        let b = amplification(k, kind, beta, TAU - kd, s, mode, cross).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn contour_export_is_deterministic() {
    let mut spec = ScanSpec::new(RkOrder::THIRD, EquationKind::Diffusion, SymbolMode::FullyDiscreteLinear6);
    spec.grid = ScanGrid { n_kappa: 16, n_ratio: 8, ..ScanGrid::default() };
    let report = stability_report(&spec, 0.8375, false).unwrap();
    assert!(report.max_abs_lambda <= 1.0 + 1e-10);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    write_contours(&report, &mut a).unwrap();
    write_contours(&stability_report(&spec, 0.8375, false).unwrap(), &mut b).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 16 * 8);
}

#[test]
fn rejects_nonpositive_inputs() {
    let k = RkOrder::FIRST;
    assert!(amplification(k, EquationKind::Advection, 0.0, 1.0, 1.0, SymbolMode::SemiDiscrete, false).is_err());
    assert!(amplification(k, EquationKind::Advection, 1.0, 1.0, -1.0, SymbolMode::SemiDiscrete, false).is_err());
}
