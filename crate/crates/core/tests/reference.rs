mod common;

use common::{rel, DIURNAL};
use riccati_wall::reference::*;
use riccati_wall::scenarios::{aac_wall, composite_wall, concrete, eps_insulation, ground_slab};
use riccati_wall::*;

fn omega_for_re_qe(layer: &Layer, re_qe: f64) -> f64 {
    let k = re_qe / layer.thickness_m;
    2.0 * layer.diffusivity() * k * k
}

#[test]
fn zero_thickness_is_identity() {
    let l = Layer::new(0.0, 1.0, 1000.0, 1000.0).unwrap();
    assert_eq!(tmm_layer_matrix(&l, DIURNAL).unwrap().unwrap(), TmmMatrix::identity());
}

#[test]
fn determinant_is_unity_at_moderate_depth() {
    let l = concrete(0.2);
    let m = tmm_layer_matrix(&l, omega_for_re_qe(&l, 5.0)).unwrap().unwrap();
    assert!((m.determinant() - 1.0).norm() < 1e-10);
    // Drift grows with depth; it is only a diagnostic.
    let deep = tmm_layer_matrix(&l, omega_for_re_qe(&l, 20.0)).unwrap().unwrap();
    assert!((deep.determinant() - 1.0).norm() > (m.determinant() - 1.0).norm());
}

#[test]
fn overflow_at_710() {
    let l = concrete(0.2);
    let omega = omega_for_re_qe(&l, 710.0);
    let report = tmm_layer_matrix(&l, omega).unwrap().unwrap_err();
    assert!((report.re_qe - 710.0).abs() < 1e-9);
    assert!(report.to_string().contains("overflow"));
    // The bounded propagator is unaffected.
    let wall = WallAssembly::new(vec![l], 7.7, 25.0).unwrap();
    let y = forward_chain(&wall, omega).unwrap();
    assert!(y.values.iter().all(|v| v.re.is_finite() && v.im.is_finite()));
}

#[test]
fn overflow_report_tracks_the_exponent_threshold() {
    let limit = f64::MAX.ln();
    for l in [concrete(0.2), eps_insulation(0.15), Layer::new(1.0, 40.0, 7800.0, 450.0).unwrap()] {
        for re_qe in [1.0, 300.0, 650.0, 700.0, 705.0, 708.0, 709.5, 709.79, 709.8, 710.0, 720.0, 850.0, 1e4] {
            let omega = omega_for_re_qe(&l, re_qe);
            let yc = characteristic_admittance(omega, &l).unwrap().norm();
            let safe = limit - yc.max(1.0 / yc).max(1.0).ln() - 1.0;
            let overflowed = tmm_layer_matrix(&l, omega).unwrap().is_err();
            if re_qe >= 709.79 {
                assert!(overflowed, "Re(qe) {re_qe}");
            }
            if re_qe < safe {
                assert!(!overflowed, "Re(qe) {re_qe}");
            }
        }
    }
}

#[test]
fn ground_slab_dichotomy() {
    let slab = ground_slab();
    let slow = 2.0 * std::f64::consts::PI * 5e-6;
    let y = tmm_admittance(&slab, slow).unwrap().unwrap();
    let riccati = *forward_chain(&slab, slow).unwrap().values.last().unwrap();
    assert!(rel(y, riccati) < 1e-9);
    for f in [1e-3, 1e-2] {
        let omega = 2.0 * std::f64::consts::PI * f;
        let report = tmm_admittance(&slab, omega).unwrap().unwrap_err();
        assert_eq!(report.layer_index, 1);
        assert!(report.re_qe > 709.0);
        let y = *forward_chain(&slab, omega).unwrap().values.last().unwrap();
        assert!(y.re.is_finite() && y.im.is_finite());
    }
}

#[test]
fn tmm_agrees_with_riccati_where_finite() {
    let thin = WallAssembly::new(vec![concrete(0.05), eps_insulation(0.03)], 7.7, 25.0).unwrap();
    let y = tmm_admittance(&thin, DIURNAL).unwrap().unwrap();
    let r = *forward_chain(&thin, DIURNAL).unwrap().values.last().unwrap();
    assert!(rel(y, r) < 1e-9);
    for wall in [thin, composite_wall(), aac_wall().baseline(), ground_slab()] {
        for p in [1e8, 3.15e7, 86400.0 * 7.0, 86400.0, 3600.0, 600.0, 60.0] {
            let omega = 2.0 * std::f64::consts::PI / p;
            let r = *forward_chain(&wall, omega).unwrap().values.last().unwrap();
            if let Ok(y) = tmm_admittance(&wall, omega).unwrap() {
                assert!(rel(y, r) < 1e-9, "period {p}: {}", rel(y, r));
            }
        }
    }
}

#[test]
fn stationary_tmm() {
    let wall = composite_wall();
    let y = tmm_admittance(&wall, 0.0).unwrap().unwrap();
    let r = 1.0 / wall.h_int + 0.2 / 1.75 + 0.15 / 0.035;
    assert!((y.re - 1.0 / r).abs() < 1e-12 && y.im == 0.0);
}

#[test]
fn overflow_boundary_examples() {
    let e = overflow_boundary(1.0e-7, 10.0).unwrap();
    let direct = 709.0 / (2.0 * std::f64::consts::PI / 10.0 / 2e-7f64).sqrt();
    assert!((e - 0.400).abs() < 1e-3 && (e - direct).abs() < 1e-12);
    assert!((0.1..0.5).contains(&e));
    assert!((overflow_boundary(1.5e-5, 3600.0).unwrap() - 92.95).abs() < 0.01);
    assert!(overflow_boundary(1e-6, 1e300).unwrap() > 1e140);
    assert_eq!(overflow_boundary(1e-6, f64::INFINITY).unwrap(), f64::INFINITY);
    let quad = overflow_boundary(4e-7, 86400.0).unwrap() / overflow_boundary(1e-7, 86400.0).unwrap();
    assert!((quad - 2.0).abs() < 1e-12);
    assert!(overflow_boundary(0.0, 10.0).is_err());
    assert!(overflow_boundary(1e-7, 0.0).is_err());
}

#[test]
fn fourier_diagnostic() {
    let d = fourier_number(1e-6, 60.0, 0.01);
    assert!((d.fourier_number - 0.6).abs() < 1e-12 && !d.stable);
    assert!(fourier_number(1e-6, 50.0, 0.01).stable);
    assert!(fourier_number(1e-7, 900.0, 0.02).stable);
}

#[test]
fn slicing_a_homogeneous_layer_changes_nothing() {
    let wall = composite_wall();
    let direct = forward_chain(&wall, DIURNAL).unwrap();
    for m in [1, 3, 50] {
        let o = sliced_oracle_admittance(&wall, DIURNAL, m).unwrap();
        for (a, b) in o.chain.values.iter().zip(&direct.values) {
            assert!(rel(*a, *b) < 1e-12);
        }
    }
    assert!(sliced_oracle_admittance(&wall, DIURNAL, 0).is_err());
}

#[test]
fn sliced_oracle_converges() {
    let wall = aac_wall();
    let truth = sliced_oracle_admittance(&wall, DIURNAL, 10_000).unwrap().exterior_admittance();
    let err = |m| rel(sliced_oracle_admittance(&wall, DIURNAL, m).unwrap().exterior_admittance(), truth);
    let sweep: Vec<f64> = [4, 5, 8, 10, 14, 20, 40, 59, 100, 300, 1000].iter().map(|&m| err(m)).collect();
    assert!(sweep.windows(2).all(|w| w[1] <= w[0]), "{sweep:?}");
    // Second order in the slice width.
    let order = (err(100) / err(200)).log2();
    assert!((order - 2.0).abs() < 0.1, "{order}");
    // Crosses the first-order model's error near ten slices.
    assert!(err(8) > 0.0044 && err(14) < 0.0044);
    let fine = sliced_oracle_admittance(&wall, DIURNAL, 20_000).unwrap().exterior_admittance();
    assert!(rel(fine, truth) < 1e-6);
}

#[test]
fn oracle_fields_are_consistent() {
    let wall = aac_wall();
    let o = sliced_oracle_admittance(&wall, DIURNAL, 200).unwrap();
    assert_eq!(o.positions.len(), 201);
    assert_eq!(o.temperatures.len(), 201);
    assert!((o.positions[200] - 0.2).abs() < 1e-12);
    assert!(rel(o.fine_admittance[200], o.exterior_admittance()) == 0.0);
    let ts = o.temperatures[200];
    assert!(rel(ts, Complex::new(wall.h_ext, 0.0) / (wall.h_ext + o.exterior_admittance())) < 1e-14);
    assert!(rel(o.temperatures[0], o.transfer.global * ts) < 1e-12);
    // Temperature amplitude decays monotonically into the wall.
    assert!(o.temperatures.windows(2).all(|w| w[0].norm() <= w[1].norm()));
}

#[test]
fn progress_callback_reports_completion() {
    let mut calls = Vec::new();
    sliced_oracle_with_progress(&composite_wall(), DIURNAL, 10, &mut |d, t| calls.push((d, t))).unwrap();
    assert_eq!(calls.last(), Some(&(2, 2)));
}
