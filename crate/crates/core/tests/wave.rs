mod common;

use common::DIURNAL;
use riccati_wall::scenarios::concrete;
use riccati_wall::{characteristic_admittance, penetration_depth, wave_vector, Error, GradientSpec, Layer};
use std::f64::consts::PI;

fn unit_alpha(alpha: f64) -> Layer {
    // ρc_p = 1e6, so α = λ·1e-6
    Layer::new(0.5, alpha * 1e6, 1000.0, 1000.0).unwrap()
}

#[test]
fn wave_vector_static_limit_is_zero() {
    let q = wave_vector(0.0, &concrete(0.2)).unwrap();
    assert_eq!(q.re, 0.0);
    assert_eq!(q.im, 0.0);
}

#[test]
fn wave_vector_diurnal_unit_diffusivity() {
    let q = wave_vector(DIURNAL, &unit_alpha(1e-6)).unwrap();
    let expected = (DIURNAL / 2e-6).sqrt();
    assert!((q.re - 6.03001).abs() < 5e-6);
    assert!((q.re - expected).abs() < 1e-14 * expected);
    assert_eq!(q.re, q.im);
}

#[test]
fn wave_vector_fast_insulator_enters_overflow_region() {
    let q = wave_vector(2.0 * PI / 10.0, &unit_alpha(1e-7)).unwrap();
    assert!((q.re - 1772.45).abs() < 0.01);
    assert!((q.re * 0.5 - 886.2).abs() < 0.1);
}

#[test]
fn negative_or_nonfinite_omega_is_rejected() {
    assert!(matches!(wave_vector(-1.0, &concrete(0.1)), Err(Error::Invalid(_))));
    assert!(wave_vector(f64::NAN, &concrete(0.1)).is_err());
}

#[test]
fn characteristic_admittance_concrete() {
    let yc = characteristic_admittance(DIURNAL, &concrete(0.2)).unwrap();
    let direct = (DIURNAL * 2400.0 * 880.0 * 1.75f64).sqrt();
    assert!((yc.norm() - direct).abs() < 1e-12 * direct);
    assert!((yc.norm() - 16.3945).abs() < 1e-4);
    assert!((yc.arg() - PI / 4.0).abs() < 1e-14);
    assert_eq!(characteristic_admittance(0.0, &concrete(0.2)).unwrap().norm(), 0.0);
}

#[test]
fn characteristic_admittance_depends_on_product_only() {
    let a = Layer::new(0.2, 1.0, 1000.0, 1000.0).unwrap();
    let b = Layer::new(0.2, 2.0, 500.0, 1000.0).unwrap();
    let ya = characteristic_admittance(DIURNAL, &a).unwrap();
    let yb = characteristic_admittance(DIURNAL, &b).unwrap();
    assert!((ya.norm() - yb.norm()).abs() < 1e-12 * ya.norm());
}

#[test]
fn characteristic_admittance_is_conductivity_times_q() {
    let l = concrete(0.3);
    let q = wave_vector(1e-3, &l).unwrap();
    assert_eq!(characteristic_admittance(1e-3, &l).unwrap(), q * l.conductivity);
}

#[test]
fn penetration_depth_examples() {
    let d = penetration_depth(DIURNAL, &unit_alpha(1e-6)).unwrap();
    assert!((d - 0.16584).abs() < 1e-5);
    let d4 = penetration_depth(DIURNAL, &unit_alpha(4e-6)).unwrap();
    assert!((d4 / d - 2.0).abs() < 1e-12);
    let fast = penetration_depth(2.0 * PI / 10.0, &unit_alpha(1e-7)).unwrap();
    assert!((fast - 5.642e-4).abs() < 1e-7);
    assert_eq!(penetration_depth(0.0, &unit_alpha(1e-6)), Err(Error::InfinitePenetrationDepth));
}

#[test]
fn layer_validation() {
    assert!(Layer::new(0.1, -1.0, 1000.0, 1000.0).is_err());
    assert!(Layer::new(0.1, 1.0, 0.0, 1000.0).is_err());
    assert!(Layer::new(0.1, 1.0, 1000.0, f64::INFINITY).is_err());
    let base = Layer::new(0.2, 0.12, 490.0, 1000.0).unwrap();
    let bad = GradientSpec { conductivity_exterior: -0.2, vol_heat_capacity_interior: 0.49e6, vol_heat_capacity_exterior: 1e6 };
    assert!(base.with_gradient(bad).is_err());
    let mismatched = GradientSpec { conductivity_exterior: 0.2, vol_heat_capacity_interior: 0.6e6, vol_heat_capacity_exterior: 1e6 };
    assert!(base.with_gradient(mismatched).is_err());
}

#[test]
fn gradient_parameters_of_aac_layer() {
    let l = riccati_wall::scenarios::aac_layer();
    assert!((l.beta() - 2.55413).abs() < 1e-5);
    assert!(((-l.beta() * l.thickness_m).exp() - 0.6).abs() < 1e-14);
    assert!((l.d1() - 0.54e6 / 0.2).abs() < 1e-6);
    let m = l.mirrored();
    assert!((m.beta() + l.beta()).abs() < 1e-12);
    assert!((m.conductivity_at(0.05) - l.conductivity_at(0.15)).abs() < 1e-14);
    assert!((m.vol_heat_capacity_at(0.05) - l.vol_heat_capacity_at(0.15)).abs() < 1e-6);
}
