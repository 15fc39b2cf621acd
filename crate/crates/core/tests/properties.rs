mod common;

use common::{max_abs_diff, rel, tanh_update};
use proptest::prelude::*;
use riccati_wall::reference::sliced_oracle_admittance;
use riccati_wall::scenarios::{aac_wall, composite_wall, concrete_wall_40, ground_slab};
use riccati_wall::*;

fn layer() -> impl Strategy<Value = Layer> {
    (1e-3f64..2.0, 0.02f64..50.0, 10.0f64..8000.0, 300.0f64..2000.0)
        .prop_map(|(e, k, rho, c)| Layer::new(e, k, rho, c).unwrap())
}

fn wall() -> impl Strategy<Value = WallAssembly> {
    (prop::collection::vec(layer(), 1..5), 1.0f64..30.0, 1.0f64..40.0)
        .prop_map(|(layers, hi, he)| WallAssembly::new(layers, hi, he).unwrap())
}

fn log_omega() -> impl Strategy<Value = f64> {
    (-7.0f64..0.0).prop_map(|x| 10f64.powf(x))
}

fn omega_for(layer: &Layer, re_qe: f64) -> f64 {
    let k = re_qe / layer.thickness_m;
    2.0 * layer.diffusivity() * k * k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wave_vector_lies_on_the_diagonal(l in layer(), omega in log_omega()) {
        let q = wave_vector(omega, &l).unwrap();
        prop_assert!(q.re > 0.0);
        prop_assert!((q.re - q.im).abs() <= 1e-14 * q.re);
        prop_assert_eq!(characteristic_admittance(omega, &l).unwrap(), q * l.conductivity);
    }

    #[test]
    fn update_is_bounded(l in layer(), re_qe in -3.0f64..4.0, y in 0.0f64..1e4, yi in -1e3f64..1e3) {
        let omega = omega_for(&l, 10f64.powf(re_qe));
        let out = propagate_layer(Complex::new(y, yi), &l, omega).unwrap();
        prop_assert!(out.re.is_finite() && out.im.is_finite());
        let g = layer_transfer_factor(Complex::new(y, yi), &l, omega);
        if let Ok(g) = g {
            prop_assert!(g.re.is_finite() && g.im.is_finite());
        }
    }

    #[test]
    fn thick_layers_reach_the_characteristic_admittance(l in layer(), re_qe in 40.0f64..1e4, y in 0.0f64..1e4) {
        let omega = omega_for(&l, re_qe);
        let yc = characteristic_admittance(omega, &l).unwrap();
        prop_assert!(rel(propagate_layer(Complex::new(y, 0.0), &l, omega).unwrap(), yc) < 1e-12);
    }

    #[test]
    fn exponential_and_tanh_forms_agree(l in layer(), re_qe in -6.0f64..1.301, y in 0.0f64..1e3, yi in -50.0f64..50.0) {
        let omega = omega_for(&l, 10f64.powf(re_qe));
        let y0 = Complex::new(y, yi);
        prop_assert!(rel(propagate_layer(y0, &l, omega).unwrap(), tanh_update(y0, &l, omega)) < 1e-12);
    }

    #[test]
    fn chains_are_passive(w in wall(), omega in log_omega()) {
        let ch = forward_chain(&w, omega).unwrap();
        prop_assert!(ch.values.iter().all(|y| y.re >= 0.0));
        let back = backward_chain(&w, omega).unwrap();
        prop_assert!(back.values.iter().all(|y| y.re >= 0.0));
    }

    #[test]
    fn surface_transfers_attenuate(w in wall(), omega in log_omega()) {
        let s = HarmonicState::zero_order(&w, omega).unwrap();
        prop_assert!(s.g_in.norm() <= 1.0 + 1e-12);
        prop_assert!(s.g_out.norm() <= 1.0 + 1e-12);
        prop_assert!(s.se_from_sa().norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn tau_gate_is_monotone(
        surf in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..64),
        lo in -10.0f64..0.0,
        step in 0.0f64..5.0,
    ) {
        let s: Vec<Complex> = surf.iter().map(|&(a, b)| Complex::new(a, b) * 10f64.powf(3.0 * a - 3.0)).collect();
        let r: Vec<Complex> = s.iter().map(|_| Complex::new(1.0, -0.5)).collect();
        let count = |tau: f64| pseudo_admittance(&r, &s, tau).iter().filter(|y| y.norm() > 0.0).count();
        prop_assert!(count(10f64.powf(lo + step)) <= count(10f64.powf(lo)));
    }

    #[test]
    fn reconstruction_is_real_and_normalized(x in prop::collection::vec(-50.0f64..50.0, 2..300)) {
        let half = forward_transform(&x).unwrap();
        let back = inverse_transform(&half, x.len()).unwrap();
        let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(max_abs_diff(&back, &x) <= 1e-10 * peak.max(1.0));
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        prop_assert!((half[0].re - mean).abs() < 1e-10 && half[0].im.abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homogeneous_chain_equals_fine_slicing(w in wall(), omega in log_omega()) {
        let ch = forward_chain(&w, omega).unwrap();
        let o = sliced_oracle_admittance(&w, omega, 10_000).unwrap();
        for (a, b) in ch.values.iter().zip(&o.chain.values) {
            prop_assert!(rel(*a, *b) < 1e-10);
        }
    }

    #[test]
    fn tmm_matches_riccati_where_finite(w in wall(), omega in log_omega()) {
        let r = *forward_chain(&w, omega).unwrap().values.last().unwrap();
        if let Ok(y) = reference::tmm_admittance(&w, omega).unwrap() {
            prop_assert!(rel(y, r) < 1e-9);
        }
    }

    #[test]
    fn scaled_input_scales_response(
        alpha in -3.0f64..3.0,
        amp in 0.5f64..10.0,
        phase in 0.0f64..6.0,
        seed in 0u64..1000,
    ) {
        let wall = composite_wall();
        let n = 288;
        let dt = 900.0;
        let t_air: Vec<f64> = (0..n)
            .map(|i| amp * (i as f64 * dt * 2.0 * std::f64::consts::PI / 86400.0 + phase).cos() + (seed as f64 * 0.01) * i as f64 / n as f64)
            .collect();
        let g: Vec<f64> = (0..n).map(|i| if (i % 96) > 40 && (i % 96) < 60 { 200.0 } else { 0.0 }).collect();
        let cfg = SimConfig { warmup_s: 2.0 * 86400.0, ..SimConfig::default() };
        let zero = vec![0.0; n];
        let base = simulate(&wall, &WeatherSeries::new(dt, t_air.clone(), g.clone()).unwrap(), &zero, &cfg).unwrap();
        let scaled_w = WeatherSeries::new(dt, t_air.iter().map(|v| alpha * v).collect(), g.iter().map(|v| alpha * v).collect()).unwrap();
        let scaled = simulate(&wall, &scaled_w, &zero, &cfg).unwrap();
        let expect: Vec<f64> = base.t_si.iter().map(|v| alpha * v).collect();
        prop_assert!(max_abs_diff(&scaled.t_si, &expect) < 1e-9);
    }

    #[test]
    fn superposition_of_exterior_and_interior(amp in 0.5f64..10.0, sp_amp in 0.0f64..3.0, mean in 15.0f64..25.0) {
        let wall = concrete_wall_40();
        let n = 192;
        let dt = 1800.0;
        let t_air: Vec<f64> = (0..n).map(|i| amp * (i as f64 * dt * 2.0 * std::f64::consts::PI / 86400.0).sin() - 3.0).collect();
        let sp: Vec<f64> = (0..n).map(|i| mean + sp_amp * (i as f64 * 0.37).sin()).collect();
        let cfg = SimConfig { warmup_s: 2.0 * 86400.0, solar_absorptivity: 0.0, ..SimConfig::default() };
        let zero = vec![0.0; n];
        let w = WeatherSeries::new(dt, t_air.clone(), zero.clone()).unwrap();
        let w0 = WeatherSeries::new(dt, zero.clone(), zero.clone()).unwrap();
        let both = simulate(&wall, &w, &sp, &cfg).unwrap();
        let ext = simulate(&wall, &w, &zero, &cfg).unwrap();
        let int = simulate(&wall, &w0, &sp, &cfg).unwrap();
        let sum: Vec<f64> = ext.t_si.iter().zip(&int.t_si).map(|(a, b)| a + b).collect();
        prop_assert!(max_abs_diff(&both.t_si, &sum) < 1e-9);
    }
}

#[test]
fn benchmark_assemblies_attenuate_at_every_bin() {
    for w in [aac_wall().baseline(), composite_wall(), concrete_wall_40(), ground_slab()] {
        for i in 0..200 {
            let omega = 10f64.powf(-9.0 + 9.0 * i as f64 / 199.0);
            let s = HarmonicState::zero_order(&w, omega).unwrap();
            assert!(s.g_in.norm() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn bounded_over_the_full_sweep() {
    for l in [scenarios::concrete(0.4), scenarios::eps_insulation(0.15), Layer::new(15.0, 1.5, 1800.0, 1000.0).unwrap()] {
        for i in 0..=70 {
            let omega = 10f64.powf(-7.0 + i as f64 / 10.0);
            let y = propagate_layer(Complex::new(7.7, 0.0), &l, omega).unwrap();
            assert!(y.re.is_finite() && y.im.is_finite());
        }
        for re_qe in [1e2, 1e3, 1e4] {
            let y = propagate_layer(Complex::new(7.7, 0.0), &l, omega_for(&l, re_qe)).unwrap();
            assert!(y.re.is_finite() && y.im.is_finite());
        }
    }
}
