//! Ready-made assemblies and forcing sequences used by the guide, the tests
//! and the shipped scenario bundles. Stochastic parts use fixed seeds.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::assembly::{GradientSpec, Layer, WallAssembly};
use crate::radiative::RadiativeConfig;
use crate::spectral::{SimConfig, WeatherSeries};

const DAY: f64 = 86400.0;

/// A wall, its forcing and the settings to run it with.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: &'static str,
    pub assembly: WallAssembly,
    /// Carries the setpoint in `t_set`.
    pub weather: WeatherSeries,
    pub config: SimConfig,
    pub radiative: Option<RadiativeConfig>,
}

impl Scenario {
    pub fn setpoint(&self) -> Vec<f64> {
        self.weather.t_set.clone().unwrap_or_else(|| vec![20.0; self.weather.len()])
    }
}

pub fn concrete(thickness_m: f64) -> Layer {
    Layer::new(thickness_m, 1.75, 2400.0, 880.0).expect("valid constants")
}

pub fn eps_insulation(thickness_m: f64) -> Layer {
    Layer::new(thickness_m, 0.035, 20.0, 1450.0).expect("valid constants")
}

/// 20 cm autoclaved aerated concrete wetted toward the exterior:
/// λ 0.12 → 0.20 W/(m·K), ρc_p 0.49e6 → 1.03e6 J/(m³·K).
pub fn aac_layer() -> Layer {
    Layer::new(0.2, 0.12, 490.0, 1000.0)
        .and_then(|l| {
            l.with_gradient(GradientSpec {
                conductivity_exterior: 0.20,
                vol_heat_capacity_interior: 0.49e6,
                vol_heat_capacity_exterior: 1.03e6,
            })
        })
        .expect("valid constants")
}

pub fn aac_wall() -> WallAssembly {
    WallAssembly::new(vec![aac_layer()], 7.7, 25.0).expect("valid constants")
}

/// 20 cm concrete inside, 15 cm EPS outside.
pub fn composite_wall() -> WallAssembly {
    WallAssembly::new(vec![concrete(0.20), eps_insulation(0.15)], 7.7, 25.0).expect("valid constants")
}

pub fn concrete_wall_40() -> WallAssembly {
    WallAssembly::new(vec![concrete(0.40)], 7.7, 25.0).expect("valid constants")
}

/// Slab on 15 m of soil.
pub fn ground_slab() -> WallAssembly {
    let soil = Layer::new(15.0, 1.5, 1800.0, 1000.0).expect("valid constants");
    WallAssembly::new(vec![concrete(0.15), soil], 7.7, 25.0).expect("valid constants")
}

fn ar1(rng: &mut ChaCha8Rng, n: usize, sigma: f64, rho: f64) -> Vec<f64> {
    let innov = Normal::new(0.0, sigma * (1.0 - rho * rho).sqrt()).expect("finite sigma");
    let mut x = 0.0;
    (0..n)
        .map(|_| {
            x = rho * x + innov.sample(rng);
            x
        })
        .collect()
}

fn solar_day(t: f64, peak: f64) -> f64 {
    let h = (t.rem_euclid(DAY)) / 3600.0;
    if (8.0..16.0).contains(&h) {
        peak * (PI * (h - 8.0) / 8.0).sin()
    } else {
        0.0
    }
}

/// Winter week: air mean −2 °C with a diurnal swing peaking mid-afternoon,
/// mild correlated noise, low winter sun, interior held at 20 °C.
pub fn aac_winter_weather(dt: f64) -> WeatherSeries {
    let n = (7.0 * DAY / dt).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let noise = ar1(&mut rng, n, 0.5, 0.95);
    let t: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
    let t_air = t
        .iter()
        .zip(&noise)
        .map(|(&t, &z)| -2.0 + 4.5 * (2.0 * PI * (t - 15.0 * 3600.0) / DAY).cos() + z)
        .collect();
    let g_solar = t.iter().map(|&t| solar_day(t, 350.0)).collect();
    WeatherSeries { t0: 0.0, dt, t_air, g_solar, t_sky: None, t_set: Some(vec![20.0; n]) }
}

pub fn aac_winter() -> Scenario {
    Scenario {
        name: "aac_winter",
        assembly: aac_wall(),
        weather: aac_winter_weather(900.0),
        config: SimConfig { warmup_s: 3.0 * DAY, ..SimConfig::default() },
        radiative: None,
    }
}

/// Same winter week with three clear days (days 2–4) where the sky sits far
/// below the air; otherwise an overcast sky a few kelvin below the air.
pub fn clear_sky() -> Scenario {
    let mut weather = aac_winter_weather(900.0);
    let sky = weather
        .times()
        .iter()
        .zip(&weather.t_air)
        .map(|(&t, &air)| {
            let day = (t / DAY).floor();
            if (2.0..5.0).contains(&day) { air - 19.8 } else { air - 5.0 }
        })
        .collect();
    weather.t_sky = Some(sky);
    let radiative = RadiativeConfig::at_mean_air(0.9, &weather);
    Scenario {
        name: "clear_sky",
        assembly: aac_wall(),
        weather,
        config: SimConfig { warmup_s: 3.0 * DAY, ..SimConfig::default() },
        radiative: Some(radiative),
    }
}

/// Constant 15 °C history followed by a week-long 10 K cold front ramp,
/// hourly, on 40 cm of concrete.
pub fn front() -> Scenario {
    let dt = 3600.0;
    let n = (7.0 * DAY / dt) as usize;
    let t_air = (0..n).map(|i| 15.0 - 10.0 * i as f64 / (n - 1) as f64).collect();
    let weather = WeatherSeries { t0: 0.0, dt, t_air, g_solar: vec![0.0; n], t_sky: None, t_set: Some(vec![20.0; n]) };
    let history = front_history(20);
    Scenario {
        name: "front",
        assembly: concrete_wall_40(),
        weather,
        config: SimConfig { warmup_s: 4.0 * DAY, history: Some(history), ..SimConfig::default() },
        radiative: None,
    }
}

/// `days` of constant 15 °C at the front scenario's hourly step.
pub fn front_history(days: usize) -> WeatherSeries {
    let dt = 3600.0;
    let n = days * 24;
    WeatherSeries {
        t0: -(n as f64) * dt,
        dt,
        t_air: vec![15.0; n],
        g_solar: vec![0.0; n],
        t_sky: None,
        t_set: Some(vec![20.0; n]),
    }
}

/// Three weeks of noisy spring weather at 5-minute resolution on the
/// concrete/EPS wall.
pub fn composite_stochastic() -> Scenario {
    let dt = 300.0;
    let n = (21.0 * DAY / dt) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let noise = ar1(&mut rng, n, 1.5, 0.995);
    let cloud = ar1(&mut rng, n, 0.35, 0.999);
    let t: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
    let t_air = t
        .iter()
        .zip(&noise)
        .map(|(&t, &z)| 8.0 + 6.0 * (2.0 * PI * (t - 15.0 * 3600.0) / DAY).cos() + z)
        .collect();
    let g_solar = t
        .iter()
        .zip(&cloud)
        .map(|(&t, &c)| solar_day(t, 450.0) * (0.65 + c).clamp(0.1, 1.0))
        .collect();
    Scenario {
        name: "composite_stochastic",
        assembly: composite_wall(),
        weather: WeatherSeries { t0: 0.0, dt, t_air, g_solar, t_sky: None, t_set: Some(vec![20.0; n]) },
        config: SimConfig { warmup_s: 7.0 * DAY, ..SimConfig::default() },
        radiative: None,
    }
}

/// All bundled scenarios.
pub fn all() -> Vec<Scenario> {
    vec![aac_winter(), clear_sky(), front(), composite_stochastic()]
}
