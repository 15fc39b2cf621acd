//! Longwave sky exchange: Stefan–Boltzmann residual against the linearized
//! baseline, injected as a per-harmonic pseudo-admittance.

use std::time::Instant;

use crate::assembly::WallAssembly;
use crate::cmath::is_finite;
use crate::error::{Error, Result};
use crate::propagator::HarmonicState;
use crate::spectral::{
    dominant_time_constant, forward_transform, inverse_transform, linear_run, prepare_inputs, LinearRun,
    PaddedInputs, SimConfig, SimulationResult, WeatherSeries,
};
use crate::Complex;

pub const STEFAN_BOLTZMANN: f64 = 5.670374419e-8;
pub const KELVIN_OFFSET: f64 = 273.15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiativeConfig {
    pub emissivity: f64,
    pub sigma: f64,
    /// Linearization temperature T_lin [K].
    pub linearization_temperature: f64,
    /// Pseudo-admittance gate on |T̃_surf0| [K].
    pub tau_noise: f64,
}

impl RadiativeConfig {
    pub fn new(emissivity: f64, linearization_temperature: f64) -> Self {
        RadiativeConfig { emissivity, sigma: STEFAN_BOLTZMANN, linearization_temperature, tau_noise: 1e-6 }
    }

    /// Uses the mean air temperature of `weather` as T_lin.
    pub fn at_mean_air(emissivity: f64, weather: &WeatherSeries) -> Self {
        let mean = weather.t_air.iter().sum::<f64>() / weather.len().max(1) as f64;
        Self::new(emissivity, mean + KELVIN_OFFSET)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.emissivity >= 0.0 && self.emissivity <= 1.0) {
            return Err(Error::invalid(format!("emissivity must lie in [0, 1], got {}", self.emissivity)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid("sigma must be > 0"));
        }
        if !(self.linearization_temperature.is_finite() && self.linearization_temperature > 0.0) {
            return Err(Error::invalid("linearization temperature must be > 0 K"));
        }
        if !(self.tau_noise.is_finite() && self.tau_noise > 0.0) {
            return Err(Error::invalid("tau_noise must be > 0"));
        }
        Ok(())
    }
}

/// h_rad = 4εσT_lin³.
pub fn linearized_h_rad(config: &RadiativeConfig) -> f64 {
    4.0 * config.emissivity * config.sigma * config.linearization_temperature.powi(3)
}

/// εσ(T_s⁴ − T_sky⁴) − h_rad(T_s − T_sky), temperatures in Kelvin.
pub fn radiative_residual(t_surf_k: &[f64], t_sky_k: &[f64], config: &RadiativeConfig) -> Result<Vec<f64>> {
    if t_surf_k.len() != t_sky_k.len() {
        return Err(Error::invalid("surface and sky series differ in length"));
    }
    let h = linearized_h_rad(config);
    let es = config.emissivity * config.sigma;
    Ok(t_surf_k
        .iter()
        .zip(t_sky_k)
        .map(|(&ts, &tk)| es * (ts.powi(4) - tk.powi(4)) - h * (ts - tk))
        .collect())
}

/// ΔΦ̃/T̃_surf0 bin by bin, zero where |T̃_surf0| < `tau_noise`.
pub fn pseudo_admittance(residual_spectrum: &[Complex], surface_spectrum: &[Complex], tau_noise: f64) -> Vec<Complex> {
    residual_spectrum
        .iter()
        .zip(surface_spectrum)
        .map(|(&r, &s)| if s.norm() >= tau_noise { r / s } else { Complex::new(0.0, 0.0) })
        .collect()
}

/// Baseline and corrected runs of the radiative pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiativeRun {
    /// Linearized sky exchange only.
    pub baseline: SimulationResult,
    pub corrected: SimulationResult,
    /// ΔΦ on the baseline exterior surface, active horizon [W/m²].
    pub residual: Vec<f64>,
    /// Y1_N(ω_k) for every stored bin (bin 0 handled as a source).
    pub pseudo_admittance: Vec<Complex>,
}

/// Shared set-up of the radiative passes: the linear baseline with sky
/// exchange folded into an equivalent exterior temperature.
pub(crate) struct RadiativeBaseline {
    pub inputs: PaddedInputs,
    pub run: LinearRun,
    pub t_sky: Vec<f64>,
    pub start: Instant,
}

pub(crate) fn radiative_baseline<F>(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
    model: &F,
) -> Result<RadiativeBaseline>
where
    F: Fn(f64) -> Result<HarmonicState> + Sync,
{
    let start = Instant::now();
    rad.validate()?;
    if weather.t_sky.is_none() {
        return Err(Error::invalid("radiative correction needs a T_sky column"));
    }
    let h_rad = linearized_h_rad(rad);
    if h_rad >= assembly.h_ext {
        return Err(Error::invalid(format!(
            "h_ext {} must exceed the radiative part h_rad {h_rad}",
            assembly.h_ext
        )));
    }
    let mut inputs = prepare_inputs(assembly, weather, setpoint, sim)?;
    let t_sky = inputs.weather.t_sky.clone().expect("checked above");
    for ((t, &sky), &air) in inputs.t_sa.iter_mut().zip(&t_sky).zip(&inputs.weather.t_air) {
        *t += h_rad * (sky - air) / assembly.h_ext;
    }
    let tau = dominant_time_constant(assembly);
    let run = linear_run(&inputs.t_sa, &inputs.t_in, inputs.dt, sim.detrend, tau, model)?;
    Ok(RadiativeBaseline { inputs, run, t_sky, start })
}

/// Surface responses to a flux `extracted` from the exterior surface, given
/// per-bin as `δT_se = response_k · extracted_k`; returns `(δT_si, δT_se)`.
pub(crate) fn surface_correction(
    states: &[HarmonicState],
    se_response: &[Complex],
    m: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let nyquist = if m % 2 == 0 { Some(m / 2) } else { None };
    let mut d_se = Vec::with_capacity(states.len());
    let mut d_si = Vec::with_capacity(states.len());
    for (k, s) in states.iter().enumerate() {
        let mut se = se_response[k];
        let mut si = s.g_in * se;
        if !(is_finite(se) && is_finite(si)) {
            return Err(Error::NonFinite { what: "radiative correction", omega: s.omega });
        }
        if k == 0 || Some(k) == nyquist {
            se.im = 0.0;
            si.im = 0.0;
        }
        d_se.push(se);
        d_si.push(si);
    }
    Ok((inverse_transform(&d_si, m)?, inverse_transform(&d_se, m)?))
}

pub(crate) fn kelvin(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v + KELVIN_OFFSET).collect()
}

pub(crate) fn simulate_radiative_with<F>(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
    model: &F,
) -> Result<RadiativeRun>
where
    F: Fn(f64) -> Result<HarmonicState> + Sync,
{
    let base = radiative_baseline(assembly, weather, setpoint, sim, rad, model)?;
    let m = base.inputs.t_sa.len();
    let states = &base.run.states;
    let residual = radiative_residual(&kelvin(&base.run.t_se), &kelvin(&base.t_sky), rad)?;
    let r_spec = forward_transform(&residual)?;
    let s_spec = forward_transform(&base.run.t_se)?;
    let mut y1 = pseudo_admittance(&r_spec, &s_spec, rad.tau_noise);
    y1[0] = Complex::new(0.0, 0.0);
    let response: Vec<Complex> = states
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k == 0 {
                -r_spec[0] / (s.h_ext + s.y_ext)
            } else {
                -s_spec[k] * y1[k] / (s.h_ext + s.y_ext + y1[k])
            }
        })
        .collect();
    let (d_si, d_se) = surface_correction(states, &response, m)?;
    let t_si: Vec<f64> = base.run.t_si.iter().zip(&d_si).map(|(a, b)| a + b).collect();
    let t_se: Vec<f64> = base.run.t_se.iter().zip(&d_se).map(|(a, b)| a + b).collect();
    let elapsed = base.start.elapsed();
    let baseline = base.inputs.assemble(assembly, &base.run.t_si, &base.run.t_se, states, elapsed);
    let corrected = base.inputs.assemble(assembly, &t_si, &t_se, states, elapsed);
    Ok(RadiativeRun {
        baseline,
        corrected,
        residual: residual[base.inputs.n_pad..].to_vec(),
        pseudo_admittance: y1,
    })
}

/// Single-pass radiative simulation on the zero-order wall model.
pub fn simulate_radiative(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
) -> Result<RadiativeRun> {
    let model = |omega: f64| HarmonicState::zero_order(assembly, omega);
    simulate_radiative_with(assembly, weather, setpoint, sim, rad, &model)
}

/// Single-pass radiative simulation on top of the gradient-corrected model.
pub fn simulate_radiative_perturbed(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
) -> Result<RadiativeRun> {
    let tau = sim.noise_threshold;
    let model = |omega: f64| {
        crate::perturbation::perturbed_state(assembly, omega, crate::perturbation::Recombination::default(), tau)
    };
    simulate_radiative_with(assembly, weather, setpoint, sim, rad, &model)
}
