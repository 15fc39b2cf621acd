//! Time/frequency bridge and the transient simulation pipeline.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::assembly::WallAssembly;
use crate::error::{Error, Result};
use crate::propagator::HarmonicState;
use crate::Complex;

const SECONDS_PER_DAY: f64 = 86400.0;

/// Uniformly sampled series with its normalized Hermitian half spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSeries {
    pub dt: f64,
    pub samples: Vec<f64>,
    /// Bins k = 0..=M/2, amplitudes in the units of `samples`.
    pub spectrum: Vec<Complex>,
    /// `(intercept, slope per second)` removed before the transform.
    pub trend: Option<(f64, f64)>,
}

impl SpectralSeries {
    pub fn new(dt: f64, samples: Vec<f64>, detrend: bool) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid(format!("sample interval must be > 0, got {dt}")));
        }
        let (spectrum, trend) = if detrend {
            let (res, trend) = detrend_linear(&samples, dt)?;
            (forward_transform(&res)?, Some(trend))
        } else {
            (forward_transform(&samples)?, None)
        };
        Ok(SpectralSeries { dt, samples, spectrum, trend })
    }

    /// Builds a series from explicit sample times, checking uniform spacing.
    pub fn from_times(times: &[f64], samples: Vec<f64>, detrend: bool) -> Result<Self> {
        let dt = uniform_step(times)?;
        if times.len() != samples.len() {
            return Err(Error::invalid("times and samples differ in length"));
        }
        Self::new(dt, samples, detrend)
    }

    /// Angular frequency of bin `k`.
    pub fn omega(&self, k: usize) -> f64 {
        bin_omega(k, self.samples.len(), self.dt)
    }

    /// Inverse transform plus the removed trend.
    pub fn reconstruct(&self) -> Result<Vec<f64>> {
        let mut out = inverse_transform(&self.spectrum, self.samples.len())?;
        if let Some((a, b)) = self.trend {
            for (n, v) in out.iter_mut().enumerate() {
                *v += a + b * n as f64 * self.dt;
            }
        }
        Ok(out)
    }
}

/// ω_k = 2πk/(M·dt).
pub fn bin_omega(k: usize, m: usize, dt: f64) -> f64 {
    2.0 * PI * k as f64 / (m as f64 * dt)
}

/// Common spacing of `times`, rejecting fewer than two points, descending
/// order or a relative spread above 1e-6.
pub fn uniform_step(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("sample times must be finite and ascending"));
    }
    for (i, w) in times.windows(2).enumerate() {
        let step = w[1] - w[0];
        if !((step - dt).abs() <= 1e-6 * dt) {
            return Err(Error::invalid(format!(
                "non-uniform sampling at row {}: step {step} differs from {dt}",
                i + 2
            )));
        }
    }
    Ok(dt)
}

/// Normalized DFT (1/M) keeping bins 0..=M/2.
///
/// ```
/// use riccati_wall::forward_transform;
/// let m = 8;
/// let x: Vec<f64> = (0..m).map(|n| 3.0 * (2.0 * std::f64::consts::PI * n as f64 / m as f64).cos()).collect();
/// let s = forward_transform(&x).unwrap();
/// assert_eq!(s.len(), 5);
/// assert!((s[1].re - 1.5).abs() < 1e-12);
/// ```
pub fn forward_transform(samples: &[f64]) -> Result<Vec<Complex>> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::invalid("transform needs at least two samples"));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("series contains non-finite samples"));
    }
    let mut buf: Vec<Complex> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let mut half: Vec<Complex> = buf.into_iter().take(m / 2 + 1).map(|z| z * scale).collect();
    half[0].im = 0.0;
    if m % 2 == 0 {
        half[m / 2].im = 0.0;
    }
    Ok(half)
}

/// Real series of length `m` from its Hermitian half. Imaginary residue up to
/// 1e-10 of the peak is discarded; more is an error.
pub fn inverse_transform(half: &[Complex], m: usize) -> Result<Vec<f64>> {
    if m < 2 || half.len() != m / 2 + 1 {
        return Err(Error::invalid(format!(
            "half spectrum of length {} does not match series length {m}",
            half.len()
        )));
    }
    let mut full = vec![Complex::new(0.0, 0.0); m];
    full[..half.len()].copy_from_slice(half);
    for k in 1..(m + 1) / 2 {
        full[m - k] = half[k].conj();
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut full);
    let peak = full.iter().fold(0.0f64, |p, z| p.max(z.re.abs()));
    let residue = full.iter().fold(0.0f64, |p, z| p.max(z.im.abs()));
    if !(residue <= 1e-10 * peak) && residue > 0.0 {
        return Err(Error::ImaginaryResidue { residue, peak });
    }
    Ok(full.into_iter().map(|z| z.re).collect())
}

/// Least-squares line through the samples at times n·dt.
/// Returns the residual and `(intercept, slope)`.
pub fn detrend_linear(samples: &[f64], dt: f64) -> Result<(Vec<f64>, (f64, f64))> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::invalid("detrending needs at least two samples"));
    }
    let n = m as f64;
    let t_mean = (n - 1.0) / 2.0 * dt;
    let y_mean = samples.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (i, &y) in samples.iter().enumerate() {
        let dtt = i as f64 * dt - t_mean;
        sxy += dtt * (y - y_mean);
        sxx += dtt * dtt;
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * t_mean;
    let residual = samples
        .iter()
        .enumerate()
        .map(|(i, &y)| y - intercept - slope * i as f64 * dt)
        .collect();
    Ok((residual, (intercept, slope)))
}

/// Fundamental-mode estimate (Σ e/λ)(Σ ρc_p e)/π², used only to suggest
/// warm-up lengths.
pub fn dominant_time_constant(assembly: &WallAssembly) -> f64 {
    let r: f64 = assembly.layers.iter().map(|l| l.thickness_m / l.conductivity).sum();
    let c: f64 = assembly.layers.iter().map(|l| l.vol_heat_capacity() * l.thickness_m).sum();
    r * c / (PI * PI)
}

/// Sol-air temperature T_air + a_s·G/h_ext.
pub fn sol_air(t_air: f64, g_solar: f64, h_ext: f64, a_s: f64) -> f64 {
    t_air + a_s * g_solar / h_ext
}

/// Weather on a uniform grid starting at `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherSeries {
    pub t0: f64,
    pub dt: f64,
    pub t_air: Vec<f64>,
    pub g_solar: Vec<f64>,
    pub t_sky: Option<Vec<f64>>,
    pub t_set: Option<Vec<f64>>,
}

impl WeatherSeries {
    pub fn new(dt: f64, t_air: Vec<f64>, g_solar: Vec<f64>) -> Result<Self> {
        let w = WeatherSeries { t0: 0.0, dt, t_air, g_solar, t_sky: None, t_set: None };
        w.validate()?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.t_air.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_air.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::invalid(format!("weather dt must be > 0, got {}", self.dt)));
        }
        let m = self.t_air.len();
        if m < 2 {
            return Err(Error::invalid("weather needs at least two rows"));
        }
        let columns = [
            ("G_solar_Wm2", Some(&self.g_solar)),
            ("T_sky_C", self.t_sky.as_ref()),
            ("T_set_C", self.t_set.as_ref()),
        ];
        for (name, col) in columns {
            if let Some(c) = col {
                if c.len() != m {
                    return Err(Error::invalid(format!("column {name} has {} rows, expected {m}", c.len())));
                }
            }
        }
        let all = std::iter::once(&self.t_air)
            .chain(std::iter::once(&self.g_solar))
            .chain(self.t_sky.iter())
            .chain(self.t_set.iter());
        for col in all {
            if let Some(i) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("non-finite weather value at row {}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.t0 + i as f64 * self.dt).collect()
    }

    /// Sol-air series for the given film coefficient and absorptivity.
    pub fn sol_air(&self, h_ext: f64, a_s: f64) -> Vec<f64> {
        self.t_air.iter().zip(&self.g_solar).map(|(&t, &g)| sol_air(t, g, h_ext, a_s)).collect()
    }

    fn slice(&self, range: std::ops::Range<usize>) -> WeatherSeries {
        WeatherSeries {
            t0: self.t0 + range.start as f64 * self.dt,
            dt: self.dt,
            t_air: self.t_air[range.clone()].to_vec(),
            g_solar: self.g_solar[range.clone()].to_vec(),
            t_sky: self.t_sky.as_ref().map(|c| c[range.clone()].to_vec()),
            t_set: self.t_set.as_ref().map(|c| c[range].to_vec()),
        }
    }
}

fn replicate_first_day(col: &[f64], n_pad: usize, period: usize) -> Vec<f64> {
    let p = period as isize;
    (0..n_pad)
        .map(|k| col[(k as isize - n_pad as isize).rem_euclid(p) as usize])
        .chain(col.iter().copied())
        .collect()
}

/// Prepends `warmup_s` of history and returns the padded weather with the
/// index where the active horizon starts.
///
/// Without `history` the first day of the series is replicated periodically.
/// With it, the last rows of `history` are used; optional columns missing
/// from the history repeat the first active value.
pub fn pad_history(
    weather: &WeatherSeries,
    warmup_s: f64,
    history: Option<&WeatherSeries>,
) -> Result<(WeatherSeries, usize)> {
    weather.validate()?;
    if !(warmup_s.is_finite() && warmup_s >= 0.0) {
        return Err(Error::invalid(format!("warm-up must be >= 0, got {warmup_s}")));
    }
    let n_pad = (warmup_s / weather.dt).round() as usize;
    if n_pad == 0 {
        return Ok((weather.clone(), 0));
    }
    let m = weather.len();
    let padded = match history {
        None => {
            let period = ((SECONDS_PER_DAY / weather.dt).round() as usize).clamp(1, m);
            let rep = |c: &Vec<f64>| replicate_first_day(c, n_pad, period);
            WeatherSeries {
                t0: weather.t0 - n_pad as f64 * weather.dt,
                dt: weather.dt,
                t_air: rep(&weather.t_air),
                g_solar: rep(&weather.g_solar),
                t_sky: weather.t_sky.as_ref().map(rep),
                t_set: weather.t_set.as_ref().map(rep),
            }
        }
        Some(h) => {
            h.validate()?;
            if (h.dt - weather.dt).abs() > 1e-6 * weather.dt {
                return Err(Error::invalid(format!("history dt {} differs from weather dt {}", h.dt, weather.dt)));
            }
            if h.len() < n_pad {
                return Err(Error::invalid(format!(
                    "history has {} rows, warm-up needs {n_pad}",
                    h.len()
                )));
            }
            let tail = h.slice(h.len() - n_pad..h.len());
            let join = |past: Option<&Vec<f64>>, now: &Vec<f64>| -> Vec<f64> {
                let past = past.cloned().unwrap_or_else(|| vec![now[0]; n_pad]);
                past.into_iter().chain(now.iter().copied()).collect()
            };
            WeatherSeries {
                t0: weather.t0 - n_pad as f64 * weather.dt,
                dt: weather.dt,
                t_air: join(Some(&tail.t_air), &weather.t_air),
                g_solar: join(Some(&tail.g_solar), &weather.g_solar),
                t_sky: weather.t_sky.as_ref().map(|c| join(tail.t_sky.as_ref(), c)),
                t_set: weather.t_set.as_ref().map(|c| join(tail.t_set.as_ref(), c)),
            }
        }
    };
    Ok((padded, n_pad))
}

/// Pipeline settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub warmup_s: f64,
    pub detrend: bool,
    pub solar_absorptivity: f64,
    pub noise_threshold: f64,
    /// Replaces the default first-day replication during warm-up.
    pub history: Option<WeatherSeries>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            warmup_s: 7.0 * SECONDS_PER_DAY,
            detrend: true,
            solar_absorptivity: 0.6,
            noise_threshold: 1e-6,
            history: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.warmup_s.is_finite() && self.warmup_s >= 0.0) {
            return Err(Error::invalid("warmup_s must be >= 0"));
        }
        if !(0.0..=1.0).contains(&self.solar_absorptivity) {
            return Err(Error::invalid("solar_absorptivity must lie in [0, 1]"));
        }
        if !(self.noise_threshold.is_finite() && self.noise_threshold > 0.0) {
            return Err(Error::invalid("noise_threshold must be > 0"));
        }
        Ok(())
    }
}

/// Per-run diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub omega: Vec<f64>,
    /// |G(ω_k)| for every stored bin.
    pub transfer_magnitude: Vec<f64>,
    pub elapsed: Duration,
}

/// Active-horizon output of a simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub time_s: Vec<f64>,
    /// Exterior driving temperature actually used [°C].
    pub t_sa: Vec<f64>,
    pub t_in: Vec<f64>,
    pub t_si: Vec<f64>,
    /// Exterior surface temperature [°C].
    pub t_se: Vec<f64>,
    /// h_int·(T_in − T_si), positive as heating demand [W/m²].
    pub phi_in: Vec<f64>,
    pub diagnostics: Diagnostics,
}

/// Padded (uncropped) linear response of both surfaces.
#[derive(Debug, Clone)]
pub(crate) struct LinearRun {
    pub t_si: Vec<f64>,
    pub t_se: Vec<f64>,
    pub states: Vec<HarmonicState>,
}

/// Frequency-domain response of the four surface transfers, evaluated per
/// harmonic by `model`. Linear trends are removed before the transform and
/// added back through the exact ramp response H(0)·x(t) − i·H'(0)·slope.
pub(crate) fn linear_run<F>(t_sa: &[f64], t_in: &[f64], dt: f64, detrend: bool, tau: f64, model: &F) -> Result<LinearRun>
where
    F: Fn(f64) -> Result<HarmonicState> + Sync,
{
    let m = t_sa.len();
    let (sa, tr_sa) = split_trend(t_sa, dt, detrend)?;
    let (tin, tr_in) = split_trend(t_in, dt, detrend)?;
    let x_sa = forward_transform(&sa)?;
    let x_in = forward_transform(&tin)?;
    let states: Vec<HarmonicState> =
        (0..=m / 2).into_par_iter().map(|k| model(bin_omega(k, m, dt))).collect::<Result<_>>()?;
    let nyquist = if m % 2 == 0 { Some(m / 2) } else { None };
    let mut y_si = Vec::with_capacity(states.len());
    let mut y_se = Vec::with_capacity(states.len());
    for (k, s) in states.iter().enumerate() {
        let mut si = s.si_from_sa() * x_sa[k] + s.si_from_in() * x_in[k];
        let mut se = s.se_from_sa() * x_sa[k] + s.se_from_in() * x_in[k];
        if !(crate::cmath::is_finite(si) && crate::cmath::is_finite(se)) {
            return Err(Error::NonFinite { what: "harmonic response", omega: s.omega });
        }
        if k == 0 || Some(k) == nyquist {
            si.im = 0.0;
            se.im = 0.0;
        }
        y_si.push(si);
        y_se.push(se);
    }
    let mut t_si = inverse_transform(&y_si, m)?;
    let mut t_se = inverse_transform(&y_se, m)?;
    if tr_sa.is_some() || tr_in.is_some() {
        let s0 = &states[0];
        let ramp = RampResponse::new(tau, model)?;
        for n in 0..m {
            let t = n as f64 * dt;
            let add = |out: &mut f64, h0: f64, lag: f64, tr: Option<(f64, f64)>| {
                if let Some((a, b)) = tr {
                    *out += h0 * (a + b * t) + lag * b;
                }
            };
            add(&mut t_si[n], s0.si_from_sa().re, ramp.si_sa, tr_sa);
            add(&mut t_si[n], s0.si_from_in().re, ramp.si_in, tr_in);
            add(&mut t_se[n], s0.se_from_sa().re, ramp.se_sa, tr_sa);
            add(&mut t_se[n], s0.se_from_in().re, ramp.se_in, tr_in);
        }
    }
    Ok(LinearRun { t_si, t_se, states })
}

fn split_trend(x: &[f64], dt: f64, detrend: bool) -> Result<(Vec<f64>, Option<(f64, f64)>)> {
    if detrend {
        let (r, tr) = detrend_linear(x, dt)?;
        Ok((r, Some(tr)))
    } else {
        Ok((x.to_vec(), None))
    }
}

/// First moments −i·H'(0) of the four transfers [s], from a Richardson
/// pair of evaluations at low frequency.
struct RampResponse {
    si_sa: f64,
    si_in: f64,
    se_sa: f64,
    se_in: f64,
}

impl RampResponse {
    fn new<F: Fn(f64) -> Result<HarmonicState>>(tau: f64, model: &F) -> Result<Self> {
        let d = 1e-4 / tau.max(1.0);
        let a = model(d)?;
        let b = model(2.0 * d)?;
        let slope = |f: fn(&HarmonicState) -> Complex| (4.0 * f(&a).im / d - f(&b).im / (2.0 * d)) / 3.0;
        Ok(RampResponse {
            si_sa: slope(HarmonicState::si_from_sa),
            si_in: slope(HarmonicState::si_from_in),
            se_sa: slope(HarmonicState::se_from_sa),
            se_in: slope(HarmonicState::se_from_in),
        })
    }
}

/// Pads, runs the linear pipeline with `model` and crops the warm-up.
pub(crate) fn run_model<F>(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    config: &SimConfig,
    model: &F,
) -> Result<(SimulationResult, PaddedInputs, LinearRun)>
where
    F: Fn(f64) -> Result<HarmonicState> + Sync,
{
    let start = Instant::now();
    let inputs = prepare_inputs(assembly, weather, setpoint, config)?;
    let tau = dominant_time_constant(assembly);
    let run = linear_run(&inputs.t_sa, &inputs.t_in, inputs.dt, config.detrend, tau, model)?;
    let result = inputs.assemble(assembly, &run.t_si, &run.t_se, &run.states, start.elapsed());
    Ok((result, inputs, run))
}

/// Boundary series after padding, ready for the linear pipeline.
#[derive(Debug, Clone)]
pub(crate) struct PaddedInputs {
    pub weather: WeatherSeries,
    pub dt: f64,
    pub n_pad: usize,
    pub t_sa: Vec<f64>,
    pub t_in: Vec<f64>,
}

impl PaddedInputs {
    pub fn assemble(
        &self,
        assembly: &WallAssembly,
        t_si: &[f64],
        t_se: &[f64],
        states: &[HarmonicState],
        elapsed: Duration,
    ) -> SimulationResult {
        let r = self.n_pad..self.t_sa.len();
        let t_in = self.t_in[r.clone()].to_vec();
        let t_si = t_si[r.clone()].to_vec();
        let phi_in = t_in.iter().zip(&t_si).map(|(a, b)| assembly.h_int * (a - b)).collect();
        SimulationResult {
            time_s: self.weather.times()[r.clone()].to_vec(),
            t_sa: self.t_sa[r.clone()].to_vec(),
            t_in,
            t_si,
            t_se: t_se[r].to_vec(),
            phi_in,
            diagnostics: Diagnostics {
                omega: states.iter().map(|s| s.omega).collect(),
                transfer_magnitude: states.iter().map(HarmonicState::transfer_magnitude).collect(),
                elapsed,
            },
        }
    }
}

pub(crate) fn prepare_inputs(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    config: &SimConfig,
) -> Result<PaddedInputs> {
    assembly.validate()?;
    config.validate()?;
    weather.validate()?;
    if setpoint.len() != weather.len() {
        return Err(Error::invalid(format!(
            "setpoint has {} samples, weather has {}",
            setpoint.len(),
            weather.len()
        )));
    }
    if let Some(i) = setpoint.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("non-finite setpoint at row {}", i + 1)));
    }
    let mut w = weather.clone();
    w.t_set = Some(setpoint.to_vec());
    let (padded, n_pad) = pad_history(&w, config.warmup_s, config.history.as_ref())?;
    let t_sa = padded.sol_air(assembly.h_ext, config.solar_absorptivity);
    let t_in = padded.t_set.clone().expect("setpoint column set above");
    Ok(PaddedInputs { dt: padded.dt, weather: padded, n_pad, t_sa, t_in })
}

/// Zero-order transient simulation of the interior surface temperature and
/// heating flux.
pub fn simulate(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    config: &SimConfig,
) -> Result<SimulationResult> {
    let model = |omega: f64| HarmonicState::zero_order(assembly, omega);
    Ok(run_model(assembly, weather, setpoint, config, &model)?.0)
}
