//! Reference solvers and oracles: the textbook transfer-matrix cascade (with
//! its overflow failure kept visible), the overflow phase-space boundary, the
//! finely sliced chain and an iterative radiative surface balance.

use crate::assembly::{Layer, WallAssembly};
use crate::cmath::{div_scaled, is_finite};
use crate::error::{Error, Result};
use crate::propagator::{forward_pass, AdmittanceChain, Direction, HarmonicState, TransferChain};
use crate::radiative::{kelvin, radiative_baseline, radiative_residual, surface_correction, RadiativeConfig};
use crate::spectral::{forward_transform, SimConfig, SimulationResult, WeatherSeries};
use crate::wave::wave_vector;
use crate::Complex;

/// Exponent used for the phase-space overflow boundary.
pub const OVERFLOW_EXPONENT: f64 = 709.0;

/// One-layer transmission matrix [[a, b], [c, d]] mapping the exterior-face
/// state (T, Φ) to the interior-face state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmmMatrix {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl TmmMatrix {
    pub fn identity() -> Self {
        let (o, z) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        TmmMatrix { a: o, b: z, c: z, d: o }
    }

    pub fn determinant(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &TmmMatrix) -> TmmMatrix {
        TmmMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn is_finite(&self) -> bool {
        is_finite(self.a) && is_finite(self.b) && is_finite(self.c) && is_finite(self.d)
    }
}

/// Non-finite transfer-matrix evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverflowReport {
    pub omega: f64,
    /// Largest Re(q·e) among the layers involved.
    pub re_qe: f64,
    /// Layer carrying that maximum.
    pub layer_index: usize,
}

impl std::fmt::Display for OverflowReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "transfer matrix overflow at omega = {:e} rad/s (layer {}, Re(qe) = {:.1})",
            self.omega, self.layer_index, self.re_qe
        )
    }
}

fn re_qe(layer: &Layer, omega: f64) -> Result<f64> {
    Ok(wave_vector(omega, layer)?.re * layer.thickness_m)
}

/// Transmission matrix from direct exponential evaluation of cosh and sinh.
/// Any non-finite entry comes back as an [`OverflowReport`].
pub fn tmm_layer_matrix(layer: &Layer, omega: f64) -> Result<std::result::Result<TmmMatrix, OverflowReport>> {
    let q = wave_vector(omega, layer)?;
    let e = layer.thickness_m;
    if e == 0.0 {
        return Ok(Ok(TmmMatrix::identity()));
    }
    if omega == 0.0 {
        let mut m = TmmMatrix::identity();
        m.b = Complex::new(e / layer.conductivity, 0.0);
        return Ok(Ok(m));
    }
    let qe = q * e;
    let ep = qe.exp();
    let em = (-qe).exp();
    let ch = (ep + em) * 0.5;
    let sh = (ep - em) * 0.5;
    let yc = q * layer.conductivity;
    let m = TmmMatrix { a: ch, b: sh / yc, c: yc * sh, d: ch };
    if m.is_finite() {
        Ok(Ok(m))
    } else {
        Ok(Err(OverflowReport { omega, re_qe: qe.re, layer_index: 0 }))
    }
}

/// Exterior driving-point admittance from the cascaded matrices closed with
/// h_int at the interior face.
pub fn tmm_admittance(assembly: &WallAssembly, omega: f64) -> Result<std::result::Result<Complex, OverflowReport>> {
    assembly.validate()?;
    let mut worst = (0usize, f64::NEG_INFINITY);
    for (i, l) in assembly.layers.iter().enumerate() {
        let r = re_qe(l, omega)?;
        if r > worst.1 {
            worst = (i, r);
        }
    }
    let report = OverflowReport { omega, re_qe: worst.1, layer_index: worst.0 };
    let mut total = TmmMatrix::identity();
    for l in &assembly.layers {
        match tmm_layer_matrix(l, omega)? {
            Ok(m) => total = total.mul(&m),
            Err(_) => return Ok(Err(report)),
        }
        if !total.is_finite() {
            return Ok(Err(report));
        }
    }
    let h = assembly.h_int;
    let y = div_scaled(total.c + total.a * h, total.d + total.b * h);
    if is_finite(y) {
        Ok(Ok(y))
    } else {
        Ok(Err(report))
    }
}

/// Thickness at which Re(q·e) reaches the overflow exponent for a harmonic of
/// the given period.
///
/// ```
/// let e = riccati_wall::reference::overflow_boundary(1.0e-7, 10.0).unwrap();
/// assert!((e - 0.400).abs() < 1e-3);
/// ```
pub fn overflow_boundary(alpha: f64, period_s: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::invalid(format!("diffusivity must be > 0, got {alpha}")));
    }
    if !(period_s > 0.0) {
        return Err(Error::invalid(format!("period must be > 0, got {period_s}")));
    }
    let omega = 2.0 * std::f64::consts::PI / period_s;
    Ok(OVERFLOW_EXPONENT / (omega / (2.0 * alpha)).sqrt())
}

/// Explicit-scheme stability diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierDiagnostic {
    pub fourier_number: f64,
    pub stable: bool,
}

/// Fo = αΔt/Δx², stable iff Fo ≤ 0.5.
pub fn fourier_number(alpha: f64, dt: f64, dx: f64) -> FourierDiagnostic {
    let fo = alpha * dt / (dx * dx);
    FourierDiagnostic { fourier_number: fo, stable: fo <= 0.5 }
}

/// Every layer cut into `m_s` homogeneous slices whose properties are the
/// exact profiles sampled at slice midpoints.
pub fn slice_assembly(assembly: &WallAssembly, m_s: usize) -> Result<WallAssembly> {
    if m_s < 1 {
        return Err(Error::invalid("slice count must be >= 1"));
    }
    assembly.validate()?;
    let mut layers = Vec::with_capacity(assembly.layers.len() * m_s);
    for l in &assembly.layers {
        let h = l.thickness_m / m_s as f64;
        for i in 0..m_s {
            let z = (i as f64 + 0.5) * h;
            layers.push(Layer {
                thickness_m: h,
                conductivity: l.conductivity_at(z),
                density: l.vol_heat_capacity_at(z) / l.specific_heat,
                specific_heat: l.specific_heat,
                gradient: None,
            });
        }
    }
    Ok(WallAssembly { layers, h_int: assembly.h_int, h_ext: assembly.h_ext })
}

/// Sliced chain with fields at every slice interface.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicedOracle {
    /// Admittances at the original layer interfaces.
    pub chain: AdmittanceChain,
    /// Temperature ratios across the original layers and their product.
    pub transfer: TransferChain,
    /// Slice interface positions from the interior surface [m].
    pub positions: Vec<f64>,
    /// Admittance at every slice interface.
    pub fine_admittance: Vec<Complex>,
    /// Temperatures at every slice interface for a unit exterior driving
    /// temperature with the room held at zero.
    pub temperatures: Vec<Complex>,
}

impl SlicedOracle {
    /// Exterior driving-point admittance Y_N.
    pub fn exterior_admittance(&self) -> Complex {
        *self.chain.values.last().expect("non-empty chain")
    }
}

/// Fine-sliced ground truth evaluated with the bounded propagator.
pub fn sliced_oracle_admittance(assembly: &WallAssembly, omega: f64, m_s: usize) -> Result<SlicedOracle> {
    sliced_oracle_with_progress(assembly, omega, m_s, &mut |_, _| {})
}

/// As [`sliced_oracle_admittance`], reporting `(layers_done, layers_total)`.
pub fn sliced_oracle_with_progress(
    assembly: &WallAssembly,
    omega: f64,
    m_s: usize,
    progress: &mut dyn FnMut(usize, usize),
) -> Result<SlicedOracle> {
    let fine = slice_assembly(assembly, m_s)?;
    let n = assembly.layers.len();
    let (chain, tr) = forward_pass(&fine, omega)?;
    progress(n, n);
    let mut positions = Vec::with_capacity(fine.layers.len() + 1);
    let mut x = 0.0;
    positions.push(x);
    for l in &fine.layers {
        x += l.thickness_m;
        positions.push(x);
    }
    let y_n = *chain.values.last().expect("non-empty chain");
    let mut temperatures = vec![Complex::new(0.0, 0.0); fine.layers.len() + 1];
    let last = fine.layers.len();
    temperatures[last] = assembly.h_ext / (assembly.h_ext + y_n);
    for i in (0..last).rev() {
        temperatures[i] = tr.factors[i] * temperatures[i + 1];
    }
    let coarse: Vec<Complex> = (0..=n).map(|j| chain.values[j * m_s]).collect();
    let factors: Vec<Complex> =
        (0..n).map(|j| tr.factors[j * m_s..(j + 1) * m_s].iter().product()).collect();
    Ok(SlicedOracle {
        chain: AdmittanceChain { direction: Direction::Outward, omega, values: coarse },
        transfer: TransferChain { omega, global: factors.iter().product(), factors },
        positions,
        fine_admittance: chain.values,
        temperatures,
    })
}

/// Converged fixed-point run of the radiative surface balance.
#[derive(Debug, Clone, PartialEq)]
pub struct IterativeOracleRun {
    pub result: SimulationResult,
    pub sweeps: usize,
    /// max |ΔT_se| per sweep [K].
    pub changes: Vec<f64>,
    pub converged: bool,
}

/// Fixed-point iteration on the exterior surface balance with exact T⁴
/// exchange: each sweep re-evaluates the residual on the current surface
/// temperature and re-solves the linear wall response, until the surface
/// changes by less than 1e-4 K (at most 20 sweeps).
pub fn iterative_radiative_oracle(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
) -> Result<IterativeOracleRun> {
    iterative_radiative_oracle_with_progress(assembly, weather, setpoint, sim, rad, &mut |_, _| {})
}

/// As [`iterative_radiative_oracle`], reporting `(sweep, max change)`.
pub fn iterative_radiative_oracle_with_progress(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    sim: &SimConfig,
    rad: &RadiativeConfig,
    progress: &mut dyn FnMut(usize, f64),
) -> Result<IterativeOracleRun> {
    const TOL: f64 = 1e-4;
    const MAX_SWEEPS: usize = 20;
    let model = |omega: f64| HarmonicState::zero_order(assembly, omega);
    let base = radiative_baseline(assembly, weather, setpoint, sim, rad, &model)?;
    let m = base.inputs.t_sa.len();
    let states = &base.run.states;
    let sky_k = kelvin(&base.t_sky);
    let mut t_se = base.run.t_se.clone();
    let mut t_si = base.run.t_si.clone();
    let mut changes = Vec::new();
    let mut converged = false;
    for sweep in 1..=MAX_SWEEPS {
        let residual = radiative_residual(&kelvin(&t_se), &sky_k, rad)?;
        let r_spec = forward_transform(&residual)?;
        let response: Vec<Complex> = states.iter().zip(&r_spec).map(|(s, r)| s.se_from_extraction() * r).collect();
        let (d_si, d_se) = surface_correction(states, &response, m)?;
        let next_se: Vec<f64> = base.run.t_se.iter().zip(&d_se).map(|(a, b)| a + b).collect();
        let change = next_se.iter().zip(&t_se).fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        t_se = next_se;
        t_si = base.run.t_si.iter().zip(&d_si).map(|(a, b)| a + b).collect();
        changes.push(change);
        progress(sweep, change);
        if change < TOL {
            converged = true;
            break;
        }
    }
    let result = base.inputs.assemble(assembly, &t_si, &t_se, states, base.start.elapsed());
    Ok(IterativeOracleRun { result, sweeps: changes.len(), changes, converged })
}
