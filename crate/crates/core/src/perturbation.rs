//! First-order corrections for continuous conductivity and capacity gradients.
//!
//! Inside a gradient layer the conductivity is `λ0·e^{βz}` and the volumetric
//! capacity `(ρc_p)_0 + d1·z`. The homogeneous baseline field is written in
//! the bounded basis `T(z) = Ã e^{−q(e−z)} + B̃ e^{−qz}` and the first-order
//! admittance correction of the layer is
//! `J = ∫ δλ·T'² + iω·δ(ρc_p)·T² dz`, evaluated in closed form.

use crate::assembly::{Layer, WallAssembly};
use crate::cmath::{chi, exp_integral_unit, exp_moments, expm1, is_finite, phi, psi};
use crate::error::{Error, Result};
use crate::propagator::{
    forward_pass, layer_transfer_factor, propagate_layer, HarmonicState,
};
use crate::quad;
use crate::spectral::{run_model, SimConfig, SimulationResult, WeatherSeries};
use crate::wave::wave_vector;
use crate::Complex;

/// Amplitudes, integral and resulting correction for one layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedLayerSolution {
    pub amplitudes: (Complex, Complex),
    pub integral: Complex,
    pub y1_at_exterior: Complex,
}

/// How the first-order admittance correction feeds back into the transfer
/// to the interior surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Recombination {
    /// Only the exterior surface quotient sees Y_N + Y1_N; G stays zero-order.
    ExteriorOnly,
    /// Every g_j is recomputed from the corrected inner admittance
    /// Y_{j-1} + Y1_{j-1}; the gradient layer's own factor stays zero-order.
    CorrectedChain,
    /// As `CorrectedChain`, and gradient layers also get the first-order
    /// change of ln g from the in-layer admittance correction.
    #[default]
    CorrectedFactors,
}

/// Solves T(0) = Ã e^{−qe} + B̃ and T(e) = Ã + B̃ e^{−qe}.
pub fn bounded_amplitudes(t_inner: Complex, t_outer: Complex, q: Complex, e: f64) -> Result<(Complex, Complex)> {
    let e1 = (-q * e).exp();
    let den = -expm1(-2.0 * q * e);
    if den.norm() < 1e-14 {
        return Err(Error::DegenerateStratum);
    }
    Ok(((t_outer - e1 * t_inner) / den, (t_inner - e1 * t_outer) / den))
}

/// Field and gradient of the bounded representation at depth `z`.
pub fn bounded_field(amplitudes: (Complex, Complex), q: Complex, e: f64, z: f64) -> (Complex, Complex) {
    let (a, b) = amplitudes;
    let u = (-q * (e - z)).exp();
    let v = (-q * z).exp();
    (a * u + b * v, q * (a * u - b * v))
}

/// Symmetric bilinear form
/// `K(T_a, T_b) = ∫₀^e δλ·T_a'T_b' + iω·δ(ρc_p)·T_a T_b dz`
/// for two fields given by their bounded amplitudes. Only exponentials with
/// non-positive real part are formed, apart from the bounded ratio λ(e)/λ0.
pub fn bilinear_integral(
    ta: (Complex, Complex),
    tb: (Complex, Complex),
    layer: &Layer,
    omega: f64,
) -> Result<Complex> {
    if layer.gradient.is_none() {
        return Ok(Complex::new(0.0, 0.0));
    }
    let q = wave_vector(omega, layer)?;
    let e = layer.thickness_m;
    let beta = layer.beta();
    let d1 = layer.d1();
    let e1 = (-q * e).exp();
    let p = ta.0 * tb.0;
    let s = ta.1 * tb.1;
    let c = (ta.0 * tb.1 + ta.1 * tb.0) * e1;
    let w = 2.0 * q * e;
    let be = Complex::new(beta * e, 0.0);
    let phi_w = phi(w);

    let mut j = Complex::new(0.0, 0.0);
    if beta != 0.0 {
        let (outer, inner) = if (beta * e).abs() < 1e-2 {
            gradient_moment_series(beta * e, w)
        } else {
            // ∫₀¹ e^{βe s} e^{−w(1−s)} ds and ∫₀¹ e^{(βe − w)s} ds, minus φ(w)
            let (x_out, v_out) = exp_integral_unit(be + w);
            let (x_in, v_in) = exp_integral_unit(be - w);
            ((x_out - w).exp() * v_out - phi_w, x_in.exp() * v_in - phi_w)
        };
        j += layer.conductivity * q * q * e * (p * outer + s * inner - c * psi(beta * e));
    }
    if d1 != 0.0 {
        let chi_w = chi(w);
        j += Complex::new(0.0, omega * d1 * e * e) * (p * (phi_w - chi_w) + s * chi_w + c * 0.5);
    }
    if !is_finite(j) {
        return Err(Error::NonFinite { what: "perturbation integral", omega });
    }
    Ok(j)
}

// ∫₀¹ (e^{b s} − 1) e^{−w(1−s)} ds and ∫₀¹ (e^{b s} − 1) e^{−w s} ds for
// small b, expanded in b so the difference never forms.
fn gradient_moment_series(b: f64, w: Complex) -> (Complex, Complex) {
    const N: usize = 10;
    let m = exp_moments(w, N);
    let mut outer = Complex::new(0.0, 0.0);
    let mut inner = Complex::new(0.0, 0.0);
    let mut coef = 1.0;
    let mut binom = vec![1.0f64; N + 1];
    for n in 1..=N {
        coef *= b / n as f64;
        inner += coef * m[n];
        // ∫ sⁿ e^{−w(1−s)} ds = Σ_k C(n,k)(−1)^k M_k(w)
        for k in (1..n).rev() {
            binom[k] += binom[k - 1];
        }
        let mut nn = Complex::new(0.0, 0.0);
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            nn += sign * binom[k] * m[k];
        }
        outer += coef * nn;
    }
    (outer, inner)
}

/// J = J_res + J_cap of one layer for the field with amplitudes `(Ã, B̃)`;
/// zero for a layer without gradient.
pub fn layer_perturbation_integral(a: Complex, b: Complex, layer: &Layer, omega: f64) -> Result<Complex> {
    bilinear_integral((a, b), (a, b), layer, omega)
}

/// Y1_j = g_j²·Y1_{j-1} + J_j/T0(x_j)². The source term is skipped when
/// |T0(x_j)| is below `tau_noise`.
pub fn propagate_perturbation(y1_prev: Complex, g: Complex, t0_outer: Complex, j: Complex, tau_noise: f64) -> Complex {
    let carried = g * g * y1_prev;
    if t0_outer.norm() < tau_noise {
        carried
    } else {
        carried + j / (t0_outer * t0_outer)
    }
}

/// Exact stationary resistance of an exponential-conductivity layer,
/// (1 − e^{−βe})/(βλ0), with the homogeneous limit e/λ0.
pub fn exact_stationary_resistance(layer: &Layer) -> f64 {
    let b = layer.beta() * layer.thickness_m;
    if b.abs() < 1e-12 {
        return layer.resistance();
    }
    layer.resistance() * (-(-b).exp_m1() / b)
}

/// Zero-order outer-interface admittance and transfer factor of one layer,
/// with the solution data of the first-order correction.
pub fn solve_layer(y_prev: Complex, y1_prev: Complex, layer: &Layer, omega: f64, tau_noise: f64) -> Result<PerturbedLayerSolution> {
    let base = layer.baseline();
    let g0 = layer_transfer_factor(y_prev, &base, omega)?;
    let q = wave_vector(omega, layer)?;
    let one = Complex::new(1.0, 0.0);
    let (amplitudes, integral) = if layer.gradient.is_some() {
        let amp = bounded_amplitudes(g0, one, q, layer.thickness_m)?;
        (amp, layer_perturbation_integral(amp.0, amp.1, layer, omega)?)
    } else {
        ((Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)), Complex::new(0.0, 0.0))
    };
    let y1 = propagate_perturbation(y1_prev, g0, one, integral, tau_noise);
    Ok(PerturbedLayerSolution { amplitudes, integral, y1_at_exterior: y1 })
}

/// First-order change δ of −ln g across a gradient layer:
/// ∫₀^e Y1(z)/λ(z) + Y0(z)·(1/λ(z) − 1/λ0) dz.
fn log_factor_correction(y_prev: Complex, y1_prev: Complex, layer: &Layer, omega: f64, tau_noise: f64) -> Result<Complex> {
    let lam0 = layer.conductivity;
    let f = |z: f64| -> Complex {
        let sub = layer.truncated(z);
        let eval = || -> Result<Complex> {
            let y0 = propagate_layer(y_prev, &sub.baseline(), omega)?;
            let y1 = solve_layer(y_prev, y1_prev, &sub, omega, tau_noise)?.y1_at_exterior;
            let lam = layer.conductivity_at(z);
            Ok(y1 / lam + y0 * (1.0 / lam - 1.0 / lam0))
        };
        eval().unwrap_or(Complex::new(f64::NAN, f64::NAN))
    };
    let v = quad::integrate_with_limit(f, 0.0, layer.thickness_m, 1e-13, 1e-10, 400);
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::NonFinite { what: "gradient transfer correction", omega })
    }
}

/// Result of the corrected interior-to-exterior pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedChain {
    pub omega: f64,
    /// Zero-order admittances Y_0..Y_N.
    pub zero_order: Vec<Complex>,
    /// First-order corrections Y1_0..Y1_N.
    pub correction: Vec<Complex>,
    /// Transfer factors after recombination.
    pub factors: Vec<Complex>,
    pub global: Complex,
}

impl PerturbedChain {
    /// Y_N + Y1_N.
    pub fn corrected_exterior(&self) -> Complex {
        self.zero_order[self.zero_order.len() - 1] + self.correction[self.correction.len() - 1]
    }
}

/// Interior-to-exterior pass with first-order gradient corrections.
/// At ω = 0 the exact stationary resistance replaces e/λ0 in gradient layers.
pub fn perturbed_chain(assembly: &WallAssembly, omega: f64, recombination: Recombination, tau_noise: f64) -> Result<PerturbedChain> {
    assembly.validate()?;
    if omega == 0.0 {
        return stationary_chain(assembly);
    }
    let (chain, _) = forward_pass(assembly, omega)?;
    let y0 = chain.values;
    let n = assembly.layers.len();
    let mut correction = vec![Complex::new(0.0, 0.0); n + 1];
    let mut factors = Vec::with_capacity(n);
    let mut global = Complex::new(1.0, 0.0);
    for (j, layer) in assembly.layers.iter().enumerate() {
        let (y, y1) = (y0[j], correction[j]);
        let sol = solve_layer(y, y1, layer, omega, tau_noise)?;
        correction[j + 1] = sol.y1_at_exterior;
        let base = layer.baseline();
        let g = match recombination {
            Recombination::ExteriorOnly => layer_transfer_factor(y, &base, omega)?,
            Recombination::CorrectedChain => layer_transfer_factor(y + y1, &base, omega)?,
            Recombination::CorrectedFactors => {
                if layer.gradient.is_some() {
                    let g0 = layer_transfer_factor(y, &base, omega)?;
                    g0 * (-log_factor_correction(y, y1, layer, omega, tau_noise)?).exp()
                } else {
                    layer_transfer_factor(y + y1, &base, omega)?
                }
            }
        };
        global *= g;
        factors.push(g);
    }
    Ok(PerturbedChain { omega, zero_order: y0, correction, factors, global })
}

fn stationary_chain(assembly: &WallAssembly) -> Result<PerturbedChain> {
    let (chain, _) = forward_pass(assembly, 0.0)?;
    let n = assembly.layers.len();
    let mut exact = assembly.h_int;
    let mut correction = vec![Complex::new(0.0, 0.0); n + 1];
    let mut factors = Vec::with_capacity(n);
    let mut global = 1.0;
    for (j, layer) in assembly.layers.iter().enumerate() {
        let r = exact_stationary_resistance(layer);
        let g = 1.0 / (1.0 + exact * r);
        exact = 1.0 / (1.0 / exact + r);
        global *= g;
        factors.push(Complex::new(g, 0.0));
        correction[j + 1] = Complex::new(exact, 0.0) - chain.values[j + 1];
    }
    Ok(PerturbedChain {
        omega: 0.0,
        zero_order: chain.values,
        correction,
        factors,
        global: Complex::new(global, 0.0),
    })
}

/// Harmonic state with first-order corrections on both excitation paths.
/// The interior path runs the same pass on the physically mirrored wall.
pub fn perturbed_state(assembly: &WallAssembly, omega: f64, recombination: Recombination, tau_noise: f64) -> Result<HarmonicState> {
    let fwd = perturbed_chain(assembly, omega, recombination, tau_noise)?;
    let bwd = perturbed_chain(&assembly.mirrored(), omega, recombination, tau_noise)?;
    Ok(HarmonicState {
        omega,
        h_int: assembly.h_int,
        h_ext: assembly.h_ext,
        y_ext: fwd.corrected_exterior(),
        y1_ext: fwd.correction[fwd.correction.len() - 1],
        g_in: fwd.global,
        y_back: bwd.corrected_exterior(),
        g_out: bwd.global,
    })
}

/// Truncation estimate ∫ λ0·T0'²·ε²/(1+ε) dz with ε = e^{βz} − 1 for the
/// gradient layer at `layer_index`, divided by the zero-order flux through
/// its exterior face (fields normalized to T0 = 1 there).
pub fn truncation_error_bound(assembly: &WallAssembly, layer_index: usize, omega: f64) -> Result<f64> {
    assembly.validate()?;
    let layer = assembly
        .layers
        .get(layer_index)
        .ok_or_else(|| Error::invalid(format!("no layer {layer_index}")))?;
    let beta = layer.beta();
    if beta == 0.0 {
        return Ok(0.0);
    }
    let (chain, tr) = forward_pass(&assembly.baseline(), omega)?;
    let y_out = chain.values[layer_index + 1];
    let lam0 = layer.conductivity;
    let e = layer.thickness_m;
    let weight = |z: f64| {
        let eps = (beta * z).exp_m1();
        eps * eps / (1.0 + eps)
    };
    let integral = if omega == 0.0 {
        let slope = y_out / lam0;
        quad::integrate(|z| lam0 * slope * slope * weight(z), 0.0, e, 1e-15, 1e-12)
    } else {
        let q = wave_vector(omega, layer)?;
        let amp = bounded_amplitudes(tr.factors[layer_index], Complex::new(1.0, 0.0), q, e)?;
        quad::integrate(
            |z| {
                let (_, d) = bounded_field(amp, q, e, z);
                lam0 * d * d * weight(z)
            },
            0.0,
            e,
            1e-15,
            1e-12,
        )
    };
    Ok(integral.norm() / y_out.norm())
}

/// Transient simulation with first-order gradient corrections, default
/// recombination.
pub fn simulate_perturbed(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    config: &SimConfig,
) -> Result<SimulationResult> {
    simulate_perturbed_with(assembly, weather, setpoint, config, Recombination::default())
}

pub fn simulate_perturbed_with(
    assembly: &WallAssembly,
    weather: &WeatherSeries,
    setpoint: &[f64],
    config: &SimConfig,
    recombination: Recombination,
) -> Result<SimulationResult> {
    let tau = config.noise_threshold;
    let model = |omega: f64| perturbed_state(assembly, omega, recombination, tau);
    Ok(run_model(assembly, weather, setpoint, config, &model)?.0)
}
