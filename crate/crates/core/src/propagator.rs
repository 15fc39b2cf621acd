//! Bounded admittance propagation, transfer factors and the two-state closure.

use crate::assembly::{Layer, WallAssembly};
use crate::cmath::{expm1, is_finite};
use crate::error::{Error, Result};
use crate::wave::wave_vector;
use crate::Complex;

/// Which way a chain was accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Started at the interior film, marching outward.
    Outward,
    /// Started at the exterior film, marching inward.
    Inward,
}

/// Admittance at every interface, indexed by physical interface 0..=N
/// (0 is the interior surface) regardless of direction.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmittanceChain {
    pub direction: Direction,
    pub omega: f64,
    pub values: Vec<Complex>,
}

/// Per-layer transfer factors g_j = T(x_{j-1})/T(x_j) and their product G.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferChain {
    pub omega: f64,
    pub factors: Vec<Complex>,
    pub global: Complex,
}

fn ensure(z: Complex, what: &'static str, omega: f64) -> Result<Complex> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite { what, omega })
    }
}

fn check_positive_omega(omega: f64) -> Result<()> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::invalid(format!("dynamic propagation needs omega > 0, got {omega}")));
    }
    Ok(())
}

/// One-layer admittance update written with E = e^{−2qe} only.
///
/// Stays finite for any Re(qe); for thick layers it returns the
/// characteristic admittance.
pub fn propagate_layer(y_prev: Complex, layer: &Layer, omega: f64) -> Result<Complex> {
    check_positive_omega(omega)?;
    if !is_finite(y_prev) {
        return Err(Error::invalid("inner admittance is not finite"));
    }
    let q = wave_vector(omega, layer)?;
    if layer.thickness_m == 0.0 {
        return Ok(y_prev);
    }
    let yc = q * layer.conductivity;
    let x = -2.0 * q * layer.thickness_m;
    let one_minus = -expm1(x);
    let one_plus = 2.0 - one_minus;
    let y = yc * (y_prev * one_plus + yc * one_minus) / (yc * one_plus + y_prev * one_minus);
    ensure(y, "layer admittance", omega)
}

/// Stationary update: series addition of the layer resistance.
pub fn propagate_layer_stationary(y_prev: f64, layer: &Layer) -> Result<f64> {
    if !(y_prev.is_finite() && y_prev > 0.0) {
        return Err(Error::invalid(format!("stationary admittance must be > 0, got {y_prev}")));
    }
    layer.validate()?;
    Ok(1.0 / (1.0 / y_prev + layer.resistance()))
}

/// Transfer factor g = T(x_{j-1})/T(x_j) given the inner admittance.
pub fn layer_transfer_factor(y_prev: Complex, layer: &Layer, omega: f64) -> Result<Complex> {
    check_positive_omega(omega)?;
    let q = wave_vector(omega, layer)?;
    if layer.thickness_m == 0.0 {
        return Ok(Complex::new(1.0, 0.0));
    }
    let yc = q * layer.conductivity;
    let e1 = (-q * layer.thickness_m).exp();
    let r = y_prev / yc;
    let den = (1.0 + r) + e1 * e1 * (1.0 - r);
    if den.norm() < 1e-300 {
        return Err(Error::DegenerateTransferFactor { omega });
    }
    ensure(2.0 * e1 / den, "transfer factor", omega)
}

/// Stationary transfer factor Y_j/Y_{j-1} = 1/(1 + Y_{j-1}·e/λ).
pub fn layer_transfer_factor_stationary(y_prev: f64, layer: &Layer) -> f64 {
    1.0 / (1.0 + y_prev * layer.resistance())
}

/// Forward admittance chain and transfer factors in one interior-to-exterior
/// pass. Gradients are ignored: each layer acts through its baseline.
pub fn forward_pass(assembly: &WallAssembly, omega: f64) -> Result<(AdmittanceChain, TransferChain)> {
    assembly.validate()?;
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::invalid(format!("angular frequency must be finite and >= 0, got {omega}")));
    }
    let n = assembly.layers.len();
    let mut values = Vec::with_capacity(n + 1);
    let mut factors = Vec::with_capacity(n);
    let mut y = Complex::new(assembly.h_int, 0.0);
    let mut global = Complex::new(1.0, 0.0);
    values.push(y);
    for layer in &assembly.layers {
        let (y_next, g) = if omega == 0.0 {
            let g = layer_transfer_factor_stationary(y.re, layer);
            (Complex::new(propagate_layer_stationary(y.re, layer)?, 0.0), Complex::new(g, 0.0))
        } else {
            (propagate_layer(y, layer, omega)?, layer_transfer_factor(y, layer, omega)?)
        };
        global *= g;
        factors.push(g);
        values.push(y_next);
        y = y_next;
    }
    Ok((
        AdmittanceChain { direction: Direction::Outward, omega, values },
        TransferChain { omega, factors, global },
    ))
}

/// Y_0 = h_int, then one propagation per layer (stationary form at ω = 0).
pub fn forward_chain(assembly: &WallAssembly, omega: f64) -> Result<AdmittanceChain> {
    Ok(forward_pass(assembly, omega)?.0)
}

/// G(ω) = Π g_j alongside the forward chain.
pub fn global_transfer(assembly: &WallAssembly, omega: f64) -> Result<TransferChain> {
    Ok(forward_pass(assembly, omega)?.1)
}

/// Chain started at the exterior film (Y⃐_N = h_ext) and marched inward,
/// obtained by running the forward pass on the mirrored assembly.
pub fn backward_chain(assembly: &WallAssembly, omega: f64) -> Result<AdmittanceChain> {
    let (mut chain, _) = forward_pass(&assembly.baseline().mirrored(), omega)?;
    chain.values.reverse();
    chain.direction = Direction::Inward;
    Ok(chain)
}

/// Exterior surface temperature under exterior excitation only:
/// h_ext/(h_ext + Y_N) · T_sa.
pub fn state_a_surface(assembly: &WallAssembly, omega: f64, t_sa: Complex) -> Result<Complex> {
    let y_n = *forward_chain(assembly, omega)?.values.last().expect("non-empty chain");
    Ok(assembly.h_ext / (assembly.h_ext + y_n) * t_sa)
}

/// Interior surface temperature under interior excitation only, with the
/// exterior closed by its film. Built by mirroring the assembly.
pub fn state_b_response(assembly: &WallAssembly, omega: f64, t_in: Complex) -> Result<Complex> {
    let y_back = backward_chain(assembly, omega)?.values[0];
    Ok(assembly.h_int / (assembly.h_int + y_back) * t_in)
}

/// Interior surface temperature for both excitations: G·T_surf + State B.
pub fn superpose(assembly: &WallAssembly, omega: f64, t_sa: Complex, t_in: Complex) -> Result<Complex> {
    let s = HarmonicState::zero_order(assembly, omega)?;
    Ok(s.si_from_sa() * t_sa + s.si_from_in() * t_in)
}

/// Everything the time-domain pipeline needs at one frequency.
///
/// `y_ext` is the exterior driving-point admittance (including any first-order
/// correction `y1_ext`), `g_in` carries the exterior surface to the interior
/// surface, `y_back` is the interior driving-point admittance seen from the
/// room and `g_out` carries the interior surface to the exterior surface
/// under interior excitation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicState {
    pub omega: f64,
    pub h_int: f64,
    pub h_ext: f64,
    pub y_ext: Complex,
    pub y1_ext: Complex,
    pub g_in: Complex,
    pub y_back: Complex,
    pub g_out: Complex,
}

impl HarmonicState {
    /// Homogeneous-baseline state from the forward and mirrored passes.
    pub fn zero_order(assembly: &WallAssembly, omega: f64) -> Result<Self> {
        let base = assembly.baseline();
        let (fwd, tr) = forward_pass(&base, omega)?;
        let (bwd, tr_b) = forward_pass(&base.mirrored(), omega)?;
        Ok(HarmonicState {
            omega,
            h_int: assembly.h_int,
            h_ext: assembly.h_ext,
            y_ext: *fwd.values.last().expect("non-empty chain"),
            y1_ext: Complex::new(0.0, 0.0),
            g_in: tr.global,
            y_back: *bwd.values.last().expect("non-empty chain"),
            g_out: tr_b.global,
        })
    }

    /// |G(ω)|.
    pub fn transfer_magnitude(&self) -> f64 {
        self.g_in.norm()
    }

    pub fn se_from_sa(&self) -> Complex {
        self.h_ext / (self.h_ext + self.y_ext)
    }

    pub fn si_from_sa(&self) -> Complex {
        self.g_in * self.se_from_sa()
    }

    pub fn si_from_in(&self) -> Complex {
        self.h_int / (self.h_int + self.y_back)
    }

    pub fn se_from_in(&self) -> Complex {
        self.g_out * self.si_from_in()
    }

    /// Response of the exterior surface to a flux `phi` extracted from it
    /// (interior held fixed): −phi/(h_ext + Y_N).
    pub fn se_from_extraction(&self) -> Complex {
        -1.0 / (self.h_ext + self.y_ext)
    }
}
