//! Per-layer harmonic wave quantities.

use crate::assembly::Layer;
use crate::error::{Error, Result};
use crate::Complex;

fn check_omega(omega: f64) -> Result<()> {
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::invalid(format!("angular frequency must be finite and >= 0, got {omega}")));
    }
    Ok(())
}

/// Complex thermal wave vector q = (1+i)·√(ω/2α) in 1/m.
///
/// ```
/// use riccati_wall::{wave_vector, Layer};
/// let layer = Layer::new(0.2, 1.0, 1.0e3, 1.0e3).unwrap(); // α = 1e-6
/// let q = wave_vector(2.0 * std::f64::consts::PI / 86400.0, &layer).unwrap();
/// assert!((q.re - 6.03001).abs() < 1e-5 && q.re == q.im);
/// ```
pub fn wave_vector(omega: f64, layer: &Layer) -> Result<Complex> {
    check_omega(omega)?;
    layer.validate()?;
    if omega == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let k = (omega / (2.0 * layer.diffusivity())).sqrt();
    Ok(Complex::new(k, k))
}

/// Characteristic admittance Y_c = λ·q of the semi-infinite medium.
pub fn characteristic_admittance(omega: f64, layer: &Layer) -> Result<Complex> {
    Ok(wave_vector(omega, layer)? * layer.conductivity)
}

/// Penetration depth √(2α/ω) = 1/Re(q).
pub fn penetration_depth(omega: f64, layer: &Layer) -> Result<f64> {
    check_omega(omega)?;
    if omega == 0.0 {
        return Err(Error::InfinitePenetrationDepth);
    }
    Ok(1.0 / wave_vector(omega, layer)?.re)
}
