//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use riccati_wall::{Complex, Layer};

pub const DIURNAL: f64 = 2.0 * std::f64::consts::PI / 86400.0;

pub fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm()
}

/// One-layer update in the hyperbolic-tangent form.
pub fn tanh_update(y_prev: Complex, layer: &Layer, omega: f64) -> Complex {
    let k = (omega / (2.0 * layer.conductivity / (layer.density * layer.specific_heat))).sqrt();
    let q = Complex::new(k, k);
    let yc = q * layer.conductivity;
    let t = (q * layer.thickness_m).tanh();
    yc * (y_prev + yc * t) / (yc + y_prev * t)
}

/// O(M²) normalized DFT, bins 0..=M/2.
pub fn direct_dft(x: &[f64]) -> Vec<Complex> {
    let m = x.len();
    (0..=m / 2)
        .map(|k| {
            let mut s = Complex::new(0.0, 0.0);
            for (n, &v) in x.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (k * n % m) as f64 / m as f64;
                s += Complex::from_polar(v, ang);
            }
            s / m as f64
        })
        .collect()
}

const GL8_X: [f64; 4] = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
const GL8_W: [f64; 4] = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];

/// Composite 8-point Gauss–Legendre with `panels` equal panels.
pub fn gl_composite<F: Fn(f64) -> Complex>(f: F, a: f64, b: f64, panels: usize) -> Complex {
    let h = (b - a) / panels as f64;
    let mut s = Complex::new(0.0, 0.0);
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for i in 0..4 {
            let dx = 0.5 * h * GL8_X[i];
            s += (f(c - dx) + f(c + dx)) * GL8_W[i];
        }
    }
    s * (0.5 * h)
}

/// Composite Gauss–Legendre for real integrands.
pub fn gl_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    gl_composite(|x| Complex::new(f(x), 0.0), a, b, panels).re
}

/// Direct integrand δλ·T'² + iω·δ(ρc)·T² with the field rebuilt from its
/// amplitudes by plain exponentials.
pub fn perturbation_integrand(a: Complex, b: Complex, layer: &Layer, omega: f64, z: f64) -> Complex {
    let lam0 = layer.conductivity;
    let e = layer.thickness_m;
    let g = layer.gradient.expect("gradient layer");
    let beta = (g.conductivity_exterior / lam0).ln() / e;
    let d1 = (g.vol_heat_capacity_exterior - g.vol_heat_capacity_interior) / e;
    let k = (omega * layer.density * layer.specific_heat / (2.0 * lam0)).sqrt();
    let q = Complex::new(k, k);
    let u = (-q * (e - z)).exp();
    let v = (-q * z).exp();
    let t = a * u + b * v;
    let dt = q * (a * u - b * v);
    let dlam = lam0 * (beta * z).exp_m1();
    dt * dt * dlam + Complex::new(0.0, omega * d1 * z) * t * t
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn max_of(a: &[f64]) -> f64 {
    a.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}
