//! Complex helpers that stay accurate where the textbook forms cancel.

use crate::Complex;

/// e^z − 1 without cancellation for small |z|.
pub fn expm1(z: Complex) -> Complex {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let (s, c) = z.im.sin_cos();
    let ex = z.re.exp_m1();
    let half = (0.5 * z.im).sin();
    // e^x cos y − 1 = expm1(x) cos y − 2 sin²(y/2)
    Complex::new(ex * c - 2.0 * half * half, (ex + 1.0) * s)
}

/// φ(w) = (1 − e^{−w})/w = ∫₀¹ e^{−w s} ds, with the removable point at w = 0.
pub fn phi(w: Complex) -> Complex {
    if w.norm() < 0.05 {
        // Σ (−w)^n/(n+1)!
        let mut term = Complex::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..12 {
            term *= -w / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        -expm1(-w) / w
    }
}

/// χ(w) = (1 − (1 + w)e^{−w})/w² = ∫₀¹ s e^{−w s} ds.
pub fn chi(w: Complex) -> Complex {
    if w.norm() < 0.1 {
        // Σ (−w)^n / (n! (n+2))
        let mut fact = Complex::new(1.0, 0.0);
        let mut sum = Complex::new(0.5, 0.0);
        for n in 1..16 {
            fact *= -w / n as f64;
            sum += fact / (n as f64 + 2.0);
        }
        sum
    } else {
        let em = (-w).exp();
        (-expm1(-w) - w * em) / (w * w)
    }
}

/// Moments M_n(x) = ∫₀¹ sⁿ e^{−x s} ds for n = 0..=n_max, Re x ≥ 0.
pub fn exp_moments(x: Complex, n_max: usize) -> Vec<Complex> {
    if x.norm() < 2.0 {
        (0..=n_max)
            .map(|n| {
                // Σ_k (−x)^k / (k! (n + k + 1))
                let mut term = Complex::new(1.0, 0.0);
                let mut sum = term / (n as f64 + 1.0);
                for k in 1..60 {
                    term *= -x / k as f64;
                    sum += term / ((n + k + 1) as f64);
                    if term.norm() < 1e-18 {
                        break;
                    }
                }
                sum
            })
            .collect()
    } else {
        let em = (-x).exp();
        let mut out = vec![phi(x)];
        for n in 1..=n_max {
            out.push((n as f64 * out[n - 1] - em) / x);
        }
        out
    }
}

/// ψ(b) = (e^b − 1 − b)/b = ∫₀¹ (e^{b s} − 1) ds for real b.
pub fn psi(b: f64) -> f64 {
    if b.abs() < 1e-2 {
        // Σ b^n/(n+1)!, n ≥ 1
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 1..10 {
            term *= b / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        (b.exp_m1() - b) / b
    }
}

/// ∫₀¹ e^{c s} ds written so that only non-positive real exponents are
/// formed: `(prefactor_exponent, value)` with the integral equal to
/// `exp(prefactor_exponent) · value` and |value| ≤ 1.
pub fn exp_integral_unit(c: Complex) -> (Complex, Complex) {
    if c.re <= 0.0 {
        (Complex::new(0.0, 0.0), phi(-c))
    } else {
        (c, phi(c))
    }
}

/// Complex division robust against overflow of |den|².
pub fn div_scaled(num: Complex, den: Complex) -> Complex {
    let s = den.re.abs().max(den.im.abs());
    if s == 0.0 || !s.is_finite() {
        return num / den;
    }
    (num / s) / (den / s)
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
