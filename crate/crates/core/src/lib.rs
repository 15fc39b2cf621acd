//! Frequency-domain heat conduction through multilayer walls.
//!
//! Each harmonic of the boundary forcing is carried through the wall by a
//! bounded admittance propagator, so thick or high-frequency layers never
//! overflow. On top of the homogeneous solution the crate offers first-order
//! corrections for property gradients and for nonlinear sky radiation, a
//! transfer-matrix reference and a finely sliced oracle.
//!
//! The guide in `book/` walks through the concepts; its code blocks run as
//! doc-tests of this crate.

pub mod assembly;
pub mod cmath;
pub mod error;
pub mod perturbation;
pub mod propagator;
pub mod quad;
pub mod radiative;
pub mod reference;
pub mod scenarios;
pub mod spectral;
pub mod wave;

/// Complex scalar used for every harmonic quantity.
pub type Complex = num_complex::Complex64;

pub use assembly::{GradientSpec, Layer, WallAssembly};
pub use error::{Error, Result};
pub use perturbation::{
    bounded_amplitudes, exact_stationary_resistance, layer_perturbation_integral, propagate_perturbation,
    simulate_perturbed, truncation_error_bound, Recombination,
};
pub use propagator::{
    backward_chain, forward_chain, global_transfer, layer_transfer_factor, propagate_layer,
    propagate_layer_stationary, state_a_surface, state_b_response, superpose, AdmittanceChain, HarmonicState,
    TransferChain,
};
pub use radiative::{
    linearized_h_rad, pseudo_admittance, radiative_residual, simulate_radiative, simulate_radiative_perturbed,
    RadiativeConfig, RadiativeRun,
};
pub use spectral::{
    detrend_linear, dominant_time_constant, forward_transform, inverse_transform, pad_history, simulate, sol_air,
    SimConfig, SimulationResult, SpectralSeries, WeatherSeries,
};
pub use wave::{characteristic_admittance, penetration_depth, wave_vector};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/admittance.md")]
    mod admittance {}
    #[doc = include_str!("../../../book/src/closure.md")]
    mod closure {}
    #[doc = include_str!("../../../book/src/overflow.md")]
    mod overflow {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/perturbation.md")]
    mod perturbation {}
    #[doc = include_str!("../../../book/src/radiative.md")]
    mod radiative {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
