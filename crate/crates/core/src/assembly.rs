//! Layers, gradient descriptions and wall assemblies.

use crate::error::{Error, Result};

/// Continuous property gradient across one layer.
///
/// Conductivity grows exponentially from the owning layer's conductivity
/// `λ0` at the interior face to `conductivity_exterior` at the exterior
/// face. Volumetric heat capacity varies linearly between the two stored
/// endpoint values. Positions inside the layer run toward the exterior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSpec {
    pub conductivity_exterior: f64,
    pub vol_heat_capacity_interior: f64,
    pub vol_heat_capacity_exterior: f64,
}

impl GradientSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.conductivity_exterior) {
            return Err(Error::invalid("gradient conductivity_exterior must be finite and > 0"));
        }
        if !ok(self.vol_heat_capacity_interior) || !ok(self.vol_heat_capacity_exterior) {
            return Err(Error::invalid("gradient heat capacities must be finite and > 0"));
        }
        Ok(())
    }
}

/// One homogeneous stratum, optionally carrying a property gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub thickness_m: f64,
    pub conductivity: f64,
    pub density: f64,
    pub specific_heat: f64,
    pub gradient: Option<GradientSpec>,
}

impl Layer {
    /// Builds and validates a homogeneous layer.
    pub fn new(thickness_m: f64, conductivity: f64, density: f64, specific_heat: f64) -> Result<Self> {
        let layer = Layer { thickness_m, conductivity, density, specific_heat, gradient: None };
        layer.validate()?;
        Ok(layer)
    }

    /// Attaches a gradient; its interior capacity must equal `ρ·c_p` of the layer.
    pub fn with_gradient(mut self, gradient: GradientSpec) -> Result<Self> {
        self.gradient = Some(gradient);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(self.thickness_m.is_finite() && self.thickness_m >= 0.0) {
            return Err(Error::invalid(format!("thickness must be finite and >= 0, got {}", self.thickness_m)));
        }
        if !ok(self.conductivity) {
            return Err(Error::invalid(format!("conductivity must be finite and > 0, got {}", self.conductivity)));
        }
        if !ok(self.density) {
            return Err(Error::invalid(format!("density must be finite and > 0, got {}", self.density)));
        }
        if !ok(self.specific_heat) {
            return Err(Error::invalid(format!("specific heat must be finite and > 0, got {}", self.specific_heat)));
        }
        if !ok(self.diffusivity()) {
            return Err(Error::invalid("diffusivity is not finite"));
        }
        if let Some(g) = &self.gradient {
            g.validate()?;
            let c0 = self.vol_heat_capacity();
            if (g.vol_heat_capacity_interior - c0).abs() > 1e-6 * c0 {
                return Err(Error::invalid(format!(
                    "gradient vol_heat_capacity_interior {} does not match density*specific_heat {}",
                    g.vol_heat_capacity_interior, c0
                )));
            }
            if self.thickness_m <= 0.0 {
                return Err(Error::invalid("gradient layer needs a positive thickness"));
            }
        }
        Ok(())
    }

    pub fn vol_heat_capacity(&self) -> f64 {
        self.density * self.specific_heat
    }

    /// α = λ/(ρ c_p).
    pub fn diffusivity(&self) -> f64 {
        self.conductivity / self.vol_heat_capacity()
    }

    /// Stationary resistance of the homogeneous baseline, e/λ.
    pub fn resistance(&self) -> f64 {
        self.thickness_m / self.conductivity
    }

    /// Exponential growth rate β = ln(λ(e)/λ0)/e; zero without gradient.
    pub fn beta(&self) -> f64 {
        match &self.gradient {
            Some(g) if self.thickness_m > 0.0 => (g.conductivity_exterior / self.conductivity).ln() / self.thickness_m,
            _ => 0.0,
        }
    }

    /// Linear capacity slope d1 = Δ(ρc_p)/e; zero without gradient.
    pub fn d1(&self) -> f64 {
        match &self.gradient {
            Some(g) if self.thickness_m > 0.0 => {
                (g.vol_heat_capacity_exterior - g.vol_heat_capacity_interior) / self.thickness_m
            }
            _ => 0.0,
        }
    }

    /// Conductivity at depth `z` measured from the interior face.
    pub fn conductivity_at(&self, z: f64) -> f64 {
        self.conductivity * (self.beta() * z).exp()
    }

    /// Volumetric heat capacity at depth `z`.
    pub fn vol_heat_capacity_at(&self, z: f64) -> f64 {
        self.vol_heat_capacity() + self.d1() * z
    }

    /// The homogeneous baseline (gradient dropped).
    pub fn baseline(&self) -> Layer {
        Layer { gradient: None, ..*self }
    }

    /// Same layer seen from the other face. A gradient is mirrored so that the
    /// profiles are unchanged in physical space: the baseline becomes the old
    /// exterior values and β, d1 change sign.
    pub fn mirrored(&self) -> Layer {
        match &self.gradient {
            None => *self,
            Some(g) => Layer {
                thickness_m: self.thickness_m,
                conductivity: g.conductivity_exterior,
                density: g.vol_heat_capacity_exterior / self.specific_heat,
                specific_heat: self.specific_heat,
                gradient: Some(GradientSpec {
                    conductivity_exterior: self.conductivity,
                    vol_heat_capacity_interior: g.vol_heat_capacity_exterior,
                    vol_heat_capacity_exterior: g.vol_heat_capacity_interior,
                }),
            },
        }
    }

    /// Thinner copy covering `[0, z]` of this layer, gradient profiles kept.
    pub fn truncated(&self, z: f64) -> Layer {
        let mut out = Layer { thickness_m: z, ..*self };
        if let Some(g) = &self.gradient {
            out.gradient = Some(GradientSpec {
                conductivity_exterior: self.conductivity_at(z),
                vol_heat_capacity_interior: g.vol_heat_capacity_interior,
                vol_heat_capacity_exterior: self.vol_heat_capacity_at(z),
            });
        }
        out
    }
}

/// Ordered layers, index 0 innermost, with the two surface film coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WallAssembly {
    pub layers: Vec<Layer>,
    pub h_int: f64,
    pub h_ext: f64,
}

impl WallAssembly {
    pub fn new(layers: Vec<Layer>, h_int: f64, h_ext: f64) -> Result<Self> {
        let a = WallAssembly { layers, h_int, h_ext };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::invalid("assembly needs at least one layer"));
        }
        if !(self.h_int.is_finite() && self.h_int > 0.0) {
            return Err(Error::invalid(format!("h_int must be finite and > 0, got {}", self.h_int)));
        }
        if !(self.h_ext.is_finite() && self.h_ext > 0.0) {
            return Err(Error::invalid(format!("h_ext must be finite and > 0, got {}", self.h_ext)));
        }
        for (i, l) in self.layers.iter().enumerate() {
            l.validate().map_err(|e| Error::invalid(format!("layer {i}: {e}")))?;
        }
        Ok(())
    }

    pub fn has_gradients(&self) -> bool {
        self.layers.iter().any(|l| l.gradient.is_some())
    }

    /// Every layer replaced by its homogeneous baseline.
    pub fn baseline(&self) -> WallAssembly {
        WallAssembly { layers: self.layers.iter().map(Layer::baseline).collect(), ..*self }
    }

    /// Reversed layer order with swapped films.
    pub fn mirrored(&self) -> WallAssembly {
        WallAssembly {
            layers: self.layers.iter().rev().map(Layer::mirrored).collect(),
            h_int: self.h_ext,
            h_ext: self.h_int,
        }
    }

    /// Sum of the baseline layer resistances e/λ.
    pub fn wall_resistance(&self) -> f64 {
        self.layers.iter().map(Layer::resistance).sum()
    }

    /// Film-to-film transmittance of the homogeneous baseline.
    pub fn u_value(&self) -> f64 {
        1.0 / (1.0 / self.h_int + self.wall_resistance() + 1.0 / self.h_ext)
    }
}
