//! Wall configuration file (TOML).

use std::path::{Path, PathBuf};

use riccati_wall::{GradientSpec, Layer, RadiativeConfig, SimConfig, WallAssembly, WeatherSeries};
use serde::{Deserialize, Serialize};

use crate::weather::read_weather;
use crate::Failure;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WallConfigFile {
    pub assembly: AssemblyConfig,
    pub radiative: Option<RadiativeBlock>,
    #[serde(default)]
    pub sim: SimBlock,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyConfig {
    pub h_int: f64,
    pub h_ext: f64,
    /// Interior to exterior.
    pub layers: Vec<LayerConfig>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub thickness_m: f64,
    pub conductivity: f64,
    pub density: f64,
    pub specific_heat: f64,
    /// Documentation only; the solver reads the property endpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moisture_interior_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moisture_exterior_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradient: Option<GradientConfig>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GradientConfig {
    pub conductivity_exterior: f64,
    /// Defaults to density · specific_heat.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vol_heat_capacity_interior: Option<f64>,
    pub vol_heat_capacity_exterior: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RadiativeBlock {
    pub emissivity: f64,
    /// Linearization temperature; the mean air temperature when absent.
    #[serde(default, rename = "t_lin_K", skip_serializing_if = "Option::is_none")]
    pub t_lin_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_noise: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SimBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warmup_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detrend: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solar_absorptivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_threshold: Option<f64>,
    /// Expected weather step, checked against the CSV.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_s: Option<f64>,
    /// Weather CSV used as warm-up history, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub history_csv: Option<PathBuf>,
    /// Grid used for the explicit-scheme Fourier diagnostic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fdm_nodes_per_layer: Option<usize>,
}

/// A parsed config together with its location.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub file: WallConfigFile,
    pub dir: PathBuf,
}

pub fn parse_config(text: &str) -> Result<WallConfigFile, Failure> {
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let msg = inner.message().trim().to_string();
        Failure::invalid(format!("config: {path}: {msg}"))
    })
}

pub fn load_config(path: &Path) -> Result<LoadedConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let file = parse_config(&text)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(LoadedConfig { file, dir })
}

impl LayerConfig {
    fn to_layer(&self, index: usize) -> Result<Layer, Failure> {
        let ctx = |e: riccati_wall::Error| Failure::invalid(format!("assembly.layers[{index}]: {e}"));
        let layer = Layer::new(self.thickness_m, self.conductivity, self.density, self.specific_heat).map_err(ctx)?;
        match &self.gradient {
            None => Ok(layer),
            Some(g) => layer
                .with_gradient(GradientSpec {
                    conductivity_exterior: g.conductivity_exterior,
                    vol_heat_capacity_interior: g.vol_heat_capacity_interior.unwrap_or(self.density * self.specific_heat),
                    vol_heat_capacity_exterior: g.vol_heat_capacity_exterior,
                })
                .map_err(ctx),
        }
    }
}

impl LoadedConfig {
    pub fn assembly(&self) -> Result<WallAssembly, Failure> {
        let a = &self.file.assembly;
        let layers = a.layers.iter().enumerate().map(|(i, l)| l.to_layer(i)).collect::<Result<Vec<_>, _>>()?;
        WallAssembly::new(layers, a.h_int, a.h_ext).map_err(|e| Failure::invalid(format!("assembly: {e}")))
    }

    pub fn sim_config(&self) -> Result<SimConfig, Failure> {
        let s = &self.file.sim;
        let d = SimConfig::default();
        let history = match &s.history_csv {
            Some(p) => Some(read_weather(&self.dir.join(p))?),
            None => None,
        };
        let cfg = SimConfig {
            warmup_s: s.warmup_s.unwrap_or(d.warmup_s),
            detrend: s.detrend.unwrap_or(d.detrend),
            solar_absorptivity: s.solar_absorptivity.unwrap_or(d.solar_absorptivity),
            noise_threshold: s.noise_threshold.unwrap_or(d.noise_threshold),
            history,
        };
        cfg.validate().map_err(|e| Failure::invalid(format!("sim: {e}")))?;
        if let Some(n) = s.fdm_nodes_per_layer {
            if n == 0 {
                return Err(Failure::invalid("sim.fdm_nodes_per_layer must be >= 1"));
            }
        }
        Ok(cfg)
    }

    pub fn radiative(&self, weather: &WeatherSeries) -> Result<Option<RadiativeConfig>, Failure> {
        let Some(r) = &self.file.radiative else { return Ok(None) };
        let mut cfg = match r.t_lin_k {
            Some(t) => RadiativeConfig::new(r.emissivity, t),
            None => RadiativeConfig::at_mean_air(r.emissivity, weather),
        };
        if let Some(tau) = r.tau_noise {
            cfg.tau_noise = tau;
        }
        cfg.validate().map_err(|e| Failure::invalid(format!("radiative: {e}")))?;
        Ok(Some(cfg))
    }

    /// Rejects a weather step that differs from `sim.dt_s`.
    pub fn check_dt(&self, weather: &WeatherSeries) -> Result<(), Failure> {
        if let Some(dt) = self.file.sim.dt_s {
            if (weather.dt - dt).abs() > 1e-6 * dt {
                return Err(Failure::invalid(format!("weather step {} s differs from sim.dt_s = {dt} s", weather.dt)));
            }
        }
        Ok(())
    }
}
