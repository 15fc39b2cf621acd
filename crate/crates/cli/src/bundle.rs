//! Scenario bundles: `wall.toml` plus `weather.csv` (and `history.csv` when
//! the scenario carries a warm-up history) per directory.

use std::path::Path;

use riccati_wall::scenarios::Scenario;
use riccati_wall::{Layer, WeatherSeries};

use crate::config::{AssemblyConfig, GradientConfig, LayerConfig, RadiativeBlock, SimBlock, WallConfigFile};
use crate::output::fmt9;
use crate::Failure;

fn layer_config(l: &Layer) -> LayerConfig {
    LayerConfig {
        name: None,
        thickness_m: l.thickness_m,
        conductivity: l.conductivity,
        density: l.density,
        specific_heat: l.specific_heat,
        moisture_interior_pct: None,
        moisture_exterior_pct: None,
        gradient: l.gradient.map(|g| GradientConfig {
            conductivity_exterior: g.conductivity_exterior,
            vol_heat_capacity_interior: Some(g.vol_heat_capacity_interior),
            vol_heat_capacity_exterior: g.vol_heat_capacity_exterior,
        }),
    }
}

/// Config file equivalent to the scenario's settings.
pub fn scenario_config(sc: &Scenario) -> WallConfigFile {
    WallConfigFile {
        assembly: AssemblyConfig {
            h_int: sc.assembly.h_int,
            h_ext: sc.assembly.h_ext,
            layers: sc.assembly.layers.iter().map(layer_config).collect(),
        },
        radiative: sc.radiative.map(|r| RadiativeBlock {
            emissivity: r.emissivity,
            t_lin_k: Some(r.linearization_temperature),
            tau_noise: Some(r.tau_noise),
        }),
        sim: SimBlock {
            warmup_s: Some(sc.config.warmup_s),
            detrend: Some(sc.config.detrend),
            solar_absorptivity: Some(sc.config.solar_absorptivity),
            noise_threshold: Some(sc.config.noise_threshold),
            dt_s: Some(sc.weather.dt),
            history_csv: sc.config.history.as_ref().map(|_| "history.csv".into()),
            fdm_nodes_per_layer: None,
        },
    }
}

/// Weather as CSV text with 9-digit floats.
pub fn weather_csv(w: &WeatherSeries) -> String {
    let mut head = vec!["time_s", "T_air_C", "G_solar_Wm2"];
    if w.t_sky.is_some() {
        head.push("T_sky_C");
    }
    if w.t_set.is_some() {
        head.push("T_set_C");
    }
    let mut out = head.join(",");
    out.push('\n');
    for (i, t) in w.times().iter().enumerate() {
        let mut row = vec![fmt9(*t), fmt9(w.t_air[i]), fmt9(w.g_solar[i])];
        if let Some(s) = &w.t_sky {
            row.push(fmt9(s[i]));
        }
        if let Some(s) = &w.t_set {
            row.push(fmt9(s[i]));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Files of one bundle as `(name, contents)`.
pub fn bundle_files(sc: &Scenario) -> Result<Vec<(String, String)>, Failure> {
    let toml = toml::to_string_pretty(&scenario_config(sc))
        .map_err(|e| Failure::invalid(format!("cannot serialize {}: {e}", sc.name)))?;
    let mut files = vec![
        ("wall.toml".to_string(), format!("# Scenario {}\n{toml}", sc.name)),
        ("weather.csv".to_string(), weather_csv(&sc.weather)),
    ];
    if let Some(h) = &sc.config.history {
        files.push(("history.csv".to_string(), weather_csv(h)));
    }
    Ok(files)
}

/// Writes every bundle under `root/<scenario name>/`.
pub fn write_bundles(root: &Path, scenarios: &[Scenario]) -> Result<(), Failure> {
    for sc in scenarios {
        let dir = root.join(sc.name);
        std::fs::create_dir_all(&dir).map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?;
        for (name, text) in bundle_files(sc)? {
            let p = dir.join(name);
            std::fs::write(&p, text).map_err(|e| Failure::invalid(format!("{}: {e}", p.display())))?;
        }
    }
    Ok(())
}
