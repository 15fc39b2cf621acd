use std::path::PathBuf;
use std::time::Instant;

use riccati_wall::perturbation::perturbed_chain;
use riccati_wall::reference::{fourier_number, overflow_boundary, sliced_oracle_admittance};
use riccati_wall::spectral::{bin_omega, dominant_time_constant};
use riccati_wall::{
    exact_stationary_resistance, forward_transform, simulate, simulate_perturbed, simulate_radiative, simulate_radiative_perturbed, Recombination,
    SimulationResult,
};

use crate::config::load_config;
use crate::output::{Cell, Format, Table};
use crate::weather::{read_weather, setpoint};
use crate::Failure;

const DAY: f64 = 86400.0;

pub struct SimulateArgs {
    pub config: PathBuf,
    pub weather: PathBuf,
    pub perturbed: bool,
    pub radiative: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn simulate_cmd(a: &SimulateArgs) -> Result<(), Failure> {
    let cfg = load_config(&a.config)?;
    let wall = cfg.assembly()?;
    let sim = cfg.sim_config()?;
    let weather = read_weather(&a.weather)?;
    cfg.check_dt(&weather)?;
    let sp = setpoint(&weather);
    let (base, corrected): (SimulationResult, Option<SimulationResult>) = if a.radiative {
        let rad = cfg
            .radiative(&weather)?
            .ok_or_else(|| Failure::invalid("--radiative needs a [radiative] block in the config"))?;
        if weather.t_sky.is_none() {
            return Err(Failure::invalid("--radiative needs a T_sky_C column in the weather file"));
        }
        let run = if a.perturbed {
            simulate_radiative_perturbed(&wall, &weather, &sp, &sim, &rad)?
        } else {
            simulate_radiative(&wall, &weather, &sp, &sim, &rad)?
        };
        (run.baseline, Some(run.corrected))
    } else if a.perturbed {
        (simulate(&wall, &weather, &sp, &sim)?, Some(simulate_perturbed(&wall, &weather, &sp, &sim)?))
    } else {
        (simulate(&wall, &weather, &sp, &sim)?, None)
    };
    let table = match &corrected {
        None => Table::from_columns(
            &["time_s", "T_sa_C", "T_si_C", "phi_in_Wm2"],
            &[&base.time_s, &base.t_sa, &base.t_si, &base.phi_in],
        ),
        Some(c) => Table::from_columns(
            &["time_s", "T_sa_C", "T_si_C", "phi_in_Wm2", "T_si_corrected_C", "phi_in_corrected_Wm2"],
            &[&base.time_s, &base.t_sa, &base.t_si, &base.phi_in, &c.t_si, &c.phi_in],
        ),
    };
    table.emit(a.out.as_deref(), a.format)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Frequency {
    /// 2π / 1 day.
    Diurnal,
    /// Strongest non-constant bin of the sol-air series.
    Dominant,
}

pub struct BenchmarkArgs {
    pub config: PathBuf,
    pub weather: Option<PathBuf>,
    pub ms_list: Vec<usize>,
    pub reference_ms: usize,
    pub frequency: Frequency,
    pub no_timing: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn ms_per_eval<T>(mut f: impl FnMut() -> T) -> f64 {
    let mut reps = 1u32;
    loop {
        let t = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(f());
        }
        let s = t.elapsed().as_secs_f64();
        if s >= 0.02 || reps >= 1 << 20 {
            return s * 1e3 / reps as f64;
        }
        reps *= 4;
    }
}

pub fn benchmark_cmd(a: &BenchmarkArgs) -> Result<(), Failure> {
    let cfg = load_config(&a.config)?;
    let wall = cfg.assembly()?;
    let omega = match a.frequency {
        Frequency::Diurnal => 2.0 * std::f64::consts::PI / DAY,
        Frequency::Dominant => {
            let path = a.weather.as_ref().ok_or_else(|| Failure::invalid("--frequency dominant needs --weather"))?;
            let weather = read_weather(path)?;
            let sim = cfg.sim_config()?;
            let t_sa = weather.sol_air(wall.h_ext, sim.solar_absorptivity);
            let spec = forward_transform(&t_sa)?;
            let k = (1..spec.len())
                .max_by(|&i, &j| spec[i].norm().total_cmp(&spec[j].norm()))
                .ok_or_else(|| Failure::invalid("weather too short for a dominant bin"))?;
            bin_omega(k, t_sa.len(), weather.dt)
        }
    };
    if a.reference_ms == 0 || a.ms_list.contains(&0) {
        return Err(Failure::invalid("slice counts must be >= 1"));
    }
    let truth = sliced_oracle_admittance(&wall, omega, a.reference_ms)?.exterior_admittance();
    let rel = |y: riccati_wall::Complex| (y - truth).norm() / truth.norm();
    let mut cols = vec!["method", "M_s", "relative_error"];
    if !a.no_timing {
        cols.push("wall_time_ms");
    }
    let mut table = Table::new(&cols);
    let tau = cfg.sim_config()?.noise_threshold;
    let riccati = || perturbed_chain(&wall, omega, Recombination::ExteriorOnly, tau);
    let err = rel(riccati()?.corrected_exterior());
    let mut row = vec![Cell::Text("riccati".into()), Cell::Int(1), Cell::Num(err)];
    if !a.no_timing {
        row.push(Cell::Num(ms_per_eval(riccati)));
    }
    table.push(row);
    for &m in &a.ms_list {
        let eval = || sliced_oracle_admittance(&wall, omega, m);
        let err = rel(eval()?.exterior_admittance());
        let mut row = vec![Cell::Text("sliced".into()), Cell::Int(m as u64), Cell::Num(err)];
        if !a.no_timing {
            row.push(Cell::Num(ms_per_eval(eval)));
        }
        table.push(row);
    }
    table.emit(a.out.as_deref(), a.format)
}

pub struct PhaseSpaceArgs {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub periods: Vec<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn phase_space_cmd(a: &PhaseSpaceArgs) -> Result<(), Failure> {
    if !(a.alpha_min > 0.0 && a.alpha_max >= a.alpha_min) {
        return Err(Failure::invalid("need 0 < alpha-min <= alpha-max"));
    }
    if a.alpha_steps == 0 {
        return Err(Failure::invalid("alpha-steps must be >= 1"));
    }
    let alphas: Vec<f64> = if a.alpha_steps == 1 {
        vec![a.alpha_min]
    } else {
        let (lo, hi) = (a.alpha_min.ln(), a.alpha_max.ln());
        (0..a.alpha_steps)
            .map(|i| {
                if i + 1 == a.alpha_steps {
                    a.alpha_max
                } else {
                    (lo + (hi - lo) * i as f64 / (a.alpha_steps - 1) as f64).exp()
                }
            })
            .collect()
    };
    let mut table = Table::new(&["alpha_m2s", "period_s", "critical_thickness_m"]);
    for &p in &a.periods {
        for &alpha in &alphas {
            table.push(vec![Cell::Num(alpha), Cell::Num(p), Cell::Num(overflow_boundary(alpha, p)?)]);
        }
    }
    table.emit(a.out.as_deref(), a.format)
}

pub struct AliasingArgs {
    pub config: PathBuf,
    pub weather: PathBuf,
    pub padding_days: Vec<f64>,
    pub reference_days: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn aliasing_cmd(a: &AliasingArgs) -> Result<(), Failure> {
    let cfg = load_config(&a.config)?;
    let wall = cfg.assembly()?;
    let mut sim = cfg.sim_config()?;
    let weather = read_weather(&a.weather)?;
    cfg.check_dt(&weather)?;
    let sp = setpoint(&weather);
    if a.padding_days.iter().any(|d| !(*d >= 0.0)) {
        return Err(Failure::invalid("padding days must be >= 0"));
    }
    sim.warmup_s = a.reference_days * DAY;
    let reference = simulate(&wall, &weather, &sp, &sim)?;
    let first_day = ((DAY / weather.dt).round() as usize).clamp(1, weather.len());
    let mut table = Table::new(&["padding_days", "first_day_max_error_C"]);
    for &d in &a.padding_days {
        sim.warmup_s = d * DAY;
        let r = simulate(&wall, &weather, &sp, &sim)?;
        let err = r.t_si[..first_day]
            .iter()
            .zip(&reference.t_si)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        table.push(vec![Cell::Num(d), Cell::Num(err)]);
    }
    table.emit(a.out.as_deref(), a.format)
}

pub fn validate_cmd(config: &PathBuf) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    let wall = cfg.assembly()?;
    let sim = cfg.sim_config()?;
    println!("config ok: {} layer(s), U = {} W/(m2K)", wall.layers.len(), crate::output::fmt9(wall.u_value()));
    if wall.has_gradients() {
        let r: f64 = wall.layers.iter().map(exact_stationary_resistance).sum();
        let u = 1.0 / (1.0 / wall.h_int + r + 1.0 / wall.h_ext);
        println!("graded layers: U with exact stationary resistances = {} W/(m2K)", crate::output::fmt9(u));
    }
    let nodes = cfg.file.sim.fdm_nodes_per_layer.unwrap_or(10);
    for (i, l) in wall.layers.iter().enumerate() {
        let alpha = l.diffusivity();
        match cfg.file.sim.dt_s {
            Some(dt) => {
                let dx = l.thickness_m / nodes as f64;
                let fo = fourier_number(alpha, dt, dx);
                println!(
                    "layer {i}: alpha = {} m2/s, Fo = {} at dt = {dt} s, dx = {} m ({})",
                    crate::output::fmt9(alpha),
                    crate::output::fmt9(fo.fourier_number),
                    crate::output::fmt9(dx),
                    if fo.stable { "explicit scheme stable" } else { "explicit scheme unstable, Fo > 0.5" }
                );
            }
            None => println!("layer {i}: alpha = {} m2/s (no sim.dt_s, Fo not evaluated)", crate::output::fmt9(alpha)),
        }
    }
    let tau = dominant_time_constant(&wall);
    let suggested = 5.0 * tau;
    println!(
        "tau_dom = {} h; suggested warm-up 5 tau_dom = {} s ({} days)",
        crate::output::fmt9(tau / 3600.0),
        crate::output::fmt9(suggested),
        crate::output::fmt9(suggested / DAY)
    );
    if sim.warmup_s < suggested {
        println!("advisory: sim.warmup_s = {} s is shorter than the suggested warm-up", sim.warmup_s);
    }
    Ok(())
}
