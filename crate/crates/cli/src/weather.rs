//! Weather CSV: `time_s, T_air_C, G_solar_Wm2[, T_sky_C][, T_set_C]`.

use std::path::Path;

use riccati_wall::spectral::uniform_step;
use riccati_wall::WeatherSeries;

use crate::Failure;

const REQUIRED: [&str; 3] = ["time_s", "T_air_C", "G_solar_Wm2"];
const OPTIONAL: [&str; 2] = ["T_sky_C", "T_set_C"];

pub fn read_weather(path: &Path) -> Result<WeatherSeries, Failure> {
    let file = std::fs::File::open(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_weather(file).map_err(|f| Failure::invalid(format!("{}: {}", path.display(), f.message)))
}

pub fn parse_weather<R: std::io::Read>(input: R) -> Result<WeatherSeries, Failure> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(input);
    let headers = rdr.headers().map_err(|e| Failure::invalid(format!("header: {e}")))?.clone();
    let mut index = Vec::new();
    for name in REQUIRED {
        let i = headers.iter().position(|h| h == name).ok_or_else(|| Failure::invalid(format!("missing column {name}")))?;
        index.push(Some(i));
    }
    for name in OPTIONAL {
        index.push(headers.iter().position(|h| h == name));
    }
    if let Some(extra) = headers.iter().find(|h| !REQUIRED.contains(h) && !OPTIONAL.contains(h)) {
        return Err(Failure::invalid(format!("unknown column {extra}")));
    }
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); index.len()];
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Failure::invalid(format!("row {}: {e}", row + 1)))?;
        for (c, idx) in index.iter().enumerate() {
            let Some(i) = idx else { continue };
            let name = headers.get(*i).unwrap_or("?");
            let field = rec.get(*i).unwrap_or("");
            if field.is_empty() {
                return Err(Failure::invalid(format!("row {}: missing value in {name}", row + 1)));
            }
            let v: f64 = field
                .parse()
                .map_err(|_| Failure::invalid(format!("row {}: cannot parse {name} = {field:?}", row + 1)))?;
            if !v.is_finite() {
                return Err(Failure::invalid(format!("row {}: non-finite {name}", row + 1)));
            }
            cols[c].push(v);
        }
    }
    let dt = uniform_step(&cols[0]).map_err(|e| Failure::invalid(e.to_string()))?;
    let t0 = cols[0][0];
    let t_set = index[4].map(|_| std::mem::take(&mut cols[4]));
    let t_sky = index[3].map(|_| std::mem::take(&mut cols[3]));
    let w = WeatherSeries {
        t0,
        dt,
        t_air: std::mem::take(&mut cols[1]),
        g_solar: std::mem::take(&mut cols[2]),
        t_sky,
        t_set,
    };
    w.validate().map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(w)
}

/// `T_set_C` or a constant 20 °C.
pub fn setpoint(weather: &WeatherSeries) -> Vec<f64> {
    weather.t_set.clone().unwrap_or_else(|| vec![20.0; weather.len()])
}
