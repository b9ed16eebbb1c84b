//! Scenario and sweep files.
//!
//! Files are flat TOML with dotted keys; every key is optional and falls back
//! to the reference scenario:
//!
//! ```toml
//! ue1.position = [3.5, 2.5, 1.0]
//! led.half_angle_deg = 60.0
//! detector.fov_half_angle_deg = 85.0
//! ris.rows = 10
//! power.ue1 = 0.1
//! ```
//!
//! Angles are written in degrees and held in radians. Sweep files add
//! `sweep.*`, `solve.*` and `spca.*` keys; run manifests add `run.*` keys,
//! which loaders skip so a manifest can be fed back in unchanged.

use std::collections::BTreeMap;
use std::path::Path;

use toml::Value;

use crate::channel::Scenario;
use crate::geometry::{LambertianSource, OrientedPoint, RisPanel, Vec3};
use crate::link::DetectorScheme;
use crate::spca::{Objective, SpcaConfig, ThetaUpdate};
use crate::sweep::{SolveMode, SweepParameter, SweepSpec};
use crate::{Error, Result};

const SCENARIO_SECTIONS: [&str; 8] = [
    "ap", "ue1", "ue2", "led", "detector", "ris", "power", "noise",
];

type Flat = BTreeMap<String, Value>;

fn flatten(prefix: &str, table: toml::Table, out: &mut Flat) {
    for (k, v) in table {
        let key = if prefix.is_empty() {
            k
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Table(t) => flatten(&key, t, out),
            other => {
                out.insert(key, other);
            }
        }
    }
}

fn parse_flat(text: &str) -> Result<Flat> {
    let table: toml::Table = text.parse()?;
    let mut flat = Flat::new();
    flatten("", table, &mut flat);
    Ok(flat)
}

fn section(key: &str) -> &str {
    key.split('.').next().unwrap_or(key)
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(Error::key(key, "expected a number")),
    }
}

fn as_usize(key: &str, v: &Value) -> Result<usize> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(Error::key(key, "expected a non-negative integer")),
    }
}

fn as_bool(key: &str, v: &Value) -> Result<bool> {
    v.as_bool()
        .ok_or_else(|| Error::key(key, "expected true or false"))
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::key(key, "expected a string"))
}

fn as_vec3(key: &str, v: &Value) -> Result<Vec3> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::key(key, "expected an array of three numbers"))?;
    Ok(Vec3::new(
        as_f64(key, &arr[0])?,
        as_f64(key, &arr[1])?,
        as_f64(key, &arr[2])?,
    ))
}

fn parsed<T: std::str::FromStr<Err = String>>(key: &str, v: &Value) -> Result<T> {
    as_str(key, v)?
        .parse()
        .map_err(|e: String| Error::key(key, e))
}

fn scenario_from(flat: &Flat) -> Result<Scenario> {
    let mut s = Scenario::default();
    let mut ap = (s.ap.position, s.ap.normal());
    let mut ue1 = (s.ue1.position, s.ue1.normal());
    let mut ue2 = (s.ue2.position, s.ue2.normal());
    let p = s.panel;
    let (mut center, mut rows, mut cols, mut pitch, mut normal) =
        (p.center, p.rows, p.cols, p.pitch, p.normal());
    let mut half_angle = s.source.half_intensity_angle();

    for (key, v) in flat {
        if !SCENARIO_SECTIONS.contains(&section(key)) {
            continue;
        }
        match key.as_str() {
            "ap.position" => ap.0 = as_vec3(key, v)?,
            "ap.normal" => ap.1 = as_vec3(key, v)?,
            "ue1.position" => ue1.0 = as_vec3(key, v)?,
            "ue1.normal" => ue1.1 = as_vec3(key, v)?,
            "ue2.position" => ue2.0 = as_vec3(key, v)?,
            "ue2.normal" => ue2.1 = as_vec3(key, v)?,
            "led.half_angle_deg" => half_angle = as_f64(key, v)?.to_radians(),
            "detector.area" => s.front_end.detector_area = as_f64(key, v)?,
            "detector.fov_half_angle_deg" => {
                s.front_end.fov_half_angle = as_f64(key, v)?.to_radians()
            }
            "detector.gain" => s.front_end.concentrator_gain = as_f64(key, v)?,
            "detector.responsivity" => s.front_end.responsivity = as_f64(key, v)?,
            "ris.center" => center = as_vec3(key, v)?,
            "ris.rows" => rows = as_usize(key, v)?,
            "ris.cols" => cols = as_usize(key, v)?,
            "ris.pitch" => pitch = as_f64(key, v)?,
            "ris.normal" => normal = as_vec3(key, v)?,
            "power.ue1" => s.p1 = as_f64(key, v)?,
            "power.ue2" => s.p2 = as_f64(key, v)?,
            "noise.variance" => s.noise_variance = as_f64(key, v)?,
            _ => return Err(Error::key(key, "unknown scenario key")),
        }
    }
    let point = |name: &str, (pos, n): (Vec3, Vec3)| {
        OrientedPoint::new(pos, n).map_err(|e| Error::key(format!("{name}.normal"), e.to_string()))
    };
    s.ap = point("ap", ap)?;
    s.ue1 = point("ue1", ue1)?;
    s.ue2 = point("ue2", ue2)?;
    s.source = LambertianSource::new(half_angle)
        .map_err(|e| Error::key("led.half_angle_deg", e.to_string()))?;
    s.panel = RisPanel::new(center, rows, cols, pitch, normal)
        .map_err(|e| Error::key("ris", e.to_string()))?;
    s.validate()?;
    Ok(s)
}

/// Reference scenario with the overrides in `text`, validated.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    scenario_from(&parse_flat(text)?)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

/// Shortest round-tripping form; always a valid TOML float for finite input.
fn float(x: f64) -> String {
    format!("{x:?}")
}

// Radians to degrees, with the last-ulp noise of the conversion rounded away.
fn degrees(rad: f64) -> String {
    float((rad.to_degrees() * 1e9).round() / 1e9)
}

fn vec3(v: Vec3) -> String {
    let [x, y, z] = v.to_array();
    format!("[{}, {}, {}]", float(x), float(y), float(z))
}

/// Every scenario field as `key = value` lines that [`parse_scenario`] reads back.
pub fn write_scenario(s: &Scenario) -> String {
    let lines = [
        ("ap.position", vec3(s.ap.position)),
        ("ap.normal", vec3(s.ap.normal())),
        ("ue1.position", vec3(s.ue1.position)),
        ("ue1.normal", vec3(s.ue1.normal())),
        ("ue2.position", vec3(s.ue2.position)),
        ("ue2.normal", vec3(s.ue2.normal())),
        (
            "led.half_angle_deg",
            degrees(s.source.half_intensity_angle()),
        ),
        ("detector.area", float(s.front_end.detector_area)),
        (
            "detector.fov_half_angle_deg",
            degrees(s.front_end.fov_half_angle),
        ),
        ("detector.gain", float(s.front_end.concentrator_gain)),
        ("detector.responsivity", float(s.front_end.responsivity)),
        ("ris.center", vec3(s.panel.center)),
        ("ris.rows", s.panel.rows.to_string()),
        ("ris.cols", s.panel.cols.to_string()),
        ("ris.pitch", float(s.panel.pitch)),
        ("ris.normal", vec3(s.panel.normal())),
        ("power.ue1", float(s.p1)),
        ("power.ue2", float(s.p2)),
        ("noise.variance", float(s.noise_variance)),
    ];
    lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

fn spca_from(flat: &Flat) -> Result<SpcaConfig> {
    let mut c = SpcaConfig::default();
    for (key, v) in flat.iter().filter(|(k, _)| section(k) == "spca") {
        match key.as_str() {
            "spca.theta_init" => c.theta_init = as_f64(key, v)?,
            "spca.tolerance" => c.tolerance = as_f64(key, v)?,
            "spca.max_outer_iterations" => c.max_outer_iterations = as_usize(key, v)?,
            "spca.initial_beta" => c.initial_beta = as_f64(key, v)?,
            "spca.vertex_starts" => c.vertex_starts = as_bool(key, v)?,
            "spca.theta_update" => c.theta_update = parsed::<ThetaUpdate>(key, v)?,
            "spca.inner_initial_step" => c.inner.initial_step = as_f64(key, v)?,
            "spca.inner_shrink" => c.inner.shrink = as_f64(key, v)?,
            "spca.inner_armijo" => c.inner.armijo = as_f64(key, v)?,
            "spca.inner_tolerance" => c.inner.tolerance = as_f64(key, v)?,
            "spca.inner_max_iterations" => c.inner.max_iterations = as_usize(key, v)?,
            "spca.subgradient_iterations" => c.subgradient_iterations = as_usize(key, v)?,
            "spca.subgradient_step" => c.subgradient_step = as_f64(key, v)?,
            _ => return Err(Error::key(key, "unknown solver key")),
        }
    }
    c.validate()?;
    Ok(c)
}

/// Solver settings from the `spca.*` keys of `text`.
pub fn parse_spca_config(text: &str) -> Result<SpcaConfig> {
    spca_from(&parse_flat(text)?)
}

pub fn write_spca_config(c: &SpcaConfig) -> String {
    let lines = [
        ("spca.theta_init", float(c.theta_init)),
        ("spca.tolerance", float(c.tolerance)),
        (
            "spca.max_outer_iterations",
            c.max_outer_iterations.to_string(),
        ),
        ("spca.initial_beta", float(c.initial_beta)),
        ("spca.vertex_starts", c.vertex_starts.to_string()),
        (
            "spca.theta_update",
            format!("\"{}\"", c.theta_update.name()),
        ),
        ("spca.inner_initial_step", float(c.inner.initial_step)),
        ("spca.inner_shrink", float(c.inner.shrink)),
        ("spca.inner_armijo", float(c.inner.armijo)),
        ("spca.inner_tolerance", float(c.inner.tolerance)),
        (
            "spca.inner_max_iterations",
            c.inner.max_iterations.to_string(),
        ),
        (
            "spca.subgradient_iterations",
            c.subgradient_iterations.to_string(),
        ),
        ("spca.subgradient_step", float(c.subgradient_step)),
    ];
    lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

/// Sweep file: scenario overrides plus `sweep.*`, `solve.*` and `spca.*` keys.
///
/// ```toml
/// sweep.parameter = "ue1_x"
/// sweep.start = 3.0
/// sweep.stop = 4.5
/// sweep.steps = 16
/// solve.scheme = "sic"
/// solve.mode = "es"
/// solve.objective = "sum"
/// solve.oracle_check = false
/// ```
pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec> {
    let flat = parse_flat(text)?;
    for key in flat.keys() {
        let sec = section(key);
        if !(SCENARIO_SECTIONS.contains(&sec) || ["sweep", "solve", "spca", "run"].contains(&sec)) {
            return Err(Error::key(key, "unknown section"));
        }
    }
    let scenario = scenario_from(&flat)?;
    let spca = spca_from(&flat)?;
    let get = |k: &str| {
        flat.get(k)
            .ok_or_else(|| Error::key(k, "required key is missing"))
    };

    let mut spec = SweepSpec {
        scenario,
        parameter: parsed::<SweepParameter>("sweep.parameter", get("sweep.parameter")?)?,
        start: as_f64("sweep.start", get("sweep.start")?)?,
        stop: as_f64("sweep.stop", get("sweep.stop")?)?,
        steps: as_usize("sweep.steps", get("sweep.steps")?)?,
        objective: Objective::SumRate,
        scheme: DetectorScheme::Sic,
        mode: SolveMode::EnergySplitting,
        oracle_check: false,
        spca,
    };
    for (key, v) in flat
        .iter()
        .filter(|(k, _)| ["sweep", "solve"].contains(&section(k)))
    {
        match key.as_str() {
            "sweep.parameter" | "sweep.start" | "sweep.stop" | "sweep.steps" => {}
            "solve.objective" => spec.objective = parsed(key, v)?,
            "solve.scheme" => spec.scheme = parsed(key, v)?,
            "solve.mode" => spec.mode = parsed(key, v)?,
            "solve.oracle_check" => spec.oracle_check = as_bool(key, v)?,
            _ => return Err(Error::key(key, "unknown sweep key")),
        }
    }
    spec.validate()?;
    Ok(spec)
}

pub fn load_sweep_spec(path: impl AsRef<Path>) -> Result<SweepSpec> {
    parse_sweep_spec(&std::fs::read_to_string(path)?)
}

/// The sweep as a file [`parse_sweep_spec`] reads back.
pub fn write_sweep_spec(spec: &SweepSpec) -> String {
    let mut out = write_scenario(&spec.scenario);
    out += &format!("sweep.parameter = \"{}\"\n", spec.parameter.name());
    out += &format!("sweep.start = {}\n", float(spec.start));
    out += &format!("sweep.stop = {}\n", float(spec.stop));
    out += &format!("sweep.steps = {}\n", spec.steps);
    out += &format!("solve.objective = \"{}\"\n", spec.objective.name());
    out += &format!("solve.scheme = \"{}\"\n", spec.scheme.name());
    out += &format!("solve.mode = \"{}\"\n", spec.mode.name());
    out += &format!("solve.oracle_check = {}\n", spec.oracle_check);
    out += &write_spca_config(&spec.spca);
    out
}
