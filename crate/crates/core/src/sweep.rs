//! Parameter sweeps with CSV output and run manifests.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::channel::{channel_set, ChannelSet, Scenario};
use crate::config::write_sweep_spec;
use crate::geometry::{RisPanel, Vec3};
use crate::link::{rates_from_gains, BetaVector, DetectorScheme, LinkParams, RatePair};
use crate::oracle::{vertex_enumerate, MAX_ENUMERATION_ELEMENTS};
use crate::spca::{
    max_min_optimize, mode_switching_optimize, spca_optimize, time_sharing_optimize, Objective,
    SpcaConfig,
};
use crate::{Error, Result};

/// Header of `sweep.csv`.
pub const SWEEP_HEADER: [&str; 9] = [
    "swept_value",
    "r1",
    "r2",
    "sum_rate",
    "ee",
    "iters",
    "converged",
    "oracle_sum",
    "oracle_gap",
];

/// Header of `baseline.csv`.
pub const BASELINE_HEADER: [&str; 2] = ["swept_value", "r1_without_ris"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// x coordinate of UE 1, metres.
    Ue1X,
    /// x coordinate of UE 2, metres.
    Ue2X,
    /// x coordinate of the access point, metres.
    ApX,
    /// Total element count; the panel keeps its column count and gains or
    /// loses rows, so every value must be a multiple of it.
    ElementCount,
    /// Transmit power of both users, milliwatts.
    PowerBoth,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Ue1X => "ue1_x",
            SweepParameter::Ue2X => "ue2_x",
            SweepParameter::ApX => "ap_x",
            SweepParameter::ElementCount => "element_count",
            SweepParameter::PowerBoth => "power_both",
        }
    }

    pub fn is_position(self) -> bool {
        matches!(
            self,
            SweepParameter::Ue1X | SweepParameter::Ue2X | SweepParameter::ApX
        )
    }
}

impl FromStr for SweepParameter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "ue1_x" => SweepParameter::Ue1X,
            "ue2_x" => SweepParameter::Ue2X,
            "ap_x" => SweepParameter::ApX,
            "element_count" => SweepParameter::ElementCount,
            "power_both" => SweepParameter::PowerBoth,
            other => {
                return Err(format!(
                    "unknown sweep parameter `{other}` (expected ue1_x, ue2_x, ap_x, element_count or power_both)"
                ))
            }
        })
    }
}

/// Continuous coefficients or one-element-one-path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    EnergySplitting,
    ModeSwitching,
}

impl SolveMode {
    pub fn name(self) -> &'static str {
        match self {
            SolveMode::EnergySplitting => "es",
            SolveMode::ModeSwitching => "ms",
        }
    }
}

impl FromStr for SolveMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "es" => Ok(SolveMode::EnergySplitting),
            "ms" => Ok(SolveMode::ModeSwitching),
            other => Err(format!("unknown mode `{other}` (expected es or ms)")),
        }
    }
}

/// Outcome of one solve, whatever the objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub beta: BetaVector,
    /// Achieved rates; time-averaged for time sharing.
    pub rates: RatePair,
    pub iterations: usize,
    pub converged: bool,
}

/// Runs the optimizer selected by `objective` and `mode`.
pub fn solve(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    objective: Objective,
    mode: SolveMode,
    config: &SpcaConfig,
) -> Result<Solution> {
    let from = |r: crate::spca::SpcaResult| Solution {
        beta: r.beta,
        rates: r.rates,
        iterations: r.iterations,
        converged: r.converged,
    };
    match (objective, mode) {
        (Objective::SumRate, SolveMode::EnergySplitting) => {
            spca_optimize(channels, params, scheme, config).map(from)
        }
        (Objective::SumRate, SolveMode::ModeSwitching) => {
            mode_switching_optimize(channels, params, scheme, config).map(from)
        }
        (Objective::TimeSharing, SolveMode::EnergySplitting) => {
            let ts = time_sharing_optimize(channels, params, scheme, config)?;
            Ok(Solution {
                converged: ts.converged(),
                iterations: ts.iterations(),
                rates: ts.rates,
                beta: ts.beta,
            })
        }
        (Objective::MaxMin, SolveMode::EnergySplitting) => {
            max_min_optimize(channels, params, scheme, config).map(|m| from(m.result))
        }
        (_, SolveMode::ModeSwitching) => Err(Error::InvalidConfig(
            "mode switching is only defined for the sum-rate objective".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Base scenario; the swept field is overwritten at every point.
    pub scenario: Scenario,
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub objective: Objective,
    pub scheme: DetectorScheme,
    pub mode: SolveMode,
    /// Also run vertex enumeration where the panel is small enough.
    pub oracle_check: bool,
    pub spca: SpcaConfig,
}

impl SweepSpec {
    pub fn new(
        scenario: Scenario,
        parameter: SweepParameter,
        start: f64,
        stop: f64,
        steps: usize,
    ) -> Result<Self> {
        let spec = SweepSpec {
            scenario,
            parameter,
            start,
            stop,
            steps,
            objective: Objective::SumRate,
            scheme: DetectorScheme::Sic,
            mode: SolveMode::EnergySplitting,
            oracle_check: false,
            spca: SpcaConfig::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the range and solver settings. `start == stop` is accepted and
    /// repeats one point.
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start > self.stop {
            return Err(Error::key(
                "sweep.start",
                format!(
                    "range must satisfy start <= stop, got {} and {}",
                    self.start, self.stop
                ),
            ));
        }
        if self.steps < 2 {
            return Err(Error::key("sweep.steps", "at least 2 steps are required"));
        }
        if self.mode == SolveMode::ModeSwitching && self.objective != Objective::SumRate {
            return Err(Error::key(
                "solve.mode",
                "mode switching is only defined for the sum-rate objective",
            ));
        }
        self.spca.validate()?;
        self.scenario.validate()?;
        match self.parameter {
            SweepParameter::ElementCount => {
                let cols = self.scenario.panel.cols;
                for v in self.values() {
                    let n = v.round();
                    if (v - n).abs() > 1e-9
                        || n < 0.0
                        || cols == 0
                        || !(n as usize).is_multiple_of(cols)
                    {
                        return Err(Error::key(
                            "sweep.parameter",
                            format!(
                                "element count {v} is not a multiple of the panel's {cols} columns"
                            ),
                        ));
                    }
                }
            }
            SweepParameter::PowerBoth if self.start < 0.0 => {
                return Err(Error::key("sweep.start", "powers must be non-negative"));
            }
            _ => {}
        }
        Ok(())
    }

    /// The swept values, evenly spaced and ending exactly at `stop`.
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last as f64
                }
            })
            .collect()
    }

    /// Base scenario with the swept field set to `value`, validated.
    pub fn scenario_at(&self, value: f64) -> Result<Scenario> {
        let mut s = self.scenario;
        let set_x = |p: Vec3| Vec3::new(value, p.y, p.z);
        match self.parameter {
            SweepParameter::Ue1X => s.ue1 = s.ue1.moved_to(set_x(s.ue1.position)),
            SweepParameter::Ue2X => s.ue2 = s.ue2.moved_to(set_x(s.ue2.position)),
            SweepParameter::ApX => s.ap = s.ap.moved_to(set_x(s.ap.position)),
            SweepParameter::ElementCount => {
                let p = s.panel;
                let rows = value.round() as usize / p.cols;
                s.panel = RisPanel::new(p.center, rows, p.cols, p.pitch, p.normal())?;
            }
            SweepParameter::PowerBoth => {
                s.p1 = value * 1e-3;
                s.p2 = value * 1e-3;
            }
        }
        s.validate()?;
        Ok(s)
    }
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub solution: Option<Solution>,
    /// Best binary sum rate, when the oracle ran.
    pub oracle_sum: Option<f64>,
    /// UE 1's rate over the direct path alone (position sweeps only).
    pub baseline_r1: Option<f64>,
    pub error: Option<String>,
    pub seconds: f64,
}

impl SweepRow {
    pub fn converged(&self) -> bool {
        self.solution.as_ref().is_some_and(|s| s.converged)
    }

    pub fn oracle_gap(&self) -> Option<f64> {
        Some(self.oracle_sum? - self.solution.as_ref()?.rates.sum)
    }
}

fn run_point(spec: &SweepSpec, value: f64) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        value,
        solution: None,
        oracle_sum: None,
        baseline_r1: None,
        error: None,
        seconds: 0.0,
    };
    let result = (|| -> Result<()> {
        let scenario = spec.scenario_at(value)?;
        let channels = channel_set(&scenario)?;
        let params = scenario.link_params();
        if spec.parameter.is_position() {
            row.baseline_r1 = Some(rates_from_gains(channels.h_los, 0.0, &params, spec.scheme).r1);
        }
        row.solution = Some(solve(
            &channels,
            &params,
            spec.scheme,
            spec.objective,
            spec.mode,
            &spec.spca,
        )?);
        if spec.oracle_check && channels.len() <= MAX_ENUMERATION_ELEMENTS {
            row.oracle_sum = Some(
                vertex_enumerate(&channels, &params, spec.scheme)?
                    .best_rates
                    .sum,
            );
        }
        Ok(())
    })();
    row.error = result.err().map(|e| e.to_string());
    row.seconds = start.elapsed().as_secs_f64();
    row
}

/// Solves every point of `spec`, in parallel, returning rows in sweep order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .values()
        .into_par_iter()
        .map(|v| run_point(spec, v))
        .collect())
}

fn field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_sweep_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let s = r.solution.as_ref();
        w.write_record([
            r.value.to_string(),
            field(s.map(|s| s.rates.r1)),
            field(s.map(|s| s.rates.r2)),
            field(s.map(|s| s.rates.sum)),
            field(s.and_then(|s| s.rates.energy_efficiency)),
            s.map(|s| s.iterations.to_string()).unwrap_or_default(),
            r.converged().to_string(),
            field(r.oracle_sum),
            field(r.oracle_gap()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_baseline_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BASELINE_HEADER)?;
    for r in rows {
        w.write_record([r.value.to_string(), field(r.baseline_r1)])?;
    }
    w.flush()?;
    Ok(())
}

/// Key-value manifest: the full sweep spec followed by per-point run data.
pub fn manifest(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = write_sweep_spec(spec);
    let list = |f: &dyn Fn(&SweepRow) -> String| rows.iter().map(f).collect::<Vec<_>>().join(", ");
    writeln!(out, "run.version = \"{}\"", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(out, "run.points = {}", rows.len()).unwrap();
    writeln!(
        out,
        "run.point_seconds = [{}]",
        list(&|r| format!("{:?}", r.seconds))
    )
    .unwrap();
    writeln!(
        out,
        "run.point_converged = [{}]",
        list(&|r| r.converged().to_string())
    )
    .unwrap();
    writeln!(
        out,
        "run.point_errors = [{}]",
        list(&|r| toml::Value::String(r.error.clone().unwrap_or_default()).to_string())
    )
    .unwrap();
    if spec.parameter == SweepParameter::PowerBoth {
        writeln!(
            out,
            "run.note = \"zero power is excluded; energy efficiency is undefined there\""
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Every point solved and converged.
    pub all_converged: bool,
}

/// Runs `spec` and writes `sweep.csv`, `manifest.toml` and, for position
/// sweeps, `baseline.csv` into `out_dir`.
pub fn run_sweep(spec: &SweepSpec, out_dir: impl AsRef<Path>) -> Result<SweepOutcome> {
    let dir = out_dir.as_ref();
    let rows = sweep_rows(spec)?;
    fs::create_dir_all(dir)?;
    write_sweep_csv(&rows, fs::File::create(dir.join("sweep.csv"))?)?;
    if spec.parameter.is_position() {
        write_baseline_csv(&rows, fs::File::create(dir.join("baseline.csv"))?)?;
    }
    fs::write(dir.join("manifest.toml"), manifest(spec, &rows))?;
    let all_converged = rows.iter().all(SweepRow::converged);
    Ok(SweepOutcome {
        rows,
        all_converged,
    })
}

/// Writes `beta` as a `rows x cols` CSV matrix in element order.
pub fn write_beta_matrix<W: std::io::Write>(
    panel: &RisPanel,
    beta: &BetaVector,
    out: W,
) -> Result<()> {
    if beta.len() != panel.element_count() {
        return Err(Error::LengthMismatch {
            expected: panel.element_count(),
            found: beta.len(),
        });
    }
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for row in beta.reflect().chunks(panel.cols.max(1)) {
        w.write_record(row.iter().map(|b| b.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Sum-rate optimum of `scenario` with its coefficients written to `out_path`.
pub fn dump_beta(
    scenario: &Scenario,
    scheme: DetectorScheme,
    config: &SpcaConfig,
    out_path: impl AsRef<Path>,
) -> Result<Solution> {
    let channels = channel_set(scenario)?;
    let sol = solve(
        &channels,
        &scenario.link_params(),
        scheme,
        Objective::SumRate,
        SolveMode::EnergySplitting,
        config,
    )?;
    write_beta_matrix(&scenario.panel, &sol.beta, fs::File::create(out_path)?)?;
    Ok(sol)
}
