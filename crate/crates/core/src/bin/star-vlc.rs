use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use star_vlc::config::{load_scenario, load_sweep_spec, write_scenario};
use star_vlc::sweep::{run_sweep, solve, write_beta_matrix, SolveMode};
use star_vlc::{
    channel_set, coordinate_scan, spca_optimize, vertex_enumerate, DetectorScheme, Error,
    Objective, Scenario, SpcaConfig,
};

#[derive(Parser)]
#[command(
    name = "star-vlc",
    version,
    about = "STAR-RIS assisted uplink VLC: solve, sweep and check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file; the reference scenario when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "sic")]
    scheme: DetectorScheme,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize a single scenario.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "es")]
        mode: SolveMode,
        #[arg(long, default_value = "sum")]
        objective: Objective,
        /// Directory for beta.csv and solution.toml.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a sweep file.
    Sweep {
        spec: PathBuf,
        /// Overrides solve.scheme in the file.
        #[arg(long)]
        scheme: Option<DetectorScheme>,
        /// Overrides solve.mode in the file.
        #[arg(long)]
        mode: Option<SolveMode>,
        /// Overrides solve.objective in the file.
        #[arg(long)]
        objective: Option<Objective>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compare the optimizer with vertex enumeration on a random sub-panel.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Number of panel elements to keep.
        #[arg(long, default_value_t = 12)]
        subset: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum rate along each coefficient through the optimum.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Directory for scan.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Config(Error),
    NotConverged,
}

macro_rules! config_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Config(e.into())
            }
        }
    )*};
}

config_failure!(Error, std::io::Error, csv::Error);

fn scenario(common: &Common) -> Result<Scenario, Error> {
    match &common.config {
        Some(path) => load_scenario(path),
        None => Ok(Scenario::default()),
    }
}

fn report(out: &Option<PathBuf>, name: &str, text: &str) -> Result<(), Error> {
    print!("{text}");
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = SpcaConfig::default();
    match cli.command {
        Command::Solve {
            common,
            mode,
            objective,
            out,
        } => {
            let s = scenario(&common)?;
            let channels = channel_set(&s)?;
            let sol = solve(
                &channels,
                &s.link_params(),
                common.scheme,
                objective,
                mode,
                &config,
            )?;
            let r = sol.rates;
            let mut text = write_scenario(&s);
            text += &format!(
                "result.scheme = \"{}\"\nresult.mode = \"{}\"\nresult.objective = \"{}\"\n",
                common.scheme.name(),
                mode.name(),
                objective.name()
            );
            text += &format!(
                "result.r1 = {:?}\nresult.r2 = {:?}\nresult.sum_rate = {:?}\n",
                r.r1, r.r2, r.sum
            );
            if let Some(ee) = r.energy_efficiency {
                text += &format!("result.ee = {ee:?}\n");
            }
            text += &format!(
                "result.mean_beta = {:?}\nresult.iterations = {}\nresult.converged = {}\n",
                sol.beta.mean(),
                sol.iterations,
                sol.converged
            );
            report(&out, "solution.toml", &text)?;
            if let Some(dir) = &out {
                write_beta_matrix(&s.panel, &sol.beta, fs::File::create(dir.join("beta.csv"))?)?;
            }
            if !sol.converged {
                return Err(Failure::NotConverged);
            }
        }
        Command::Sweep {
            spec,
            scheme,
            mode,
            objective,
            out,
        } => {
            let mut spec = load_sweep_spec(spec)?;
            spec.scheme = scheme.unwrap_or(spec.scheme);
            spec.mode = mode.unwrap_or(spec.mode);
            spec.objective = objective.unwrap_or(spec.objective);
            spec.validate()?;
            let outcome = run_sweep(&spec, &out)?;
            println!("wrote {} points to {}", outcome.rows.len(), out.display());
            for r in outcome.rows.iter().filter(|r| r.error.is_some()) {
                eprintln!(
                    "point {}: {}",
                    r.value,
                    r.error.as_deref().unwrap_or_default()
                );
            }
            if !outcome.all_converged {
                return Err(Failure::NotConverged);
            }
        }
        Command::Oracle {
            common,
            subset,
            seed,
            out,
        } => {
            let s = scenario(&common)?;
            let full = channel_set(&s)?;
            let k = subset.min(full.len());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = sample(&mut rng, full.len(), k).into_vec();
            idx.sort_unstable();
            let channels = full.subset(&idx)?;
            let params = s.link_params();
            let oracle = vertex_enumerate(&channels, &params, common.scheme)?;
            let es = spca_optimize(&channels, &params, common.scheme, &config)?;
            let ms = solve(
                &channels,
                &params,
                common.scheme,
                Objective::SumRate,
                SolveMode::ModeSwitching,
                &config,
            )?;
            let list = |v: &[f64]| {
                v.iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let text = format!(
                "elements = [{}]\noracle.sum_rate = {:?}\noracle.beta = [{}]\noracle.evaluations = {}\noracle.seconds = {:?}\n\
                 es.sum_rate = {:?}\nes.gap = {:?}\nes.iterations = {}\nms.sum_rate = {:?}\nms.gap = {:?}\n",
                idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "),
                oracle.best_rates.sum,
                list(oracle.best_beta.reflect()),
                oracle.evaluations,
                oracle.runtime_seconds,
                es.rates.sum,
                oracle.best_rates.sum - es.rates.sum,
                es.iterations,
                ms.rates.sum,
                oracle.best_rates.sum - ms.rates.sum,
            );
            report(&out, "oracle.toml", &text)?;
            if !es.converged {
                return Err(Failure::NotConverged);
            }
        }
        Command::Scan {
            common,
            points,
            out,
        } => {
            let s = scenario(&common)?;
            let channels = channel_set(&s)?;
            let params = s.link_params();
            let best = spca_optimize(&channels, &params, common.scheme, &config)?;
            let scan = coordinate_scan(&channels, &params, common.scheme, &best.beta, points)?;
            let n = channels.len();
            let endpoint = (0..n).filter(|&i| scan.endpoint_optimal(i, 1e-9)).count();
            let flat = (0..n).filter(|&i| scan.is_constant(i)).count();
            println!("elements = {n}\nendpoint_optimal = {endpoint}\nconstant = {flat}");
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                let mut w = csv::Writer::from_path(dir.join("scan.csv"))?;
                w.write_record(["element", "beta", "sum_rate"])?;
                for (i, row) in scan.values.iter().enumerate() {
                    for (x, v) in scan.grid.iter().zip(row) {
                        w.write_record([i.to_string(), x.to_string(), v.to_string()])?;
                    }
                }
                w.flush()?;
            }
            if !best.converged {
                return Err(Failure::NotConverged);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::NotConverged) => {
            eprintln!("warning: solver did not converge; results were still written");
            ExitCode::from(2)
        }
    }
}
