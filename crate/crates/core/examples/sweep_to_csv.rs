//! Runs a sweep file and writes sweep.csv, baseline.csv and manifest.toml.
//!
//! ```sh
//! cargo run --release --example sweep_to_csv -- out/
//! ```

use star_vlc::config::parse_sweep_spec;
use star_vlc::sweep::run_sweep;

const SPEC: &str = r#"
ue2.position = [6.5, 2.5, 1.0]
sweep.parameter = "ue1_x"
sweep.start = 3.0
sweep.stop = 4.5
sweep.steps = 16
solve.scheme = "sud"
solve.mode = "ms"
"#;

fn main() -> star_vlc::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sweep-out".into());
    let spec = parse_sweep_spec(SPEC)?;
    let outcome = run_sweep(&spec, &out)?;
    println!(
        "{} points written to {out}, all converged: {}",
        outcome.rows.len(),
        outcome.all_converged
    );
    print!(
        "{}",
        std::fs::read_to_string(std::path::Path::new(&out).join("sweep.csv"))?
    );
    Ok(())
}
