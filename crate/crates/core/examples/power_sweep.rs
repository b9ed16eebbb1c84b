//! Spectral and energy efficiency against transmit power for SIC, SUD,
//! time sharing and max-min fairness.
//!
//! ```sh
//! cargo run --release --example power_sweep
//! ```

use star_vlc::sweep::{SweepParameter, SweepSpec};
use star_vlc::{
    channel_set, max_min_optimize, spca_optimize, time_sharing_optimize, DetectorScheme, Scenario,
    SpcaConfig,
};

fn main() -> star_vlc::Result<()> {
    let spec = SweepSpec::new(
        Scenario::default(),
        SweepParameter::PowerBoth,
        1.0,
        100.0,
        12,
    )?;
    let config = SpcaConfig::default();
    println!(
        "{:>6} | {:>7} {:>7} | {:>7} {:>7} | {:>7} {:>7}",
        "mW", "SIC", "EE", "SUD", "EE", "TS", "maxmin"
    );
    for mw in spec.values() {
        let s = spec.scenario_at(mw)?;
        let ch = channel_set(&s)?;
        let p = s.link_params();
        let sic = spca_optimize(&ch, &p, DetectorScheme::Sic, &config)?.rates;
        let sud = spca_optimize(&ch, &p, DetectorScheme::Sud, &config)?.rates;
        let ts = time_sharing_optimize(&ch, &p, DetectorScheme::Sud, &config)?;
        let mm = max_min_optimize(&ch, &p, DetectorScheme::Sud, &config)?;
        println!(
            "{mw:>6.1} | {:>7.4} {:>7.2} | {:>7.4} {:>7.2} | {:>7.4} {:>7.4}",
            sic.sum,
            sic.energy_efficiency.unwrap_or(f64::NAN),
            sud.sum,
            sud.energy_efficiency.unwrap_or(f64::NAN),
            ts.objective,
            mm.result.rates.sum
        );
    }
    Ok(())
}
