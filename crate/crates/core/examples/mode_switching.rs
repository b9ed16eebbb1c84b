//! Energy splitting against mode switching as UE 1 walks toward the wall.
//!
//! ```sh
//! cargo run --example mode_switching
//! ```

use star_vlc::sweep::{SweepParameter, SweepSpec};
use star_vlc::{
    channel_set, mode_switching_optimize, spca_optimize, DetectorScheme, Scenario, SpcaConfig,
};

fn main() -> star_vlc::Result<()> {
    let spec = SweepSpec::new(Scenario::default(), SweepParameter::Ue1X, 3.0, 4.5, 16)?;
    let config = SpcaConfig::default();
    println!(
        "{:>5} {:>9} {:>9} {:>8}",
        "x", "ES sum", "MS sum", "MS refl"
    );
    for x in spec.values() {
        let s = spec.scenario_at(x)?;
        let ch = channel_set(&s)?;
        let p = s.link_params();
        let es = spca_optimize(&ch, &p, DetectorScheme::Sic, &config)?;
        let ms = mode_switching_optimize(&ch, &p, DetectorScheme::Sic, &config)?;
        let reflecting = ms.beta.reflect().iter().filter(|b| **b == 1.0).count();
        println!(
            "{x:>5.2} {:>9.5} {:>9.5} {reflecting:>8}",
            es.rates.sum, ms.rates.sum
        );
    }
    Ok(())
}
