//! Sum rate, time sharing and max-min fairness on the reference scenario.
//!
//! ```sh
//! cargo run --example fairness
//! ```

use star_vlc::{
    channel_set, max_min_optimize, spca_optimize, time_sharing_optimize, DetectorScheme, Scenario,
    SpcaConfig,
};

fn main() -> star_vlc::Result<()> {
    let scenario = Scenario::default();
    let ch = channel_set(&scenario)?;
    let p = scenario.link_params();
    let config = SpcaConfig::default();

    for scheme in [DetectorScheme::Sud, DetectorScheme::Sic] {
        let sum = spca_optimize(&ch, &p, scheme, &config)?;
        let ts = time_sharing_optimize(&ch, &p, scheme, &config)?;
        let mm = max_min_optimize(&ch, &p, scheme, &config)?;
        println!("{}:", scheme.name().to_uppercase());
        println!(
            "  sum rate      R1 {:.4}  R2 {:.4}  sum {:.4}",
            sum.rates.r1, sum.rates.r2, sum.rates.sum
        );
        println!(
            "  time sharing  alpha {}  R1 {:.4}  R2 {:.4}  sum {:.4}",
            ts.alpha, ts.rates.r1, ts.rates.r2, ts.objective
        );
        println!(
            "  max-min       R1 {:.4}  R2 {:.4}  min {:.4}",
            mm.result.rates.r1, mm.result.rates.r2, mm.min_rate
        );
    }
    Ok(())
}
