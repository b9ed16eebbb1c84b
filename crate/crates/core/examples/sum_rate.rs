//! Energy-splitting sum-rate optimization with the per-iteration trace.
//!
//! ```sh
//! cargo run --example sum_rate
//! ```

use star_vlc::{channel_set, spca_optimize, DetectorScheme, Scenario, SpcaConfig, ThetaUpdate};

fn main() -> star_vlc::Result<()> {
    let scenario = Scenario::default();
    let channels = channel_set(&scenario)?;
    let params = scenario.link_params();

    for update in [ThetaUpdate::Tight, ThetaUpdate::Surrogate] {
        let config = SpcaConfig {
            theta_update: update,
            ..SpcaConfig::default()
        };
        for scheme in [DetectorScheme::Sic, DetectorScheme::Sud] {
            let result = spca_optimize(&channels, &params, scheme, &config)?;
            println!(
                "{} / {} theta update:",
                scheme.name().to_uppercase(),
                update.name()
            );
            for (m, it) in result.trace.iter().enumerate() {
                println!(
                    "  iter {m}: surrogate {:.6}  exact {:.6}  theta [{:.3e}, {:.3e}]  inner {}",
                    it.objective,
                    it.exact_objective,
                    it.state.theta[0],
                    it.state.theta[1],
                    it.inner_iterations
                );
            }
            let r = result.rates;
            println!(
                "  R1 {:.4}  R2 {:.4}  sum {:.4}  mean beta_r {:.3}  converged {}",
                r.r1,
                r.r2,
                r.sum,
                result.beta.mean(),
                result.converged
            );
        }
    }
    Ok(())
}
