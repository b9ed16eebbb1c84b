//! Exhaustive binary search on random sub-panels, checked against the optimizer.
//!
//! ```sh
//! cargo run --release --example vertex_oracle
//! ```

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use star_vlc::{
    channel_set, spca_optimize, vertex_enumerate, DetectorScheme, Scenario, SpcaConfig,
};

fn main() -> star_vlc::Result<()> {
    let scenario = Scenario::default();
    let full = channel_set(&scenario)?;
    let params = scenario.link_params();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    for n in [4, 8, 12, 16, 20] {
        let mut idx = sample(&mut rng, full.len(), n).into_vec();
        idx.sort_unstable();
        let ch = full.subset(&idx)?;
        for scheme in [DetectorScheme::Sud, DetectorScheme::Sic] {
            let oracle = vertex_enumerate(&ch, &params, scheme)?;
            let es = spca_optimize(&ch, &params, scheme, &SpcaConfig::default())?;
            println!(
                "N={n:>2} {}: oracle {:.6} ({} vertices, {:.3} s)  SPCA {:.6}  gap {:+.1e}",
                scheme.name(),
                oracle.best_rates.sum,
                oracle.evaluations,
                oracle.runtime_seconds,
                es.rates.sum,
                oracle.best_rates.sum - es.rates.sum
            );
        }
    }
    Ok(())
}
