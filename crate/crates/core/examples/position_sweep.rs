//! User rates as UE 1 approaches the wall, with the no-RIS baseline and the
//! share of elements devoted to reflection.
//!
//! ```sh
//! cargo run --release --example position_sweep
//! ```

use star_vlc::sweep::{sweep_rows, SweepParameter, SweepSpec};
use star_vlc::{DetectorScheme, Scenario};

fn main() -> star_vlc::Result<()> {
    let mut spec = SweepSpec::new(Scenario::default(), SweepParameter::Ue1X, 3.0, 4.5, 16)?;
    spec.scheme = DetectorScheme::Sic;
    println!(
        "{:>5} {:>8} {:>8} {:>10} {:>8}",
        "x", "R1", "R2", "R1 no RIS", "beta_r"
    );
    for row in sweep_rows(&spec)? {
        let sol = row.solution.expect("every point is inside room 1");
        println!(
            "{:>5.2} {:>8.4} {:>8.4} {:>10.4} {:>8.3}",
            row.value,
            sol.rates.r1,
            sol.rates.r2,
            row.baseline_r1.unwrap_or(f64::NAN),
            sol.beta.mean()
        );
    }
    Ok(())
}
