//! Sum rate against panel size for SIC and SUD.
//!
//! ```sh
//! cargo run --release --example element_sweep
//! ```

use star_vlc::sweep::{sweep_rows, SweepParameter, SweepSpec};
use star_vlc::{DetectorScheme, Scenario};

fn main() -> star_vlc::Result<()> {
    let mut rows = Vec::new();
    for scheme in [DetectorScheme::Sic, DetectorScheme::Sud] {
        let mut spec = SweepSpec::new(
            Scenario::default(),
            SweepParameter::ElementCount,
            8.0,
            80.0,
            10,
        )?;
        spec.scheme = scheme;
        rows.push(sweep_rows(&spec)?);
    }
    println!("{:>4} {:>8} {:>8}", "N", "SIC", "SUD");
    for (a, b) in rows[0].iter().zip(&rows[1]) {
        let sum =
            |r: &star_vlc::sweep::SweepRow| r.solution.as_ref().map_or(f64::NAN, |s| s.rates.sum);
        println!("{:>4} {:>8.4} {:>8.4}", a.value, sum(a), sum(b));
    }
    Ok(())
}
