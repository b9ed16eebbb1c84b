//! Writes the optimized reflection coefficients as a rows x cols CSV matrix
//! and prints it as a character map (`#` reflect, `.` transmit).
//!
//! ```sh
//! cargo run --example beta_heatmap -- 4.2 beta.csv
//! ```

use star_vlc::sweep::dump_beta;
use star_vlc::{DetectorScheme, Scenario, SpcaConfig, Vec3};

fn main() -> star_vlc::Result<()> {
    let mut args = std::env::args().skip(1);
    let x: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3.5);
    let out = args.next().unwrap_or_else(|| "beta.csv".into());

    let mut scenario = Scenario::default();
    scenario.ue1 = scenario.ue1.moved_to(Vec3::new(x, 2.5, 1.0));
    let sol = dump_beta(&scenario, DetectorScheme::Sic, &SpcaConfig::default(), &out)?;

    let cols = scenario.panel.cols;
    // Top row first, as seen when facing the wall.
    for row in sol.beta.reflect().chunks(cols).rev() {
        let line: String = row
            .iter()
            .map(|b| if *b >= 0.5 { '#' } else { '.' })
            .collect();
        println!("{line}");
    }
    println!(
        "UE1 x = {x}: sum rate {:.4}, written to {out}",
        sol.rates.sum
    );
    Ok(())
}
