//! Sum rate along single coefficients through the optimum: each curve peaks
//! at 0 or 1, and elements outside both paths leave the rate flat.
//!
//! ```sh
//! cargo run --example coordinate_scan
//! ```

use star_vlc::{
    channel_set, coordinate_scan, spca_optimize, DetectorScheme, RisPanel, Scenario, SpcaConfig,
    Vec3,
};

fn main() -> star_vlc::Result<()> {
    // Taller panel: the bottom rows sit below desk height and see neither user.
    let scenario = Scenario {
        panel: RisPanel::new(Vec3::new(5.0, 2.5, 1.0), 20, 8, 0.1, Vec3::X)?,
        ..Scenario::default()
    };
    let ch = channel_set(&scenario)?;
    let p = scenario.link_params();
    let best = spca_optimize(&ch, &p, DetectorScheme::Sic, &SpcaConfig::default())?;
    let scan = coordinate_scan(&ch, &p, DetectorScheme::Sic, &best.beta, 11)?;

    for i in [4, 60, 100, 159] {
        let row: Vec<String> = scan.values[i].iter().map(|v| format!("{v:.5}")).collect();
        println!("element {i:>3}: {}", row.join(" "));
    }
    let endpoint = (0..ch.len())
        .filter(|&i| scan.endpoint_optimal(i, 1e-9))
        .count();
    let flat = (0..ch.len()).filter(|&i| scan.is_constant(i)).count();
    println!("{endpoint}/{} peak at an endpoint, {flat} flat", ch.len());
    Ok(())
}
