//! Loading, overriding and writing scenario files.
//!
//! ```sh
//! cargo run --example scenario_file
//! ```

use star_vlc::config::{parse_scenario, write_scenario};
use star_vlc::{channel_set, spca_optimize, DetectorScheme, SpcaConfig};

fn main() -> star_vlc::Result<()> {
    let scenario = parse_scenario(
        r#"
        ue1.position = [4.2, 2.0, 0.8]
        led.half_angle_deg = 45
        power.ue2 = 0.05
        ris.rows = 6
        "#,
    )?;
    print!("{}", write_scenario(&scenario));

    let ch = channel_set(&scenario)?;
    let r = spca_optimize(
        &ch,
        &scenario.link_params(),
        DetectorScheme::Sic,
        &SpcaConfig::default(),
    )?;
    println!(
        "# sum rate {:.4} bpcu over {} elements",
        r.rates.sum,
        ch.len()
    );

    match parse_scenario("detector.fov_half_angle_deg = 95") {
        Err(e) => println!("# rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
