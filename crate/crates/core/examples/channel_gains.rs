//! Line-of-sight and per-element relayed gains of the reference room.
//!
//! ```sh
//! cargo run --example channel_gains
//! ```

use star_vlc::{build_ris_grid, channel_set, Scenario};

fn main() -> star_vlc::Result<()> {
    let scenario = Scenario::default();
    let channels = channel_set(&scenario)?;
    let grid = build_ris_grid(&scenario.panel);

    println!("Lambertian order m = {:.3}", scenario.source.order());
    println!("H_LOS = {:.6e}", channels.h_los);
    println!(
        "{:>4} {:>6} {:>6} {:>12} {:>12}",
        "i", "y", "z", "H_r", "H_t"
    );
    for (i, p) in grid.iter().enumerate().step_by(9) {
        println!(
            "{i:>4} {:>6.2} {:>6.2} {:>12.4e} {:>12.4e}",
            p.y, p.z, channels.h_reflect[i], channels.h_transmit[i]
        );
    }
    let total_r: f64 = channels.h_reflect.iter().sum();
    let total_t: f64 = channels.h_transmit.iter().sum();
    println!("sum H_r = {total_r:.4e}, sum H_t = {total_t:.4e}");
    Ok(())
}
