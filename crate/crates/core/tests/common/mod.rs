#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use star_vlc::{channel_set, ChannelSet, LinkParams, Scenario, Vec3};

/// Reference room with randomized users, access point and powers.
pub fn random_scenario<R: Rng>(rng: &mut R) -> Scenario {
    let mut s = Scenario::default();
    s.ue1 = s.ue1.moved_to(Vec3::new(
        rng.gen_range(0.5..4.7),
        rng.gen_range(0.5..4.5),
        rng.gen_range(0.7..1.3),
    ));
    s.ue2 = s.ue2.moved_to(Vec3::new(
        rng.gen_range(5.3..9.5),
        rng.gen_range(0.5..4.5),
        rng.gen_range(0.7..1.3),
    ));
    s.ap = s.ap.moved_to(Vec3::new(
        rng.gen_range(1.0..4.8),
        rng.gen_range(1.0..4.0),
        3.0,
    ));
    s.p1 = rng.gen_range(0.01..0.1);
    s.p2 = rng.gen_range(0.01..0.1);
    s
}

/// A random scenario restricted to `n` randomly chosen panel elements.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize) -> (ChannelSet, LinkParams) {
    loop {
        let s = random_scenario(rng);
        let full = channel_set(&s).unwrap();
        let mut idx = sample(rng, full.len(), n).into_vec();
        idx.sort_unstable();
        let ch = full.subset(&idx).unwrap();
        if ch.has_ris_gain() {
            return (ch, s.link_params());
        }
    }
}

/// Synthetic gains of the reference magnitude.
pub fn random_channels<R: Rng>(rng: &mut R, n: usize) -> ChannelSet {
    ChannelSet::new(
        rng.gen_range(0.0..8e-5),
        (0..n).map(|_| rng.gen_range(0.0..3e-5)).collect(),
        (0..n).map(|_| rng.gen_range(0.0..3e-5)).collect(),
    )
    .unwrap()
}

pub fn reference_params() -> LinkParams {
    Scenario::default().link_params()
}
