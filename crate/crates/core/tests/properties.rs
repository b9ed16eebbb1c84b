mod common;

use proptest::prelude::*;
use proptest::test_runner::Config;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use star_vlc::config::{parse_scenario, write_scenario};
use star_vlc::spca::{surrogate_bound, surrogate_terms};
use star_vlc::{
    build_ris_grid, channel_set, coordinate_scan, effective_channels, lambertian_order,
    mode_switching_optimize, rate, reduced_objective, sinr, spca_optimize, BetaVector, ChannelSet,
    DetectorScheme, LinkParams, SpcaConfig,
};

use common::{random_instance, random_scenario, reference_params};

fn scheme() -> impl Strategy<Value = DetectorScheme> {
    prop_oneof![Just(DetectorScheme::Sud), Just(DetectorScheme::Sic)]
}

fn channels(n: usize) -> impl Strategy<Value = ChannelSet> {
    (
        0.0..8e-5f64,
        prop::collection::vec(0.0..3e-5f64, n),
        prop::collection::vec(0.0..3e-5f64, n),
    )
        .prop_map(|(l, r, t)| ChannelSet::new(l, r, t).unwrap())
}

fn beta(n: usize) -> impl Strategy<Value = BetaVector> {
    prop::collection::vec(0.0..=1.0f64, n).prop_map(|b| BetaVector::new(b).unwrap())
}

fn interior(n: usize) -> impl Strategy<Value = BetaVector> {
    prop::collection::vec(0.05..0.95f64, n).prop_map(|b| BetaVector::new(b).unwrap())
}

fn tight_theta(ch: &ChannelSet, at: &BetaVector, p: &LinkParams, s: DetectorScheme) -> [f64; 2] {
    let t = surrogate_terms(at, &[1.0, 1.0], ch, p, s).unwrap();
    [t.signal[0] / t.v[0].powi(2), t.signal[1] / t.v[1].powi(2)]
}

proptest! {
    #![proptest_config(Config::with_cases(10_000))]

    #[test]
    fn surrogate_bounds_the_product(u in 1e-6..1e6f64, v in 1e-6..1e3f64, theta in 1e-6..1e6f64) {
        let bound = surrogate_bound(u, v, theta);
        let product = u.sqrt() * v;
        prop_assert!(product <= bound * (1.0 + 1e-14));
        let tight = surrogate_bound(u, v, u.sqrt() / v);
        prop_assert!((tight - product).abs() <= 1e-10 * product.max(1.0));
    }

    #[test]
    fn surrogate_is_concave_where_smooth(
        ch in channels(6),
        anchor in interior(6),
        da in prop::collection::vec(-0.3..0.3f64, 6),
        db in prop::collection::vec(-0.3..0.3f64, 6),
        s in scheme(),
    ) {
        let p = reference_params();
        let theta = tight_theta(&ch, &anchor, &p, s);
        // Segments near the anchor, where both users' bounds stay positive.
        let near = |d: &[f64]| BetaVector::new(anchor.reflect().iter().zip(d).map(|(x, e)| (x + e).clamp(0.0, 1.0)).collect()).unwrap();
        let (a, b) = (near(&da), near(&db));
        let mix = |t: f64| BetaVector::new(a.reflect().iter().zip(b.reflect()).map(|(x, y)| (1.0 - t) * x + t * y).collect()).unwrap();
        let along: Vec<_> = (0..=10).map(|k| reduced_objective(&mix(k as f64 / 10.0), &theta, &ch, &p, s).unwrap()).collect();
        prop_assume!(along.iter().all(|r| r.u[0] > 0.0 && r.u[1] > 0.0));
        let fa = along[0].value;
        let fb = along[10].value;
        let mid = along[5].value;
        prop_assert!(mid >= 0.5 * (fa + fb) - 1e-12 * fa.abs().max(fb.abs()).max(1.0), "{mid} < avg of {fa}, {fb}");
    }
}

proptest! {
    #![proptest_config(Config::with_cases(100))]

    #[test]
    fn gradient_matches_finite_differences(
        ch in channels(8),
        x in interior(8),
        anchor in interior(8),
        s in scheme(),
    ) {
        let p = reference_params();
        let theta = tight_theta(&ch, &anchor, &p, s);
        let at = reduced_objective(&x, &theta, &ch, &p, s).unwrap();
        prop_assume!(at.u[0] > 0.0 && at.u[1] > 0.0);
        let h = 1e-6;
        let mut err2 = 0.0;
        let mut norm2 = 0.0;
        for i in 0..8 {
            let shifted = |d: f64| {
                let mut b = x.reflect().to_vec();
                b[i] += d;
                reduced_objective(&BetaVector::new(b).unwrap(), &theta, &ch, &p, s).unwrap()
            };
            let (plus, minus) = (shifted(h), shifted(-h));
            prop_assume!(plus.u.iter().chain(&minus.u).all(|u| *u > 0.0));
            let fd = (plus.value - minus.value) / (2.0 * h);
            err2 += (fd - at.gradient[i]).powi(2);
            norm2 += at.gradient[i].powi(2);
        }
        prop_assume!(norm2 > 0.0);
        prop_assert!(err2.sqrt() < 1e-5 * norm2.sqrt(), "relative error {}", (err2 / norm2).sqrt());
    }

    #[test]
    fn sic_never_hurts_user_one(ch in channels(10), b in beta(10)) {
        let p = reference_params();
        let sud = sinr(&ch, &b, &p, DetectorScheme::Sud).unwrap();
        let sic = sinr(&ch, &b, &p, DetectorScheme::Sic).unwrap();
        prop_assert!(sic.0 >= sud.0);
        prop_assert_eq!(sic.1, sud.1);
    }

    #[test]
    fn effective_channels_are_affine(ch in channels(10), a in beta(10), b in beta(10), t in 0.0..=1.0f64) {
        let m = BetaVector::new(a.reflect().iter().zip(b.reflect()).map(|(x, y)| (1.0 - t) * x + t * y).collect()).unwrap();
        let ha = effective_channels(&ch, &a).unwrap();
        let hb = effective_channels(&ch, &b).unwrap();
        let hm = effective_channels(&ch, &m).unwrap();
        prop_assert!((hm.0 - ((1.0 - t) * ha.0 + t * hb.0)).abs() <= 1e-12 * ha.0.max(hb.0).max(1e-12));
        prop_assert!((hm.1 - ((1.0 - t) * ha.1 + t * hb.1)).abs() <= 1e-12 * ha.1.max(hb.1).max(1e-12));
    }

    #[test]
    fn rate_is_increasing_and_concave(a in 0.0..1e4f64, b in 0.0..1e4f64) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(rate(lo).unwrap() <= rate(hi).unwrap());
        let mid = rate(0.5 * (lo + hi)).unwrap();
        prop_assert!(mid >= 0.5 * (rate(lo).unwrap() + rate(hi).unwrap()) - 1e-15);
    }

    #[test]
    fn lambertian_order_falls_as_the_beam_widens(a in 0.01..1.5f64, b in 0.01..1.5f64) {
        prop_assume!(a < b);
        prop_assert!(lambertian_order(a).unwrap() > lambertian_order(b).unwrap());
    }

    #[test]
    fn scenario_gains_are_finite_and_non_negative(seed in any::<u64>()) {
        let s = random_scenario(&mut ChaCha8Rng::seed_from_u64(seed));
        let ch = channel_set(&s).unwrap();
        prop_assert!(ch.h_los >= 0.0 && ch.h_los.is_finite());
        prop_assert!(ch.h_reflect.iter().chain(&ch.h_transmit).all(|g| *g >= 0.0 && g.is_finite()));
        let grid = build_ris_grid(&s.panel);
        prop_assert!(grid.iter().all(|e| s.panel.signed_distance(*e).abs() < 1e-12));
    }

    #[test]
    fn scenario_file_round_trip(seed in any::<u64>()) {
        let s = random_scenario(&mut ChaCha8Rng::seed_from_u64(seed));
        let back = parse_scenario(&write_scenario(&s)).unwrap();
        prop_assert_eq!(back.ue1, s.ue1);
        prop_assert_eq!(back.ue2, s.ue2);
        prop_assert_eq!(back.ap, s.ap);
        prop_assert_eq!(back.panel, s.panel);
        prop_assert_eq!((back.p1, back.p2), (s.p1, s.p2));
        prop_assert!((back.source.order() - s.source.order()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(Config::with_cases(64))]

    #[test]
    fn spca_trace_never_decreases(seed in any::<u64>(), n in 1usize..16, s in scheme()) {
        let (ch, p) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let r = spca_optimize(&ch, &p, s, &SpcaConfig::default()).unwrap();
        for w in r.trace.windows(2) {
            prop_assert!(w[1].objective >= w[0].objective - 1e-9, "{:?}", r.trace);
        }
        prop_assert!(r.converged);
    }

    #[test]
    fn mode_switching_is_binary_and_beats_rounding(seed in any::<u64>(), n in 1usize..16, s in scheme()) {
        let (ch, p) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let cfg = SpcaConfig::default();
        let es = spca_optimize(&ch, &p, s, &cfg).unwrap();
        let ms = mode_switching_optimize(&ch, &p, s, &cfg).unwrap();
        prop_assert!(ms.beta.is_binary());
        let rounded = BetaVector::new(es.beta.reflect().iter().map(|b| if *b >= 0.5 { 1.0 } else { 0.0 }).collect()).unwrap();
        let nearest = star_vlc::rate_pair(&ch, &rounded, &p, s).unwrap().sum;
        prop_assert!(ms.rates.sum >= nearest);
        // A binary coefficient only moves when the flip strictly helps.
        if es.beta.is_binary() && ms.beta != es.beta {
            prop_assert!(ms.rates.sum > es.rates.sum);
        }
        prop_assert!(ms.rates.sum >= es.rates.sum - 1e-3);
    }

    #[test]
    fn coordinate_scans_peak_at_an_endpoint(seed in any::<u64>(), n in 1usize..12, s in scheme()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ch, p) = random_instance(&mut rng, n);
        let r = spca_optimize(&ch, &p, s, &SpcaConfig::default()).unwrap();
        let scan = coordinate_scan(&ch, &p, s, &r.beta, 101).unwrap();
        for i in 0..n {
            prop_assert!(scan.endpoint_optimal(i, 1e-9), "element {}: {:?}", i, scan.values[i]);
        }
    }
}
