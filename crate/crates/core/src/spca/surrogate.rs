//! The per-iteration convex surrogate with the auxiliary variables eliminated.
//!
//! For user `k` with interference amplitude `I_k(β)` (the other user under
//! SUD and for user 2 under SIC, nothing for user 1 under SIC) the auxiliary
//! bounds are
//!
//! ```text
//! v_k(β) = ‖[I_k(β), σ]‖
//! u_k(β) = max(0, 2 θ_k ρ P_k H_k(β) − θ_k² v_k(β)²)
//! ```
//!
//! and the surrogate rate of user `k` is `½ log₂(1 + (e/2π) u_k(β))`. Each
//! `u_k` is concave in `β` (affine minus convex quadratic), so the weighted
//! surrogate is concave wherever no user is clamped.
//!
//! User 1's constraint under SIC is kept in the same unnormalized units as the
//! SUD constraints (its `v` is simply `σ`), so a single `θ` initialization has
//! the same meaning for both schemes.

use crate::channel::ChannelSet;
use crate::link::{effective_channels_of, DetectorScheme, LinkParams, RATE_SCALE};

/// Auxiliary variables of one SPCA iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurrogateState {
    /// Surrogate parameters `θ_k`.
    pub theta: [f64; 2],
    /// SINR lower bounds `u_k`.
    pub u: [f64; 2],
    /// Interference-plus-noise norm bounds used in user `k`'s constraint.
    pub v: [f64; 2],
}

/// Convex upper bound `u/(2θ) + v²θ/2` of `√u · v`, tight at `θ = √u / v`.
pub fn surrogate_bound(u: f64, v: f64, theta: f64) -> f64 {
    u / (2.0 * theta) + v * v * theta / 2.0
}

/// Per-user surrogate values, gradients and auxiliary variables at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct UserTerms {
    pub rate: [f64; 2],
    pub gradient: [Vec<f64>; 2],
    pub u: [f64; 2],
    pub v: [f64; 2],
    /// Signal amplitudes `ρ P_k H_k`.
    pub signal: [f64; 2],
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Surrogate<'a> {
    pub channels: &'a ChannelSet,
    pub params: &'a LinkParams,
    pub scheme: DetectorScheme,
    pub theta: [f64; 2],
}

impl<'a> Surrogate<'a> {
    /// Evaluates both users; gradients are written only when `grads` is given.
    pub fn eval_into(
        &self,
        beta_r: &[f64],
        grads: Option<[&mut [f64]; 2]>,
    ) -> ([f64; 2], [f64; 2], [f64; 2], [f64; 2]) {
        let ch = self.channels;
        let [a1, a2] = self.params.amplitudes();
        let sigma2 = self.params.noise_variance;
        let (h1, h2) = effective_channels_of(ch, beta_r);
        let signal = [a1 * h1, a2 * h2];
        let interference = match self.scheme {
            DetectorScheme::Sud => [a2 * h2, a1 * h1],
            DetectorScheme::Sic => [0.0, a1 * h1],
        };
        let [t1, t2] = self.theta;
        let v2 = [
            interference[0].powi(2) + sigma2,
            interference[1].powi(2) + sigma2,
        ];
        let q = [
            2.0 * t1 * signal[0] - t1 * t1 * v2[0],
            2.0 * t2 * signal[1] - t2 * t2 * v2[1],
        ];
        let u = [q[0].max(0.0), q[1].max(0.0)];
        let rate = [surrogate_rate(u[0]), surrogate_rate(u[1])];
        let v = [v2[0].sqrt(), v2[1].sqrt()];

        if let Some([g1, g2]) = grads {
            // d rate / d u
            let k = RATE_SCALE / (2.0 * std::f64::consts::LN_2);
            let d1 = if q[0] > 0.0 {
                k / (1.0 + RATE_SCALE * u[0])
            } else {
                0.0
            };
            let d2 = if q[1] > 0.0 {
                k / (1.0 + RATE_SCALE * u[1])
            } else {
                0.0
            };
            // User 1: dH1/dβ = h_r; its interferer (SUD) has dH2/dβ = -h_t.
            let c1_r = d1 * 2.0 * t1 * a1;
            let c1_t = match self.scheme {
                DetectorScheme::Sud => d1 * 2.0 * t1 * t1 * a2 * a2 * h2,
                DetectorScheme::Sic => 0.0,
            };
            // User 2: dH2/dβ = -h_t; its interferer is user 1 under both schemes.
            let c2_t = -d2 * 2.0 * t2 * a2;
            let c2_r = -d2 * 2.0 * t2 * t2 * a1 * a1 * h1;
            for (i, (hr, ht)) in ch.h_reflect.iter().zip(&ch.h_transmit).enumerate() {
                g1[i] = c1_r * hr + c1_t * ht;
                g2[i] = c2_t * ht + c2_r * hr;
            }
        }
        (rate, u, v, signal)
    }

    pub fn terms(&self, beta_r: &[f64]) -> UserTerms {
        let n = beta_r.len();
        let mut g1 = vec![0.0; n];
        let mut g2 = vec![0.0; n];
        let (rate, u, v, signal) = self.eval_into(beta_r, Some([&mut g1, &mut g2]));
        UserTerms {
            rate,
            gradient: [g1, g2],
            u,
            v,
            signal,
        }
    }
}

#[inline]
fn surrogate_rate(u: f64) -> f64 {
    0.5 * (RATE_SCALE * u).ln_1p() / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bound_is_tight_at_the_anchor() {
        let (u, v): (f64, f64) = (2.5, 0.3);
        let theta = u.sqrt() / v;
        assert_relative_eq!(
            surrogate_bound(u, v, theta),
            u.sqrt() * v,
            max_relative = 1e-14
        );
        assert!(surrogate_bound(u, v, theta * 1.3) > u.sqrt() * v);
        assert!(surrogate_bound(u, v, theta * 0.7) > u.sqrt() * v);
    }
}
