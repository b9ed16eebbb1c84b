//! Effective channels, SINRs and achievable rates.

use std::f64::consts::{E, PI};

use crate::channel::ChannelSet;
use crate::{Error, Result};

/// `e / 2π`, the SINR scaling of the intensity-modulated rate bound.
pub const RATE_SCALE: f64 = E / (2.0 * PI);

/// Reflection coefficients `β^r`; transmission is `β^t = 1 - β^r` element-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaVector(Vec<f64>);

impl BetaVector {
    pub fn new(beta_r: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = beta_r
            .iter()
            .enumerate()
            .find(|(_, b)| !(**b >= 0.0 && **b <= 1.0))
        {
            return Err(Error::CoefficientOutOfRange { index, value });
        }
        Ok(BetaVector(beta_r))
    }

    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        BetaVector::new(vec![value; n])
    }

    /// Coefficients from a bitmask: bit `i` set means element `i` reflects.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        BetaVector((0..n).map(|i| ((mask >> i) & 1) as f64).collect())
    }

    pub(crate) fn from_vec_unchecked(beta_r: Vec<f64>) -> Self {
        debug_assert!(beta_r.iter().all(|b| (0.0..=1.0).contains(b)));
        BetaVector(beta_r)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reflect(&self) -> &[f64] {
        &self.0
    }

    pub fn transmit(&self) -> Vec<f64> {
        self.0.iter().map(|b| 1.0 - b).collect()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&b| b == 0.0 || b == 1.0)
    }

    pub fn mean(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for BetaVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// How the access point separates the two uplink streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorScheme {
    /// Single-user detection: each user sees the other as interference.
    Sud,
    /// Successive interference cancellation: user 2 is decoded first and
    /// removed, then user 1 is decoded interference-free.
    Sic,
}

impl DetectorScheme {
    pub fn name(self) -> &'static str {
        match self {
            DetectorScheme::Sud => "sud",
            DetectorScheme::Sic => "sic",
        }
    }
}

impl std::str::FromStr for DetectorScheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sud" => Ok(DetectorScheme::Sud),
            "sic" => Ok(DetectorScheme::Sic),
            other => Err(format!(
                "unknown detector scheme `{other}` (expected sud or sic)"
            )),
        }
    }
}

/// Powers, responsivity and noise: the part of a scenario the rate formulas use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub responsivity: f64,
    pub p1: f64,
    pub p2: f64,
    pub noise_variance: f64,
}

impl LinkParams {
    /// Photocurrent amplitude per unit channel gain, `ρ P_k`, for each user.
    pub fn amplitudes(&self) -> [f64; 2] {
        [self.responsivity * self.p1, self.responsivity * self.p2]
    }

    pub fn total_power(&self) -> f64 {
        self.p1 + self.p2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    /// Sum rate per watt of transmit power; `None` when no power is transmitted.
    pub energy_efficiency: Option<f64>,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64, total_power: f64) -> Self {
        let sum = r1 + r2;
        RatePair {
            r1,
            r2,
            sum,
            energy_efficiency: (total_power > 0.0).then(|| sum / total_power),
        }
    }

    pub fn min(&self) -> f64 {
        self.r1.min(self.r2)
    }
}

/// `(H1, H2)` for coefficient vector `beta`.
pub fn effective_channels(channels: &ChannelSet, beta: &BetaVector) -> Result<(f64, f64)> {
    if beta.len() != channels.len() {
        return Err(Error::LengthMismatch {
            expected: channels.len(),
            found: beta.len(),
        });
    }
    Ok(effective_channels_of(channels, beta.reflect()))
}

pub(crate) fn effective_channels_of(channels: &ChannelSet, beta_r: &[f64]) -> (f64, f64) {
    let mut h1 = channels.h_los;
    let mut h2 = 0.0;
    for ((b, hr), ht) in beta_r
        .iter()
        .zip(&channels.h_reflect)
        .zip(&channels.h_transmit)
    {
        h1 += b * hr;
        h2 += (1.0 - b) * ht;
    }
    (h1, h2)
}

/// SINRs from the two effective channels.
pub fn sinr_from_gains(
    h1: f64,
    h2: f64,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> (f64, f64) {
    let [a1, a2] = params.amplitudes();
    let s1 = (a1 * h1).powi(2);
    let s2 = (a2 * h2).powi(2);
    let n = params.noise_variance;
    let sinr2 = s2 / (n + s1);
    let sinr1 = match scheme {
        DetectorScheme::Sud => s1 / (n + s2),
        DetectorScheme::Sic => s1 / n,
    };
    (sinr1, sinr2)
}

pub fn sinr(
    channels: &ChannelSet,
    beta: &BetaVector,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> Result<(f64, f64)> {
    let (h1, h2) = effective_channels(channels, beta)?;
    Ok(sinr_from_gains(h1, h2, params, scheme))
}

/// Achievable rate `½ log₂(1 + (e/2π)·SINR)` in bits per channel use.
pub fn rate(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::NegativeSinr(sinr));
    }
    Ok(rate_unchecked(sinr))
}

#[inline]
pub(crate) fn rate_unchecked(sinr: f64) -> f64 {
    0.5 * (RATE_SCALE * sinr).ln_1p() / std::f64::consts::LN_2
}

pub(crate) fn rates_from_gains(
    h1: f64,
    h2: f64,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> RatePair {
    let (s1, s2) = sinr_from_gains(h1, h2, params, scheme);
    RatePair::new(rate_unchecked(s1), rate_unchecked(s2), params.total_power())
}

pub fn rate_pair(
    channels: &ChannelSet,
    beta: &BetaVector,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> Result<RatePair> {
    let (h1, h2) = effective_channels(channels, beta)?;
    Ok(rates_from_gains(h1, h2, params, scheme))
}

/// Exact sum rate at an unchecked coefficient slice.
pub(crate) fn sum_rate_of(
    channels: &ChannelSet,
    beta_r: &[f64],
    params: &LinkParams,
    scheme: DetectorScheme,
) -> f64 {
    let (h1, h2) = effective_channels_of(channels, beta_r);
    rates_from_gains(h1, h2, params, scheme).sum
}
