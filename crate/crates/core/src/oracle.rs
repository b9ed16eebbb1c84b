//! Brute-force reference solvers for small panels.

use std::time::Instant;

use rayon::prelude::*;

use crate::channel::ChannelSet;
use crate::link::{
    effective_channels_of, rates_from_gains, BetaVector, DetectorScheme, LinkParams, RatePair,
};
use crate::{Error, Result};

/// Largest panel [`vertex_enumerate`] accepts.
pub const MAX_ENUMERATION_ELEMENTS: usize = 24;

const CHUNKS: u64 = 64;
/// Incremental sums are rebuilt from scratch this often to bound drift.
const RESYNC: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub best_beta: BetaVector,
    pub best_rates: RatePair,
    pub evaluations: u64,
    pub runtime_seconds: f64,
}

/// Element `i` is bit `n - 1 - i`, so integer order on codes is
/// lexicographic order on coefficient vectors.
fn gains_of(channels: &ChannelSet, code: u64) -> (f64, f64) {
    let n = channels.len();
    let mut h1 = channels.h_los;
    let mut h2 = 0.0;
    for i in 0..n {
        if (code >> (n - 1 - i)) & 1 == 1 {
            h1 += channels.h_reflect[i];
        } else {
            h2 += channels.h_transmit[i];
        }
    }
    (h1, h2)
}

fn better(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
        a
    } else {
        b
    }
}

/// Exhaustive search over all binary coefficient vectors for the best exact
/// sum rate. Ties go to the lexicographically smallest vector.
///
/// Vertices are visited in Gray-code order so each step flips one element
/// and updates the effective channels in constant time.
pub fn vertex_enumerate(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> Result<OracleReport> {
    let n = channels.len();
    if n > MAX_ENUMERATION_ELEMENTS {
        return Err(Error::TooManyElements {
            n,
            cap: MAX_ENUMERATION_ELEMENTS,
        });
    }
    let start = Instant::now();
    let total: u64 = 1 << n;
    let chunk = total.div_ceil(CHUNKS);

    let (_, code) = (0..CHUNKS)
        .into_par_iter()
        .filter_map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(total);
            (lo < hi).then_some((lo, hi))
        })
        .map(|(lo, hi)| {
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            let mut gray = lo ^ (lo >> 1);
            let (mut h1, mut h2) = gains_of(channels, gray);
            for g in lo..hi {
                if g != lo {
                    if (g - lo) % RESYNC == 0 {
                        gray = g ^ (g >> 1);
                        (h1, h2) = gains_of(channels, gray);
                    } else {
                        let bit = g.trailing_zeros() as usize;
                        gray ^= 1 << bit;
                        let i = n - 1 - bit;
                        if (gray >> bit) & 1 == 1 {
                            h1 += channels.h_reflect[i];
                            h2 -= channels.h_transmit[i];
                        } else {
                            h1 -= channels.h_reflect[i];
                            h2 += channels.h_transmit[i];
                        }
                    }
                }
                let sum = rates_from_gains(h1, h2, params, scheme).sum;
                best = better((sum, gray), best);
            }
            best
        })
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), better);

    let best_beta = BetaVector::from_vec_unchecked(
        (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as f64).collect(),
    );
    let (h1, h2) = effective_channels_of(channels, best_beta.reflect());
    Ok(OracleReport {
        best_rates: rates_from_gains(h1, h2, params, scheme),
        best_beta,
        evaluations: total,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Exact sum rate along each coordinate axis through a fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateScan {
    /// Uniform grid over `[0, 1]`, shared by every coordinate.
    pub grid: Vec<f64>,
    /// `values[i][j]`: sum rate with element `i` set to `grid[j]`.
    pub values: Vec<Vec<f64>>,
    /// First grid index attaining the maximum of each row.
    pub argmax: Vec<usize>,
}

impl CoordinateScan {
    /// Whether the best interior grid value of coordinate `i` stays within
    /// `tol` of the better endpoint.
    pub fn endpoint_optimal(&self, i: usize, tol: f64) -> bool {
        let row = &self.values[i];
        let ends = row[0].max(row[row.len() - 1]);
        row[1..row.len() - 1].iter().all(|v| *v <= ends + tol)
    }

    /// Whether coordinate `i` leaves the sum rate unchanged.
    pub fn is_constant(&self, i: usize) -> bool {
        let row = &self.values[i];
        row.iter().all(|v| *v == row[0])
    }
}

pub fn coordinate_scan(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    beta_star: &BetaVector,
    grid_points: usize,
) -> Result<CoordinateScan> {
    if grid_points < 3 {
        return Err(Error::InvalidConfig(format!(
            "coordinate scan needs at least 3 grid points, got {grid_points}"
        )));
    }
    if beta_star.len() != channels.len() {
        return Err(Error::LengthMismatch {
            expected: channels.len(),
            found: beta_star.len(),
        });
    }
    let grid: Vec<f64> = (0..grid_points)
        .map(|j| j as f64 / (grid_points - 1) as f64)
        .collect();
    let (h1, h2) = effective_channels_of(channels, beta_star.reflect());
    let values: Vec<Vec<f64>> = beta_star
        .reflect()
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let (hr, ht) = (channels.h_reflect[i], channels.h_transmit[i]);
            grid.iter()
                .map(|&x| {
                    let d = x - b;
                    rates_from_gains(h1 + d * hr, h2 - d * ht, params, scheme).sum
                })
                .collect()
        })
        .collect();
    let argmax = values
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |(bi, bv), (j, &v)| {
                    if v > bv {
                        (j, v)
                    } else {
                        (bi, bv)
                    }
                })
                .0
        })
        .collect();
    Ok(CoordinateScan {
        grid,
        values,
        argmax,
    })
}
