//! Two-user uplink visible-light link assisted by a simultaneously transmitting
//! and reflecting reconfigurable intelligent surface (STAR-RIS).
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: positions, angles, the RIS element grid and the Lambertian order.
//! - [`channel`]: the physical [`Scenario`] and its line-of-sight and RIS-relayed gains.
//! - [`link`]: effective channels, SINRs and achievable rates for a coefficient vector.
//! - [`spca`]: sum-rate maximization by sequential parametric convex approximation,
//!   plus mode switching, time sharing and max-min fairness.
//! - [`oracle`]: brute-force vertex enumeration and per-coordinate scans used as ground truth.
//! - [`config`] and [`sweep`]: scenario files, parameter sweeps, CSV output and run manifests.
//!
//! ```
//! use star_vlc::{channel_set, spca_optimize, DetectorScheme, Scenario, SpcaConfig};
//!
//! let scenario = Scenario::default();
//! let channels = channel_set(&scenario).unwrap();
//! let result = spca_optimize(
//!     &channels,
//!     &scenario.link_params(),
//!     DetectorScheme::Sic,
//!     &SpcaConfig::default(),
//! )
//! .unwrap();
//! assert!(result.converged);
//! assert!(result.rates.sum > 3.0);
//! ```

pub mod channel;
pub mod config;
mod error;
pub mod geometry;
pub mod link;
pub mod oracle;
pub mod spca;
pub mod sweep;

pub use channel::{
    channel_set, h_los, h_reflect, h_transmit, ChannelSet, OpticalFrontEnd, Scenario,
};
pub use error::{Error, Result};
pub use geometry::{
    angle_between, build_ris_grid, lambertian_order, LambertianSource, OrientedPoint, RisPanel,
    Vec3,
};
pub use link::{
    effective_channels, rate, rate_pair, sinr, BetaVector, DetectorScheme, LinkParams, RatePair,
};
pub use oracle::{coordinate_scan, vertex_enumerate, CoordinateScan, OracleReport};
pub use spca::{
    max_min_optimize, mode_switching_optimize, reduced_objective, solve_subproblem, spca_optimize,
    surrogate_terms, time_sharing_optimize, MaxMinResult, Objective, SpcaConfig, SpcaResult,
    SurrogateState, ThetaUpdate, TimeSharingResult,
};
