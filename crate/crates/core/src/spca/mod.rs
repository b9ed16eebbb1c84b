//! Sum-rate maximization over the reflection coefficients.
//!
//! The outer loop alternates between solving the concave surrogate
//! subproblem (see [`surrogate`]) and re-anchoring the surrogate parameters
//! `θ`. The same loop drives the weighted objectives used for time sharing
//! and the pointwise minimum used for max-min fairness.

pub mod ascent;
pub mod surrogate;

use std::str::FromStr;

use crate::channel::ChannelSet;
use crate::link::{
    effective_channels_of, rates_from_gains, sum_rate_of, BetaVector, DetectorScheme, LinkParams,
    RatePair,
};
use crate::{Error, Result};

pub use ascent::{AscentOutcome, AscentSettings};
use surrogate::Surrogate;
pub use surrogate::{surrogate_bound, SurrogateState, UserTerms};

/// How `θ` is refreshed between outer iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaUpdate {
    /// `θ_k = √u_k / v_k` with `u_k` the SINR actually achieved by the
    /// subproblem solution, so the next surrogate touches the true objective
    /// there.
    Tight,
    /// `θ_k = √u_k / v_k` with `u_k` the surrogate's own bound at the
    /// subproblem solution.
    Surrogate,
}

impl ThetaUpdate {
    pub fn name(self) -> &'static str {
        match self {
            ThetaUpdate::Tight => "tight",
            ThetaUpdate::Surrogate => "surrogate",
        }
    }
}

impl FromStr for ThetaUpdate {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tight" => Ok(ThetaUpdate::Tight),
            "surrogate" => Ok(ThetaUpdate::Surrogate),
            other => Err(format!(
                "unknown theta update `{other}` (expected tight or surrogate)"
            )),
        }
    }
}

/// What the optimizer maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    SumRate,
    /// `α R1 + (1 − α) R2` jointly over `α ∈ [0, 1]` and the coefficients.
    TimeSharing,
    MaxMin,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::SumRate => "sum",
            Objective::TimeSharing => "timeshare",
            Objective::MaxMin => "maxmin",
        }
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sum" => Ok(Objective::SumRate),
            "timeshare" => Ok(Objective::TimeSharing),
            "maxmin" => Ok(Objective::MaxMin),
            other => Err(format!(
                "unknown objective `{other}` (expected sum, timeshare or maxmin)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpcaConfig {
    pub theta_init: f64,
    /// Outer convergence threshold on the largest change of any of `β`, `u`, `v`.
    pub tolerance: f64,
    pub max_outer_iterations: usize,
    /// Uniform starting value of every coefficient.
    pub initial_beta: f64,
    /// Also start from all-transmit and all-reflect and keep the best run.
    pub vertex_starts: bool,
    pub theta_update: ThetaUpdate,
    pub inner: AscentSettings,
    /// Subgradient iterations per max-min subproblem.
    pub subgradient_iterations: usize,
    pub subgradient_step: f64,
}

impl Default for SpcaConfig {
    fn default() -> Self {
        SpcaConfig {
            theta_init: 100.0,
            tolerance: 1e-6,
            max_outer_iterations: 50,
            initial_beta: 0.5,
            vertex_starts: true,
            theta_update: ThetaUpdate::Tight,
            inner: AscentSettings::default(),
            subgradient_iterations: 2000,
            subgradient_step: 0.5,
        }
    }
}

impl SpcaConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("theta_init", self.theta_init)?;
        positive("tolerance", self.tolerance)?;
        positive("inner initial step", self.inner.initial_step)?;
        positive("inner tolerance", self.inner.tolerance)?;
        positive("armijo factor", self.inner.armijo)?;
        positive("subgradient step", self.subgradient_step)?;
        if !(self.inner.shrink > 0.0 && self.inner.shrink < 1.0) {
            return Err(Error::InvalidConfig(
                "shrink factor must lie in (0, 1)".into(),
            ));
        }
        if self.max_outer_iterations == 0
            || self.inner.max_iterations == 0
            || self.subgradient_iterations == 0
        {
            return Err(Error::InvalidConfig(
                "iteration caps must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.initial_beta) {
            return Err(Error::InvalidConfig(format!(
                "initial beta must lie in [0, 1], got {}",
                self.initial_beta
            )));
        }
        Ok(())
    }
}

/// One outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Surrogate objective at the subproblem solution.
    pub objective: f64,
    /// Exact objective (through the true rates) at the subproblem solution.
    pub exact_objective: f64,
    /// `θ` used by this iteration's subproblem, with the `u`, `v` recovered
    /// from its solution.
    pub state: SurrogateState,
    pub inner_iterations: usize,
    pub inner_converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpcaResult {
    pub beta: BetaVector,
    /// Exact rates at `beta`.
    pub rates: RatePair,
    pub trace: Vec<IterationRecord>,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Goal {
    Weighted([f64; 2]),
    MaxMin,
}

impl Goal {
    fn exact(self, rates: &RatePair) -> f64 {
        match self {
            Goal::Weighted([w1, w2]) => w1 * rates.r1 + w2 * rates.r2,
            Goal::MaxMin => rates.min(),
        }
    }
}

/// Value and gradient of the reduced surrogate objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedObjective {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub u: [f64; 2],
    pub v: [f64; 2],
}

fn check_len(channels: &ChannelSet, beta: &BetaVector) -> Result<()> {
    if beta.len() != channels.len() {
        return Err(Error::LengthMismatch {
            expected: channels.len(),
            found: beta.len(),
        });
    }
    Ok(())
}

fn check_theta(theta: &[f64; 2]) -> Result<()> {
    if theta.iter().all(|t| *t > 0.0 && t.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "theta must be positive, got {theta:?}"
        )))
    }
}

/// Surrogate sum rate at `beta` for fixed `θ`, with its exact gradient.
pub fn reduced_objective(
    beta: &BetaVector,
    theta: &[f64; 2],
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> Result<ReducedObjective> {
    check_len(channels, beta)?;
    check_theta(theta)?;
    let terms = Surrogate {
        channels,
        params,
        scheme,
        theta: *theta,
    }
    .terms(beta.reflect());
    let gradient = terms.gradient[0]
        .iter()
        .zip(&terms.gradient[1])
        .map(|(a, b)| a + b)
        .collect();
    Ok(ReducedObjective {
        value: terms.rate[0] + terms.rate[1],
        gradient,
        u: terms.u,
        v: terms.v,
    })
}

/// Per-user surrogate terms; the building block behind [`reduced_objective`].
pub fn surrogate_terms(
    beta: &BetaVector,
    theta: &[f64; 2],
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
) -> Result<UserTerms> {
    check_len(channels, beta)?;
    check_theta(theta)?;
    Ok(Surrogate {
        channels,
        params,
        scheme,
        theta: *theta,
    }
    .terms(beta.reflect()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemSolution {
    pub beta: BetaVector,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximizes the surrogate sum rate for fixed `θ`, starting from the
/// configured uniform coefficient.
pub fn solve_subproblem(
    theta: &[f64; 2],
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
) -> Result<SubproblemSolution> {
    config.validate()?;
    check_theta(theta)?;
    let sur = Surrogate {
        channels,
        params,
        scheme,
        theta: *theta,
    };
    let out = solve_weighted(
        &sur,
        [1.0, 1.0],
        vec![config.initial_beta; channels.len()],
        &config.inner,
    );
    Ok(SubproblemSolution {
        beta: BetaVector::from_vec_unchecked(out.x),
        value: out.value,
        iterations: out.iterations,
        converged: out.converged,
    })
}

fn solve_weighted(
    sur: &Surrogate,
    w: [f64; 2],
    start: Vec<f64>,
    settings: &AscentSettings,
) -> AscentOutcome {
    let n = start.len();
    let mut g1 = vec![0.0; n];
    let mut g2 = vec![0.0; n];
    ascent::maximize_on_unit_box(
        |x, g| {
            let (rate, ..) = sur.eval_into(x, Some([&mut g1, &mut g2]));
            for i in 0..g.len() {
                g[i] = w[0] * g1[i] + w[1] * g2[i];
            }
            w[0] * rate[0] + w[1] * rate[1]
        },
        start,
        settings,
    )
}

fn solve_goal(sur: &Surrogate, goal: Goal, start: Vec<f64>, config: &SpcaConfig) -> AscentOutcome {
    match goal {
        Goal::Weighted(w) => solve_weighted(sur, w, start, &config.inner),
        Goal::MaxMin => ascent::maximize_min_on_unit_box(
            |x, g1, g2| sur.eval_into(x, Some([g1, g2])).0,
            start,
            config.subgradient_iterations,
            config.subgradient_step,
        ),
    }
}

const V_GUARD: f64 = 1e-30;

/// One SPCA run from a fixed starting point.
fn run_from(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
    goal: Goal,
    start: Vec<f64>,
) -> SpcaResult {
    let mut theta = [config.theta_init; 2];
    let mut beta = start;
    let mut trace = Vec::new();
    let mut previous: Option<Vec<f64>> = None;
    let mut converged = false;

    for _ in 0..config.max_outer_iterations {
        let sur = Surrogate {
            channels,
            params,
            scheme,
            theta,
        };
        let out = solve_goal(&sur, goal, beta, config);
        beta = out.x;

        let (_, u_bound, v, signal) = sur.eval_into(&beta, None);
        let (h1, h2) = effective_channels_of(channels, &beta);
        let rates = rates_from_gains(h1, h2, params, scheme);

        let mut u = u_bound;
        let mut next = theta;
        for k in 0..2 {
            if config.theta_update == ThetaUpdate::Tight {
                u[k] = (signal[k] / v[k]).powi(2);
            }
            let candidate = u[k].sqrt() / v[k];
            if v[k] >= V_GUARD && candidate > 0.0 && candidate.is_finite() {
                next[k] = candidate;
            }
        }
        trace.push(IterationRecord {
            objective: out.value,
            exact_objective: goal.exact(&rates),
            state: SurrogateState { theta, u, v },
            inner_iterations: out.iterations,
            inner_converged: out.converged,
        });

        let current: Vec<f64> = beta.iter().chain(&u).chain(&v).copied().collect();
        if let Some(prev) = &previous {
            let change = prev
                .iter()
                .zip(&current)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if change < config.tolerance {
                converged = true;
            }
        }
        previous = Some(current);
        theta = next;
        if converged {
            break;
        }
    }

    let beta = BetaVector::from_vec_unchecked(beta);
    let (h1, h2) = effective_channels_of(channels, beta.reflect());
    SpcaResult {
        rates: rates_from_gains(h1, h2, params, scheme),
        iterations: trace.len(),
        beta,
        trace,
        converged,
    }
}

/// Result when the coefficients cannot influence any rate.
fn inert(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
    goal: Goal,
) -> SpcaResult {
    let beta = vec![config.initial_beta; channels.len()];
    let (h1, h2) = effective_channels_of(channels, &beta);
    let rates = rates_from_gains(h1, h2, params, scheme);
    let value = goal.exact(&rates);
    SpcaResult {
        beta: BetaVector::from_vec_unchecked(beta),
        trace: vec![IterationRecord {
            objective: value,
            exact_objective: value,
            state: SurrogateState {
                theta: [config.theta_init; 2],
                u: [0.0; 2],
                v: [0.0; 2],
            },
            inner_iterations: 0,
            inner_converged: true,
        }],
        rates,
        converged: true,
        iterations: 1,
    }
}

fn optimize(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
    goal: Goal,
) -> Result<SpcaResult> {
    config.validate()?;
    let n = channels.len();
    if !channels.has_ris_gain() {
        return Ok(inert(channels, params, scheme, config, goal));
    }
    let mut starts = vec![config.initial_beta];
    if config.vertex_starts {
        for v in [0.0, 1.0] {
            if v != config.initial_beta {
                starts.push(v);
            }
        }
    }
    let mut best: Option<SpcaResult> = None;
    for s in starts {
        let run = run_from(channels, params, scheme, config, goal, vec![s; n]);
        let better = match &best {
            None => true,
            Some(b) => goal.exact(&run.rates) > goal.exact(&b.rates),
        };
        if better {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one start"))
}

/// Energy-splitting sum-rate maximization.
pub fn spca_optimize(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
) -> Result<SpcaResult> {
    optimize(channels, params, scheme, config, Goal::Weighted([1.0, 1.0]))
}

/// Mode switching: every element either fully reflects or fully transmits.
///
/// Starts from the energy-splitting solution and fixes each coefficient in
/// index order to whichever of 0 or 1 gives the higher exact sum rate with
/// the others held. A coordinate that is already binary only moves on a
/// strict improvement; a fractional one goes to 1 on a tie. Nearest rounding
/// of the energy-splitting solution is kept instead if it happens to be better.
pub fn mode_switching_optimize(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
) -> Result<SpcaResult> {
    let es = spca_optimize(channels, params, scheme, config)?;
    let mut beta = es.beta.reflect().to_vec();
    let mut value = sum_rate_of(channels, &beta, params, scheme);
    for i in 0..beta.len() {
        let original = beta[i];
        beta[i] = 0.0;
        let f0 = sum_rate_of(channels, &beta, params, scheme);
        beta[i] = 1.0;
        let f1 = sum_rate_of(channels, &beta, params, scheme);
        let choice = if original == 0.0 || original == 1.0 {
            let keep = if original == 0.0 { f0 } else { f1 };
            let other = if original == 0.0 { f1 } else { f0 };
            if other > keep {
                1.0 - original
            } else {
                original
            }
        } else if f1 >= f0 {
            1.0
        } else {
            0.0
        };
        beta[i] = choice;
        value = if choice == 1.0 { f1 } else { f0 };
    }
    let nearest: Vec<f64> = es
        .beta
        .reflect()
        .iter()
        .map(|b| if *b >= 0.5 { 1.0 } else { 0.0 })
        .collect();
    if sum_rate_of(channels, &nearest, params, scheme) > value {
        beta = nearest;
    }
    let beta = BetaVector::from_vec_unchecked(beta);
    let (h1, h2) = effective_channels_of(channels, beta.reflect());
    Ok(SpcaResult {
        rates: rates_from_gains(h1, h2, params, scheme),
        beta,
        ..es
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSharingResult {
    /// Fraction of time given to user 1; always 0 or 1.
    pub alpha: f64,
    /// `α R1 + (1 − α) R2` at the optimum.
    pub objective: f64,
    /// Time-averaged rates `(α R1, (1 − α) R2)`.
    pub rates: RatePair,
    /// Coefficients used while the winning user transmits.
    pub beta: BetaVector,
    /// Best single-user run for user 1 and user 2.
    pub user1: SpcaResult,
    pub user2: SpcaResult,
}

impl TimeSharingResult {
    pub fn converged(&self) -> bool {
        self.user1.converged && self.user2.converged
    }

    pub fn iterations(&self) -> usize {
        self.user1.iterations.max(self.user2.iterations)
    }
}

/// Time sharing between the users.
///
/// For fixed coefficients the objective is linear in `α`, so the joint optimum
/// sits at `α ∈ {0, 1}`: it is the larger of the two single-user optima. Ties
/// go to user 1.
pub fn time_sharing_optimize(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
) -> Result<TimeSharingResult> {
    let user1 = optimize(channels, params, scheme, config, Goal::Weighted([1.0, 0.0]))?;
    let user2 = optimize(channels, params, scheme, config, Goal::Weighted([0.0, 1.0]))?;
    let (alpha, beta) = if user1.rates.r1 >= user2.rates.r2 {
        (1.0, user1.beta.clone())
    } else {
        (0.0, user2.beta.clone())
    };
    let r1 = alpha * user1.rates.r1;
    let r2 = (1.0 - alpha) * user2.rates.r2;
    Ok(TimeSharingResult {
        alpha,
        objective: r1 + r2,
        rates: RatePair::new(r1, r2, params.total_power()),
        beta,
        user1,
        user2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxMinResult {
    pub result: SpcaResult,
    pub min_rate: f64,
    /// One user has no usable channel, so the minimum rate is 0 for every
    /// coefficient vector and the returned coefficients are arbitrary.
    pub degenerate: bool,
}

/// Max-min fairness: maximizes `min(R1, R2)`.
pub fn max_min_optimize(
    channels: &ChannelSet,
    params: &LinkParams,
    scheme: DetectorScheme,
    config: &SpcaConfig,
) -> Result<MaxMinResult> {
    config.validate()?;
    let reach1 =
        params.p1 > 0.0 && (channels.h_los > 0.0 || channels.h_reflect.iter().any(|&g| g > 0.0));
    let reach2 = params.p2 > 0.0 && channels.h_transmit.iter().any(|&g| g > 0.0);
    if !(reach1 && reach2) {
        let result = inert(channels, params, scheme, config, Goal::MaxMin);
        return Ok(MaxMinResult {
            min_rate: result.rates.min(),
            result,
            degenerate: true,
        });
    }
    let result = optimize(channels, params, scheme, config, Goal::MaxMin)?;
    Ok(MaxMinResult {
        min_rate: result.rates.min(),
        result,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params() -> LinkParams {
        LinkParams {
            responsivity: 0.7,
            p1: 0.1,
            p2: 0.1,
            noise_variance: 1e-10,
        }
    }

    #[test]
    fn no_ris_is_one_iteration() {
        let ch = ChannelSet::new(7e-5, vec![], vec![]).unwrap();
        let r = spca_optimize(&ch, &params(), DetectorScheme::Sic, &SpcaConfig::default()).unwrap();
        assert_eq!(r.iterations, 1);
        assert!(r.converged);
        let bare = crate::link::rates_from_gains(7e-5, 0.0, &params(), DetectorScheme::Sic);
        assert_eq!(r.rates, bare);

        let ch = ChannelSet::new(7e-5, vec![0.0; 3], vec![0.0; 3]).unwrap();
        let r = spca_optimize(&ch, &params(), DetectorScheme::Sud, &SpcaConfig::default()).unwrap();
        assert_eq!(r.iterations, 1);
        assert_eq!(r.beta.reflect(), &[0.5; 3]);
    }

    #[test]
    fn empty_reduced_objective() {
        let ch = ChannelSet::new(7e-5, vec![], vec![]).unwrap();
        let r = reduced_objective(
            &BetaVector::uniform(0, 0.0).unwrap(),
            &[1e4, 1e4],
            &ch,
            &params(),
            DetectorScheme::Sic,
        )
        .unwrap();
        assert!(r.gradient.is_empty());
        assert!(r.value > 0.0);
        assert_eq!(r.u[1], 0.0);
    }

    #[test]
    fn reduced_objective_rejects_bad_theta() {
        let ch = ChannelSet::new(7e-5, vec![1e-5], vec![1e-5]).unwrap();
        let b = BetaVector::uniform(1, 0.5).unwrap();
        assert!(reduced_objective(&b, &[0.0, 1.0], &ch, &params(), DetectorScheme::Sic).is_err());
        assert!(reduced_objective(
            &BetaVector::uniform(2, 0.5).unwrap(),
            &[1.0, 1.0],
            &ch,
            &params(),
            DetectorScheme::Sic
        )
        .is_err());
    }

    #[test]
    fn null_second_user_reflects_everything() {
        let ch = ChannelSet::new(7e-5, vec![3e-4], vec![0.0]).unwrap();
        let sub = solve_subproblem(
            &[1e4, 1e4],
            &ch,
            &params(),
            DetectorScheme::Sic,
            &SpcaConfig::default(),
        )
        .unwrap();
        assert_eq!(sub.beta.reflect(), &[1.0]);
        let r = spca_optimize(&ch, &params(), DetectorScheme::Sic, &SpcaConfig::default()).unwrap();
        assert_eq!(r.beta.reflect(), &[1.0]);
    }

    #[test]
    fn dark_channels_leave_the_start_alone() {
        let ch = ChannelSet::new(7e-5, vec![0.0; 4], vec![0.0; 4]).unwrap();
        let sub = solve_subproblem(
            &[1e4, 1e4],
            &ch,
            &params(),
            DetectorScheme::Sud,
            &SpcaConfig::default(),
        )
        .unwrap();
        assert_eq!(sub.beta.reflect(), &[0.5; 4]);
        assert_eq!(sub.iterations, 0);
    }

    #[test]
    fn mode_switching_output_is_binary() {
        let ch = ChannelSet::new(
            5e-5,
            vec![1e-5, 2e-5, 0.0, 4e-6],
            vec![3e-5, 1e-5, 0.0, 2e-5],
        )
        .unwrap();
        for scheme in [DetectorScheme::Sud, DetectorScheme::Sic] {
            let ms =
                mode_switching_optimize(&ch, &params(), scheme, &SpcaConfig::default()).unwrap();
            assert!(ms.beta.is_binary());
            let es = spca_optimize(&ch, &params(), scheme, &SpcaConfig::default()).unwrap();
            let nearest: Vec<f64> = es.beta.reflect().iter().map(|b| b.round()).collect();
            assert!(ms.rates.sum >= sum_rate_of(&ch, &nearest, &params(), scheme) - 1e-15);
        }
    }

    #[test]
    fn time_sharing_with_silent_second_path() {
        let ch = ChannelSet::new(5e-5, vec![1e-5, 2e-5], vec![0.0, 0.0]).unwrap();
        let ts = time_sharing_optimize(&ch, &params(), DetectorScheme::Sud, &SpcaConfig::default())
            .unwrap();
        assert_eq!(ts.alpha, 1.0);
        assert_eq!(ts.beta.reflect(), &[1.0, 1.0]);
        let single = crate::link::rates_from_gains(8e-5, 0.0, &params(), DetectorScheme::Sud);
        assert_abs_diff_eq!(ts.objective, single.r1, epsilon = 1e-12);
    }

    #[test]
    fn time_sharing_tie_goes_to_user_one() {
        // No LOS and mirrored gains: both single-user optima coincide.
        let ch = ChannelSet::new(0.0, vec![2e-5, 1e-5], vec![2e-5, 1e-5]).unwrap();
        let ts = time_sharing_optimize(&ch, &params(), DetectorScheme::Sic, &SpcaConfig::default())
            .unwrap();
        assert_eq!(ts.user1.rates.r1, ts.user2.rates.r2);
        assert_eq!(ts.alpha, 1.0);
    }

    #[test]
    fn max_min_degenerate_without_second_path() {
        let ch = ChannelSet::new(5e-5, vec![1e-5], vec![0.0]).unwrap();
        let mm =
            max_min_optimize(&ch, &params(), DetectorScheme::Sic, &SpcaConfig::default()).unwrap();
        assert!(mm.degenerate);
        assert_eq!(mm.min_rate, 0.0);
    }

    #[test]
    fn max_min_balances_symmetric_users() {
        let ch = ChannelSet::new(0.0, vec![2e-5, 1e-5, 3e-5], vec![2e-5, 1e-5, 3e-5]).unwrap();
        let mm =
            max_min_optimize(&ch, &params(), DetectorScheme::Sud, &SpcaConfig::default()).unwrap();
        assert!(!mm.degenerate);
        let r = mm.result.rates;
        assert!((r.r1 - r.r2).abs() < 1e-2 * r.r1.max(r.r2), "{r:?}");
    }

    #[test]
    fn config_validation() {
        let mut c = SpcaConfig::default();
        c.validate().unwrap();
        c.theta_init = 0.0;
        assert!(c.validate().is_err());
        let c = SpcaConfig {
            initial_beta: 1.5,
            ..SpcaConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
