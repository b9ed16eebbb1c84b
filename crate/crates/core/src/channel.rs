//! Lambertian line-of-sight and RIS-relayed channel gains.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::geometry::{
    angle_between, build_ris_grid, LambertianSource, OrientedPoint, RisPanel, Vec3,
};
use crate::link::LinkParams;
use crate::{Error, Result};

/// Photodetector front end of the access point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalFrontEnd {
    /// Detector area in m².
    pub detector_area: f64,
    /// Field-of-view half angle in radians.
    pub fov_half_angle: f64,
    /// Combined optical concentrator and filter gain, constant inside the FOV.
    pub concentrator_gain: f64,
    /// Responsivity in A/W.
    pub responsivity: f64,
}

impl OpticalFrontEnd {
    pub fn new(
        detector_area: f64,
        fov_half_angle: f64,
        concentrator_gain: f64,
        responsivity: f64,
    ) -> Result<Self> {
        let fe = OpticalFrontEnd {
            detector_area,
            fov_half_angle,
            concentrator_gain,
            responsivity,
        };
        fe.validate()?;
        Ok(fe)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidScenario(what.to_string()));
        if !(self.detector_area > 0.0 && self.detector_area.is_finite()) {
            return bad("detector area must be positive");
        }
        if !(self.fov_half_angle > 0.0 && self.fov_half_angle <= FRAC_PI_2) {
            return bad("field-of-view half angle must lie in (0, 90] degrees");
        }
        if !(self.concentrator_gain > 0.0 && self.concentrator_gain.is_finite()) {
            return bad("concentrator gain must be positive");
        }
        if !(self.responsivity > 0.0 && self.responsivity.is_finite()) {
            return bad("responsivity must be positive");
        }
        Ok(())
    }
}

/// Complete physical setup of the two-room uplink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub ap: OrientedPoint,
    pub ue1: OrientedPoint,
    pub ue2: OrientedPoint,
    pub source: LambertianSource,
    pub panel: RisPanel,
    pub front_end: OpticalFrontEnd,
    /// Optical transmit power of UE 1, watts.
    pub p1: f64,
    /// Optical transmit power of UE 2, watts.
    pub p2: f64,
    /// Post-detection noise variance at unit bandwidth.
    pub noise_variance: f64,
}

impl Default for Scenario {
    /// The reference two-room setup: 5 x 5 x 3 m rooms, ceiling AP, users at
    /// desk height and a 10 x 8 panel on the shared wall.
    fn default() -> Self {
        let down = Vec3::new(0.0, 0.0, -1.0);
        Scenario {
            ap: OrientedPoint::new(Vec3::new(4.5, 2.5, 3.0), down).unwrap(),
            ue1: OrientedPoint::new(Vec3::new(3.5, 2.5, 1.0), Vec3::Z).unwrap(),
            ue2: OrientedPoint::new(Vec3::new(6.0, 2.5, 1.0), Vec3::Z).unwrap(),
            source: LambertianSource::new(60f64.to_radians()).unwrap(),
            panel: RisPanel::new(Vec3::new(5.0, 2.5, 1.5), 10, 8, 0.1, Vec3::X).unwrap(),
            front_end: OpticalFrontEnd {
                detector_area: 1.5e-4,
                fov_half_angle: 85f64.to_radians(),
                concentrator_gain: 10.0,
                responsivity: 0.7,
            },
            p1: 0.1,
            p2: 0.1,
            noise_variance: 1e-10,
        }
    }
}

impl Scenario {
    /// Checks every scenario invariant, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        self.front_end.validate()?;
        let bad = |what: String| Err(Error::InvalidScenario(what));
        if !(self.p1 >= 0.0 && self.p1.is_finite()) || !(self.p2 >= 0.0 && self.p2.is_finite()) {
            return bad(format!(
                "transmit powers must be non-negative, got {} and {}",
                self.p1, self.p2
            ));
        }
        if !(self.noise_variance > 0.0 && self.noise_variance.is_finite()) {
            return bad(format!(
                "noise variance must be positive, got {}",
                self.noise_variance
            ));
        }
        let side = |p: Vec3| self.panel.signed_distance(p);
        let (s_ap, s1, s2) = (
            side(self.ap.position),
            side(self.ue1.position),
            side(self.ue2.position),
        );
        if s1 * s2 >= 0.0 {
            return bad("UE 1 and UE 2 must lie on opposite sides of the RIS plane".into());
        }
        if s_ap * s1 <= 0.0 {
            return bad("the access point must lie on UE 1's side of the RIS plane".into());
        }
        if self.ue1.position == self.ap.position {
            return bad("UE 1 and the access point coincide".into());
        }
        Ok(())
    }

    pub fn link_params(&self) -> LinkParams {
        LinkParams {
            responsivity: self.front_end.responsivity,
            p1: self.p1,
            p2: self.p2,
            noise_variance: self.noise_variance,
        }
    }

    pub fn element_count(&self) -> usize {
        self.panel.element_count()
    }

    /// Gain of a path that leaves `emitter`, first heads toward `first_hop`,
    /// reaches the access point from `last_hop`, and has total length `length`.
    fn path_gain(
        &self,
        emitter: &OrientedPoint,
        first_hop: Vec3,
        last_hop: Vec3,
        length: f64,
    ) -> Result<f64> {
        let degenerate = |what: &str| Error::DegenerateGeometry(what.to_string());
        let phi = angle_between(emitter.normal(), first_hop - emitter.position)
            .map_err(|_| degenerate("emitter coincides with its first hop"))?;
        let psi = angle_between(self.ap.normal(), last_hop - self.ap.position)
            .map_err(|_| degenerate("access point coincides with the last hop"))?;
        if psi > self.front_end.fov_half_angle {
            return Ok(0.0);
        }
        let cos_phi = phi.cos();
        if cos_phi <= 0.0 {
            // Nothing is emitted behind the source.
            return Ok(0.0);
        }
        let m = self.source.order();
        let fe = &self.front_end;
        let gain = fe.detector_area * (m + 1.0) / (2.0 * PI * length * length)
            * cos_phi.powf(m)
            * psi.cos()
            * fe.concentrator_gain;
        Ok(gain.max(0.0))
    }

    fn relayed_gain(&self, ue: &OrientedPoint, element: Vec3) -> Result<f64> {
        let length = ue.position.distance(element) + element.distance(self.ap.position);
        self.path_gain(ue, element, element, length)
    }
}

/// Direct UE 1 to access point gain.
pub fn h_los(scenario: &Scenario) -> Result<f64> {
    let ue = &scenario.ue1;
    let d = ue.position.distance(scenario.ap.position);
    if d == 0.0 {
        return Err(Error::DegenerateGeometry(
            "UE 1 and the access point coincide".into(),
        ));
    }
    scenario.path_gain(ue, scenario.ap.position, ue.position, d)
}

fn check_index(scenario: &Scenario, i: usize) -> Result<()> {
    let n = scenario.element_count();
    if i >= n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: i + 1,
        });
    }
    Ok(())
}

/// UE 1 to element `i` to access point gain (reflected path).
pub fn h_reflect(scenario: &Scenario, i: usize) -> Result<f64> {
    check_index(scenario, i)?;
    scenario.relayed_gain(&scenario.ue1, scenario.panel.element_position(i))
}

/// UE 2 to element `i` to access point gain (transmitted path).
pub fn h_transmit(scenario: &Scenario, i: usize) -> Result<f64> {
    check_index(scenario, i)?;
    scenario.relayed_gain(&scenario.ue2, scenario.panel.element_position(i))
}

/// Precomputed gains for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    pub h_los: f64,
    pub h_reflect: Vec<f64>,
    pub h_transmit: Vec<f64>,
}

impl ChannelSet {
    pub fn new(h_los: f64, h_reflect: Vec<f64>, h_transmit: Vec<f64>) -> Result<Self> {
        if h_reflect.len() != h_transmit.len() {
            return Err(Error::LengthMismatch {
                expected: h_reflect.len(),
                found: h_transmit.len(),
            });
        }
        let ok = |g: &f64| *g >= 0.0 && g.is_finite();
        if !ok(&h_los) || !h_reflect.iter().all(ok) || !h_transmit.iter().all(ok) {
            return Err(Error::InvalidScenario(
                "channel gains must be finite and non-negative".into(),
            ));
        }
        Ok(ChannelSet {
            h_los,
            h_reflect,
            h_transmit,
        })
    }

    pub fn len(&self) -> usize {
        self.h_reflect.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h_reflect.is_empty()
    }

    /// True when some element relays a nonzero gain to either user.
    pub fn has_ris_gain(&self) -> bool {
        self.h_reflect
            .iter()
            .chain(&self.h_transmit)
            .any(|&g| g > 0.0)
    }

    /// The channel restricted to the listed elements, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<ChannelSet> {
        let n = self.len();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: bad + 1,
            });
        }
        Ok(ChannelSet {
            h_los: self.h_los,
            h_reflect: indices.iter().map(|&i| self.h_reflect[i]).collect(),
            h_transmit: indices.iter().map(|&i| self.h_transmit[i]).collect(),
        })
    }
}

/// Evaluates every gain of `scenario`.
pub fn channel_set(scenario: &Scenario) -> Result<ChannelSet> {
    let h_los = h_los(scenario)?;
    let grid = build_ris_grid(&scenario.panel);
    let mut h_reflect = Vec::with_capacity(grid.len());
    let mut h_transmit = Vec::with_capacity(grid.len());
    for &element in &grid {
        h_reflect.push(scenario.relayed_gain(&scenario.ue1, element)?);
        h_transmit.push(scenario.relayed_gain(&scenario.ue2, element)?);
    }
    Ok(ChannelSet {
        h_los,
        h_reflect,
        h_transmit,
    })
}
