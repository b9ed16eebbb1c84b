//! Vector geometry of the two-room setup.
//!
//! Coordinates are meters in a single room frame: rooms share the wall plane
//! `x = 5`, `z` points up. Room 1 (access point and UE 1) is `x < 5`, room 2 is `x > 5`.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector in the same direction.
    pub fn normalized(self) -> Result<Vec3> {
        let n = self.norm();
        if !self.is_finite() || n == 0.0 || !n.is_finite() {
            return Err(Error::DegenerateVector);
        }
        Ok(self * (1.0 / n))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Angle in `[0, pi]` between two nonzero vectors.
pub fn angle_between(a: Vec3, b: Vec3) -> Result<f64> {
    let na = a.norm();
    let nb = b.norm();
    if !a.is_finite() || !b.is_finite() || na == 0.0 || nb == 0.0 {
        return Err(Error::DegenerateVector);
    }
    let cos = (a.dot(b) / (na * nb)).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// A position with a unit normal (a transmitter, the access point, or a surface).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedPoint {
    pub position: Vec3,
    normal: Vec3,
}

impl OrientedPoint {
    /// The normal is rescaled to unit length.
    pub fn new(position: Vec3, normal: Vec3) -> Result<Self> {
        if !position.is_finite() {
            return Err(Error::DegenerateVector);
        }
        Ok(OrientedPoint {
            position,
            normal: normal.normalized()?,
        })
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    /// Same orientation, different position.
    pub fn moved_to(&self, position: Vec3) -> Self {
        OrientedPoint {
            position,
            normal: self.normal,
        }
    }
}

/// Lambertian order `m = -ln 2 / ln cos(half_angle)`.
pub fn lambertian_order(half_angle: f64) -> Result<f64> {
    if !(half_angle > 0.0 && half_angle < FRAC_PI_2) {
        return Err(Error::HalfAngleOutOfRange(half_angle));
    }
    Ok(-std::f64::consts::LN_2 / half_angle.cos().ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertianSource {
    half_intensity_angle: f64,
    order: f64,
}

impl LambertianSource {
    pub fn new(half_intensity_angle: f64) -> Result<Self> {
        Ok(LambertianSource {
            half_intensity_angle,
            order: lambertian_order(half_intensity_angle)?,
        })
    }

    pub fn half_intensity_angle(&self) -> f64 {
        self.half_intensity_angle
    }

    pub fn order(&self) -> f64 {
        self.order
    }
}

/// Rectangular STAR-RIS panel.
///
/// Elements are laid out on a `rows x cols` grid with spacing `pitch`, centered
/// on `center`, in the plane orthogonal to `normal`. A panel with zero rows or
/// columns models a link without a surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisPanel {
    pub center: Vec3,
    pub rows: usize,
    pub cols: usize,
    pub pitch: f64,
    normal: Vec3,
}

impl RisPanel {
    pub fn new(center: Vec3, rows: usize, cols: usize, pitch: f64, normal: Vec3) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::DegenerateVector);
        }
        if !(pitch > 0.0 && pitch.is_finite()) {
            return Err(Error::InvalidScenario(format!(
                "RIS pitch must be positive, got {pitch}"
            )));
        }
        Ok(RisPanel {
            center,
            rows,
            cols,
            pitch,
            normal: normal.normalized()?,
        })
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn element_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Horizontal and vertical in-plane unit axes.
    ///
    /// The horizontal axis has a non-negative `y` component and the vertical
    /// axis a non-negative `z` component, so a wall panel (normal `+x` or `-x`)
    /// always grows along `+y` within a row and `+z` across rows.
    pub fn in_plane_axes(&self) -> (Vec3, Vec3) {
        let n = self.normal;
        let mut h = Vec3::Z.cross(n);
        if h.norm() < 1e-12 {
            // Ceiling or floor panel.
            h = n.cross(Vec3::X);
        }
        let mut h = h.normalized().expect("nonzero in-plane axis");
        if h.y < 0.0 || (h.y == 0.0 && h.x < 0.0) {
            h = -h;
        }
        let mut v = n.cross(h);
        if v.z < 0.0 || (v.z == 0.0 && v.y < 0.0) {
            v = -v;
        }
        (h, v)
    }

    /// Position of element `index` in row-major order.
    pub fn element_position(&self, index: usize) -> Vec3 {
        let (h, v) = self.in_plane_axes();
        self.position_on(index, h, v)
    }

    fn position_on(&self, index: usize, h: Vec3, v: Vec3) -> Vec3 {
        let row = (index / self.cols) as f64;
        let col = (index % self.cols) as f64;
        let dh = (col - (self.cols as f64 - 1.0) / 2.0) * self.pitch;
        let dv = (row - (self.rows as f64 - 1.0) / 2.0) * self.pitch;
        self.center + h * dh + v * dv
    }

    /// Signed distance of `p` from the panel plane along the normal.
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        (p - self.center).dot(self.normal)
    }
}

/// All element positions of `panel`, row-major (increasing horizontal offset
/// within a row, increasing height across rows).
pub fn build_ris_grid(panel: &RisPanel) -> Vec<Vec3> {
    let (h, v) = panel.in_plane_axes();
    (0..panel.element_count())
        .map(|i| panel.position_on(i, h, v))
        .collect()
}
