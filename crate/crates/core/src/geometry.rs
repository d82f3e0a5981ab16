//! Points, arm-bone chains, and elbow-centered wedge coordinates.
//!
//! Image convention: x grows rightward, y grows downward, and the origin is
//! the center of the top-left pixel. All cross products and signed angles use
//! this handedness consistently.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A 2D point (or displacement vector) in continuous pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product `self x other`.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new((self.x + other.x) * 0.5, (self.y + other.y) * 0.5)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Rotate by `angle` radians in the positive-cross sense.
    pub fn rotated(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, rhs: f64) -> Point2 {
        Point2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Which anatomical arm a chain describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmSide {
    Left,
    Right,
}

impl ArmSide {
    pub fn name(self) -> &'static str {
        match self {
            ArmSide::Left => "left",
            ArmSide::Right => "right",
        }
    }
}

/// Shoulder-elbow-wrist landmark triple of one arm.
///
/// Construction guarantees finite coordinates and nonzero bone lengths, so
/// downstream angle and ratio computations never divide by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmChain {
    shoulder: Point2,
    elbow: Point2,
    wrist: Point2,
    side: ArmSide,
}

impl ArmChain {
    pub fn new(shoulder: Point2, elbow: Point2, wrist: Point2, side: ArmSide) -> Result<Self> {
        if !(shoulder.is_finite() && elbow.is_finite() && wrist.is_finite()) {
            return Err(Error::InvalidValue(format!(
                "{} arm chain has non-finite coordinates",
                side.name()
            )));
        }
        if shoulder.distance(elbow) == 0.0 {
            return Err(Error::DegenerateGeometry(format!(
                "{} arm: shoulder coincides with elbow",
                side.name()
            )));
        }
        if wrist.distance(elbow) == 0.0 {
            return Err(Error::DegenerateGeometry(format!(
                "{} arm: wrist coincides with elbow",
                side.name()
            )));
        }
        Ok(ArmChain {
            shoulder,
            elbow,
            wrist,
            side,
        })
    }

    pub fn shoulder(&self) -> Point2 {
        self.shoulder
    }

    pub fn elbow(&self) -> Point2 {
        self.elbow
    }

    pub fn wrist(&self) -> Point2 {
        self.wrist
    }

    pub fn side(&self) -> ArmSide {
        self.side
    }

    /// Upper-arm bone length (elbow to shoulder).
    pub fn upper_len(&self) -> f64 {
        self.shoulder.distance(self.elbow)
    }

    /// Forearm bone length (elbow to wrist).
    pub fn fore_len(&self) -> f64 {
        self.wrist.distance(self.elbow)
    }

    /// Unit vector from the elbow toward the shoulder.
    pub fn upper_dir(&self) -> Point2 {
        (self.shoulder - self.elbow) / self.upper_len()
    }

    /// Signed angle from the elbow->shoulder ray to the elbow->wrist ray,
    /// in (-pi, pi].
    pub fn signed_interior(&self) -> f64 {
        let ba = self.shoulder - self.elbow;
        let bc = self.wrist - self.elbow;
        ba.cross(bc).atan2(ba.dot(bc))
    }

    /// Unsigned interior elbow angle, in [0, pi].
    pub fn interior_angle(&self) -> f64 {
        self.signed_interior().abs()
    }

    /// Elbow flexion: 0 for a straight arm, growing with the bend.
    pub fn flexion(&self) -> f64 {
        PI - self.interior_angle()
    }

    /// Rotation sense (+1/-1) that sweeps the inner wedge from the shoulder
    /// ray to the wrist ray. `None` when the arm is exactly straight.
    pub fn inner_sense(&self) -> Option<f64> {
        let ba = self.shoulder - self.elbow;
        let bc = self.wrist - self.elbow;
        let cross = ba.cross(bc);
        if cross > 0.0 {
            Some(1.0)
        } else if cross < 0.0 {
            Some(-1.0)
        } else {
            None
        }
    }
}

/// The two angular regions at the elbow bounded by the bone rays: `Inner` is
/// the fold side (wedge angle < pi), `Outer` the stretch side (>= pi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeSide {
    Inner,
    Outer,
}

/// Polar description of a point relative to an elbow.
///
/// `phi1` is the angular distance from the shoulder ray swept through the
/// wedge that contains the point; `phi2` the remaining sweep to the wrist
/// ray. Their sum is therefore exactly the containing wedge's angle. For
/// points in the outer wedge a sweep angle can exceed pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeCoordinates {
    pub r: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub side: WedgeSide,
}

impl WedgeCoordinates {
    /// Total wedge angle phi1 + phi2.
    pub fn phi(&self) -> f64 {
        self.phi1 + self.phi2
    }
}

/// Unsigned angle between two nonzero vectors, in [0, pi].
///
/// Exactly 0 for parallel and pi for antiparallel inputs.
pub fn angle_between(u: Point2, v: Point2) -> Result<f64> {
    if u.norm_sq() == 0.0 || v.norm_sq() == 0.0 {
        return Err(Error::DegenerateGeometry(
            "angle between zero-length vector".into(),
        ));
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Wedge coordinates of `x` relative to `chain`'s elbow, using the chain's
/// own bend to orient the inner wedge (positive sense when straight).
pub fn wedge_coordinates(x: Point2, chain: &ArmChain) -> WedgeCoordinates {
    wedge_coordinates_with_sense(x, chain, chain.inner_sense().unwrap_or(1.0))
}

/// As [`wedge_coordinates`] but with an explicit inner-wedge sense, used when
/// a straight chain inherits its bend direction from a paired chain.
pub fn wedge_coordinates_with_sense(x: Point2, chain: &ArmChain, sense: f64) -> WedgeCoordinates {
    let bx = x - chain.elbow;
    let r = bx.norm();
    if r == 0.0 {
        // Angles are undefined at the elbow itself.
        return WedgeCoordinates {
            r: 0.0,
            phi1: 0.0,
            phi2: 0.0,
            side: WedgeSide::Inner,
        };
    }
    let ba = chain.shoulder - chain.elbow;
    let alpha = ba.cross(bx).atan2(ba.dot(bx));
    let beta = chain.interior_angle();
    // Position of x along the sweep that starts at the shoulder ray and
    // rotates in `sense` direction (through the inner wedge).
    let pos = sense * alpha;
    if (0.0..=beta).contains(&pos) {
        WedgeCoordinates {
            r,
            phi1: pos,
            phi2: beta - pos,
            side: WedgeSide::Inner,
        }
    } else {
        // Sweep position through the outer wedge, starting again at the
        // shoulder ray but rotating the opposite way.
        let t = if pos < 0.0 { -pos } else { 2.0 * PI - pos };
        WedgeCoordinates {
            r,
            phi1: t,
            phi2: (2.0 * PI - beta) - t,
            side: WedgeSide::Outer,
        }
    }
}

/// Angle of the chain's wedge on the given side: the interior elbow angle
/// for `Inner`, its reflex complement for `Outer`.
pub fn wedge_angle_of_chain(chain: &ArmChain, side: WedgeSide) -> f64 {
    match side {
        WedgeSide::Inner => chain.interior_angle(),
        WedgeSide::Outer => 2.0 * PI - chain.interior_angle(),
    }
}
