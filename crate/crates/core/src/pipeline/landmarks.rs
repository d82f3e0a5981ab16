//! Pose keypoints in the 18-joint skeleton layout.

use crate::error::{Error, Result};
use crate::geometry::{ArmChain, ArmSide, Point2};
use crate::tps::Correspondence;

/// Joint identifiers, in the fixed on-disk order (index = discriminant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(usize)]
pub enum Joint {
    Nose = 0,
    Neck = 1,
    RightShoulder = 2,
    RightElbow = 3,
    RightWrist = 4,
    LeftShoulder = 5,
    LeftElbow = 6,
    LeftWrist = 7,
    RightHip = 8,
    RightKnee = 9,
    RightAnkle = 10,
    LeftHip = 11,
    LeftKnee = 12,
    LeftAnkle = 13,
    RightEye = 14,
    LeftEye = 15,
    RightEar = 16,
    LeftEar = 17,
}

pub const JOINT_COUNT: usize = 18;

impl Joint {
    pub const ALL: [Joint; JOINT_COUNT] = [
        Joint::Nose,
        Joint::Neck,
        Joint::RightShoulder,
        Joint::RightElbow,
        Joint::RightWrist,
        Joint::LeftShoulder,
        Joint::LeftElbow,
        Joint::LeftWrist,
        Joint::RightHip,
        Joint::RightKnee,
        Joint::RightAnkle,
        Joint::LeftHip,
        Joint::LeftKnee,
        Joint::LeftAnkle,
        Joint::RightEye,
        Joint::LeftEye,
        Joint::RightEar,
        Joint::LeftEar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Joint::Nose => "nose",
            Joint::Neck => "neck",
            Joint::RightShoulder => "right shoulder",
            Joint::RightElbow => "right elbow",
            Joint::RightWrist => "right wrist",
            Joint::LeftShoulder => "left shoulder",
            Joint::LeftElbow => "left elbow",
            Joint::LeftWrist => "left wrist",
            Joint::RightHip => "right hip",
            Joint::RightKnee => "right knee",
            Joint::RightAnkle => "right ankle",
            Joint::LeftHip => "left hip",
            Joint::LeftKnee => "left knee",
            Joint::LeftAnkle => "left ankle",
            Joint::RightEye => "right eye",
            Joint::LeftEye => "left eye",
            Joint::RightEar => "right ear",
            Joint::LeftEar => "left ear",
        }
    }
}

/// One detected keypoint: position plus detector confidence.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LandmarkPoint {
    pub x: f64,
    pub y: f64,
    pub confidence: f64,
}

/// Full 18-joint keypoint set for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkSet {
    points: [LandmarkPoint; JOINT_COUNT],
}

impl LandmarkSet {
    pub fn new(points: [LandmarkPoint; JOINT_COUNT]) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !(0.0..=1.0).contains(&p.confidence) || !p.confidence.is_finite() {
                return Err(Error::InvalidValue(format!(
                    "confidence of {} must be in [0, 1], got {}",
                    Joint::ALL[i].name(),
                    p.confidence
                )));
            }
            if p.confidence > 0.0 && !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::InvalidValue(format!(
                    "non-finite coordinates for {}",
                    Joint::ALL[i].name()
                )));
            }
        }
        Ok(LandmarkSet { points })
    }

    pub fn raw(&self, joint: Joint) -> LandmarkPoint {
        self.points[joint as usize]
    }

    /// Position of a joint, or `None` when its confidence is below the
    /// threshold (strictly less than; an exactly-at-threshold joint counts).
    pub fn get(&self, joint: Joint, threshold: f64) -> Option<Point2> {
        let p = self.points[joint as usize];
        if p.confidence < threshold {
            None
        } else {
            Some(Point2::new(p.x, p.y))
        }
    }

    /// Build the shoulder-elbow-wrist chain of one arm. Errors name the
    /// first joint that is absent at the given threshold.
    pub fn arm_chain(&self, side: ArmSide, threshold: f64) -> Result<ArmChain> {
        let (sh, el, wr) = match side {
            ArmSide::Left => (Joint::LeftShoulder, Joint::LeftElbow, Joint::LeftWrist),
            ArmSide::Right => (Joint::RightShoulder, Joint::RightElbow, Joint::RightWrist),
        };
        let shoulder = self.get(sh, threshold).ok_or_else(|| Error::AbsentLandmark {
            joint: sh.name().to_string(),
        })?;
        let elbow = self.get(el, threshold).ok_or_else(|| Error::AbsentLandmark {
            joint: el.name().to_string(),
        })?;
        let wrist = self.get(wr, threshold).ok_or_else(|| Error::AbsentLandmark {
            joint: wr.name().to_string(),
        })?;
        ArmChain::new(shoulder, elbow, wrist, side)
    }
}

/// Torso registration anchors: pose joints plus two synthesized midpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsoLandmark {
    Neck,
    RightShoulder,
    LeftShoulder,
    RightHip,
    LeftHip,
    /// Midpoint of the two shoulders (present only when both are).
    MidShoulder,
    /// Midpoint of the two hips (present only when both are).
    MidHip,
}

impl TorsoLandmark {
    pub const DEFAULT: [TorsoLandmark; 7] = [
        TorsoLandmark::Neck,
        TorsoLandmark::RightShoulder,
        TorsoLandmark::LeftShoulder,
        TorsoLandmark::RightHip,
        TorsoLandmark::LeftHip,
        TorsoLandmark::MidShoulder,
        TorsoLandmark::MidHip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TorsoLandmark::Neck => "neck",
            TorsoLandmark::RightShoulder => "right_shoulder",
            TorsoLandmark::LeftShoulder => "left_shoulder",
            TorsoLandmark::RightHip => "right_hip",
            TorsoLandmark::LeftHip => "left_hip",
            TorsoLandmark::MidShoulder => "mid_shoulder",
            TorsoLandmark::MidHip => "mid_hip",
        }
    }

    fn resolve(self, set: &LandmarkSet, threshold: f64) -> Option<Point2> {
        let direct = |j: Joint| set.get(j, threshold);
        match self {
            TorsoLandmark::Neck => direct(Joint::Neck),
            TorsoLandmark::RightShoulder => direct(Joint::RightShoulder),
            TorsoLandmark::LeftShoulder => direct(Joint::LeftShoulder),
            TorsoLandmark::RightHip => direct(Joint::RightHip),
            TorsoLandmark::LeftHip => direct(Joint::LeftHip),
            TorsoLandmark::MidShoulder => Some(
                direct(Joint::RightShoulder)?.midpoint(direct(Joint::LeftShoulder)?),
            ),
            TorsoLandmark::MidHip => {
                Some(direct(Joint::RightHip)?.midpoint(direct(Joint::LeftHip)?))
            }
        }
    }
}

/// Backward torso correspondences (person position -> model position) for
/// every subset entry available in both landmark sets.
pub fn torso_correspondences(
    model: &LandmarkSet,
    person: &LandmarkSet,
    subset: &[TorsoLandmark],
    threshold: f64,
) -> Vec<Correspondence> {
    subset
        .iter()
        .filter_map(|lm| {
            let source = lm.resolve(model, threshold)?;
            let target = lm.resolve(person, threshold)?;
            Some(Correspondence { target, source })
        })
        .collect()
}
