//! Anatomy-aware geometric sleeve transform.
//!
//! Maps each target-pose sleeve pixel back to its source-pose location by
//! working in polar coordinates around the elbow. The angular coordinate is
//! preserved relative to whichever bone the pixel follows (upper arm or
//! forearm), with a smooth blend across the stretch side of the elbow and a
//! hard switch across the fold side; the radial coordinate is scaled by the
//! per-bone length ratio.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    wedge_angle_of_chain, wedge_coordinates_with_sense, ArmChain, Point2, WedgeSide,
};
use crate::raster::{BinaryMask, SourceMap};

/// Tunables of the sleeve transform.
#[derive(Debug, Clone, Copy)]
pub struct AtagParams {
    /// Steepness of the logistic gate separating the fold-side and
    /// stretch-side angular rules, in 1/rad.
    pub a: f64,
    /// Target flexion beyond this limit is reported as a warning; the
    /// transform itself stays defined.
    pub flexion_warn_limit: f64,
}

impl Default for AtagParams {
    fn default() -> Self {
        AtagParams {
            a: 8.0,
            flexion_warn_limit: 145f64.to_radians(),
        }
    }
}

impl AtagParams {
    pub fn with_steepness(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidValue(format!(
                "gate steepness must be positive, got {a}"
            )));
        }
        Ok(AtagParams {
            a,
            ..AtagParams::default()
        })
    }
}

/// A matched pair of arm chains: the person's pose (`target`, warped into)
/// and the model's pose (`source`, sampled from).
#[derive(Debug, Clone, Copy)]
pub struct AtagCorrespondence {
    target: ArmChain,
    source: ArmChain,
}

impl AtagCorrespondence {
    pub fn new(target: ArmChain, source: ArmChain) -> Result<Self> {
        if target.side() != source.side() {
            return Err(Error::InvalidValue(format!(
                "arm chain sides differ: target {} vs source {}",
                target.side().name(),
                source.side().name()
            )));
        }
        Ok(AtagCorrespondence { target, source })
    }

    pub fn target(&self) -> &ArmChain {
        &self.target
    }

    pub fn source(&self) -> &ArmChain {
        &self.source
    }

    /// Target flexion in radians, for warn-limit checks.
    pub fn target_flexion(&self) -> f64 {
        self.target.flexion()
    }

    /// True when the target arm bends beyond the warn limit.
    pub fn flexion_exceeds(&self, params: &AtagParams) -> bool {
        self.target_flexion() > params.flexion_warn_limit
    }

    /// Inner-wedge sweep senses for (target, source). A straight chain
    /// inherits the bend direction of its partner; if both are straight the
    /// positive sense is used.
    fn senses(&self) -> (f64, f64) {
        let t = self.target.inner_sense();
        let s = self.source.inner_sense();
        match (t, s) {
            (Some(t), Some(s)) => (t, s),
            (Some(t), None) => (t, t),
            (None, Some(s)) => (s, s),
            (None, None) => (1.0, 1.0),
        }
    }
}

/// Angular affinity of a pixel for the forearm rule: phi1^2 / (phi1^2 + phi2^2).
///
/// 0 on the shoulder ray, 1 on the wrist ray, 1/2 on the bisector. The
/// undefined corner phi1 = phi2 = 0 (only reachable at the elbow itself) is
/// defined as the symmetric limit 1/2.
pub fn weight_f(phi1: f64, phi2: f64) -> f64 {
    let n = phi1 * phi1;
    let d = n + phi2 * phi2;
    if d == 0.0 {
        0.5
    } else {
        n / d
    }
}

/// Logistic gate distinguishing the fold side (wedge angle < pi, -> 0) from
/// the stretch side (> pi, -> 1): 1 / (1 + e^{a (pi - phi)}).
pub fn gate_g(phi: f64, a: f64) -> f64 {
    1.0 / (1.0 + (a * (PI - phi)).exp())
}

/// Round half up: ties at 0.5 go to 1, so the forearm rule wins exact ties.
fn round_half_up(v: f64) -> f64 {
    if v >= 0.5 {
        1.0
    } else {
        0.0
    }
}

/// Blended rule selector: smooth weight on the stretch side, rounded (hard)
/// weight on the fold side, gated by the wedge angle.
pub fn blend_h(phi1: f64, phi2: f64, params: &AtagParams) -> f64 {
    let f = weight_f(phi1, phi2);
    let g = gate_g(phi1 + phi2, params.a);
    g * f + (1.0 - g) * round_half_up(f)
}

/// Source-side angular coordinate: phi1' = phi1 (1 - h) + (phi_src - phi2) h,
/// where `phi_src` is the source wedge angle on the pixel's side.
pub fn angular_map(phi1: f64, phi2: f64, phi_src: f64, params: &AtagParams) -> f64 {
    let h = blend_h(phi1, phi2, params);
    phi1 * (1.0 - h) + (phi_src - phi2) * h
}

/// Source-side radial coordinate: `r` scaled by the blend of the two bone
/// length ratios. Nonzero target bones are guaranteed by [`ArmChain`].
pub fn radial_map(r: f64, h: f64, corr: &AtagCorrespondence) -> f64 {
    let upper_ratio = corr.source.upper_len() / corr.target.upper_len();
    let fore_ratio = corr.source.fore_len() / corr.target.fore_len();
    r * ((1.0 - h) * upper_ratio + h * fore_ratio)
}

/// Map one target-pose point to its source-pose location.
pub fn atag_point(x: Point2, corr: &AtagCorrespondence, params: &AtagParams) -> Point2 {
    let (target_sense, source_sense) = corr.senses();
    let wc = wedge_coordinates_with_sense(x, &corr.target, target_sense);
    if wc.r == 0.0 {
        return corr.source.elbow();
    }
    let h = blend_h(wc.phi1, wc.phi2, params);
    let phi_src = wedge_angle_of_chain(&corr.source, wc.side);
    let phi1_src = angular_map(wc.phi1, wc.phi2, phi_src, params);
    let r_src = radial_map(wc.r, h, corr);
    // Place the result at angle phi1' from the source shoulder ray, swept
    // through the source wedge matching the pixel's side.
    let dir_sign = match wc.side {
        WedgeSide::Inner => source_sense,
        WedgeSide::Outer => -source_sense,
    };
    corr.source.elbow() + corr.source.upper_dir().rotated(dir_sign * phi1_src) * r_src
}

/// Evaluate [`atag_point`] at the center of every set pixel of `region`;
/// unset pixels become holes.
pub fn atag_field(region: &BinaryMask, corr: &AtagCorrespondence, params: &AtagParams) -> SourceMap {
    SourceMap::from_region(region, |p| atag_point(p, corr, params))
}
