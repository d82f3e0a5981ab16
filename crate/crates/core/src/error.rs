//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by geometry, fitting, raster, and pipeline operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A geometric input collapsed (zero-length vector, coincident landmarks).
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A coordinate or parameter is NaN/infinite or outside its valid range.
    #[error("invalid value: {0}")]
    InvalidValue(String),

    /// Two rasters that must share a frame have different shapes.
    #[error("dimension mismatch: {context}: {expected_w}x{expected_h} vs {got_w}x{got_h}")]
    DimensionMismatch {
        context: &'static str,
        expected_w: usize,
        expected_h: usize,
        got_w: usize,
        got_h: usize,
    },

    /// A required pose keypoint is below the confidence threshold.
    #[error("absent landmark: {joint}")]
    AbsentLandmark { joint: String },

    /// Thin-plate-spline fitting failed.
    #[error("spline fit failed: {0}")]
    TpsFit(String),

    /// The garment mask contains no pixels.
    #[error("garment mask is empty")]
    EmptyGarmentMask,

    /// Garment splitting produced no torso part.
    #[error("garment has no torso part after splitting")]
    EmptyTorsoPart,

    /// Neither the torso nor any sleeve could be warped.
    #[error("nothing to warp: torso and both sleeves are unavailable")]
    NothingToWarp,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dims(
        context: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    ) -> Self {
        Error::DimensionMismatch {
            context,
            expected_w: expected.0,
            expected_h: expected.1,
            got_w: got.0,
            got_h: got.1,
        }
    }
}
