//! Training-free garment warping between human poses.
//!
//! The model's upper-body garment is split into torso and sleeve parts that
//! deform independently: the torso follows a landmark-registered thin-plate
//! spline, while each sleeve follows an anatomy-constrained polar transform
//! around the elbow that preserves a pixel's angular relation to the nearest
//! arm bone and rescales its radius by the bone length ratio. Everything is
//! computed as a backward map (target pixel to source coordinate), resampled
//! bilinearly, and recombined with explicit occlusion and inpaint masks.

pub mod atag;
pub mod draw;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod pipeline;
pub mod raster;
pub mod tps;

pub use error::{Error, Result};
pub use geometry::{ArmChain, ArmSide, Point2, WedgeCoordinates, WedgeSide};
pub use raster::{BinaryMask, ImageBuffer, SourceMap};
