//! Raster primitives: 8-bit image buffers, binary masks, backward source
//! maps, resampling, and compositing.

mod image;
mod mask;
mod source_map;
mod warp;

pub use image::ImageBuffer;
pub use mask::BinaryMask;
pub use source_map::SourceMap;
pub use warp::{backward_warp, composite, sample_bilinear, WarpOutput};
