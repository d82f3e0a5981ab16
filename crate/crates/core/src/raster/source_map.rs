//! Per-target-pixel source coordinate field.

use crate::geometry::Point2;
use crate::raster::BinaryMask;

/// Backward warp field: for each target pixel, either the continuous source
/// coordinate to sample from, or a hole.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceMap {
    width: usize,
    height: usize,
    entries: Vec<Option<Point2>>,
}

impl SourceMap {
    /// All-hole map.
    pub fn new(width: usize, height: usize) -> Self {
        SourceMap {
            width,
            height,
            entries: vec![None; width * height],
        }
    }

    /// Evaluate `f` at the center of every set pixel of `region`.
    pub fn from_region(region: &BinaryMask, f: impl Fn(Point2) -> Point2) -> Self {
        let mut map = SourceMap::new(region.width(), region.height());
        for (x, y) in region.iter_set() {
            map.set(x, y, Some(f(Point2::new(x as f64, y as f64))));
        }
        map
    }

    /// Identity map over a region: every set pixel maps to its own center.
    pub fn identity(region: &BinaryMask) -> Self {
        SourceMap::from_region(region, |p| p)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<Point2> {
        self.entries[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: Option<Point2>) {
        self.entries[y * self.width + x] = value;
    }

    pub fn mapped_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    /// Mask of pixels that carry a source coordinate.
    pub fn mapped_mask(&self) -> BinaryMask {
        BinaryMask::from_fn(self.width, self.height, |x, y| self.get(x, y).is_some())
    }

    /// Merge non-hole entries of `other` into `self` where `self` has holes.
    pub fn fill_from(&mut self, other: &SourceMap) {
        debug_assert_eq!(self.dims(), other.dims());
        for (dst, src) in self.entries.iter_mut().zip(&other.entries) {
            if dst.is_none() {
                *dst = *src;
            }
        }
    }
}
