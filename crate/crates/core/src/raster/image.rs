//! Interleaved row-major 8-bit image buffer.

use crate::error::{Error, Result};

/// Row-major 8-bit image with 1 (gray), 3 (RGB), or 4 (RGBA) channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl ImageBuffer {
    /// Zero-filled buffer.
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        assert!(
            matches!(channels, 1 | 3 | 4),
            "channel count must be 1, 3, or 4"
        );
        ImageBuffer {
            width,
            height,
            channels,
            data: vec![0; width * height * channels],
        }
    }

    pub fn from_raw(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if !matches!(channels, 1 | 3 | 4) {
            return Err(Error::InvalidValue(format!(
                "unsupported channel count {channels}"
            )));
        }
        if data.len() != width * height * channels {
            return Err(Error::InvalidValue(format!(
                "image data length {} does not match {width}x{height}x{channels}",
                data.len()
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            channels,
            data,
        })
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

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[u8] {
        let i = (y * self.width + x) * self.channels;
        &self.data[i..i + self.channels]
    }

    #[inline]
    pub fn pixel_mut(&mut self, x: usize, y: usize) -> &mut [u8] {
        let i = (y * self.width + x) * self.channels;
        &mut self.data[i..i + self.channels]
    }

    pub fn put_pixel(&mut self, x: usize, y: usize, value: &[u8]) {
        let c = self.channels;
        self.pixel_mut(x, y).copy_from_slice(&value[..c]);
    }

    pub fn fill(&mut self, value: &[u8]) {
        let c = self.channels;
        for px in self.data.chunks_exact_mut(c) {
            px.copy_from_slice(&value[..c]);
        }
    }

    /// Copy with every pixel outside `mask` zeroed.
    pub fn masked(&self, mask: &crate::raster::BinaryMask) -> Result<ImageBuffer> {
        if mask.dims() != self.dims() {
            return Err(Error::dims("image mask", self.dims(), mask.dims()));
        }
        let mut out = ImageBuffer::new(self.width, self.height, self.channels);
        for (x, y) in mask.iter_set() {
            let px = self.pixel(x, y).to_vec();
            out.put_pixel(x, y, &px);
        }
        Ok(out)
    }
}
