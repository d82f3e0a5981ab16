//! Backward image resampling and layer compositing.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::raster::{BinaryMask, ImageBuffer, SourceMap};

/// Bilinear sample at a continuous coordinate, clamp-to-edge within a half
/// pixel of the border. Returns `None` outside that margin. Channel values
/// are rounded half up; unused lanes of the returned array are zero.
pub fn sample_bilinear(img: &ImageBuffer, p: Point2) -> Option<[u8; 4]> {
    let w = img.width() as f64;
    let h = img.height() as f64;
    if !(p.x >= -0.5 && p.x <= w - 0.5 && p.y >= -0.5 && p.y <= h - 0.5) {
        return None;
    }
    let x0 = p.x.floor();
    let y0 = p.y.floor();
    let fx = p.x - x0;
    let fy = p.y - y0;
    let clamp = |v: f64, max: usize| -> usize { (v.max(0.0) as usize).min(max - 1) };
    let xa = clamp(x0, img.width());
    let xb = clamp(x0 + 1.0, img.width());
    let ya = clamp(y0, img.height());
    let yb = clamp(y0 + 1.0, img.height());
    let p00 = img.pixel(xa, ya);
    let p10 = img.pixel(xb, ya);
    let p01 = img.pixel(xa, yb);
    let p11 = img.pixel(xb, yb);
    let mut out = [0u8; 4];
    for c in 0..img.channels() {
        let top = p00[c] as f64 * (1.0 - fx) + p10[c] as f64 * fx;
        let bottom = p01[c] as f64 * (1.0 - fx) + p11[c] as f64 * fx;
        let v = top * (1.0 - fy) + bottom * fy;
        out[c] = (v + 0.5).floor().clamp(0.0, 255.0) as u8;
    }
    Some(out)
}

/// Nearest pixel index for mask membership tests (round half up per axis),
/// or `None` outside the half-pixel border margin.
fn nearest_index(p: Point2, width: usize, height: usize) -> Option<(usize, usize)> {
    let w = width as f64;
    let h = height as f64;
    if !(p.x >= -0.5 && p.x <= w - 0.5 && p.y >= -0.5 && p.y <= h - 0.5) {
        return None;
    }
    let x = ((p.x + 0.5).floor().max(0.0) as usize).min(width - 1);
    let y = ((p.y + 0.5).floor().max(0.0) as usize).min(height - 1);
    Some((x, y))
}

/// Result of a backward warp: the resampled image plus bookkeeping masks.
/// `valid` marks pixels filled from the source, `holes` pixels whose mapped
/// location fell outside the source mask or image; the two never overlap.
#[derive(Debug, Clone)]
pub struct WarpOutput {
    pub image: ImageBuffer,
    pub valid: BinaryMask,
    pub holes: BinaryMask,
}

/// Pull source pixels through a backward map.
///
/// Each mapped entry is accepted only if its nearest source pixel lies inside
/// `src_mask` (a nearest-neighbor test, so colors never leak across the mask
/// boundary into validity decisions), then sampled bilinearly.
pub fn backward_warp(
    src: &ImageBuffer,
    src_mask: &BinaryMask,
    map: &SourceMap,
) -> Result<WarpOutput> {
    if src.dims() != src_mask.dims() {
        return Err(Error::dims("backward warp source mask", src.dims(), src_mask.dims()));
    }
    let (w, h) = map.dims();
    let mut image = ImageBuffer::new(w, h, src.channels());
    let mut valid = BinaryMask::new(w, h);
    let mut holes = BinaryMask::new(w, h);
    for y in 0..h {
        for x in 0..w {
            let Some(p) = map.get(x, y) else { continue };
            let inside = nearest_index(p, src.width(), src.height())
                .map(|(nx, ny)| src_mask.get(nx, ny))
                .unwrap_or(false);
            if !inside {
                holes.set(x, y, true);
                continue;
            }
            match sample_bilinear(src, p) {
                Some(color) => {
                    image.put_pixel(x, y, &color);
                    valid.set(x, y, true);
                }
                None => holes.set(x, y, true),
            }
        }
    }
    Ok(WarpOutput { image, valid, holes })
}

/// Stack layers back to front: later layers overwrite earlier ones where
/// their mask is set; pixels covered by no mask stay zero.
pub fn composite(layers: &[(&ImageBuffer, &BinaryMask)]) -> Result<ImageBuffer> {
    let Some(&(first, _)) = layers.first() else {
        return Err(Error::InvalidValue("composite of zero layers".into()));
    };
    let mut out = ImageBuffer::new(first.width(), first.height(), first.channels());
    for &(img, mask) in layers {
        if img.dims() != out.dims() || img.channels() != out.channels() {
            return Err(Error::dims("composite layer", out.dims(), img.dims()));
        }
        if mask.dims() != out.dims() {
            return Err(Error::dims("composite layer mask", out.dims(), mask.dims()));
        }
        for (x, y) in mask.iter_set() {
            let color = img.pixel(x, y).to_vec();
            out.put_pixel(x, y, &color);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient_image(w: usize, h: usize) -> ImageBuffer {
        let mut img = ImageBuffer::new(w, h, 3);
        for y in 0..h {
            for x in 0..w {
                img.put_pixel(x, y, &[(x * 13 % 256) as u8, (y * 29 % 256) as u8, 77]);
            }
        }
        img
    }

    #[test]
    fn bilinear_at_center_returns_pixel() {
        let img = gradient_image(4, 4);
        let got = sample_bilinear(&img, Point2::new(2.0, 1.0)).unwrap();
        assert_eq!(&got[..3], img.pixel(2, 1));
    }

    #[test]
    fn bilinear_midpoint_rounds_half_up() {
        let mut img = ImageBuffer::new(2, 2, 1);
        img.put_pixel(0, 0, &[0]);
        img.put_pixel(1, 0, &[0]);
        img.put_pixel(0, 1, &[255]);
        img.put_pixel(1, 1, &[255]);
        // (0+0+255+255)/4 = 127.5 -> 128
        let got = sample_bilinear(&img, Point2::new(0.5, 0.5)).unwrap();
        assert_eq!(got[0], 128);
    }

    #[test]
    fn bilinear_out_of_bounds() {
        let img = gradient_image(4, 4);
        assert!(sample_bilinear(&img, Point2::new(-10.0, -10.0)).is_none());
        assert!(sample_bilinear(&img, Point2::new(3.6, 0.0)).is_none());
        // Within the clamp margin still samples.
        assert!(sample_bilinear(&img, Point2::new(-0.4, 3.4)).is_some());
    }

    #[test]
    fn identity_warp_is_lossless() {
        let img = gradient_image(5, 4);
        let mask = BinaryMask::full(5, 4);
        let map = SourceMap::identity(&mask);
        let out = backward_warp(&img, &mask, &map).unwrap();
        assert_eq!(out.image, img);
        assert!(out.holes.is_empty());
        assert_eq!(out.valid.count_set(), 20);
    }

    #[test]
    fn warp_outside_mask_becomes_holes() {
        let img = gradient_image(4, 4);
        let mask = BinaryMask::new(4, 4); // nothing visible
        let map = SourceMap::identity(&BinaryMask::full(4, 4));
        let out = backward_warp(&img, &mask, &map).unwrap();
        assert!(out.valid.is_empty());
        assert_eq!(out.holes.count_set(), 16);
    }

    #[test]
    fn translation_warp_matches_shifted_source() {
        let img = gradient_image(4, 4);
        let mask = BinaryMask::full(4, 4);
        let region = BinaryMask::full(4, 4);
        let map = SourceMap::from_region(&region, |p| Point2::new(p.x + 1.0, p.y));
        let out = backward_warp(&img, &mask, &map).unwrap();
        for y in 0..4 {
            for x in 0..3 {
                assert_eq!(out.image.pixel(x, y), img.pixel(x + 1, y), "at ({x},{y})");
                assert!(out.valid.get(x, y));
            }
            // Rightmost column maps past the source edge.
            assert!(out.holes.get(3, y));
        }
    }

    #[test]
    fn holes_and_valid_disjoint() {
        let img = gradient_image(6, 6);
        let mut mask = BinaryMask::new(6, 6);
        for y in 0..6 {
            for x in 0..3 {
                mask.set(x, y, true);
            }
        }
        let map = SourceMap::from_region(&BinaryMask::full(6, 6), |p| {
            Point2::new(p.x * 1.5 - 1.0, p.y)
        });
        let out = backward_warp(&img, &mask, &map).unwrap();
        let overlap = out.valid.and(&out.holes).unwrap();
        assert!(overlap.is_empty());
    }

    #[test]
    fn composite_layering() {
        let mut a = ImageBuffer::new(3, 1, 3);
        a.fill(&[10, 0, 0]);
        let mut b = ImageBuffer::new(3, 1, 3);
        b.fill(&[0, 20, 0]);
        let ma = BinaryMask::from_fn(3, 1, |x, _| x < 2);
        let mb = BinaryMask::from_fn(3, 1, |x, _| x > 0);
        let out = composite(&[(&a, &ma), (&b, &mb)]).unwrap();
        assert_eq!(out.pixel(0, 0), &[10, 0, 0]);
        assert_eq!(out.pixel(1, 0), &[0, 20, 0]); // top layer wins overlap
        assert_eq!(out.pixel(2, 0), &[0, 20, 0]);
    }

    #[test]
    fn composite_dimension_mismatch() {
        let a = ImageBuffer::new(3, 1, 3);
        let b = ImageBuffer::new(2, 1, 3);
        let ma = BinaryMask::new(3, 1);
        let mb = BinaryMask::new(2, 1);
        assert!(composite(&[(&a, &ma), (&b, &mb)]).is_err());
    }
}
