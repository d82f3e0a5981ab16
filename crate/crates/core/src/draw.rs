//! Simple shape rasterization and procedural textures, used by the demo
//! renderer, field visualizations, and synthetic test scenes.

use crate::geometry::Point2;
use crate::raster::{BinaryMask, ImageBuffer};

/// Set every pixel whose center lies within `radius` of segment `a`-`b`.
pub fn fill_capsule(mask: &mut BinaryMask, a: Point2, b: Point2, radius: f64) {
    let (w, h) = mask.dims();
    let min_x = (a.x.min(b.x) - radius).floor().max(0.0) as usize;
    let max_x = ((a.x.max(b.x) + radius).ceil() as usize).min(w.saturating_sub(1));
    let min_y = (a.y.min(b.y) - radius).floor().max(0.0) as usize;
    let max_y = ((a.y.max(b.y) + radius).ceil() as usize).min(h.saturating_sub(1));
    let r_sq = radius * radius;
    for y in min_y..=max_y.min(h.saturating_sub(1)) {
        for x in min_x..=max_x {
            let p = Point2::new(x as f64, y as f64);
            if dist_sq_to_segment(p, a, b) <= r_sq {
                mask.set(x, y, true);
            }
        }
    }
}

/// Squared distance from `p` to segment `a`-`b`.
pub fn dist_sq_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm_sq();
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm_sq()
}

/// Set every pixel whose center lies inside the convex polygon `pts`
/// (vertices in consistent winding order).
pub fn fill_convex_poly(mask: &mut BinaryMask, pts: &[Point2]) {
    if pts.len() < 3 {
        return;
    }
    let (w, h) = mask.dims();
    let min_x = pts.iter().fold(f64::INFINITY, |m, p| m.min(p.x)).floor().max(0.0) as usize;
    let max_x = (pts.iter().fold(f64::NEG_INFINITY, |m, p| m.max(p.x)).ceil() as usize)
        .min(w.saturating_sub(1));
    let min_y = pts.iter().fold(f64::INFINITY, |m, p| m.min(p.y)).floor().max(0.0) as usize;
    let max_y = (pts.iter().fold(f64::NEG_INFINITY, |m, p| m.max(p.y)).ceil() as usize)
        .min(h.saturating_sub(1));
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            let p = Point2::new(x as f64, y as f64);
            let mut pos = false;
            let mut neg = false;
            for i in 0..pts.len() {
                let a = pts[i];
                let b = pts[(i + 1) % pts.len()];
                let c = (b - a).cross(p - a);
                if c > 0.0 {
                    pos = true;
                } else if c < 0.0 {
                    neg = true;
                }
            }
            if !(pos && neg) {
                mask.set(x, y, true);
            }
        }
    }
}

/// Set every pixel whose center lies within `radius` of `center`.
pub fn fill_disc(mask: &mut BinaryMask, center: Point2, radius: f64) {
    fill_capsule(mask, center, center, radius);
}

/// Paint `color` over all set pixels of `mask`.
pub fn paint_mask(img: &mut ImageBuffer, mask: &BinaryMask, color: &[u8]) {
    for (x, y) in mask.iter_set() {
        img.put_pixel(x, y, color);
    }
}

/// Stripe texture over the masked region: bands perpendicular to `dir`, one
/// palette entry per band of `period` pixels.
pub fn paint_stripes(
    img: &mut ImageBuffer,
    mask: &BinaryMask,
    origin: Point2,
    dir: Point2,
    period: f64,
    palette: &[[u8; 3]],
) {
    let d = dir / dir.norm();
    for (x, y) in mask.iter_set() {
        let p = Point2::new(x as f64, y as f64);
        let along = (p - origin).dot(d);
        let band = (along / period).floor() as i64;
        let idx = band.rem_euclid(palette.len() as i64) as usize;
        img.put_pixel(x, y, &palette[idx]);
    }
}

/// Checkerboard texture over the masked region.
pub fn paint_checker(
    img: &mut ImageBuffer,
    mask: &BinaryMask,
    cell: usize,
    a: [u8; 3],
    b: [u8; 3],
) {
    for (x, y) in mask.iter_set() {
        let color = if (x / cell + y / cell) % 2 == 0 { a } else { b };
        img.put_pixel(x, y, &color);
    }
}

/// Deterministic value-noise texture over the masked region (xorshift mix of
/// the pixel coordinates and seed; no external RNG involved).
pub fn paint_noise(img: &mut ImageBuffer, mask: &BinaryMask, seed: u64, base: [u8; 3], spread: u8) {
    for (x, y) in mask.iter_set() {
        let mut v = seed
            .wrapping_mul(0x9e3779b97f4a7c15)
            .wrapping_add((x as u64) << 32 | y as u64);
        v ^= v >> 33;
        v = v.wrapping_mul(0xff51afd7ed558ccd);
        v ^= v >> 33;
        let jitter = (v % (2 * spread as u64 + 1)) as i32 - spread as i32;
        let color = [
            (base[0] as i32 + jitter).clamp(0, 255) as u8,
            (base[1] as i32 + jitter).clamp(0, 255) as u8,
            (base[2] as i32 + jitter).clamp(0, 255) as u8,
        ];
        img.put_pixel(x, y, &color);
    }
}

/// Draw a 1px line segment (for arrow/field visualizations).
pub fn draw_line(img: &mut ImageBuffer, a: Point2, b: Point2, color: &[u8]) {
    let steps = (b - a).norm().ceil().max(1.0) as usize;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let p = a + (b - a) * t;
        let x = (p.x + 0.5).floor() as i64;
        let y = (p.y + 0.5).floor() as i64;
        if x >= 0 && y >= 0 && (x as usize) < img.width() && (y as usize) < img.height() {
            img.put_pixel(x as usize, y as usize, color);
        }
    }
}
