//! Image similarity metrics for desk-scale self-checks.

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, ImageBuffer};

/// Windowed-SSIM parameters (standard constants, 8-bit dynamic range).
#[derive(Debug, Clone, Copy)]
pub struct SsimParams {
    /// Odd window side length.
    pub window: usize,
    pub gaussian_sigma: f64,
    pub k1: f64,
    pub k2: f64,
    pub dynamic_range: f64,
}

impl Default for SsimParams {
    fn default() -> Self {
        SsimParams {
            window: 11,
            gaussian_sigma: 1.5,
            k1: 0.01,
            k2: 0.03,
            dynamic_range: 255.0,
        }
    }
}

/// Luma conversion weights for multichannel inputs.
const LUMA: [f64; 3] = [0.299, 0.587, 0.114];

fn to_luma(img: &ImageBuffer) -> Vec<f64> {
    let (w, h) = img.dims();
    let mut out = Vec::with_capacity(w * h);
    match img.channels() {
        1 => out.extend(img.data().iter().map(|&v| v as f64)),
        _ => {
            for y in 0..h {
                for x in 0..w {
                    let p = img.pixel(x, y);
                    out.push(LUMA[0] * p[0] as f64 + LUMA[1] * p[1] as f64 + LUMA[2] * p[2] as f64);
                }
            }
        }
    }
    out
}

fn check_pair(a: &ImageBuffer, b: &ImageBuffer, roi: Option<&BinaryMask>) -> Result<()> {
    if a.dims() != b.dims() || a.channels() != b.channels() {
        return Err(Error::dims("metric image pair", a.dims(), b.dims()));
    }
    if let Some(roi) = roi {
        if roi.dims() != a.dims() {
            return Err(Error::dims("metric roi", a.dims(), roi.dims()));
        }
    }
    Ok(())
}

/// Separable Gaussian-weighted local mean of `vals`, renormalized over the
/// in-bounds part of the window near image borders.
fn local_means(vals: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let radius = kernel.len() / 2;
    // Horizontal pass: weighted sums and weight totals per pixel.
    let mut sum_x = vec![0.0; w * h];
    let mut wgt_x = vec![0.0; w];
    for x in 0..w {
        let mut wsum = 0.0;
        for (k, &g) in kernel.iter().enumerate() {
            let dx = k as isize - radius as isize;
            let nx = x as isize + dx;
            if nx >= 0 && (nx as usize) < w {
                wsum += g;
            }
        }
        wgt_x[x] = wsum;
    }
    for y in 0..h {
        let row = &vals[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0.0;
            for (k, &g) in kernel.iter().enumerate() {
                let dx = k as isize - radius as isize;
                let nx = x as isize + dx;
                if nx >= 0 && (nx as usize) < w {
                    acc += g * row[nx as usize];
                }
            }
            sum_x[y * w + x] = acc;
        }
    }
    // Vertical pass over the horizontal sums, then renormalize by the
    // factored in-bounds weight (the clipped window is a rectangle).
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let mut wsum = 0.0;
        for (k, &g) in kernel.iter().enumerate() {
            let dy = k as isize - radius as isize;
            let ny = y as isize + dy;
            if ny >= 0 && (ny as usize) < h {
                wsum += g;
            }
        }
        for x in 0..w {
            let mut acc = 0.0;
            for (k, &g) in kernel.iter().enumerate() {
                let dy = k as isize - radius as isize;
                let ny = y as isize + dy;
                if ny >= 0 && (ny as usize) < h {
                    acc += g * sum_x[ny as usize * w + x];
                }
            }
            out[y * w + x] = acc / (wsum * wgt_x[x]);
        }
    }
    out
}

fn gaussian_kernel(window: usize, sigma: f64) -> Vec<f64> {
    let radius = (window / 2) as isize;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|d| (-((d * d) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = k.iter().sum();
    for v in &mut k {
        *v /= total;
    }
    k
}

/// Mean structural similarity between two images, optionally restricted to
/// windows whose center pixel is inside `roi`. Multichannel inputs are
/// compared on luma. Identical inputs score exactly 1.
pub fn ssim(
    a: &ImageBuffer,
    b: &ImageBuffer,
    params: &SsimParams,
    roi: Option<&BinaryMask>,
) -> Result<f64> {
    check_pair(a, b, roi)?;
    if params.window < 3 || params.window % 2 == 0 {
        return Err(Error::InvalidValue(format!(
            "SSIM window must be odd and >= 3, got {}",
            params.window
        )));
    }
    let (w, h) = a.dims();
    if w == 0 || h == 0 {
        return Err(Error::InvalidValue("SSIM of empty image".into()));
    }
    let la = to_luma(a);
    let lb = to_luma(b);
    let aa: Vec<f64> = la.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = lb.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = la.iter().zip(&lb).map(|(x, y)| x * y).collect();
    let kernel = gaussian_kernel(params.window, params.gaussian_sigma);
    let mu_a = local_means(&la, w, h, &kernel);
    let mu_b = local_means(&lb, w, h, &kernel);
    let e_aa = local_means(&aa, w, h, &kernel);
    let e_bb = local_means(&bb, w, h, &kernel);
    let e_ab = local_means(&ab, w, h, &kernel);
    let c1 = (params.k1 * params.dynamic_range).powi(2);
    let c2 = (params.k2 * params.dynamic_range).powi(2);

    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..w * h {
        if let Some(roi) = roi {
            if !roi.get(i % w, i / w) {
                continue;
            }
        }
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = e_aa[i] - ma * ma;
        let var_b = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        let num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
        let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
        total += num / den;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidValue("SSIM roi selects no pixels".into()));
    }
    Ok(total / count as f64)
}

/// Aggregate pixel error statistics over all channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelStats {
    pub mae: f64,
    pub rmse: f64,
    /// `None` when the images are identical over the roi (infinite PSNR).
    pub psnr: Option<f64>,
}

/// Mean absolute error, root mean square error, and PSNR over `roi` (whole
/// frame when absent).
pub fn pixel_stats(
    a: &ImageBuffer,
    b: &ImageBuffer,
    roi: Option<&BinaryMask>,
) -> Result<PixelStats> {
    check_pair(a, b, roi)?;
    let (w, h) = a.dims();
    let channels = a.channels();
    let mut abs_sum = 0.0f64;
    let mut sq_sum = 0.0f64;
    let mut count = 0usize;
    for y in 0..h {
        for x in 0..w {
            if let Some(roi) = roi {
                if !roi.get(x, y) {
                    continue;
                }
            }
            let pa = a.pixel(x, y);
            let pb = b.pixel(x, y);
            for c in 0..channels {
                let d = pa[c] as f64 - pb[c] as f64;
                abs_sum += d.abs();
                sq_sum += d * d;
            }
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::InvalidValue("pixel stats roi selects no pixels".into()));
    }
    let n = (count * channels) as f64;
    let mse = sq_sum / n;
    Ok(PixelStats {
        mae: abs_sum / n,
        rmse: mse.sqrt(),
        psnr: if mse == 0.0 {
            None
        } else {
            Some(10.0 * (255.0f64 * 255.0 / mse).log10())
        },
    })
}
