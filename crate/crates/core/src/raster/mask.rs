//! Binary pixel masks with elementwise Boolean algebra and morphology.

use crate::error::{Error, Result};

/// Row-major boolean pixel grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    /// All-unset mask.
    pub fn new(width: usize, height: usize) -> Self {
        BinaryMask {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    /// All-set mask.
    pub fn full(width: usize, height: usize) -> Self {
        BinaryMask {
            width,
            height,
            bits: vec![true; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        BinaryMask {
            width,
            height,
            bits,
        }
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
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    pub fn count_set(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Coordinates of all set pixels, row-major order.
    pub fn iter_set(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i % w, i / w))
    }

    fn check_dims(&self, other: &BinaryMask, context: &'static str) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::dims(context, self.dims(), other.dims()));
        }
        Ok(())
    }

    pub fn and(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_dims(other, "mask and")?;
        Ok(self.zip_with(other, |a, b| a && b))
    }

    pub fn or(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_dims(other, "mask or")?;
        Ok(self.zip_with(other, |a, b| a || b))
    }

    pub fn not(&self) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// Set difference: self AND NOT other.
    pub fn minus(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_dims(other, "mask minus")?;
        Ok(self.zip_with(other, |a, b| a && !b))
    }

    fn zip_with(&self, other: &BinaryMask, f: impl Fn(bool, bool) -> bool) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Morphological dilation by a disc: every pixel within `radius`
    /// (Euclidean) of a set pixel becomes set.
    pub fn dilate(&self, radius: u32) -> BinaryMask {
        let r = radius as i64;
        let r_sq = r * r;
        let mut offsets = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy <= r_sq {
                    offsets.push((dx, dy));
                }
            }
        }
        let mut out = BinaryMask::new(self.width, self.height);
        for (x, y) in self.iter_set() {
            for &(dx, dy) in &offsets {
                let nx = x as i64 + dx;
                let ny = y as i64 + dy;
                if nx >= 0 && ny >= 0 && (nx as usize) < self.width && (ny as usize) < self.height {
                    out.set(nx as usize, ny as usize, true);
                }
            }
        }
        out
    }

    /// Exact squared Euclidean distance from every pixel to the nearest set
    /// pixel (`f64::INFINITY` when the mask is empty). Two-pass parabolic
    /// envelope transform, one dimension at a time.
    pub fn distance_sq_transform(&self) -> Vec<f64> {
        const INF: f64 = f64::INFINITY;
        let (w, h) = (self.width, self.height);
        let mut grid = vec![INF; w * h];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                grid[i] = 0.0;
            }
        }
        // Columns first, then rows.
        let mut scratch = vec![0.0; w.max(h)];
        for x in 0..w {
            let col: Vec<f64> = (0..h).map(|y| grid[y * w + x]).collect();
            dt_1d(&col, &mut scratch[..h]);
            for y in 0..h {
                grid[y * w + x] = scratch[y];
            }
        }
        for y in 0..h {
            let row: Vec<f64> = grid[y * w..(y + 1) * w].to_vec();
            dt_1d(&row, &mut scratch[..w]);
            grid[y * w..(y + 1) * w].copy_from_slice(&scratch[..w]);
        }
        grid
    }
}

/// 1D squared-distance transform of a sampled function (lower envelope of
/// parabolas rooted at each sample).
fn dt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    debug_assert!(out.len() >= n);
    if n == 0 {
        return;
    }
    let mut v = vec![0usize; n]; // parabola roots
    let mut z = vec![0.0f64; n + 1]; // envelope boundaries
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        if f[q] == f64::INFINITY && f[v[k]] == f64::INFINITY {
            continue;
        }
        loop {
            let p = v[k];
            let s = if f[q] == f64::INFINITY {
                f64::INFINITY
            } else if f[p] == f64::INFINITY {
                f64::NEG_INFINITY
            } else {
                ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q - p) as f64)
            };
            if s <= z[k] {
                if k == 0 {
                    v[0] = q;
                    z[1] = f64::INFINITY;
                    break;
                }
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let d = q as f64 - p as f64;
        out[q] = if f[p] == f64::INFINITY {
            f64::INFINITY
        } else {
            d * d + f[p]
        };
    }
}
