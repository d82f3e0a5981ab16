//! Landmark-registered thin-plate-spline transform.
//!
//! Fits the classic biharmonic spline through 2D point correspondences and
//! evaluates it as a backward map (target coordinates in, source coordinates
//! out). The kernel is U(d) = d^2 ln d with natural log and U(0) = 0;
//! regularization adds lambda to the kernel block diagonal, so lambda = 0
//! interpolates the control points exactly.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::raster::{BinaryMask, SourceMap};

/// One control pair: the fitted map sends `target` to `source`.
#[derive(Debug, Clone, Copy)]
pub struct Correspondence {
    pub target: Point2,
    pub source: Point2,
}

/// A fitted thin-plate spline.
#[derive(Debug, Clone)]
pub struct TpsModel {
    control_points: Vec<Point2>,
    kernel_weights: Vec<[f64; 2]>,
    /// Row-per-output-coordinate affine block: out = a0 + a1 x + a2 y.
    affine: [[f64; 3]; 2],
    lambda: f64,
}

fn kernel_u(d: f64) -> f64 {
    if d > 0.0 {
        d * d * d.ln()
    } else {
        0.0
    }
}

/// Fit a spline through `corrs` with kernel regularization `lambda`.
pub fn tps_fit(corrs: &[Correspondence], lambda: f64) -> Result<TpsModel> {
    let n = corrs.len();
    if n < 3 {
        return Err(Error::TpsFit(format!(
            "need at least 3 correspondences, got {n}"
        )));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::TpsFit(format!("invalid lambda {lambda}")));
    }
    for c in corrs {
        if !(c.target.is_finite() && c.source.is_finite()) {
            return Err(Error::TpsFit("non-finite correspondence".into()));
        }
    }
    let targets: Vec<Point2> = corrs.iter().map(|c| c.target).collect();
    if collinear(&targets) {
        return Err(Error::TpsFit(
            "target control points are collinear".into(),
        ));
    }

    // Augmented system [K + lambda I, P; P^T, 0] [w; a] = [v; 0].
    let size = n + 3;
    let mut a = DMatrix::<f64>::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                lambda
            } else {
                kernel_u(targets[i].distance(targets[j]))
            };
            a[(i, j)] = v;
        }
        a[(i, n)] = 1.0;
        a[(i, n + 1)] = targets[i].x;
        a[(i, n + 2)] = targets[i].y;
        a[(n, i)] = 1.0;
        a[(n + 1, i)] = targets[i].x;
        a[(n + 2, i)] = targets[i].y;
    }
    let mut b = DMatrix::<f64>::zeros(size, 2);
    for (i, c) in corrs.iter().enumerate() {
        b[(i, 0)] = c.source.x;
        b[(i, 1)] = c.source.y;
    }

    let lu = a.clone().lu();
    let sol = lu
        .solve(&b)
        .ok_or_else(|| Error::TpsFit("singular spline system".into()))?;

    // Guard against a numerically meaningless solve on an ill-conditioned
    // system that LU did not flag.
    let residual = (&a * &sol - &b).abs().max();
    let scale = b.abs().max().max(1.0);
    if !residual.is_finite() || residual > 1e-6 * scale {
        return Err(Error::TpsFit(format!(
            "ill-conditioned spline system (residual {residual:.3e})"
        )));
    }

    let kernel_weights = (0..n).map(|i| [sol[(i, 0)], sol[(i, 1)]]).collect();
    let affine = [
        [sol[(n, 0)], sol[(n + 1, 0)], sol[(n + 2, 0)]],
        [sol[(n, 1)], sol[(n + 1, 1)], sol[(n + 2, 1)]],
    ];
    Ok(TpsModel {
        control_points: targets,
        kernel_weights,
        affine,
        lambda,
    })
}

/// Evaluate the fitted map at a point.
pub fn tps_eval(model: &TpsModel, x: Point2) -> Point2 {
    let mut out_x = model.affine[0][0] + model.affine[0][1] * x.x + model.affine[0][2] * x.y;
    let mut out_y = model.affine[1][0] + model.affine[1][1] * x.x + model.affine[1][2] * x.y;
    for (cp, w) in model.control_points.iter().zip(&model.kernel_weights) {
        let u = kernel_u(x.distance(*cp));
        out_x += w[0] * u;
        out_y += w[1] * u;
    }
    Point2::new(out_x, out_y)
}

/// Evaluate the map at the center of every set pixel of `region`.
pub fn tps_field(region: &BinaryMask, model: &TpsModel) -> SourceMap {
    SourceMap::from_region(region, |p| tps_eval(model, p))
}

impl TpsModel {
    pub fn control_points(&self) -> &[Point2] {
        &self.control_points
    }

    pub fn kernel_weights(&self) -> &[[f64; 2]] {
        &self.kernel_weights
    }

    pub fn affine(&self) -> &[[f64; 3]; 2] {
        &self.affine
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Largest violation of the spline side conditions (weights sum to zero
    /// and are orthogonal to the control coordinates).
    pub fn side_condition_residual(&self) -> f64 {
        let mut sums = [0.0f64; 6];
        for (cp, w) in self.control_points.iter().zip(&self.kernel_weights) {
            sums[0] += w[0];
            sums[1] += w[1];
            sums[2] += w[0] * cp.x;
            sums[3] += w[1] * cp.x;
            sums[4] += w[0] * cp.y;
            sums[5] += w[1] * cp.y;
        }
        sums.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// True when all points lie on one line (twice-triangle-area test against
/// the two most distant points, scaled to the point spread).
fn collinear(points: &[Point2]) -> bool {
    let n = points.len();
    let (mut pi, mut pj, mut best) = (0, 0, 0.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = points[i].distance(points[j]);
            if d > best {
                best = d;
                pi = i;
                pj = j;
            }
        }
    }
    if best == 0.0 {
        return true;
    }
    let base = points[pj] - points[pi];
    points
        .iter()
        .all(|&p| base.cross(p - points[pi]).abs() <= 1e-9 * best * best)
}
