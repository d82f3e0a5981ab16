//! Backward-field visualization: displacement magnitude heatmap and
//! rasterized arrows.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use garmwarp_core::draw::{draw_line, fill_disc};
use garmwarp_core::geometry::Point2;
use garmwarp_core::pipeline::try_on_warp;
use garmwarp_core::raster::{BinaryMask, ImageBuffer, SourceMap};

use crate::config::{InputArgs, ParamArgs};
use crate::error::{CliError, CliResult};
use crate::formats::save_image;

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Arrow spacing in pixels.
    #[arg(long, default_value_t = 8)]
    pub arrow_step: usize,
    #[arg(long)]
    pub out: PathBuf,
}

pub struct FieldOutput {
    pub map: SourceMap,
    pub magnitude: ImageBuffer,
    pub arrows: ImageBuffer,
}

/// Displacement magnitude per mapped pixel, normalized to the field's own
/// maximum (zero displacement renders black, holes render black).
pub fn magnitude_image(map: &SourceMap) -> ImageBuffer {
    let (w, h) = map.dims();
    let mut mags = vec![0.0f64; w * h];
    let mut max_mag = 0.0f64;
    for y in 0..h {
        for x in 0..w {
            if let Some(src) = map.get(x, y) {
                let d = src.distance(Point2::new(x as f64, y as f64));
                mags[y * w + x] = d;
                max_mag = max_mag.max(d);
            }
        }
    }
    let mut img = ImageBuffer::new(w, h, 1);
    // Sub-visual residuals (spline rounding on identity poses) render as a
    // zero field rather than amplified noise.
    if max_mag > 1e-6 {
        for y in 0..h {
            for x in 0..w {
                if map.get(x, y).is_some() {
                    let v = (mags[y * w + x] / max_mag * 255.0 + 0.5).floor() as u8;
                    img.put_pixel(x, y, &[v]);
                }
            }
        }
    } else {
        // All-zero field: mark mapped pixels faintly so the region reads.
        for y in 0..h {
            for x in 0..w {
                if map.get(x, y).is_some() {
                    img.put_pixel(x, y, &[32]);
                }
            }
        }
    }
    img
}

/// Arrows from sampled target pixels toward their source positions, over a
/// dimmed copy of the person image.
pub fn arrow_image(map: &SourceMap, background: &ImageBuffer, step: usize) -> ImageBuffer {
    let mut img = ImageBuffer::new(background.width(), background.height(), 3);
    for y in 0..background.height() {
        for x in 0..background.width() {
            let p = background.pixel(x, y);
            let dim = |v: u8| (v / 3) as u8;
            let px = if background.channels() == 1 {
                [dim(p[0]); 3]
            } else {
                [dim(p[0]), dim(p[1]), dim(p[2])]
            };
            img.put_pixel(x, y, &px);
        }
    }
    let step = step.max(1);
    for y in (0..map.height()).step_by(step) {
        for x in (0..map.width()).step_by(step) {
            if let Some(src) = map.get(x, y) {
                let from = Point2::new(x as f64, y as f64);
                draw_line(&mut img, from, src, &[255, 64, 48]);
                let mut tip = BinaryMask::new(img.width(), img.height());
                fill_disc(&mut tip, from, 0.8);
                for (tx, ty) in tip.iter_set() {
                    img.put_pixel(tx, ty, &[255, 220, 80]);
                }
            }
        }
    }
    img
}

pub fn cmd_field(args: &FieldArgs) -> CliResult<FieldOutput> {
    let inputs = args.inputs.load()?;
    let params = args.params.to_params()?;
    let out = try_on_warp(&inputs, &params)?;
    let map = out.result.combined_map();

    let magnitude = magnitude_image(&map);
    let arrows = arrow_image(&map, &inputs.person_image, args.arrow_step);

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    save_image(&args.out.join("field_magnitude.png"), &magnitude)?;
    save_image(&args.out.join("field_arrows.png"), &arrows)?;
    Ok(FieldOutput { map, magnitude, arrows })
}
