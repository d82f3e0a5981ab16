//! Textured-band demo: render a rectangle along the source arm bones, warp
//! it to the target pose, and write side-by-side panels. With a longer
//! target bone the matching band stretches by the length ratio, which the
//! tests measure from the valid mask.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use garmwarp_core::atag::{atag_field, AtagCorrespondence, AtagParams};
use garmwarp_core::draw::{fill_capsule, paint_stripes};
use garmwarp_core::geometry::{ArmChain, ArmSide, Point2};
use garmwarp_core::raster::{backward_warp, BinaryMask, ImageBuffer, WarpOutput};

use crate::error::{CliError, CliResult};
use crate::formats::save_image;

#[derive(Debug, Args)]
pub struct DemoRectArgs {
    /// Source chain as six comma-separated numbers: shoulder x,y, elbow x,y,
    /// wrist x,y.
    #[arg(long)]
    pub source_chain: String,
    /// Target chain, same format.
    #[arg(long)]
    pub target_chain: String,
    /// Band width of the rectangle drawn along the bones.
    #[arg(long, default_value_t = 24.0)]
    pub rect_width: f64,
    /// Canvas as WIDTHxHEIGHT.
    #[arg(long, default_value = "320x320")]
    pub canvas: String,
    /// Logistic gate steepness of the sleeve transform, 1/rad.
    #[arg(long, default_value_t = 8.0)]
    pub a: f64,
    #[arg(long)]
    pub out: PathBuf,
}

pub struct DemoOutput {
    pub source_image: ImageBuffer,
    pub band_mask: BinaryMask,
    pub warp: WarpOutput,
    pub source: ArmChain,
    pub target: ArmChain,
}

pub fn parse_chain(text: &str, side: ArmSide) -> CliResult<ArmChain> {
    let nums: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("chain '{text}': {e}")))?;
    if nums.len() != 6 {
        return Err(CliError::input(format!(
            "chain '{text}': expected 6 numbers (shoulder, elbow, wrist), got {}",
            nums.len()
        )));
    }
    Ok(ArmChain::new(
        Point2::new(nums[0], nums[1]),
        Point2::new(nums[2], nums[3]),
        Point2::new(nums[4], nums[5]),
        side,
    )?)
}

fn parse_canvas(text: &str) -> CliResult<(usize, usize)> {
    let parts: Vec<&str> = text.split('x').collect();
    let err = || CliError::input(format!("canvas '{text}': expected WIDTHxHEIGHT"));
    if parts.len() != 2 {
        return Err(err());
    }
    let w = parts[0].trim().parse::<usize>().map_err(|_| err())?;
    let h = parts[1].trim().parse::<usize>().map_err(|_| err())?;
    if w == 0 || h == 0 {
        return Err(err());
    }
    Ok((w, h))
}

/// Build the demo in memory; the command wrapper writes the files.
pub fn run_demo(
    source: ArmChain,
    target: ArmChain,
    rect_width: f64,
    canvas: (usize, usize),
    a: f64,
) -> CliResult<DemoOutput> {
    let (w, h) = canvas;
    let params = AtagParams::with_steepness(a)?;
    let corr = AtagCorrespondence::new(target, source)?;

    // Source band along both bones, striped perpendicular to each bone so
    // radial scaling is visible.
    let half = rect_width / 2.0;
    let mut upper_band = BinaryMask::new(w, h);
    fill_capsule(&mut upper_band, source.elbow(), source.shoulder(), half);
    let mut fore_band = BinaryMask::new(w, h);
    fill_capsule(&mut fore_band, source.elbow(), source.wrist(), half);
    let band_mask = upper_band.or(&fore_band)?;

    let mut source_image = ImageBuffer::new(w, h, 3);
    source_image.fill(&[18, 18, 22]);
    paint_stripes(
        &mut source_image,
        &upper_band,
        source.elbow(),
        source.shoulder() - source.elbow(),
        8.0,
        &[[204, 60, 60], [245, 200, 70]],
    );
    paint_stripes(
        &mut source_image,
        &fore_band,
        source.elbow(),
        source.wrist() - source.elbow(),
        8.0,
        &[[60, 120, 210], [110, 220, 160]],
    );

    // Backward-map the whole canvas; the source band mask carves the shape.
    let map = atag_field(&BinaryMask::full(w, h), &corr, &params);
    let warp = backward_warp(&source_image, &band_mask, &map)?;

    Ok(DemoOutput {
        source_image,
        band_mask,
        warp,
        source,
        target,
    })
}

pub fn cmd_demo_rect(args: &DemoRectArgs) -> CliResult<DemoOutput> {
    let source = parse_chain(&args.source_chain, ArmSide::Left)?;
    let target = parse_chain(&args.target_chain, ArmSide::Left)?;
    let canvas = parse_canvas(&args.canvas)?;
    let demo = run_demo(source, target, args.rect_width, canvas, args.a)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    save_image(&args.out.join("demo_source.png"), &demo.source_image)?;
    save_image(&args.out.join("demo_warped.png"), &demo.warp.image)?;
    save_image(
        &args.out.join("demo_panel.png"),
        &side_by_side(&demo.source_image, &demo.warp.image),
    )?;
    Ok(demo)
}

fn side_by_side(a: &ImageBuffer, b: &ImageBuffer) -> ImageBuffer {
    let gap = 4usize;
    let w = a.width() + gap + b.width();
    let h = a.height().max(b.height());
    let mut out = ImageBuffer::new(w, h, a.channels());
    out.fill(&[48, 48, 48]);
    for y in 0..a.height() {
        for x in 0..a.width() {
            let px = a.pixel(x, y).to_vec();
            out.put_pixel(x, y, &px);
        }
    }
    for y in 0..b.height() {
        for x in 0..b.width() {
            let px = b.pixel(x, y).to_vec();
            out.put_pixel(a.width() + gap + x, y, &px);
        }
    }
    out
}
