//! Single-part warp commands: one sleeve, or the torso alone.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use garmwarp_core::atag::{atag_field, AtagCorrespondence};
use garmwarp_core::error::Error as CoreError;
use garmwarp_core::geometry::ArmSide;
use garmwarp_core::pipeline::{split_garment, torso_correspondences, ParseClass};
use garmwarp_core::raster::backward_warp;
use garmwarp_core::tps::{tps_field, tps_fit};
use serde::Serialize;

use crate::config::{InputArgs, ParamArgs};
use crate::error::{CliError, CliResult};
use crate::formats::{save_image, save_mask};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct WarpSleeveArgs {
    /// Which sleeve to warp.
    #[arg(long, value_enum)]
    pub side: SideArg,
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct WarpTorsoArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct PartRunReport {
    pub part: String,
    pub region_px: usize,
    pub valid_px: usize,
    pub hole_px: usize,
    pub warnings: Vec<String>,
}

/// Warp one sleeve. Unlike the full pipeline, a missing arm landmark here is
/// an error, not a degradation. The target region is the person's arm-parse
/// class within the clothing (or upper-body) mask.
pub fn cmd_warp_sleeve(args: &WarpSleeveArgs) -> CliResult<PartRunReport> {
    let inputs = args.inputs.load()?;
    let params = args.params.to_params()?;
    let side = match args.side {
        SideArg::Left => ArmSide::Left,
        SideArg::Right => ArmSide::Right,
    };

    let garment = split_garment(&inputs.model_image, &inputs.garment_mask, &inputs.model_parse)?;
    let target = inputs
        .person_landmarks
        .arm_chain(side, params.confidence_threshold)?;
    let source = inputs
        .model_landmarks
        .arm_chain(side, params.confidence_threshold)?;
    let corr = AtagCorrespondence::new(target, source)?;

    let mut warnings = Vec::new();
    if corr.flexion_exceeds(&params.atag) {
        warnings.push(format!(
            "{} arm flexion {:.1} deg exceeds limit {:.1} deg",
            side.name(),
            corr.target_flexion().to_degrees(),
            params.atag.flexion_warn_limit.to_degrees()
        ));
    }

    let arm_class = match side {
        ArmSide::Left => ParseClass::LeftArm,
        ArmSide::Right => ParseClass::RightArm,
    };
    let base = inputs
        .target_clothing_mask
        .as_ref()
        .unwrap_or(&inputs.person_upper_mask);
    let region = base.and(&inputs.person_parse.class_mask(arm_class))?;
    let part = match side {
        ArmSide::Left => &garment.lsleeve,
        ArmSide::Right => &garment.rsleeve,
    };
    let map = atag_field(&region, &corr, &params.atag);
    let warp = backward_warp(&part.image, &part.mask, &map)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    save_image(&args.out.join("sleeve_warped.png"), &warp.image)?;
    save_mask(&args.out.join("sleeve_valid.png"), &warp.valid)?;
    save_mask(&args.out.join("sleeve_holes.png"), &warp.holes)?;

    let report = PartRunReport {
        part: format!("{}_sleeve", side.name()),
        region_px: map.mapped_count(),
        valid_px: warp.valid.count_set(),
        hole_px: warp.holes.count_set(),
        warnings,
    };
    write_part_report(&args.out, &report)?;
    Ok(report)
}

/// Warp the torso alone through the spline registration.
pub fn cmd_warp_torso(args: &WarpTorsoArgs) -> CliResult<PartRunReport> {
    let inputs = args.inputs.load()?;
    let params = args.params.to_params()?;

    let garment = split_garment(&inputs.model_image, &inputs.garment_mask, &inputs.model_parse)?;
    let corrs = torso_correspondences(
        &inputs.model_landmarks,
        &inputs.person_landmarks,
        &params.torso_landmarks,
        params.confidence_threshold,
    );
    if corrs.len() < 3 {
        return Err(CoreError::NothingToWarp.into());
    }
    let model = tps_fit(&corrs, params.tps_lambda)?;

    let base = inputs
        .target_clothing_mask
        .as_ref()
        .unwrap_or(&inputs.person_upper_mask);
    let region = base.and(&inputs.person_parse.class_mask(ParseClass::Torso))?;
    let map = tps_field(&region, &model);
    let warp = backward_warp(&garment.torso.image, &garment.torso.mask, &map)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    save_image(&args.out.join("torso_warped.png"), &warp.image)?;
    save_mask(&args.out.join("torso_valid.png"), &warp.valid)?;
    save_mask(&args.out.join("torso_holes.png"), &warp.holes)?;

    let report = PartRunReport {
        part: "torso".to_string(),
        region_px: map.mapped_count(),
        valid_px: warp.valid.count_set(),
        hole_px: warp.holes.count_set(),
        warnings: Vec::new(),
    };
    write_part_report(&args.out, &report)?;
    Ok(report)
}

fn write_part_report(out_dir: &std::path::Path, report: &PartRunReport) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::input(format!("report serialization: {e}")))?;
    fs::write(out_dir.join("report.json"), text)
        .map_err(|e| CliError::input(format!("{}: {e}", out_dir.display())))
}
