//! Full-garment warp command.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use garmwarp_core::pipeline::try_on_warp;

use crate::config::{InputArgs, ParamArgs};
use crate::error::{CliError, CliResult};
use crate::formats::{save_image, save_mask};
use crate::report::{OutputFile, RunReport};

#[derive(Debug, Args)]
pub struct WarpArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
}

/// Run the pipeline and write the warp, its masks, a preview, and the run
/// report into the output directory.
pub fn cmd_warp(args: &WarpArgs) -> CliResult<RunReport> {
    let inputs = args.inputs.load()?;
    let params = args.params.to_params()?;
    let out = try_on_warp(&inputs, &params)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    let path = |name: &str| args.out.join(name);
    let r = &out.result;
    save_image(&path("warped.png"), &r.warped_garment)?;
    save_mask(&path("warp_mask.png"), &r.warp_mask)?;
    save_mask(&path("occluded_mask.png"), &r.occluded)?;
    save_mask(&path("inpaint_mask.png"), &r.inpaint_mask)?;
    save_image(&path("preview.png"), &r.preview)?;

    let outputs = [
        ("warped_garment", "warped.png"),
        ("warp_mask", "warp_mask.png"),
        ("occluded_mask", "occluded_mask.png"),
        ("inpaint_mask", "inpaint_mask.png"),
        ("preview", "preview.png"),
        ("report", "report.json"),
    ]
    .iter()
    .map(|(kind, file)| OutputFile {
        kind: kind.to_string(),
        file: file.to_string(),
    })
    .collect();

    let report = RunReport::build(&inputs, r, &out.warnings, &args.params, outputs);
    report.write(&report_path(&args.out))?;
    Ok(report)
}

pub fn report_path(out_dir: &Path) -> PathBuf {
    out_dir.join("report.json")
}
