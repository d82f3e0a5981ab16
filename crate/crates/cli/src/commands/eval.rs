//! Batch identity evaluation over a directory of sample folders.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use garmwarp_core::metrics::{pixel_stats, ssim, SsimParams};
use garmwarp_core::pipeline::{try_on_warp, TryOnInputs};

use crate::config::ParamArgs;
use crate::error::{CliError, CliResult};
use crate::formats;

pub const PASS_SSIM: f64 = 0.99;

#[derive(Debug, Args)]
pub struct EvalIdentityArgs {
    /// Directory of sample folders (each holding the warp input files).
    #[arg(long)]
    pub samples: PathBuf,
    #[command(flatten)]
    pub params: ParamArgs,
    /// CSV file to write (sample, ssim, mae, pass).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone)]
pub struct EvalRow {
    pub sample: String,
    pub ssim: f64,
    pub mae: f64,
    pub pass: bool,
}

/// Load one sample folder laid out with the fixed file names.
pub fn load_sample(dir: &Path) -> CliResult<TryOnInputs> {
    let file = |name: &str| dir.join(name);
    let target_mask = file("target_mask.png");
    let inputs = TryOnInputs {
        model_image: formats::load_image(&file("model.png"))?,
        person_image: formats::load_image(&file("person.png"))?,
        model_landmarks: formats::load_landmarks(&file("model_landmarks.json"))?,
        person_landmarks: formats::load_landmarks(&file("person_landmarks.json"))?,
        garment_mask: formats::load_mask(&file("garment_mask.png"))?,
        model_parse: formats::load_parse(&file("model_parse.png"))?,
        person_parse: formats::load_parse(&file("person_parse.png"))?,
        target_clothing_mask: if target_mask.exists() {
            Some(formats::load_mask(&target_mask)?)
        } else {
            None
        },
        person_upper_mask: formats::load_mask(&file("upper_mask.png"))?,
    };
    inputs.validate()?;
    Ok(inputs)
}

/// Warp one sample and score the result against its own source garment
/// segment (the model image masked to the garment silhouette).
pub fn eval_sample(name: &str, inputs: &TryOnInputs, params: &ParamArgs) -> CliResult<EvalRow> {
    let out = try_on_warp(inputs, &params.to_params()?)?;
    let data = out.result.data_mask();
    if data.is_empty() {
        return Err(CliError::input(format!("sample {name}: warp produced no pixels")));
    }
    let source_segment = inputs.model_image.masked(&inputs.garment_mask)?;
    let s = ssim(
        &out.result.warped_garment,
        &source_segment,
        &SsimParams::default(),
        Some(&data),
    )?;
    let stats = pixel_stats(&out.result.warped_garment, &source_segment, Some(&data))?;
    Ok(EvalRow {
        sample: name.to_string(),
        ssim: s,
        mae: stats.mae,
        pass: s >= PASS_SSIM,
    })
}

pub fn cmd_eval_identity(args: &EvalIdentityArgs) -> CliResult<Vec<EvalRow>> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(&args.samples)
        .map_err(|e| CliError::input(format!("{}: {e}", args.samples.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    if dirs.is_empty() {
        return Err(CliError::input(format!(
            "{}: no sample directories found",
            args.samples.display()
        )));
    }

    let mut rows = Vec::new();
    for dir in dirs {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let inputs = load_sample(&dir)?;
        rows.push(eval_sample(&name, &inputs, &args.params)?);
    }

    let mut csv = String::from("sample,ssim,mae,pass\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{:.6},{:.6},{}\n",
            row.sample, row.ssim, row.mae, row.pass
        ));
    }
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::input(format!("{}: {e}", parent.display())))?;
        }
    }
    fs::write(&args.out, csv).map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    Ok(rows)
}
