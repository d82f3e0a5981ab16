//! Shared command-line argument groups and their conversion to pipeline
//! parameters.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use garmwarp_core::atag::AtagParams;
use garmwarp_core::pipeline::{
    CompositeOrder, InpaintMode, PipelineParams, TorsoLandmark, TryOnInputs,
};

use crate::error::{CliError, CliResult};
use crate::formats;

/// Input files for a full warp job.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Model image (garment source), 8-bit PNG.
    #[arg(long)]
    pub model: PathBuf,
    /// Person image (warp target), 8-bit PNG.
    #[arg(long)]
    pub person: PathBuf,
    /// Model keypoints JSON.
    #[arg(long)]
    pub model_landmarks: PathBuf,
    /// Person keypoints JSON.
    #[arg(long)]
    pub person_landmarks: PathBuf,
    /// Garment silhouette mask in the model frame.
    #[arg(long)]
    pub garment_mask: PathBuf,
    /// Part-parse label map of the model.
    #[arg(long)]
    pub model_parse: PathBuf,
    /// Part-parse label map of the person.
    #[arg(long)]
    pub person_parse: PathBuf,
    /// Upper-body (clothing + skin) mask of the person.
    #[arg(long)]
    pub upper_mask: PathBuf,
    /// Optional target clothing mask; without it the warp mask is carved
    /// from the upper-body mask instead.
    #[arg(long)]
    pub target_mask: Option<PathBuf>,
}

impl InputArgs {
    pub fn load(&self) -> CliResult<TryOnInputs> {
        let inputs = TryOnInputs {
            model_image: formats::load_image(&self.model)?,
            person_image: formats::load_image(&self.person)?,
            model_landmarks: formats::load_landmarks(&self.model_landmarks)?,
            person_landmarks: formats::load_landmarks(&self.person_landmarks)?,
            garment_mask: formats::load_mask(&self.garment_mask)?,
            model_parse: formats::load_parse(&self.model_parse)?,
            person_parse: formats::load_parse(&self.person_parse)?,
            target_clothing_mask: self
                .target_mask
                .as_ref()
                .map(|p| formats::load_mask(p))
                .transpose()?,
            person_upper_mask: formats::load_mask(&self.upper_mask)?,
        };
        inputs.validate()?;
        Ok(inputs)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CompositeOrderArg {
    SleevesOverTorso,
    TorsoOverSleeves,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InpaintModeArg {
    Literal,
    Extended,
}

/// Tunable parameters shared by the warp commands.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Logistic gate steepness of the sleeve transform, 1/rad.
    #[arg(long, default_value_t = 8.0)]
    pub a: f64,
    /// Spline regularization for the torso fit.
    #[arg(long, default_value_t = 1e-3)]
    pub lambda: f64,
    /// Keypoints below this confidence are treated as absent.
    #[arg(long, default_value_t = 0.3)]
    pub conf_threshold: f64,
    #[arg(long, value_enum, default_value_t = CompositeOrderArg::SleevesOverTorso)]
    pub composite_order: CompositeOrderArg,
    #[arg(long, value_enum, default_value_t = InpaintModeArg::Literal)]
    pub inpaint_mode: InpaintModeArg,
}

impl ParamArgs {
    pub fn to_params(&self) -> CliResult<PipelineParams> {
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(CliError::input(format!("invalid --lambda {}", self.lambda)));
        }
        if !(0.0..=1.0).contains(&self.conf_threshold) {
            return Err(CliError::input(format!(
                "--conf-threshold must be in [0, 1], got {}",
                self.conf_threshold
            )));
        }
        Ok(PipelineParams {
            atag: AtagParams::with_steepness(self.a)?,
            tps_lambda: self.lambda,
            confidence_threshold: self.conf_threshold,
            torso_landmarks: TorsoLandmark::DEFAULT.to_vec(),
            composite_order: match self.composite_order {
                CompositeOrderArg::SleevesOverTorso => CompositeOrder::SleevesOverTorso,
                CompositeOrderArg::TorsoOverSleeves => CompositeOrder::TorsoOverSleeves,
            },
            inpaint_mode: match self.inpaint_mode {
                InpaintModeArg::Literal => InpaintMode::Literal,
                InpaintModeArg::Extended => InpaintMode::Extended,
            },
        })
    }

    pub fn composite_order_name(&self) -> &'static str {
        match self.composite_order {
            CompositeOrderArg::SleevesOverTorso => "sleeves-over-torso",
            CompositeOrderArg::TorsoOverSleeves => "torso-over-sleeves",
        }
    }

    pub fn inpaint_mode_name(&self) -> &'static str {
        match self.inpaint_mode {
            InpaintModeArg::Literal => "literal",
            InpaintModeArg::Extended => "extended",
        }
    }
}
