//! Machine-readable run report.

use std::path::Path;

use garmwarp_core::metrics::{pixel_stats, ssim, SsimParams};
use garmwarp_core::pipeline::{Part, PipelineWarning, TryOnInputs, WarpResult};
use serde::Serialize;

use crate::config::ParamArgs;
use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub parameters: ReportParams,
    pub parts: Vec<PartReport>,
    pub warnings: Vec<String>,
    pub metrics: ReportMetrics,
    pub outputs: Vec<OutputFile>,
}

#[derive(Debug, Serialize)]
pub struct ReportParams {
    pub a: f64,
    pub lambda: f64,
    pub conf_threshold: f64,
    pub composite_order: String,
    pub inpaint_mode: String,
    pub torso_landmarks: Vec<String>,
    pub target_mask_provided: bool,
}

#[derive(Debug, Serialize)]
pub struct PartReport {
    pub part: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub region_px: usize,
    pub valid_px: usize,
    pub hole_px: usize,
    pub composited_px: usize,
}

#[derive(Debug, Serialize)]
pub struct ReportMetrics {
    pub warp_mask_px: usize,
    pub occluded_px: usize,
    pub data_px: usize,
    /// Structural similarity of the warped garment against the model image
    /// over the data region; present only when the frames share dimensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warp_vs_source_ssim: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warp_vs_source_mae: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub kind: String,
    pub file: String,
}

impl RunReport {
    pub fn build(
        inputs: &TryOnInputs,
        result: &WarpResult,
        warnings: &[PipelineWarning],
        params: &ParamArgs,
        outputs: Vec<OutputFile>,
    ) -> Self {
        let warning_for = |part: Part| {
            warnings.iter().find_map(|w| match (part, w) {
                (Part::Torso, PipelineWarning::TorsoSkipped { reason }) => Some(reason.clone()),
                (Part::LeftSleeve, PipelineWarning::SleeveSkipped { side, reason })
                    if side.name() == "left" =>
                {
                    Some(reason.clone())
                }
                (Part::RightSleeve, PipelineWarning::SleeveSkipped { side, reason })
                    if side.name() == "right" =>
                {
                    Some(reason.clone())
                }
                _ => None,
            })
        };
        let parts = Part::ALL
            .iter()
            .map(|&part| match result.part(part) {
                Some(out) => PartReport {
                    part: part.name().to_string(),
                    status: "warped".to_string(),
                    reason: None,
                    region_px: out.map.mapped_count(),
                    valid_px: out.valid.count_set(),
                    hole_px: out.holes.count_set(),
                    composited_px: out.data_mask().count_set(),
                },
                None => PartReport {
                    part: part.name().to_string(),
                    status: "skipped".to_string(),
                    reason: warning_for(part),
                    region_px: 0,
                    valid_px: 0,
                    hole_px: 0,
                    composited_px: 0,
                },
            })
            .collect();

        let data = result.data_mask();
        let same_frame = inputs.model_image.dims() == inputs.person_image.dims()
            && inputs.model_image.channels() == inputs.person_image.channels();
        // Compare against the garment segment (model image masked to the
        // garment) so windows near the silhouette see matching backgrounds.
        let (warp_ssim, warp_mae) = if same_frame && !data.is_empty() {
            match inputs.model_image.masked(&inputs.garment_mask) {
                Ok(source_segment) => {
                    let s = ssim(
                        &result.warped_garment,
                        &source_segment,
                        &SsimParams::default(),
                        Some(&data),
                    )
                    .ok();
                    let stats =
                        pixel_stats(&result.warped_garment, &source_segment, Some(&data)).ok();
                    (s, stats.map(|st| st.mae))
                }
                Err(_) => (None, None),
            }
        } else {
            (None, None)
        };

        RunReport {
            parameters: ReportParams {
                a: params.a,
                lambda: params.lambda,
                conf_threshold: params.conf_threshold,
                composite_order: params.composite_order_name().to_string(),
                inpaint_mode: params.inpaint_mode_name().to_string(),
                torso_landmarks: garmwarp_core::pipeline::TorsoLandmark::DEFAULT
                    .iter()
                    .map(|t| t.name().to_string())
                    .collect(),
                target_mask_provided: inputs.target_clothing_mask.is_some(),
            },
            parts,
            warnings: warnings.iter().map(|w| w.to_string()).collect(),
            metrics: ReportMetrics {
                warp_mask_px: result.warp_mask.count_set(),
                occluded_px: result.occluded.count_set(),
                data_px: data.count_set(),
                warp_vs_source_ssim: warp_ssim,
                warp_vs_source_mae: warp_mae,
            },
            outputs,
        }
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::input(format!("report serialization: {e}")))?;
        std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}
