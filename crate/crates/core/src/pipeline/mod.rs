//! Part-based garment warping pipeline.
//!
//! Splits the model's garment into torso and sleeve parts, warps the torso
//! through a landmark-registered thin-plate spline and each sleeve through
//! the elbow-wedge transform, derives the occlusion and inpaint masks, and
//! composites the warped parts into the person's frame.

mod landmarks;
mod split;

pub use landmarks::{
    torso_correspondences, Joint, LandmarkPoint, LandmarkSet, TorsoLandmark, JOINT_COUNT,
};
pub use split::{partition_region, Part, ParseClass, ParseMap, PartMasks, MAX_PARSE_LABEL};

use std::fmt;

use crate::atag::{atag_field, AtagCorrespondence, AtagParams};
use crate::error::{Error, Result};
use crate::geometry::ArmSide;
use crate::raster::{backward_warp, composite, BinaryMask, ImageBuffer, SourceMap};
use crate::tps::{tps_field, tps_fit};

/// Everything the warp needs, already decoded into rasters and keypoints.
///
/// Model-frame rasters (the garment source) and person-frame rasters (the
/// warp target) each share dimensions; the two frames may differ.
#[derive(Debug, Clone)]
pub struct TryOnInputs {
    pub model_image: ImageBuffer,
    pub person_image: ImageBuffer,
    pub model_landmarks: LandmarkSet,
    pub person_landmarks: LandmarkSet,
    /// Garment silhouette in the model frame.
    pub garment_mask: BinaryMask,
    pub model_parse: ParseMap,
    pub person_parse: ParseMap,
    /// Predicted target clothing silhouette, when available. Without it the
    /// pipeline falls back to carving the warp mask out of the upper-body
    /// mask.
    pub target_clothing_mask: Option<BinaryMask>,
    /// Upper-body (clothing + skin) mask of the person.
    pub person_upper_mask: BinaryMask,
}

impl TryOnInputs {
    /// Check the frame-consistency invariants.
    pub fn validate(&self) -> Result<()> {
        let model = self.model_image.dims();
        let person = self.person_image.dims();
        if self.garment_mask.dims() != model {
            return Err(Error::dims("garment mask vs model image", model, self.garment_mask.dims()));
        }
        if self.model_parse.dims() != model {
            return Err(Error::dims("model parse vs model image", model, self.model_parse.dims()));
        }
        if self.person_parse.dims() != person {
            return Err(Error::dims("person parse vs person image", person, self.person_parse.dims()));
        }
        if self.person_upper_mask.dims() != person {
            return Err(Error::dims(
                "upper-body mask vs person image",
                person,
                self.person_upper_mask.dims(),
            ));
        }
        if let Some(s) = &self.target_clothing_mask {
            if s.dims() != person {
                return Err(Error::dims("target clothing mask vs person image", person, s.dims()));
            }
        }
        if self.model_image.channels() != self.person_image.channels() {
            return Err(Error::InvalidValue(format!(
                "model and person images must share a channel count ({} vs {})",
                self.model_image.channels(),
                self.person_image.channels()
            )));
        }
        Ok(())
    }
}

/// Layer stacking order for the recombined garment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompositeOrder {
    /// Sleeves drawn over the torso (folded and crossed arms occlude it).
    #[default]
    SleevesOverTorso,
    TorsoOverSleeves,
}

/// Which pixels the inpaint mask marks for prediction (mask value 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InpaintMode {
    /// Predict only occluded garment pixels: upper body AND occluded.
    #[default]
    Literal,
    /// Additionally predict uncovered upper-body pixels: upper body minus
    /// the warp mask.
    Extended,
}

/// Pipeline configuration.
#[derive(Debug, Clone)]
pub struct PipelineParams {
    pub atag: AtagParams,
    pub tps_lambda: f64,
    pub confidence_threshold: f64,
    pub torso_landmarks: Vec<TorsoLandmark>,
    pub composite_order: CompositeOrder,
    pub inpaint_mode: InpaintMode,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            atag: AtagParams::default(),
            tps_lambda: 1e-3,
            confidence_threshold: 0.3,
            torso_landmarks: TorsoLandmark::DEFAULT.to_vec(),
            composite_order: CompositeOrder::default(),
            inpaint_mode: InpaintMode::default(),
        }
    }
}

/// Non-fatal degradations recorded while warping.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineWarning {
    SleeveSkipped { side: ArmSide, reason: String },
    TorsoSkipped { reason: String },
    FlexionExceeded { side: ArmSide, flexion_deg: f64, limit_deg: f64 },
}

impl fmt::Display for PipelineWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineWarning::SleeveSkipped { side, reason } => {
                write!(f, "{} sleeve skipped: {reason}", side.name())
            }
            PipelineWarning::TorsoSkipped { reason } => write!(f, "torso skipped: {reason}"),
            PipelineWarning::FlexionExceeded { side, flexion_deg, limit_deg } => write!(
                f,
                "{} arm flexion {flexion_deg:.1} deg exceeds limit {limit_deg:.1} deg",
                side.name()
            ),
        }
    }
}

/// One garment part in the model frame.
#[derive(Debug, Clone)]
pub struct GarmentPart {
    pub image: ImageBuffer,
    pub mask: BinaryMask,
}

/// The garment split into disjoint torso and sleeve parts.
#[derive(Debug, Clone)]
pub struct GarmentParts {
    pub torso: GarmentPart,
    pub lsleeve: GarmentPart,
    pub rsleeve: GarmentPart,
}

impl GarmentParts {
    pub fn part(&self, part: Part) -> &GarmentPart {
        match part {
            Part::Torso => &self.torso,
            Part::LeftSleeve => &self.lsleeve,
            Part::RightSleeve => &self.rsleeve,
        }
    }
}

/// Split the model's garment into parts along the part-parse labels, sending
/// unlabeled garment pixels to the nearest part. The torso part must be
/// nonempty; sleeves may be empty (sleeveless garments).
pub fn split_garment(
    model_image: &ImageBuffer,
    garment_mask: &BinaryMask,
    model_parse: &ParseMap,
) -> Result<GarmentParts> {
    if garment_mask.is_empty() {
        return Err(Error::EmptyGarmentMask);
    }
    let parts = partition_region(garment_mask, model_parse)?;
    if parts.torso.is_empty() {
        return Err(Error::EmptyTorsoPart);
    }
    Ok(GarmentParts {
        torso: GarmentPart { image: model_image.clone(), mask: parts.torso },
        lsleeve: GarmentPart { image: model_image.clone(), mask: parts.left_sleeve },
        rsleeve: GarmentPart { image: model_image.clone(), mask: parts.right_sleeve },
    })
}

/// One warped part: its backward field plus the resampled image and masks.
#[derive(Debug, Clone)]
pub struct PartWarp {
    pub map: SourceMap,
    pub image: ImageBuffer,
    pub valid: BinaryMask,
    pub holes: BinaryMask,
}

/// All part warps plus the candidate target split they were computed over.
#[derive(Debug, Clone)]
pub struct PartsWarp {
    pub torso: Option<PartWarp>,
    pub left: Option<PartWarp>,
    pub right: Option<PartWarp>,
    /// Per-part candidate regions in the person frame (pre-occlusion).
    pub target_parts: PartMasks,
    pub warnings: Vec<PipelineWarning>,
}

impl PartsWarp {
    pub fn part(&self, part: Part) -> Option<&PartWarp> {
        match part {
            Part::Torso => self.torso.as_ref(),
            Part::LeftSleeve => self.left.as_ref(),
            Part::RightSleeve => self.right.as_ref(),
        }
    }

    /// Union of the candidate regions of parts that were actually warped.
    fn mapped_region(&self) -> Result<BinaryMask> {
        let (w, h) = self.target_parts.torso.dims();
        let mut out = BinaryMask::new(w, h);
        for part in Part::ALL {
            if self.part(part).is_some() {
                out = out.or(self.target_parts.get(part))?;
            }
        }
        Ok(out)
    }

    fn holes_union(&self) -> Result<BinaryMask> {
        let (w, h) = self.target_parts.torso.dims();
        let mut out = BinaryMask::new(w, h);
        for part in Part::ALL {
            if let Some(pw) = self.part(part) {
                out = out.or(&pw.holes)?;
            }
        }
        Ok(out)
    }
}

/// Warp every available part into the person frame.
///
/// The target region (the provided clothing mask, or the upper-body mask in
/// fallback mode) is split along the person's part parse with the same
/// nearest-part rule used on the garment side; each part's pixels are then
/// mapped backward and resampled against that part's source mask.
pub fn warp_parts(
    inputs: &TryOnInputs,
    garment: &GarmentParts,
    params: &PipelineParams,
) -> Result<PartsWarp> {
    let mut warnings = Vec::new();
    let target_region = inputs
        .target_clothing_mask
        .clone()
        .unwrap_or_else(|| inputs.person_upper_mask.clone());
    let target_parts = partition_region(&target_region, &inputs.person_parse)?;

    // Torso: landmark-registered spline, skipped when too few anchors exist.
    let torso = {
        let corrs = torso_correspondences(
            &inputs.model_landmarks,
            &inputs.person_landmarks,
            &params.torso_landmarks,
            params.confidence_threshold,
        );
        if corrs.len() < 3 {
            warnings.push(PipelineWarning::TorsoSkipped {
                reason: format!("only {} torso landmark correspondences available", corrs.len()),
            });
            None
        } else {
            let model = tps_fit(&corrs, params.tps_lambda)?;
            let map = tps_field(&target_parts.torso, &model);
            let warp = backward_warp(&garment.torso.image, &garment.torso.mask, &map)?;
            Some(PartWarp { map, image: warp.image, valid: warp.valid, holes: warp.holes })
        }
    };

    // Sleeves: elbow-wedge transform per side, skipped when a chain is
    // unavailable on either the person or the model.
    let mut sleeve = |side: ArmSide| -> Result<Option<PartWarp>> {
        let chains = inputs
            .person_landmarks
            .arm_chain(side, params.confidence_threshold)
            .and_then(|target| {
                let source = inputs
                    .model_landmarks
                    .arm_chain(side, params.confidence_threshold)?;
                AtagCorrespondence::new(target, source)
            });
        let corr = match chains {
            Ok(corr) => corr,
            Err(err) => {
                warnings.push(PipelineWarning::SleeveSkipped {
                    side,
                    reason: err.to_string(),
                });
                return Ok(None);
            }
        };
        if corr.flexion_exceeds(&params.atag) {
            warnings.push(PipelineWarning::FlexionExceeded {
                side,
                flexion_deg: corr.target_flexion().to_degrees(),
                limit_deg: params.atag.flexion_warn_limit.to_degrees(),
            });
        }
        let (region, part) = match side {
            ArmSide::Left => (&target_parts.left_sleeve, &garment.lsleeve),
            ArmSide::Right => (&target_parts.right_sleeve, &garment.rsleeve),
        };
        let map = atag_field(region, &corr, &params.atag);
        let warp = backward_warp(&part.image, &part.mask, &map)?;
        Ok(Some(PartWarp { map, image: warp.image, valid: warp.valid, holes: warp.holes }))
    };
    let left = sleeve(ArmSide::Left)?;
    let right = sleeve(ArmSide::Right)?;

    if torso.is_none() && left.is_none() && right.is_none() {
        return Err(Error::NothingToWarp);
    }
    Ok(PartsWarp { torso, left, right, target_parts, warnings })
}

/// Occluded-region mask: target pixels with no visible source pixel, i.e.
/// backward-mapped holes plus any target-mask pixels no part covered.
pub fn compute_occluded_s(
    parts: &PartsWarp,
    target_clothing_mask: Option<&BinaryMask>,
) -> Result<BinaryMask> {
    let mapped = parts.mapped_region()?;
    let holes = parts.holes_union()?;
    match target_clothing_mask {
        Some(s_mask) => s_mask.minus(&mapped)?.or(&holes)?.and(s_mask),
        None => Ok(holes),
    }
}

/// Final composition: the warp mask, per-part clipped masks, the recombined
/// garment, the inpaint mask, and a naive preview overlay.
pub fn compose_result(
    inputs: &TryOnInputs,
    parts: PartsWarp,
    occluded: BinaryMask,
    params: &PipelineParams,
) -> Result<WarpResult> {
    let base = inputs
        .target_clothing_mask
        .as_ref()
        .unwrap_or(&inputs.person_upper_mask);
    let warp_mask = base.minus(&occluded)?;

    // Clip each part's candidate region to the warp mask; parts stay
    // disjoint because the candidate split is a partition.
    let mut outputs: [Option<PartOutput>; 3] = [None, None, None];
    for (i, part) in Part::ALL.into_iter().enumerate() {
        let Some(pw) = (match part {
            Part::Torso => parts.torso.as_ref(),
            Part::LeftSleeve => parts.left.as_ref(),
            Part::RightSleeve => parts.right.as_ref(),
        }) else {
            continue;
        };
        let target_mask = parts.target_parts.get(part).and(&warp_mask)?;
        outputs[i] = Some(PartOutput {
            map: pw.map.clone(),
            image: pw.image.clone(),
            valid: pw.valid.clone(),
            holes: pw.holes.clone(),
            target_mask,
        });
    }

    // Stack the parts; layer masks carry only pixels with resampled data.
    let order: [Part; 3] = match params.composite_order {
        CompositeOrder::SleevesOverTorso => [Part::Torso, Part::LeftSleeve, Part::RightSleeve],
        CompositeOrder::TorsoOverSleeves => [Part::LeftSleeve, Part::RightSleeve, Part::Torso],
    };
    let mut layer_masks: Vec<(usize, BinaryMask)> = Vec::new();
    for part in order {
        let idx = Part::ALL.iter().position(|&p| p == part).unwrap();
        if let Some(out) = &outputs[idx] {
            layer_masks.push((idx, out.target_mask.and(&out.valid)?));
        }
    }
    let (w, h) = inputs.person_image.dims();
    let warped_garment = if layer_masks.is_empty() {
        ImageBuffer::new(w, h, inputs.person_image.channels())
    } else {
        let layers: Vec<(&ImageBuffer, &BinaryMask)> = layer_masks
            .iter()
            .map(|(idx, mask)| (&outputs[*idx].as_ref().unwrap().image, mask))
            .collect();
        composite(&layers)?
    };

    // Pixels of the warp actually carrying data (for the preview overlay).
    let mut data_mask = BinaryMask::new(w, h);
    for (_, mask) in &layer_masks {
        data_mask = data_mask.or(mask)?;
    }

    let inpaint_mask = match params.inpaint_mode {
        // Keep = NOT(upper-body AND occluded): only occluded garment pixels
        // are marked for prediction.
        InpaintMode::Literal => inputs.person_upper_mask.and(&occluded)?.not(),
        // Keep = NOT(upper-body minus warp mask): uncovered upper-body
        // pixels are marked too.
        InpaintMode::Extended => inputs.person_upper_mask.minus(&warp_mask)?.not(),
    };

    // Naive preview: clear the upper body, then overlay the warped garment.
    let mut preview = inputs.person_image.clone();
    let clear = vec![0u8; preview.channels()];
    for (x, y) in inputs.person_upper_mask.iter_set() {
        preview.put_pixel(x, y, &clear);
    }
    for (x, y) in data_mask.iter_set() {
        let color = warped_garment.pixel(x, y).to_vec();
        preview.put_pixel(x, y, &color);
    }

    let [torso, left_sleeve, right_sleeve] = outputs;
    Ok(WarpResult {
        warped_garment,
        warp_mask,
        occluded,
        inpaint_mask,
        preview,
        torso,
        left_sleeve,
        right_sleeve,
    })
}

/// One part's contribution to the final result.
#[derive(Debug, Clone)]
pub struct PartOutput {
    pub map: SourceMap,
    pub image: ImageBuffer,
    pub valid: BinaryMask,
    pub holes: BinaryMask,
    /// Candidate region clipped to the warp mask.
    pub target_mask: BinaryMask,
}

impl PartOutput {
    /// Pixels of the final composition this part can contribute.
    pub fn data_mask(&self) -> BinaryMask {
        self.target_mask
            .and(&self.valid)
            .expect("part masks share the person frame")
    }
}

/// Full output of the warping pipeline, all in the person frame.
#[derive(Debug, Clone)]
pub struct WarpResult {
    /// Recombined warped garment, nonzero only inside the warp mask.
    pub warped_garment: ImageBuffer,
    /// Target-warp silhouette.
    pub warp_mask: BinaryMask,
    /// Target pixels whose source is not visible in the model's garment.
    pub occluded: BinaryMask,
    /// 0 = predict, set = keep.
    pub inpaint_mask: BinaryMask,
    /// Person image with the upper body cleared and the warp overlaid.
    pub preview: ImageBuffer,
    pub torso: Option<PartOutput>,
    pub left_sleeve: Option<PartOutput>,
    pub right_sleeve: Option<PartOutput>,
}

impl WarpResult {
    pub fn part(&self, part: Part) -> Option<&PartOutput> {
        match part {
            Part::Torso => self.torso.as_ref(),
            Part::LeftSleeve => self.left_sleeve.as_ref(),
            Part::RightSleeve => self.right_sleeve.as_ref(),
        }
    }

    /// Union of the per-part data masks (where the warp carries pixels).
    pub fn data_mask(&self) -> BinaryMask {
        let (w, h) = self.warp_mask.dims();
        let mut out = BinaryMask::new(w, h);
        for part in Part::ALL {
            if let Some(p) = self.part(part) {
                out = out.or(&p.data_mask()).expect("parts share the person frame");
            }
        }
        out
    }

    /// Combined backward field over the disjoint part regions.
    pub fn combined_map(&self) -> SourceMap {
        let (w, h) = self.warp_mask.dims();
        let mut map = SourceMap::new(w, h);
        for part in Part::ALL {
            if let Some(p) = self.part(part) {
                map.fill_from(&p.map);
            }
        }
        map
    }
}

/// Run the whole pipeline: split, warp, occlusion algebra, composition.
pub fn try_on_warp(inputs: &TryOnInputs, params: &PipelineParams) -> Result<TryOnOutput> {
    inputs.validate()?;
    let garment = split_garment(&inputs.model_image, &inputs.garment_mask, &inputs.model_parse)?;
    let parts = warp_parts(inputs, &garment, params)?;
    let warnings = parts.warnings.clone();
    let occluded = compute_occluded_s(&parts, inputs.target_clothing_mask.as_ref())?;
    let result = compose_result(inputs, parts, occluded, params)?;
    Ok(TryOnOutput { result, warnings })
}

/// Pipeline result plus the warnings accumulated along the way.
#[derive(Debug, Clone)]
pub struct TryOnOutput {
    pub result: WarpResult,
    pub warnings: Vec<PipelineWarning>,
}
