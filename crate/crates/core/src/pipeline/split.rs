//! Human part-parse label maps and region-into-parts splitting.

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

/// Semantic part labels of a parse map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ParseClass {
    Background = 0,
    Torso = 1,
    LeftArm = 2,
    RightArm = 3,
    Other = 4,
}

pub const MAX_PARSE_LABEL: u8 = 4;

/// Dense per-pixel part labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMap {
    width: usize,
    height: usize,
    labels: Vec<u8>,
}

impl ParseMap {
    pub fn from_raw(width: usize, height: usize, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != width * height {
            return Err(Error::InvalidValue(format!(
                "parse map length {} does not match {width}x{height}",
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l > MAX_PARSE_LABEL) {
            return Err(Error::InvalidValue(format!(
                "parse label {bad} out of range 0..={MAX_PARSE_LABEL}"
            )));
        }
        Ok(ParseMap {
            width,
            height,
            labels,
        })
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

    pub fn label(&self, x: usize, y: usize) -> u8 {
        self.labels[y * self.width + x]
    }

    /// Mask of pixels carrying the given class.
    pub fn class_mask(&self, class: ParseClass) -> BinaryMask {
        BinaryMask::from_fn(self.width, self.height, |x, y| {
            self.label(x, y) == class as u8
        })
    }
}

/// A region split into the three warpable parts. Masks are pairwise disjoint.
#[derive(Debug, Clone)]
pub struct PartMasks {
    pub torso: BinaryMask,
    pub left_sleeve: BinaryMask,
    pub right_sleeve: BinaryMask,
}

impl PartMasks {
    pub fn get(&self, part: Part) -> &BinaryMask {
        match part {
            Part::Torso => &self.torso,
            Part::LeftSleeve => &self.left_sleeve,
            Part::RightSleeve => &self.right_sleeve,
        }
    }
}

/// The three independently warped garment parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Torso,
    LeftSleeve,
    RightSleeve,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Torso, Part::LeftSleeve, Part::RightSleeve];

    pub fn name(self) -> &'static str {
        match self {
            Part::Torso => "torso",
            Part::LeftSleeve => "left_sleeve",
            Part::RightSleeve => "right_sleeve",
        }
    }
}

/// Split `region` into torso / left sleeve / right sleeve.
///
/// Pixels labeled torso or arm in the parse map go to that part directly.
/// Region pixels with no part label are assigned to the nearest part by
/// Euclidean distance to the labeled seeds (ties favor torso, then left).
/// If every seed is empty the unlabeled pixels stay unassigned.
pub fn partition_region(region: &BinaryMask, parse: &ParseMap) -> Result<PartMasks> {
    if region.dims() != parse.dims() {
        return Err(Error::dims("region vs parse map", region.dims(), parse.dims()));
    }
    let torso_seed = region.and(&parse.class_mask(ParseClass::Torso))?;
    let left_seed = region.and(&parse.class_mask(ParseClass::LeftArm))?;
    let right_seed = region.and(&parse.class_mask(ParseClass::RightArm))?;

    let seeded = torso_seed.or(&left_seed)?.or(&right_seed)?;
    let leftover = region.minus(&seeded)?;

    let mut parts = PartMasks {
        torso: torso_seed,
        left_sleeve: left_seed,
        right_sleeve: right_seed,
    };
    if leftover.is_empty() {
        return Ok(parts);
    }

    let dts: Vec<Option<Vec<f64>>> = [&parts.torso, &parts.left_sleeve, &parts.right_sleeve]
        .iter()
        .map(|m| {
            if m.is_empty() {
                None
            } else {
                Some(m.distance_sq_transform())
            }
        })
        .collect();
    if dts.iter().all(|d| d.is_none()) {
        return Ok(parts);
    }

    let w = region.width();
    let mut assign = Vec::new();
    for (x, y) in leftover.iter_set() {
        let mut best: Option<(usize, f64)> = None;
        for (k, dt) in dts.iter().enumerate() {
            let Some(dt) = dt else { continue };
            let d = dt[y * w + x];
            // Strict comparison keeps the earlier part on ties.
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        if let Some((k, _)) = best {
            assign.push((x, y, k));
        }
    }
    for (x, y, k) in assign {
        match k {
            0 => parts.torso.set(x, y, true),
            1 => parts.left_sleeve.set(x, y, true),
            _ => parts.right_sleeve.set(x, y, true),
        }
    }
    Ok(parts)
}
