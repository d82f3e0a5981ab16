//! On-disk formats: PNG rasters and the keypoint JSON document.
//!
//! - Images: 8-bit grayscale, RGB, or RGBA PNG.
//! - Masks: single-channel 8-bit PNG; values >= 128 read as set, written
//!   as 0/255.
//! - Part-parse maps: single-channel 8-bit PNG with label codes
//!   0 background, 1 torso, 2 left arm, 3 right arm, 4 other.
//! - Landmarks: JSON object with a "keypoints" array of 18 [x, y,
//!   confidence] triples in the fixed skeleton order (nose, neck, right
//!   shoulder/elbow/wrist, left shoulder/elbow/wrist, right hip/knee/ankle,
//!   left hip/knee/ankle, right eye, left eye, right ear, left ear).

use std::fs;
use std::path::Path;

use garmwarp_core::pipeline::{LandmarkPoint, LandmarkSet, ParseMap, JOINT_COUNT};
use garmwarp_core::raster::{BinaryMask, ImageBuffer};
use image::{DynamicImage, ImageReader};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

fn open(path: &Path) -> CliResult<DynamicImage> {
    ImageReader::open(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
        .decode()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Load an 8-bit grayscale/RGB/RGBA PNG.
pub fn load_image(path: &Path) -> CliResult<ImageBuffer> {
    let (w, h, channels, data) = match open(path)? {
        DynamicImage::ImageLuma8(img) => {
            let (w, h) = img.dimensions();
            (w, h, 1, img.into_raw())
        }
        DynamicImage::ImageRgb8(img) => {
            let (w, h) = img.dimensions();
            (w, h, 3, img.into_raw())
        }
        DynamicImage::ImageRgba8(img) => {
            let (w, h) = img.dimensions();
            (w, h, 4, img.into_raw())
        }
        other => {
            return Err(CliError::input(format!(
                "{}: unsupported pixel format {:?}; expected 8-bit gray/RGB/RGBA",
                path.display(),
                other.color()
            )))
        }
    };
    Ok(ImageBuffer::from_raw(w as usize, h as usize, channels, data)?)
}

pub fn save_image(path: &Path, img: &ImageBuffer) -> CliResult<()> {
    let (w, h) = (img.width() as u32, img.height() as u32);
    let data = img.data().to_vec();
    let err = |e: image::ImageError| CliError::input(format!("{}: {e}", path.display()));
    match img.channels() {
        1 => image::GrayImage::from_raw(w, h, data)
            .expect("buffer length checked")
            .save(path)
            .map_err(err),
        3 => image::RgbImage::from_raw(w, h, data)
            .expect("buffer length checked")
            .save(path)
            .map_err(err),
        _ => image::RgbaImage::from_raw(w, h, data)
            .expect("buffer length checked")
            .save(path)
            .map_err(err),
    }
}

fn load_gray(path: &Path) -> CliResult<(usize, usize, Vec<u8>)> {
    match open(path)? {
        DynamicImage::ImageLuma8(img) => {
            let (w, h) = img.dimensions();
            Ok((w as usize, h as usize, img.into_raw()))
        }
        other => Err(CliError::input(format!(
            "{}: expected a single-channel 8-bit PNG, got {:?}",
            path.display(),
            other.color()
        ))),
    }
}

/// Load a binary mask: values >= 128 are set.
pub fn load_mask(path: &Path) -> CliResult<BinaryMask> {
    let (w, h, data) = load_gray(path)?;
    Ok(BinaryMask::from_fn(w, h, |x, y| data[y * w + x] >= 128))
}

pub fn save_mask(path: &Path, mask: &BinaryMask) -> CliResult<()> {
    let mut img = ImageBuffer::new(mask.width(), mask.height(), 1);
    for (x, y) in mask.iter_set() {
        img.put_pixel(x, y, &[255]);
    }
    save_image(path, &img)
}

/// Load a part-parse label map (codes 0..=4).
pub fn load_parse(path: &Path) -> CliResult<ParseMap> {
    let (w, h, data) = load_gray(path)?;
    ParseMap::from_raw(w, h, data)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn save_parse(path: &Path, parse: &ParseMap) -> CliResult<()> {
    let mut img = ImageBuffer::new(parse.width(), parse.height(), 1);
    for y in 0..parse.height() {
        for x in 0..parse.width() {
            img.put_pixel(x, y, &[parse.label(x, y)]);
        }
    }
    save_image(path, &img)
}

#[derive(Debug, Serialize, Deserialize)]
struct LandmarkFile {
    keypoints: Vec<[f64; 3]>,
}

/// Load the 18-triple keypoint document.
pub fn load_landmarks(path: &Path) -> CliResult<LandmarkSet> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let file: LandmarkFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    if file.keypoints.len() != JOINT_COUNT {
        return Err(CliError::input(format!(
            "{}: expected {JOINT_COUNT} keypoints, got {}",
            path.display(),
            file.keypoints.len()
        )));
    }
    let mut points = [LandmarkPoint::default(); JOINT_COUNT];
    for (dst, src) in points.iter_mut().zip(&file.keypoints) {
        *dst = LandmarkPoint {
            x: src[0],
            y: src[1],
            confidence: src[2],
        };
    }
    LandmarkSet::new(points).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn save_landmarks(path: &Path, set: &LandmarkSet) -> CliResult<()> {
    let keypoints: Vec<[f64; 3]> = garmwarp_core::pipeline::Joint::ALL
        .iter()
        .map(|&j| {
            let p = set.raw(j);
            [p.x, p.y, p.confidence]
        })
        .collect();
    let text = serde_json::to_string_pretty(&LandmarkFile { keypoints })
        .expect("landmark serialization cannot fail");
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
