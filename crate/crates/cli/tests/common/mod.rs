//! Synthetic identity samples for CLI and acceptance tests.

#![allow(dead_code)]

use std::path::Path;

use garmwarp_cli::error::CliResult;
use garmwarp_cli::formats;
use garmwarp_core::draw::{
    fill_capsule, fill_convex_poly, fill_disc, paint_checker, paint_noise, paint_stripes,
};
use garmwarp_core::geometry::Point2;
use garmwarp_core::pipeline::{
    Joint, LandmarkPoint, LandmarkSet, ParseClass, ParseMap, TryOnInputs, JOINT_COUNT,
};
use garmwarp_core::raster::{BinaryMask, ImageBuffer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CANVAS_W: usize = 192;
pub const CANVAS_H: usize = 256;

#[derive(Debug, Clone)]
pub struct Sample {
    pub image: ImageBuffer,
    pub landmarks: LandmarkSet,
    pub garment: BinaryMask,
    pub parse: ParseMap,
    pub upper: BinaryMask,
}

/// A randomized but anatomically plausible frontal figure with a textured
/// garment, deterministic per seed.
pub fn synthetic_sample(seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (CANVAS_W, CANVAS_H);
    let cx = w as f64 / 2.0;
    let shoulder_y = rng.random_range(60.0..80.0);
    let half_width = rng.random_range(22.0..30.0);

    let lsho = Point2::new(cx + half_width, shoulder_y);
    let rsho = Point2::new(cx - half_width, shoulder_y);
    let arm = |sho: Point2, out: f64, rng: &mut ChaCha8Rng| {
        let upper_len = rng.random_range(34.0..44.0);
        let fore_len = rng.random_range(32.0..42.0);
        // Upper arm points mostly downward, tilted outward.
        let upper_angle = std::f64::consts::FRAC_PI_2 + out * rng.random_range(0.15..0.55);
        let elbow = sho + Point2::new(upper_angle.cos(), upper_angle.sin()) * upper_len;
        // Flexion well inside the anatomical range, bending inward or outward.
        let flexion = rng.random_range(0.1..1.9);
        let bend = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let fore_angle = upper_angle + bend * (std::f64::consts::PI - flexion) - std::f64::consts::PI;
        let wrist = elbow + Point2::new(fore_angle.cos(), fore_angle.sin()) * fore_len;
        (elbow, wrist)
    };
    let (lelb, lwri) = arm(lsho, 1.0, &mut rng);
    let (relb, rwri) = arm(rsho, -1.0, &mut rng);

    let neck = lsho.midpoint(rsho) + Point2::new(0.0, -5.0);
    let hip_y = rng.random_range(0.72..0.80) * h as f64;
    let lhip = Point2::new(lsho.x + (rsho.x - lsho.x) * 0.12, hip_y);
    let rhip = Point2::new(rsho.x + (lsho.x - rsho.x) * 0.12, hip_y);

    let arm_r = rng.random_range(7.0..9.0);
    let sleeve_r = arm_r + 2.0;

    let mut torso = BinaryMask::new(w, h);
    fill_convex_poly(&mut torso, &[lsho, rsho, rhip, lhip]);
    let band = |a: Point2, b: Point2, c: Point2, r: f64| {
        let mut m = BinaryMask::new(w, h);
        fill_capsule(&mut m, a, b, r);
        fill_capsule(&mut m, b, c, r);
        m
    };
    let larm = band(lsho, lelb, lwri, arm_r);
    let rarm = band(rsho, relb, rwri, arm_r);
    let lsleeve = band(lsho, lelb, lwri, sleeve_r);
    let rsleeve = band(rsho, relb, rwri, sleeve_r);
    let garment = torso.or(&lsleeve).unwrap().or(&rsleeve).unwrap();

    let mut labels = vec![0u8; w * h];
    let mut set_class = |mask: &BinaryMask, class: ParseClass| {
        for (x, y) in mask.iter_set() {
            labels[y * w + x] = class as u8;
        }
    };
    let mut head = BinaryMask::new(w, h);
    fill_disc(&mut head, neck + Point2::new(0.0, -14.0), 9.0);
    set_class(&head, ParseClass::Other);
    set_class(&torso, ParseClass::Torso);
    set_class(&larm, ParseClass::LeftArm);
    set_class(&rarm, ParseClass::RightArm);
    let parse = ParseMap::from_raw(w, h, labels).unwrap();

    let upper = garment.dilate(2).or(&larm).unwrap().or(&rarm).unwrap();

    let mut image = ImageBuffer::new(w, h, 3);
    let bg = [
        rng.random_range(16..48) as u8,
        rng.random_range(16..48) as u8,
        rng.random_range(24..64) as u8,
    ];
    image.fill(&bg);
    let skin = larm.or(&rarm).unwrap().or(&head).unwrap();
    paint_noise(&mut image, &skin, seed ^ 0xaa, [198, 160, 130], 10);
    let palette = [
        [rng.random_range(120..240) as u8, rng.random_range(20..90) as u8, rng.random_range(30..120) as u8],
        [rng.random_range(180..250) as u8, rng.random_range(160..230) as u8, rng.random_range(40..130) as u8],
        [rng.random_range(20..90) as u8, rng.random_range(70..150) as u8, rng.random_range(130..230) as u8],
    ];
    match seed % 3 {
        0 => paint_stripes(
            &mut image,
            &torso,
            neck,
            Point2::new(rng.random_range(-0.4..0.4), 1.0),
            rng.random_range(5.0..9.0),
            &palette,
        ),
        1 => paint_checker(&mut image, &torso, rng.random_range(3..6), palette[0], palette[1]),
        _ => paint_noise(&mut image, &torso, seed ^ 0x33, palette[2], 45),
    }
    paint_checker(&mut image, &lsleeve, rng.random_range(3..5), palette[1], palette[2]);
    paint_stripes(
        &mut image,
        &rsleeve,
        rsho,
        relb - rsho,
        rng.random_range(4.0..7.0),
        &palette,
    );

    let mut pts = [LandmarkPoint::default(); JOINT_COUNT];
    let mut put = |j: Joint, p: Point2| {
        pts[j as usize] = LandmarkPoint { x: p.x, y: p.y, confidence: 0.9 };
    };
    put(Joint::Nose, neck + Point2::new(0.0, -14.0));
    put(Joint::Neck, neck);
    put(Joint::LeftShoulder, lsho);
    put(Joint::LeftElbow, lelb);
    put(Joint::LeftWrist, lwri);
    put(Joint::RightShoulder, rsho);
    put(Joint::RightElbow, relb);
    put(Joint::RightWrist, rwri);
    put(Joint::LeftHip, lhip);
    put(Joint::RightHip, rhip);
    let landmarks = LandmarkSet::new(pts).unwrap();

    Sample { image, landmarks, garment, parse, upper }
}

/// Identity pipeline inputs for a sample: model == person, with the garment
/// silhouette as the target clothing mask.
pub fn identity_inputs(sample: &Sample) -> TryOnInputs {
    TryOnInputs {
        model_image: sample.image.clone(),
        person_image: sample.image.clone(),
        model_landmarks: sample.landmarks.clone(),
        person_landmarks: sample.landmarks.clone(),
        garment_mask: sample.garment.clone(),
        model_parse: sample.parse.clone(),
        person_parse: sample.parse.clone(),
        target_clothing_mask: Some(sample.garment.clone()),
        person_upper_mask: sample.upper.clone(),
    }
}

/// Write a sample to disk in the directory layout every file-driven command
/// consumes.
pub fn write_sample(dir: &Path, sample: &Sample) -> CliResult<()> {
    std::fs::create_dir_all(dir).unwrap();
    formats::save_image(&dir.join("model.png"), &sample.image)?;
    formats::save_image(&dir.join("person.png"), &sample.image)?;
    formats::save_landmarks(&dir.join("model_landmarks.json"), &sample.landmarks)?;
    formats::save_landmarks(&dir.join("person_landmarks.json"), &sample.landmarks)?;
    formats::save_mask(&dir.join("garment_mask.png"), &sample.garment)?;
    formats::save_mask(&dir.join("target_mask.png"), &sample.garment)?;
    formats::save_mask(&dir.join("upper_mask.png"), &sample.upper)?;
    formats::save_parse(&dir.join("model_parse.png"), &sample.parse)?;
    formats::save_parse(&dir.join("person_parse.png"), &sample.parse)?;
    Ok(())
}

/// Path to the bundled real-photograph fixtures.
pub fn real_fixture_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/real")
}
