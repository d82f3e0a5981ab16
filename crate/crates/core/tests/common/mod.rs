//! Synthetic person scenes for pipeline tests.

use garmwarp_core::draw::{fill_capsule, fill_convex_poly, fill_disc, paint_checker, paint_noise, paint_stripes};
use garmwarp_core::geometry::Point2;
use garmwarp_core::pipeline::{
    Joint, LandmarkPoint, LandmarkSet, ParseClass, ParseMap, TryOnInputs, JOINT_COUNT,
};
use garmwarp_core::raster::{BinaryMask, ImageBuffer};

#[derive(Debug, Clone, Copy)]
pub struct ArmPose {
    pub shoulder: Point2,
    pub elbow: Point2,
    pub wrist: Point2,
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub image: ImageBuffer,
    pub landmarks: LandmarkSet,
    pub garment: BinaryMask,
    pub parse: ParseMap,
    pub upper: BinaryMask,
}

pub const ARM_RADIUS: f64 = 5.0;
pub const SLEEVE_RADIUS: f64 = 6.0;

/// Render a stick person with a textured garment. `left`/`right` name the
/// parse labels used for each chain; geometry is up to the caller.
pub fn build_scene(w: usize, h: usize, left: ArmPose, right: ArmPose, seed: u64) -> Scene {
    let neck = left.shoulder.midpoint(right.shoulder) + Point2::new(0.0, -3.0);
    let hip_y = h as f64 * 0.78;
    let lhip = Point2::new(
        left.shoulder.x + (right.shoulder.x - left.shoulder.x) * 0.12,
        hip_y,
    );
    let rhip = Point2::new(
        right.shoulder.x + (left.shoulder.x - right.shoulder.x) * 0.12,
        hip_y,
    );
    let torso_quad = [left.shoulder, right.shoulder, rhip, lhip];

    let mut torso_mask = BinaryMask::new(w, h);
    fill_convex_poly(&mut torso_mask, &torso_quad);

    let sleeve = |pose: &ArmPose, radius: f64| {
        let mut m = BinaryMask::new(w, h);
        fill_capsule(&mut m, pose.shoulder, pose.elbow, radius);
        fill_capsule(&mut m, pose.elbow, pose.wrist, radius);
        m
    };
    let larm = sleeve(&left, ARM_RADIUS);
    let rarm = sleeve(&right, ARM_RADIUS);
    let lsleeve = sleeve(&left, SLEEVE_RADIUS);
    let rsleeve = sleeve(&right, SLEEVE_RADIUS);

    let garment = torso_mask.or(&lsleeve).unwrap().or(&rsleeve).unwrap();

    // Parse labels: torso first, arms overwrite, head separate.
    let mut labels = vec![0u8; w * h];
    let mut set_class = |mask: &BinaryMask, class: ParseClass| {
        for (x, y) in mask.iter_set() {
            labels[y * w + x] = class as u8;
        }
    };
    let mut head = BinaryMask::new(w, h);
    fill_disc(&mut head, neck + Point2::new(0.0, -9.0), 6.0);
    set_class(&head, ParseClass::Other);
    set_class(&torso_mask, ParseClass::Torso);
    set_class(&larm, ParseClass::LeftArm);
    set_class(&rarm, ParseClass::RightArm);
    let parse = ParseMap::from_raw(w, h, labels).unwrap();

    let upper = garment.dilate(2).or(&larm).unwrap().or(&rarm).unwrap();

    // Image: dark background, skin, then garment texture.
    let mut image = ImageBuffer::new(w, h, 3);
    image.fill(&[24, 28, 34]);
    let skin = larm.or(&rarm).unwrap().or(&head).unwrap();
    paint_noise(&mut image, &skin, seed ^ 0x5151, [196, 158, 128], 12);
    paint_stripes(
        &mut image,
        &torso_mask,
        neck,
        Point2::new(0.35, 1.0),
        7.0,
        &[[170, 40, 50], [230, 210, 90], [40, 90, 160]],
    );
    paint_checker(&mut image, &lsleeve, 4, [60, 160, 90], [240, 240, 235]);
    paint_checker(&mut image, &rsleeve, 4, [160, 60, 150], [250, 230, 140]);

    let landmarks = landmarks_for(&left, &right, neck, lhip, rhip);

    Scene {
        image,
        landmarks,
        garment,
        parse,
        upper,
    }
}

pub fn landmarks_for(
    left: &ArmPose,
    right: &ArmPose,
    neck: Point2,
    lhip: Point2,
    rhip: Point2,
) -> LandmarkSet {
    let mut pts = [LandmarkPoint::default(); JOINT_COUNT];
    let mut put = |j: Joint, p: Point2| {
        pts[j as usize] = LandmarkPoint {
            x: p.x,
            y: p.y,
            confidence: 0.9,
        };
    };
    put(Joint::Nose, neck + Point2::new(0.0, -9.0));
    put(Joint::Neck, neck);
    put(Joint::LeftShoulder, left.shoulder);
    put(Joint::LeftElbow, left.elbow);
    put(Joint::LeftWrist, left.wrist);
    put(Joint::RightShoulder, right.shoulder);
    put(Joint::RightElbow, right.elbow);
    put(Joint::RightWrist, right.wrist);
    put(Joint::LeftHip, lhip);
    put(Joint::RightHip, rhip);
    LandmarkSet::new(pts).unwrap()
}

/// Identity inputs: model and person are the same scene; the target clothing
/// mask is the garment silhouette itself.
pub fn identity_inputs(scene: &Scene) -> TryOnInputs {
    TryOnInputs {
        model_image: scene.image.clone(),
        person_image: scene.image.clone(),
        model_landmarks: scene.landmarks.clone(),
        person_landmarks: scene.landmarks.clone(),
        garment_mask: scene.garment.clone(),
        model_parse: scene.parse.clone(),
        person_parse: scene.parse.clone(),
        target_clothing_mask: Some(scene.garment.clone()),
        person_upper_mask: scene.upper.clone(),
    }
}

/// A default frontal pose on a 96x128 canvas: both elbows bent outward.
pub fn default_scene(seed: u64) -> Scene {
    let left = ArmPose {
        shoulder: Point2::new(62.0, 34.0),
        elbow: Point2::new(78.0, 58.0),
        wrist: Point2::new(86.0, 86.0),
    };
    let right = ArmPose {
        shoulder: Point2::new(34.0, 34.0),
        elbow: Point2::new(18.0, 58.0),
        wrist: Point2::new(10.0, 86.0),
    };
    build_scene(96, 128, left, right, seed)
}
