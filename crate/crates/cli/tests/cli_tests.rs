//! Integration tests for the command layer: file formats, command behavior,
//! and exit-code classification.

mod common;

use std::path::Path;
use std::process::Command;

use common::{identity_inputs, real_fixture_dir, synthetic_sample, write_sample};
use garmwarp_cli::commands::demo::{parse_chain, run_demo};
use garmwarp_cli::commands::eval::{cmd_eval_identity, eval_sample, EvalIdentityArgs};
use garmwarp_cli::commands::field::{arrow_image, magnitude_image};
use garmwarp_cli::commands::part::{cmd_warp_sleeve, cmd_warp_torso, SideArg, WarpSleeveArgs, WarpTorsoArgs};
use garmwarp_cli::commands::warp::{cmd_warp, WarpArgs};
use garmwarp_cli::config::{CompositeOrderArg, InpaintModeArg, InputArgs, ParamArgs};
use garmwarp_cli::error::CliError;
use garmwarp_cli::formats;
use garmwarp_core::error::Error as CoreError;
use garmwarp_core::geometry::{ArmSide, Point2};
use garmwarp_core::pipeline::{try_on_warp, PipelineParams};
use garmwarp_core::raster::BinaryMask;

fn default_params() -> ParamArgs {
    ParamArgs {
        a: 8.0,
        lambda: 1e-3,
        conf_threshold: 0.3,
        composite_order: CompositeOrderArg::SleevesOverTorso,
        inpaint_mode: InpaintModeArg::Literal,
    }
}

fn input_args(dir: &Path) -> InputArgs {
    InputArgs {
        model: dir.join("model.png"),
        person: dir.join("person.png"),
        model_landmarks: dir.join("model_landmarks.json"),
        person_landmarks: dir.join("person_landmarks.json"),
        garment_mask: dir.join("garment_mask.png"),
        model_parse: dir.join("model_parse.png"),
        person_parse: dir.join("person_parse.png"),
        upper_mask: dir.join("upper_mask.png"),
        target_mask: Some(dir.join("target_mask.png")),
    }
}

#[test]
fn formats_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let sample = synthetic_sample(100);

    let img_path = tmp.path().join("img.png");
    formats::save_image(&img_path, &sample.image).unwrap();
    assert_eq!(formats::load_image(&img_path).unwrap(), sample.image);

    let mask_path = tmp.path().join("mask.png");
    formats::save_mask(&mask_path, &sample.garment).unwrap();
    assert_eq!(formats::load_mask(&mask_path).unwrap(), sample.garment);

    let parse_path = tmp.path().join("parse.png");
    formats::save_parse(&parse_path, &sample.parse).unwrap();
    assert_eq!(formats::load_parse(&parse_path).unwrap(), sample.parse);

    let lm_path = tmp.path().join("landmarks.json");
    formats::save_landmarks(&lm_path, &sample.landmarks).unwrap();
    assert_eq!(formats::load_landmarks(&lm_path).unwrap(), sample.landmarks);
}

#[test]
fn mask_threshold_at_128() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("gray.png");
    image::GrayImage::from_fn(4, 1, |x, _| image::Luma([(x * 64) as u8]))
        .save(&path)
        .unwrap();
    let mask = formats::load_mask(&path).unwrap();
    // 0, 64 unset; 128, 192 set.
    assert!(!mask.get(0, 0) && !mask.get(1, 0));
    assert!(mask.get(2, 0) && mask.get(3, 0));
}

#[test]
fn malformed_landmark_file_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("short.json");
    std::fs::write(&path, r#"{"keypoints": [[1.0, 2.0, 0.5]]}"#).unwrap();
    match formats::load_landmarks(&path) {
        Err(CliError::Input(msg)) => assert!(msg.contains("18"), "{msg}"),
        other => panic!("expected input error, got {other:?}"),
    }
}

#[test]
fn parse_map_with_bad_labels_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("parse.png");
    image::GrayImage::from_fn(3, 1, |x, _| image::Luma([(x * 3) as u8]))
        .save(&path)
        .unwrap();
    // Labels 0, 3, 6: 6 is out of range.
    assert!(matches!(formats::load_parse(&path), Err(CliError::Input(_))));
}

#[test]
fn warp_command_writes_all_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let sample_dir = tmp.path().join("sample");
    write_sample(&sample_dir, &synthetic_sample(1)).unwrap();
    let out = tmp.path().join("out");
    let args = WarpArgs {
        inputs: input_args(&sample_dir),
        params: default_params(),
        out: out.clone(),
    };
    let report = cmd_warp(&args).unwrap();

    for file in [
        "warped.png",
        "warp_mask.png",
        "occluded_mask.png",
        "inpaint_mask.png",
        "preview.png",
        "report.json",
    ] {
        assert!(out.join(file).exists(), "{file} missing");
    }
    assert!(report.warnings.is_empty());
    assert_eq!(report.metrics.occluded_px, 0);
    let ssim = report.metrics.warp_vs_source_ssim.expect("same-frame ssim");
    assert!(ssim >= 0.99, "ssim {ssim}");

    // The report round-trips as JSON with the resolved parameter set.
    let text = std::fs::read_to_string(out.join("report.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["parameters"]["a"], 8.0);
    assert_eq!(json["parameters"]["inpaint_mode"], "literal");
    assert_eq!(json["parts"].as_array().unwrap().len(), 3);
}

#[test]
fn warp_command_survives_a_missing_wrist() {
    let tmp = tempfile::tempdir().unwrap();
    let sample_dir = tmp.path().join("sample");
    let mut sample = synthetic_sample(2);
    // Drop the left wrist on the person side only.
    let mut pts = [garmwarp_core::pipeline::LandmarkPoint::default(); 18];
    for (i, j) in garmwarp_core::pipeline::Joint::ALL.iter().enumerate() {
        pts[i] = sample.landmarks.raw(*j);
    }
    pts[garmwarp_core::pipeline::Joint::LeftWrist as usize].confidence = 0.0;
    sample.landmarks = garmwarp_core::pipeline::LandmarkSet::new(pts).unwrap();
    write_sample(&sample_dir, &sample).unwrap();

    let out = tmp.path().join("out");
    let args = WarpArgs {
        inputs: input_args(&sample_dir),
        params: default_params(),
        out,
    };
    let report = cmd_warp(&args).unwrap();
    assert!(report
        .warnings
        .iter()
        .any(|w| w.contains("left sleeve skipped")));
    let left = report.parts.iter().find(|p| p.part == "left_sleeve").unwrap();
    assert_eq!(left.status, "skipped");
    assert!(left.reason.as_deref().unwrap_or("").contains("left wrist"));
}

#[test]
fn mismatched_mask_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let sample_dir = tmp.path().join("sample");
    write_sample(&sample_dir, &synthetic_sample(3)).unwrap();
    // Overwrite the upper mask with the wrong size.
    formats::save_mask(&sample_dir.join("upper_mask.png"), &BinaryMask::new(10, 10)).unwrap();
    let args = WarpArgs {
        inputs: input_args(&sample_dir),
        params: default_params(),
        out: tmp.path().join("out"),
    };
    match cmd_warp(&args) {
        Err(err @ CliError::Input(_)) => assert_eq!(err.exit_code(), 2),
        other => panic!("expected input error, got {other:?}"),
    }
}

#[test]
fn sleeve_command_identity_and_missing_landmark() {
    let tmp = tempfile::tempdir().unwrap();
    let sample_dir = tmp.path().join("sample");
    let sample = synthetic_sample(4);
    write_sample(&sample_dir, &sample).unwrap();

    let report = cmd_warp_sleeve(&WarpSleeveArgs {
        side: SideArg::Left,
        inputs: input_args(&sample_dir),
        params: default_params(),
        out: tmp.path().join("sleeve_out"),
    })
    .unwrap();
    assert!(report.valid_px > 0);
    assert_eq!(report.hole_px, 0, "identity sleeve must have no holes");
    assert!(tmp.path().join("sleeve_out/sleeve_warped.png").exists());

    // Person wrist missing: single-part command errors (exit 2).
    let mut broken = sample.clone();
    let mut pts = [garmwarp_core::pipeline::LandmarkPoint::default(); 18];
    for (i, j) in garmwarp_core::pipeline::Joint::ALL.iter().enumerate() {
        pts[i] = broken.landmarks.raw(*j);
    }
    pts[garmwarp_core::pipeline::Joint::LeftWrist as usize].confidence = 0.1;
    broken.landmarks = garmwarp_core::pipeline::LandmarkSet::new(pts).unwrap();
    let broken_dir = tmp.path().join("broken");
    write_sample(&broken_dir, &broken).unwrap();
    match cmd_warp_sleeve(&WarpSleeveArgs {
        side: SideArg::Left,
        inputs: input_args(&broken_dir),
        params: default_params(),
        out: tmp.path().join("sleeve_out2"),
    }) {
        Err(err @ CliError::Input(_)) => {
            assert_eq!(err.exit_code(), 2);
            assert!(err.to_string().contains("left wrist"));
        }
        other => panic!("expected absent-landmark error, got {other:?}"),
    }
}

#[test]
fn torso_command_identity() {
    let tmp = tempfile::tempdir().unwrap();
    let sample_dir = tmp.path().join("sample");
    write_sample(&sample_dir, &synthetic_sample(5)).unwrap();
    let report = cmd_warp_torso(&WarpTorsoArgs {
        inputs: input_args(&sample_dir),
        params: default_params(),
        out: tmp.path().join("torso_out"),
    })
    .unwrap();
    assert!(report.valid_px > 0);
    assert_eq!(report.hole_px, 0);
}

#[test]
fn demo_equal_chains_reproduce_the_band() {
    let source = parse_chain("60,160, 160,160, 260,160", ArmSide::Left).unwrap();
    let demo = run_demo(source, source, 24.0, (320, 320), 8.0).unwrap();
    // Identity: the warped band equals the source band bit-exactly.
    assert_eq!(demo.warp.valid, demo.band_mask);
    for (x, y) in demo.band_mask.iter_set() {
        assert_eq!(demo.warp.image.pixel(x, y), demo.source_image.pixel(x, y));
    }
}

#[test]
fn demo_chain_parsing_errors() {
    assert!(parse_chain("1,2,3", ArmSide::Left).is_err());
    assert!(parse_chain("a,b,c,d,e,f", ArmSide::Left).is_err());
    // Coincident shoulder and elbow: degenerate.
    assert!(parse_chain("5,5, 5,5, 9,9", ArmSide::Left).is_err());
}

#[test]
fn field_identity_is_zero_and_translation_is_constant() {
    let sample = synthetic_sample(6);
    let inputs = identity_inputs(&sample);
    let out = try_on_warp(&inputs, &PipelineParams::default()).unwrap();
    let map = out.result.combined_map();
    for (x, y) in map.mapped_mask().iter_set() {
        let src = map.get(x, y).unwrap();
        assert!(src.distance(Point2::new(x as f64, y as f64)) <= 1e-9);
    }
    let mag = magnitude_image(&map);
    // Zero field renders the flat marker value on mapped pixels.
    for (x, y) in map.mapped_mask().iter_set() {
        assert_eq!(mag.pixel(x, y)[0], 32);
    }
    let arrows = arrow_image(&map, &inputs.person_image, 8);
    assert_eq!(arrows.dims(), inputs.person_image.dims());

    // Pure translation: shift every person-side annotation by (7, 11); the
    // backward field must be the constant inverse offset.
    let delta = Point2::new(7.0, 11.0);
    let mut pts = [garmwarp_core::pipeline::LandmarkPoint::default(); 18];
    for (i, j) in garmwarp_core::pipeline::Joint::ALL.iter().enumerate() {
        let p = sample.landmarks.raw(*j);
        pts[i] = garmwarp_core::pipeline::LandmarkPoint {
            x: p.x + delta.x,
            y: p.y + delta.y,
            confidence: p.confidence,
        };
    }
    let shift_mask = |m: &BinaryMask| {
        BinaryMask::from_fn(m.width(), m.height(), |x, y| {
            let sx = x as i64 - delta.x as i64;
            let sy = y as i64 - delta.y as i64;
            sx >= 0 && sy >= 0 && (sx as usize) < m.width() && (sy as usize) < m.height()
                && m.get(sx as usize, sy as usize)
        })
    };
    let shifted_parse = garmwarp_core::pipeline::ParseMap::from_raw(
        sample.parse.width(),
        sample.parse.height(),
        {
            let (w, h) = sample.parse.dims();
            let mut labels = vec![0u8; w * h];
            for y in 0..h {
                for x in 0..w {
                    let sx = x as i64 - delta.x as i64;
                    let sy = y as i64 - delta.y as i64;
                    if sx >= 0 && sy >= 0 && (sx as usize) < w && (sy as usize) < h {
                        labels[y * w + x] = sample.parse.label(sx as usize, sy as usize);
                    }
                }
            }
            labels
        },
    )
    .unwrap();
    let inputs = garmwarp_core::pipeline::TryOnInputs {
        model_image: sample.image.clone(),
        person_image: sample.image.clone(),
        model_landmarks: sample.landmarks.clone(),
        person_landmarks: garmwarp_core::pipeline::LandmarkSet::new(pts).unwrap(),
        garment_mask: sample.garment.clone(),
        model_parse: sample.parse.clone(),
        person_parse: shifted_parse,
        target_clothing_mask: Some(shift_mask(&sample.garment)),
        person_upper_mask: shift_mask(&sample.upper),
    };
    let out = try_on_warp(&inputs, &PipelineParams::default()).unwrap();
    let map = out.result.combined_map();
    let mut checked = 0;
    for (x, y) in map.mapped_mask().iter_set() {
        let src = map.get(x, y).unwrap();
        let expect = Point2::new(x as f64 - delta.x, y as f64 - delta.y);
        assert!(src.distance(expect) <= 1e-6, "at ({x},{y}): {src:?}");
        checked += 1;
    }
    assert!(checked > 1000);
}

#[test]
fn eval_identity_runs_the_bundled_real_fixtures() {
    let tmp = tempfile::tempdir().unwrap();
    let csv_path = tmp.path().join("scores.csv");
    let rows = cmd_eval_identity(&EvalIdentityArgs {
        samples: real_fixture_dir(),
        params: default_params(),
        out: csv_path.clone(),
    })
    .unwrap();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert!(row.pass, "sample {} ssim {}", row.sample, row.ssim);
        assert_eq!(row.mae, 0.0, "identity should be bit-exact");
    }
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("sample,ssim,mae,pass\n"));
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.contains("sample01"));

    // Scores agree with direct metric calls on the same inputs.
    let inputs = garmwarp_cli::commands::eval::load_sample(&real_fixture_dir().join("sample01")).unwrap();
    let direct = eval_sample("sample01", &inputs, &default_params()).unwrap();
    let row01 = rows.iter().find(|r| r.sample == "sample01").unwrap();
    assert_eq!(direct.ssim, row01.ssim);
    assert_eq!(direct.mae, row01.mae);
}

#[test]
fn corrupted_identity_sample_is_flagged() {
    let tmp = tempfile::tempdir().unwrap();
    let samples = tmp.path().join("samples");
    let sample = synthetic_sample(7);
    write_sample(&samples.join("good"), &sample).unwrap();
    // Misregister the person keypoints by several pixels: the backward maps
    // sample the source off-texture while the masks still line up.
    let dir = samples.join("bad");
    write_sample(&dir, &sample).unwrap();
    let mut pts = [garmwarp_core::pipeline::LandmarkPoint::default(); 18];
    for (i, j) in garmwarp_core::pipeline::Joint::ALL.iter().enumerate() {
        let p = sample.landmarks.raw(*j);
        pts[i] = garmwarp_core::pipeline::LandmarkPoint {
            x: p.x + 6.0,
            y: p.y + 4.0,
            confidence: p.confidence,
        };
    }
    let shifted = garmwarp_core::pipeline::LandmarkSet::new(pts).unwrap();
    formats::save_landmarks(&dir.join("person_landmarks.json"), &shifted).unwrap();

    let rows = cmd_eval_identity(&EvalIdentityArgs {
        samples,
        params: default_params(),
        out: tmp.path().join("scores.csv"),
    })
    .unwrap();
    let good = rows.iter().find(|r| r.sample == "good").unwrap();
    let bad = rows.iter().find(|r| r.sample == "bad").unwrap();
    assert!(good.pass);
    assert!(!bad.pass, "corrupted sample scored {}", bad.ssim);
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(CliError::from(CoreError::TpsFit("x".into())).exit_code(), 3);
    assert_eq!(
        CliError::from(CoreError::DegenerateGeometry("x".into())).exit_code(),
        3
    );
    assert_eq!(
        CliError::from(CoreError::AbsentLandmark { joint: "left wrist".into() }).exit_code(),
        2
    );
    assert_eq!(CliError::from(CoreError::EmptyGarmentMask).exit_code(), 2);
    assert_eq!(
        CliError::from(CoreError::DimensionMismatch {
            context: "t",
            expected_w: 1,
            expected_h: 1,
            got_w: 2,
            got_h: 2,
        })
        .exit_code(),
        2
    );
}

#[test]
fn binary_reports_input_errors_with_exit_code_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_garmwarp"))
        .args([
            "warp",
            "--model", "/nonexistent/model.png",
            "--person", "/nonexistent/person.png",
            "--model-landmarks", "/nonexistent/ml.json",
            "--person-landmarks", "/nonexistent/pl.json",
            "--garment-mask", "/nonexistent/c.png",
            "--model-parse", "/nonexistent/mp.png",
            "--person-parse", "/nonexistent/pp.png",
            "--upper-mask", "/nonexistent/um.png",
            "--out", "/tmp/garmwarp-test-out",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error[input]"), "{stderr}");
}
