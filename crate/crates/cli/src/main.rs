use clap::{Parser, Subcommand};
use garmwarp_cli::commands::demo::{cmd_demo_rect, DemoRectArgs};
use garmwarp_cli::commands::eval::{cmd_eval_identity, EvalIdentityArgs};
use garmwarp_cli::commands::field::{cmd_field, FieldArgs};
use garmwarp_cli::commands::part::{cmd_warp_sleeve, cmd_warp_torso, WarpSleeveArgs, WarpTorsoArgs};
use garmwarp_cli::commands::warp::{cmd_warp, WarpArgs};
use garmwarp_cli::error::CliResult;

/// Pose-driven garment warping.
#[derive(Parser)]
#[command(name = "garmwarp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Warp a garment from the model's pose onto the person's pose.
    Warp(WarpArgs),
    /// Warp a single sleeve.
    WarpSleeve(WarpSleeveArgs),
    /// Warp the torso part alone.
    WarpTorso(WarpTorsoArgs),
    /// Render a textured band along a source arm and warp it to a target
    /// arm (bone-scaling demonstration).
    DemoRect(DemoRectArgs),
    /// Visualize the backward warp field (magnitude heatmap and arrows).
    Field(FieldArgs),
    /// Evaluate identity samples (model == person) and write a CSV of
    /// per-sample scores.
    EvalIdentity(EvalIdentityArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Warp(args) => {
            let report = cmd_warp(args)?;
            println!(
                "warp ok: {} px in the warp mask, {} occluded, {} warning(s)",
                report.metrics.warp_mask_px,
                report.metrics.occluded_px,
                report.warnings.len()
            );
        }
        Command::WarpSleeve(args) => {
            let report = cmd_warp_sleeve(args)?;
            println!(
                "{} ok: {} px mapped, {} valid, {} holes",
                report.part, report.region_px, report.valid_px, report.hole_px
            );
        }
        Command::WarpTorso(args) => {
            let report = cmd_warp_torso(args)?;
            println!(
                "{} ok: {} px mapped, {} valid, {} holes",
                report.part, report.region_px, report.valid_px, report.hole_px
            );
        }
        Command::DemoRect(args) => {
            let demo = cmd_demo_rect(args)?;
            println!(
                "demo ok: band {} px, warped {} px valid",
                demo.band_mask.count_set(),
                demo.warp.valid.count_set()
            );
        }
        Command::Field(args) => {
            let field = cmd_field(args)?;
            println!("field ok: {} px mapped", field.map.mapped_count());
        }
        Command::EvalIdentity(args) => {
            let rows = cmd_eval_identity(args)?;
            let passed = rows.iter().filter(|r| r.pass).count();
            println!("eval ok: {passed}/{} samples passed", rows.len());
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error[{}]: {err}", err.class());
        std::process::exit(err.exit_code());
    }
}
