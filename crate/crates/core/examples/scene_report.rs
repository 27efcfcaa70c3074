//! Runs a JSON scene through the same pipeline as `cmcgk reconstruct` and prints the report.
//!
//! Usage: `cargo run --example scene_report -- [scene.json]` (defaults to the golden scene).

use std::path::{Path, PathBuf};

use cmcgk::cli::config::SceneConfig;
use cmcgk::cli::pipeline::reconstruct;
use cmcgk::cli::report::Report;
use cmcgk::Result;

pub fn run(path: &Path) -> Result<Report> {
    let cfg = SceneConfig::load(path)?;
    Ok(reconstruct(&cfg, "scene_report", &path.display().to_string())?.report)
}

fn main() -> Result<()> {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/scenes/golden.json"), PathBuf::from);
    let report = run(&path)?;
    print!("{}", report.summary());
    Ok(())
}
