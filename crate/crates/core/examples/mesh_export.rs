//! Writes the golden surface as OBJ and PLY meshes in model coordinates.

use std::path::{Path, PathBuf};

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, MapKind};
use cmcgk::mesh::{export_mesh, MeshFormat};
use cmcgk::model::ModelParams;
use cmcgk::weierstrass::{integrate, IntegrationOptions, ReconstructionInput};
use cmcgk::{Complex64, Result};

pub fn run(dir: &Path) -> Result<[PathBuf; 2]> {
    let params = ModelParams::from_critical(1.0, 1.0)?;
    let map = generate(&MapKind::Identity, GridSpec::square(0.55, 41)?)?;
    let zero = Complex64::new(0.0, 0.0);
    let input = ReconstructionInput::new(params, &map, zero, zero, 2.0)?;
    let surface = integrate(&input, &IntegrationOptions::default())?;
    let obj = dir.join("golden.obj");
    let ply = dir.join("golden.ply");
    export_mesh(&surface, &obj, MeshFormat::Obj)?;
    export_mesh(&surface, &ply, MeshFormat::Ply)?;
    Ok([obj, ply])
}

fn main() -> Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    for path in run(&dir)? {
        let size = std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
        println!("wrote {} ({size} bytes)", path.display());
    }
    Ok(())
}
