//! Integrates the representation system for `g(z) = z` in E(-4, 1) and compares the result
//! with the closed-form surface of revolution.

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, MapKind};
use cmcgk::model::ModelParams;
use cmcgk::sister::example_revolution;
use cmcgk::weierstrass::{integrate, IntegrationOptions, ReconstructionInput};
use cmcgk::{Complex64, Result};

#[derive(Debug)]
pub struct Golden {
    pub zeta_error: f64,
    pub x3_error: f64,
    pub min_disk_margin: f64,
}

pub fn run(n: usize) -> Result<Golden> {
    let params = ModelParams::from_critical(1.0, 1.0)?;
    let spec = GridSpec::square(0.55, n)?;
    let map = generate(&MapKind::Identity, spec)?;
    let z0 = Complex64::new(0.0, 0.0);
    let (zeta0, x30, _) = example_revolution(&params, z0)?;
    let input = ReconstructionInput::new(params, &map, z0, zeta0, x30)?;
    let surface = integrate(&input, &IntegrationOptions::default())?;

    let mut out = Golden {
        zeta_error: 0.0,
        x3_error: 0.0,
        min_disk_margin: surface.min_disk_margin,
    };
    for (k, z) in spec.nodes().enumerate() {
        let (zeta, x3, _) = example_revolution(&params, z)?;
        out.zeta_error = out.zeta_error.max((surface.zeta[k] - zeta).norm());
        out.x3_error = out.x3_error.max((surface.x3[k] - x3).abs());
    }
    Ok(out)
}

fn main() -> Result<()> {
    for n in [41, 81, 161] {
        let g = run(n)?;
        println!(
            "{n:>3}^2 nodes: max |zeta error| = {:.2e}, max |x3 error| = {:.2e}, min 1-c^2|zeta|^2 = {:.3}",
            g.zeta_error, g.x3_error, g.min_disk_margin
        );
    }
    Ok(())
}
