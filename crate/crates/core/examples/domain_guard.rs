//! The domain guard: integration stops at the first node where `1 - c^2|zeta|^2` falls
//! below the guard, reporting that node, instead of producing non-finite values.

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, MapKind};
use cmcgk::model::ModelParams;
use cmcgk::weierstrass::{integrate, IntegrationOptions, ReconstructionInput};
use cmcgk::{Complex64, GeomError, Result};

/// `Ok(min margin)` when the run completes, `Err` with the guard report otherwise.
pub fn run(half: f64, guard: f64) -> Result<std::result::Result<f64, GeomError>> {
    let params = ModelParams::from_critical(1.0, 1.0)?;
    let map = generate(&MapKind::Identity, GridSpec::square(half, 161)?)?;
    let zero = Complex64::new(0.0, 0.0);
    let input = ReconstructionInput::new(params, &map, zero, zero, 2.0)?;
    let opts = IntegrationOptions {
        domain_guard: guard,
        ..IntegrationOptions::default()
    };
    Ok(match integrate(&input, &opts) {
        Ok(s) => Ok(s.min_disk_margin),
        Err(e @ GeomError::DomainGuard { .. }) => Err(e),
        Err(e) => return Err(e),
    })
}

fn main() -> Result<()> {
    for (half, guard) in [(0.636, 1e-6), (0.68, 1e-6), (0.68, 0.05)] {
        match run(half, guard)? {
            Ok(m) => println!("[-{half}, {half}]^2, guard {guard:.0e}: completed, min 1-c^2|zeta|^2 = {m:.3e}"),
            Err(e) => println!("[-{half}, {half}]^2, guard {guard:.0e}: {e}"),
        }
    }
    Ok(())
}
