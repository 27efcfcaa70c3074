//! Recovers the Gauss map from a reconstructed immersion by stencil differentiation and
//! compares it with the map the surface was built from.

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, GeodesicTanh, MapKind};
use cmcgk::model::ModelParams;
use cmcgk::weierstrass::{gauss_of_immersion, integrate, IntegrationOptions, ReconstructionInput};
use cmcgk::{Complex64, Result};

pub fn run(n: usize) -> Result<f64> {
    let params = ModelParams::from_critical(1.0, 0.5)?;
    let map = generate(&MapKind::GeodesicTanh(GeodesicTanh { phase: 0.3, ..GeodesicTanh::new(0.7) }), GridSpec::square(0.55, n)?)?;
    let zero = Complex64::new(0.0, 0.0);
    let input = ReconstructionInput::new(params, &map, zero, Complex64::new(0.1, 0.0), 0.0)?;
    let s = integrate(&input, &IntegrationOptions::default())?;
    let back = gauss_of_immersion(&params, &s.spec, &s.zeta, &s.x3)?;
    Ok(back
        .iter()
        .zip(&s.g)
        .map(|(b, g)| b.as_finite().map_or(f64::INFINITY, |b| (b - g).norm()))
        .fold(0.0, f64::max))
}

fn main() -> Result<()> {
    let mut last: Option<f64> = None;
    for n in [41, 81, 161] {
        let e = run(n)?;
        match last {
            Some(prev) => println!("{n:>3}^2: max |g_recovered - g| = {e:.2e}, order {:.2}", (prev / e).log2()),
            None => println!("{n:>3}^2: max |g_recovered - g| = {e:.2e}"),
        }
        last = Some(e);
    }
    Ok(())
}
