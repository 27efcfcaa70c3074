//! The sister correspondence with minimal surfaces in Nil3: `zeta` solved algebraically from
//! the pair of Gauss maps, and the associate relations checked on an identity pair, a tanh
//! pair in the product space and a mismatched pair.

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, GeodesicTanh, MapKind};
use cmcgk::model::ModelParams;
use cmcgk::sister::{phase_identity_residual, SisterPair, SisterReport};
use cmcgk::{Complex64, Result};

#[derive(Debug)]
pub struct Summary {
    pub identity: SisterReport,
    pub tanh: SisterReport,
    pub mismatched: SisterReport,
    pub phase_identity: f64,
}

pub fn run() -> Result<Summary> {
    let spec = GridSpec::new(Complex64::new(0.013, 0.007), 0.5, 0.5, 41, 41)?;
    let id = ModelParams::from_critical(1.0, 1.0)?;
    let g = generate(&MapKind::Identity, spec)?;
    let identity = SisterPair::new(id, g.clone(), g.clone())?.associate_checks()?;

    let flat = ModelParams::from_critical(1.0, 0.0)?;
    let tanh = generate(&MapKind::GeodesicTanh(GeodesicTanh::new(0.7)), spec)?;
    let hat = GeodesicTanh {
        direction: std::f64::consts::FRAC_PI_2,
        ..GeodesicTanh::new(0.7)
    };
    let tanh = SisterPair::new(flat, tanh, generate(&MapKind::GeodesicTanh(hat), spec)?)?.associate_checks()?;

    let square = generate(&MapKind::Holomorphic(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]), spec)?;
    let mismatched = SisterPair::new(id, g, square)?.associate_checks()?;
    Ok(Summary {
        identity,
        tanh,
        mismatched,
        phase_identity: phase_identity_residual(&ModelParams::new(-3.0, 0.4)?),
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!("identity pair (c = tau = 1):  worst residual {:.2e}", s.identity.max());
    println!("tanh pair (c = 1, tau = 0):   worst residual {:.2e}", s.tanh.max());
    println!("g = z against g_hat = z^2:    {:?}", s.mismatched);
    println!("phase identity:               {:.2e}", s.phase_identity);
    Ok(())
}
