//! Harmonic maps into the unit disk: residual of the harmonic map equation, the Hopf
//! differential `Q` and the energy density, in exact and stencil derivative modes.

use cmcgk::grid::GridSpec;
use cmcgk::harmonic::{generate, generate_sampled, ComplexGrid, GeodesicTanh, HarmonicMap, MapKind};
use cmcgk::{Complex64, GeomError, Result};

#[derive(Debug)]
pub struct Summary {
    pub exact_residual: f64,
    pub stencil_residual: f64,
    pub q_error: f64,
    pub q_holomorphy: f64,
    pub csv_roundtrip: f64,
    pub rejected_antiholomorphic: bool,
}

pub fn run() -> Result<Summary> {
    let spec = GridSpec::square(0.5, 61)?;
    let tanh = GeodesicTanh {
        direction: 0.4,
        ..GeodesicTanh::new(0.7)
    };
    let exact = generate(&MapKind::GeodesicTanh(tanh), spec)?;
    let sampled = generate_sampled(&MapKind::GeodesicTanh(tanh), spec)?;

    // Q of a geodesic tanh map is the constant a^2 e^{-2i direction}.
    let q_error = exact.hopf_q().iter().map(|q| (q - tanh.hopf_q()).norm()).fold(0.0, f64::max);

    // Round trip through the sampled-file CSV format.
    let dir = std::env::temp_dir().join(format!("cmcgk-harmonic-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|source| GeomError::Io { path: dir.clone(), source })?;
    let path = dir.join("tanh.csv");
    let mut csv = String::from("u,v,re,im\n");
    for (z, g) in spec.nodes().zip(exact.grid().values()) {
        csv.push_str(&format!("{},{},{},{}\n", z.re, z.im, g.re, g.im));
    }
    std::fs::write(&path, csv).map_err(|source| GeomError::Io { path: path.clone(), source })?;
    let reread = HarmonicMap::new(ComplexGrid::read_csv(&path)?)?;
    let csv_roundtrip = reread
        .grid()
        .values()
        .iter()
        .zip(exact.grid().values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let _ = std::fs::remove_dir_all(&dir);

    let conj = ComplexGrid::from_values(spec, spec.sample(|z| 0.5 * z.conj()))?;
    let rejected_antiholomorphic = matches!(HarmonicMap::new(conj), Err(GeomError::Antiholomorphic { .. }));

    Ok(Summary {
        exact_residual: exact.report().max_residual,
        stencil_residual: sampled.report().max_residual,
        q_error,
        q_holomorphy: sampled.hopf_q_holomorphy(3),
        csv_roundtrip,
        rejected_antiholomorphic,
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!("harmonic residual, exact derivatives:   {:.2e}", s.exact_residual);
    println!("harmonic residual, stencil derivatives: {:.2e}", s.stencil_residual);
    println!("max |Q - a^2 e^(-2i direction)|:        {:.2e}", s.q_error);
    println!("max |dQ/dzbar| from stencils:           {:.2e}", s.q_holomorphy);
    println!("CSV round trip:                         {:.2e}", s.csv_roundtrip);
    println!("z -> zbar/2 rejected:                   {}", s.rejected_antiholomorphic);
    let z = Complex64::new(0.1, 0.2);
    let jet = cmcgk::harmonic::MapSampler::jet(&GeodesicTanh::new(0.7), z);
    println!("jet of tanh(0.7 u) at {z}: g = {:.6}, g_z = {:.6}", jet.value, jet.dz);
    Ok(())
}
