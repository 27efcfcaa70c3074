//! Analytic immersions run through the curvature diagnostics: horocylinders have
//! `|H| = c` and a horizontal normal everywhere; vertical cylinders have `|g| = 1`.

use cmcgk::diagnostics::{self, sample_surface, Horocylinder, Orientation, VerticalCylinder};
use cmcgk::gauss::gauss_from_normal;
use cmcgk::grid::GridSpec;
use cmcgk::model::ModelParams;
use cmcgk::{Complex64, Result};

#[derive(Debug)]
pub struct Summary {
    /// `max ||H| - c|` over every parameter set.
    pub horocylinder_h: f64,
    pub all_horizontal: bool,
    /// `max ||g| - 1|` on the vertical cylinder.
    pub cylinder_equator: f64,
}

pub fn run() -> Result<Summary> {
    let spec = GridSpec::new(Complex64::new(0.0, 0.0), 0.5, 0.5, 81, 81)?;
    let mut horocylinder_h: f64 = 0.0;
    let mut all_horizontal = true;
    for (kappa, tau) in [(-4.0, 0.0), (-1.0, 0.0), (-2.0, 0.8)] {
        let params = ModelParams::new(kappa, tau)?;
        let surface = sample_surface(params, spec, &Horocylinder { params });
        let jet = diagnostics::jet(&surface, Orientation::Parametrization)?;
        let worst = spec
            .interior(diagnostics::DIAGNOSTIC_MARGIN)
            .map(|k| (jet.points[k].mean_curvature.abs() - params.c()).abs())
            .fold(0.0, f64::max);
        horocylinder_h = horocylinder_h.max(worst);
        all_horizontal &= jet.horizontal_nodes == spec.len();
    }

    let params = ModelParams::new(-1.0, 0.5)?;
    let surface = sample_surface(params, spec, &VerticalCylinder { params, rho: 0.6 });
    let jet = diagnostics::jet(&surface, Orientation::Parametrization)?;
    let mut cylinder_equator: f64 = 0.0;
    for (k, p) in jet.points.iter().enumerate() {
        let n = p.normal;
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let g = gauss_from_normal(&params, jet.zeta[k], [n[0] / len, n[1] / len, n[2] / len])?;
        cylinder_equator = cylinder_equator.max((g.modulus() - 1.0).abs());
    }
    Ok(Summary {
        horocylinder_h,
        all_horizontal,
        cylinder_equator,
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!("horocylinders: max ||H| - c| = {:.2e}, normal horizontal everywhere: {}", s.horocylinder_h, s.all_horizontal);
    println!("vertical cylinder: max ||g| - 1| = {:.2e}", s.cylinder_equator);
    Ok(())
}
