//! The Gauss map of a unit normal: `g`, the frame-dependent coordinate `G`, the unit
//! normal recovered from `G`, and the Lorentzian form of `g`.

use cmcgk::gauss::{
    auxiliary_from_gauss, classify, disk_to_hyperboloid, gauss_from_normal, normal_from_auxiliary, GaussData,
};
use cmcgk::model::ModelParams;
use cmcgk::{Complex64, Result};

#[derive(Debug)]
pub struct Summary {
    pub normal_roundtrip: f64,
    pub lorentz_agreement: f64,
}

pub fn run() -> Result<Summary> {
    let params = ModelParams::new(-1.0, 0.7)?;
    let zeta = Complex64::new(0.9, -0.4);
    let normal = [0.36, -0.48, 0.8];

    let data = GaussData::from_normal(&params, zeta, normal)?;
    let big_g = auxiliary_from_gauss(&params, data.g, zeta)?;
    let back = normal_from_auxiliary(big_g);
    let normal_roundtrip = (0..3).map(|k| (back[k] - normal[k]).abs()).fold(0.0, f64::max);

    let g = gauss_from_normal(&params, zeta, normal)?.as_finite().expect("upward normal");
    let gt = data.g_tilde.expect("upward normal");
    let lorentz_agreement = disk_to_hyperboloid(g)?.max_abs_diff(&gt) / gt.p0;
    Ok(Summary {
        normal_roundtrip,
        lorentz_agreement,
    })
}

fn main() -> Result<()> {
    let params = ModelParams::new(-1.0, 0.7)?;
    let zeta = Complex64::new(0.9, -0.4);
    for normal in [[0.0, 0.0, 1.0], [0.36, -0.48, 0.8], [1.0, 0.0, 0.0], [0.0, 0.6, -0.8]] {
        let d = GaussData::from_normal(&params, zeta, normal)?;
        println!(
            "N = {normal:?}: g = {:?} ({:?}), |G| = {:.6}",
            d.g,
            classify(d.g),
            d.big_g.modulus()
        );
    }
    let s = run()?;
    println!("normal -> g -> G -> normal: {:.2e}", s.normal_roundtrip);
    println!("|F(g) - g_tilde| / g_tilde_0: {:.2e}", s.lorentz_agreement);
    Ok(())
}
