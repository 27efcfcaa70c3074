//! Isometries of E(kappa, tau) and the equivariance of the Gauss map: `Pi(df Z)` equals the
//! Moebius image `psi_M(Pi(Z))` for vertical translations, axis rotations and general lifts.

use cmcgk::gauss::projector_pi;
use cmcgk::model::{AmbientPoint, ModelParams, TangentVector};
use cmcgk::moebius::{isometry_defect, lift_isometry, psi, rotation_r, rotation_r_frame, AmbientIsometry, SU11Matrix};
use cmcgk::Result;

#[derive(Debug)]
pub struct Summary {
    pub translation: f64,
    pub rotation: f64,
    pub lift: f64,
    pub lift_metric_defect: f64,
    pub rotation_remark: f64,
}

fn defect(f: &AmbientIsometry, v: &TangentVector) -> Result<f64> {
    let m = f.matrix().expect("identity component");
    let lhs = projector_pi(f.params(), &f.push_frame(v)?)?;
    Ok(lhs.chordal_distance(&psi(&m, projector_pi(f.params(), v)?)))
}

pub fn run() -> Result<Summary> {
    let params = ModelParams::new(-2.0, 0.6)?;
    let p = AmbientPoint::new(0.3, -0.2, 1.5);
    let v = TangentVector::new(p, [0.48, 0.6, 0.64]);

    let translation = defect(&AmbientIsometry::vertical_translation(params, 2.5), &v)?;
    let rotation = defect(&AmbientIsometry::axis_rotation(params, 1.1), &v)?;
    let m = SU11Matrix::from_polar_parts(0.5, 0.3, -1.2);
    let lift = lift_isometry(&params, m, AmbientPoint::origin())?;
    let lift_metric_defect = isometry_defect(&params, |q| lift.apply(q), &p, 1e-5)?;

    let a = projector_pi(&params, &v)?.as_finite().expect("finite");
    let b = projector_pi(&params, &TangentVector::new(rotation_r(&p), rotation_r_frame(v.frame)))?
        .as_finite()
        .expect("finite");
    Ok(Summary {
        translation,
        rotation,
        lift: defect(&lift, &v)?,
        lift_metric_defect,
        rotation_remark: (a * b - 1.0).norm(),
    })
}

fn main() -> Result<()> {
    let s = run()?;
    println!("vertical translation: {:.2e}", s.translation);
    println!("axis rotation:        {:.2e}", s.rotation);
    println!("general lift:         {:.2e} (metric defect {:.2e})", s.lift, s.lift_metric_defect);
    println!("|Pi(dr Z) Pi(Z) - 1|: {:.2e}", s.rotation_remark);
    Ok(())
}
