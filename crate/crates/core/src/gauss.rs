//! The geometric Gauss map.
//!
//! `projector_pi` is the map `Π : UE -> C ∪ {∞}`; the Gauss map of an oriented surface is
//! `Π ∘ N`. In the frame `(V1, V2, V3)` it reads
//!
//! ```text
//! Π_x(Z) = (Z1 + i Z2 + c zeta (1 + Z3)) / (c conj(zeta) (Z1 + i Z2) + 1 + Z3).
//! ```
//!
//! The auxiliary map `G` is the stereographic coordinate of the normal in the frame.
//! It depends on the frame, so only `|G|` carries geometric meaning.

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::model::{
    conformal_factor, hyperboloid_embed, hyperboloid_pushforward, LorentzVector, ModelParams,
    TangentVector,
};
use crate::moebius::ExtComplex;

/// Unit-length tolerance for vectors fed to [`projector_pi`].
pub const UNIT_TOL: f64 = 1e-10;

/// Half-width of the band around `|g| = 1` classified as equator.
pub const EQUATOR_BAND: f64 = 1e-10;

/// Gauss data of a surface at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussData {
    pub g: ExtComplex,
    pub big_g: ExtComplex,
    pub g_tilde: Option<LorentzVector>,
}

impl GaussData {
    pub fn from_normal(params: &ModelParams, zeta: Complex64, normal: [f64; 3]) -> Result<Self> {
        let g = gauss_from_normal(params, zeta, normal)?;
        let big_g = stereographic(normal);
        let g_tilde = if normal[2] > 0.0 && params.c() > 0.0 {
            Some(lorentz_gauss(params, zeta, normal)?)
        } else {
            None
        };
        Ok(Self { g, big_g, g_tilde })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hemisphere {
    North,
    Equator,
    South,
}

/// `(Z1 + i Z2) / (1 + Z3)` for a unit vector, using the equivalent form
/// `(1 - Z3) / (Z1 - i Z2)` on the lower half to keep the south pole finite.
pub fn stereographic(z: [f64; 3]) -> ExtComplex {
    let h = Complex64::new(z[0], z[1]);
    if z[2] >= 0.0 {
        ExtComplex::Finite(h / (1.0 + z[2]))
    } else {
        ExtComplex::from_ratio(Complex64::new(1.0 - z[2], 0.0), h.conj())
    }
}

/// The Möbius map `s -> (s + c zeta) / (c conj(zeta) s + 1)` relating `G` to `g`.
fn frame_to_gauss(params: &ModelParams, zeta: Complex64, s: ExtComplex) -> ExtComplex {
    let cz = zeta * params.c();
    let one = Complex64::new(1.0, 0.0);
    match s {
        ExtComplex::Finite(s) => ExtComplex::from_ratio(s + cz, cz.conj() * s + one),
        ExtComplex::Infinity => ExtComplex::from_ratio(one, cz.conj()),
    }
}

fn gauss_to_frame(params: &ModelParams, zeta: Complex64, g: ExtComplex) -> ExtComplex {
    let cz = zeta * params.c();
    let one = Complex64::new(1.0, 0.0);
    match g {
        ExtComplex::Finite(g) => ExtComplex::from_ratio(g - cz, one - cz.conj() * g),
        ExtComplex::Infinity => ExtComplex::from_ratio(one, -cz.conj()),
    }
}

/// `Π_x(Z)` for a unit tangent vector `Z`.
pub fn projector_pi(params: &ModelParams, z: &TangentVector) -> Result<ExtComplex> {
    z.require_unit(UNIT_TOL)?;
    let zeta = z.base.zeta();
    params.check_zeta(zeta)?;
    Ok(frame_to_gauss(params, zeta, stereographic(z.frame)))
}

/// Gauss map value from the frame components of the unit normal at a point with coordinate `zeta`.
pub fn gauss_from_normal(params: &ModelParams, zeta: Complex64, normal: [f64; 3]) -> Result<ExtComplex> {
    let norm = (normal[0].powi(2) + normal[1].powi(2) + normal[2].powi(2)).sqrt();
    if !((norm - 1.0).abs() <= UNIT_TOL) {
        return Err(GeomError::NonUnit { norm });
    }
    params.check_zeta(zeta)?;
    Ok(frame_to_gauss(params, zeta, stereographic(normal)))
}

/// `G = (g - c zeta) / (1 - c conj(zeta) g)`.
pub fn auxiliary_from_gauss(params: &ModelParams, g: ExtComplex, zeta: Complex64) -> Result<ExtComplex> {
    params.check_zeta(zeta)?;
    Ok(gauss_to_frame(params, zeta, g))
}

/// `g = (G + c zeta) / (c conj(zeta) G + 1)`.
pub fn gauss_from_auxiliary(params: &ModelParams, big_g: ExtComplex, zeta: Complex64) -> Result<ExtComplex> {
    params.check_zeta(zeta)?;
    Ok(frame_to_gauss(params, zeta, big_g))
}

/// Unit normal `(2 Re G, 2 Im G, 1 - |G|^2) / (1 + |G|^2)` in frame components.
pub fn normal_from_auxiliary(big_g: ExtComplex) -> [f64; 3] {
    match big_g {
        ExtComplex::Infinity => [0.0, 0.0, -1.0],
        ExtComplex::Finite(g) if g.norm() <= 1.0 => {
            let r = g.norm_sqr();
            let d = 1.0 + r;
            [2.0 * g.re / d, 2.0 * g.im / d, (1.0 - r) / d]
        }
        ExtComplex::Finite(g) => {
            // w = 1/G keeps things bounded for large |G|
            let w = g.inv();
            let r = w.norm_sqr();
            let d = 1.0 + r;
            [2.0 * w.re / d, -2.0 * w.im / d, (r - 1.0) / d]
        }
    }
}

/// The natural isometry `F(w) = (1 + |w|^2, 2 Re w, 2 Im w) / (1 - |w|^2)` from the unit disk
/// onto the hyperboloid of curvature -1.
pub fn disk_to_hyperboloid(w: Complex64) -> Result<LorentzVector> {
    let r = w.norm_sqr();
    if !(r < 1.0) {
        return Err(GeomError::Undefined(format!("F(w) needs |w| < 1, got {}", w.norm())));
    }
    let s = 1.0 / (1.0 - r);
    Ok(LorentzVector::new((1.0 + r) * s, 2.0 * w.re * s, 2.0 * w.im * s))
}

/// Lorentzian expression `(1/nu) (2c X_* + N_*)` of the Gauss map, defined where `nu = N3 > 0`.
pub fn lorentz_gauss(params: &ModelParams, zeta: Complex64, normal: [f64; 3]) -> Result<LorentzVector> {
    let nu = normal[2];
    if !(nu > 0.0) {
        return Err(GeomError::Undefined(format!(
            "Lorentzian Gauss map needs an upward normal, got nu = {nu}"
        )));
    }
    let lambda = conformal_factor(params, zeta)?;
    let x_star = hyperboloid_embed(params, zeta)?;
    // d pi(N) in coordinates is (N1 + i N2) / Lambda
    let n_star = hyperboloid_pushforward(params, zeta, Complex64::new(normal[0], normal[1]) / lambda)?;
    Ok(x_star.scale(2.0 * params.c()).add(&n_star).scale(1.0 / nu))
}

pub fn classify(g: ExtComplex) -> Hemisphere {
    let m = g.modulus();
    if (m - 1.0).abs() < EQUATOR_BAND {
        Hemisphere::Equator
    } else if m < 1.0 {
        Hemisphere::North
    } else {
        Hemisphere::South
    }
}
