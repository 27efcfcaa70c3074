//! The sister correspondence between critical-CMC surfaces in `E(kappa, tau)` and
//! minimal surfaces in `Nil3(tau_hat)`, with `tau + i c = e^{i theta} tau_hat`.
//!
//! Only the pointwise relations between the data `(g, eta, zeta)` and `(g_hat, eta_hat)`
//! are evaluated; the Nil3 immersion itself is never built.

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::gauss::auxiliary_from_gauss;
use crate::harmonic::{HarmonicMap, MapJet, RESIDUAL_MARGIN};
use crate::model::ModelParams;
use crate::weierstrass::eta_of;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest `|c (R g - L)|` accepted when solving for `conj(zeta)`.
pub const SOLVE_TOL: f64 = 1e-12;

/// `eta_hat = (4i / tau_hat) conj(g_hat) g_hat_z / (1 - |g_hat|^2)^2`.
pub fn nil_eta(params: &ModelParams, g_hat: &MapJet) -> Complex64 {
    let w = g_hat.conformal_weight();
    4.0 * I / params.tau_hat() * g_hat.value.conj() * g_hat.dz / (w * w)
}

/// `eta = e^{-i theta} eta_hat`.
pub fn eta_from_sister(params: &ModelParams, eta_hat: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, -params.theta()) * eta_hat
}

/// Solves the sister relation for `zeta` without integrating.
///
/// The relation `L (conj(g) - c w) = R (1 - c w g)` with `w = conj(zeta)`,
/// `L = g_z / (1-|g|^2)` and `R = e^{-2i theta} g_hat_z conj(g_hat) / (1-|g_hat|^2)` is
/// linear in `w`. Returns `None` when it is degenerate.
pub fn zeta_algebraic(params: &ModelParams, g: &MapJet, g_hat: &MapJet) -> Option<Complex64> {
    let l = g.dz / g.conformal_weight();
    let r = Complex64::from_polar(1.0, -2.0 * params.theta()) * g_hat.dz * g_hat.value.conj() / g_hat.conformal_weight();
    let den = params.c() * (r * g.value - l);
    if den.norm() < SOLVE_TOL {
        return None;
    }
    Some(((r - l * g.value.conj()) / den).conj())
}

/// `|(1 - e^{2i theta})(1 - e^{-2i theta}) - 4c^2/(tau^2 + c^2)|`.
pub fn phase_identity_residual(params: &ModelParams) -> f64 {
    let e = Complex64::from_polar(1.0, 2.0 * params.theta());
    let (c, tau) = (params.c(), params.tau());
    let lhs = (1.0 - e) * (1.0 - e.conj());
    (lhs - 4.0 * c * c / (tau * tau + c * c)).norm()
}

/// A Gauss map in `E(kappa, tau)` together with a candidate sister Gauss map, sampled on
/// the same grid.
#[derive(Debug, Clone)]
pub struct SisterPair {
    pub params: ModelParams,
    pub g: HarmonicMap,
    pub g_hat: HarmonicMap,
}

/// Worst-case residuals of the sister relations over the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SisterReport {
    /// `| |G| - |g_hat| |`.
    pub angle: f64,
    /// `| |g_z|/(1-|g|^2) - |g_hat_z|/(1-|g_hat|^2) |`.
    pub modulus1: f64,
    /// `| |g_zbar|/(1-|g|^2) - |g_hat_zbar|/(1-|g_hat|^2) |`.
    pub modulus2: f64,
    /// `|Q(g) - e^{-2i theta} Q(g_hat)|`.
    pub q_phase: f64,
    /// `|mu(g) - mu(g_hat)|`.
    pub mu: f64,
    /// `|eta(g, zeta) - e^{-i theta} eta_hat|`.
    pub eta: f64,
    pub degenerate_nodes: usize,
}

impl SisterReport {
    pub fn max(&self) -> f64 {
        [self.angle, self.modulus1, self.modulus2, self.q_phase, self.mu, self.eta]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

impl SisterPair {
    pub fn new(params: ModelParams, g: HarmonicMap, g_hat: HarmonicMap) -> Result<Self> {
        if g.spec() != g_hat.spec() {
            return Err(GeomError::Grid("sister maps must share a grid".into()));
        }
        if !(params.c() > 0.0) {
            return Err(GeomError::InvalidParams("sister relations need c > 0".into()));
        }
        Ok(Self { params, g, g_hat })
    }

    pub fn eta_hat(&self) -> Vec<Complex64> {
        self.g_hat.jets().iter().map(|j| nil_eta(&self.params, j)).collect()
    }

    pub fn eta(&self) -> Vec<Complex64> {
        self.eta_hat().into_iter().map(|e| eta_from_sister(&self.params, e)).collect()
    }

    /// `zeta` at every node, `None` where the linear solve degenerates.
    pub fn zeta(&self) -> Vec<Option<Complex64>> {
        self.g
            .jets()
            .iter()
            .zip(self.g_hat.jets())
            .map(|(a, b)| zeta_algebraic(&self.params, a, b))
            .collect()
    }

    /// Residuals of the sister relations using `zeta` from [`Self::zeta`].
    pub fn associate_checks(&self) -> Result<SisterReport> {
        self.checks_with_rotation(0.0)
    }

    /// Same as [`Self::associate_checks`] with `g_hat` replaced by `e^{i rho} g_hat`.
    ///
    /// Every residual is invariant under this rotation, which is the freedom left in `g_hat`.
    pub fn checks_with_rotation(&self, rho: f64) -> Result<SisterReport> {
        let p = &self.params;
        let spec = self.g.spec();
        let rot = Complex64::from_polar(1.0, -2.0 * p.theta());
        let mut r = SisterReport {
            angle: 0.0,
            modulus1: 0.0,
            modulus2: 0.0,
            q_phase: 0.0,
            mu: 0.0,
            eta: 0.0,
            degenerate_nodes: 0,
        };
        for k in spec.interior(RESIDUAL_MARGIN) {
            let a = self.g.jets()[k];
            let b = self.g_hat.jets()[k].rotated(rho);
            let (wa, wb) = (a.conformal_weight(), b.conformal_weight());
            r.modulus1 = r.modulus1.max((a.dz.norm() / wa - b.dz.norm() / wb).abs());
            r.modulus2 = r.modulus2.max((a.dzbar.norm() / wa - b.dzbar.norm() / wb).abs());
            r.q_phase = r.q_phase.max((a.hopf_q() - rot * b.hopf_q()).norm());
            r.mu = r.mu.max((a.energy_mu() - b.energy_mu()).abs());
            let Some(zeta) = zeta_algebraic(p, &a, &b) else {
                r.degenerate_nodes += 1;
                continue;
            };
            if p.disk_margin(zeta) <= 0.0 {
                r.angle = f64::INFINITY;
                continue;
            }
            let big_g = auxiliary_from_gauss(p, a.value.into(), zeta)?;
            r.angle = r.angle.max((big_g.modulus() - b.value.norm()).abs());
            let eta = eta_of(p, a.value, a.dz, zeta);
            r.eta = r.eta.max((eta - eta_from_sister(p, nil_eta(p, &b))).norm());
        }
        Ok(r)
    }
}

/// Closed-form critical-CMC surface of revolution whose Gauss map is `g(z) = z`.
///
/// Returns `(zeta, x3, eta)`. For `tau = 0` the height is `2 / (c (1 - |z|^2))`, the
/// limit of the general formula (the arctangent term carries a factor `tau`).
pub fn example_revolution(params: &ModelParams, z: Complex64) -> Result<(Complex64, f64, Complex64)> {
    let (c, tau) = (params.c(), params.tau());
    if !(c > 0.0) {
        return Err(GeomError::InvalidParams("surface of revolution needs c > 0".into()));
    }
    let r2 = z.norm_sqr();
    if !(r2 < 1.0) {
        return Err(GeomError::Undefined(format!("|z| = {} must be < 1", r2.sqrt())));
    }
    let theta = params.theta();
    let e = Complex64::from_polar(1.0, 2.0 * theta);
    let zeta = (e - 1.0) / c * z / (e * r2 - 1.0);
    let base = 2.0 / (c * (1.0 - r2));
    let x3 = if tau == 0.0 {
        base
    } else {
        let (s, co) = (2.0 * theta).sin_cos();
        -(tau / (c * c)) * ((r2 - co) / s).atan() + base
    };
    let eta = 4.0 * I / Complex64::new(tau, c) * z.conj() / ((1.0 - r2) * (1.0 - r2));
    Ok((zeta, x3, eta))
}
