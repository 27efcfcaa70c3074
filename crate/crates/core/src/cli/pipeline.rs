//! Reconstruction plus the full set of residual checks for one scene.

use num_complex::Complex64;

use super::config::{SceneConfig, Tolerances};
use super::report::{Check, Report};
use crate::diagnostics::{self, Orientation, SurfaceGrids};
use crate::error::{GeomError, Result};
use crate::gauss::{disk_to_hyperboloid, gauss_from_normal, lorentz_gauss};
use crate::harmonic::HarmonicMap;
use crate::model::ModelParams;
use crate::sister::{phase_identity_residual, SisterPair};
use crate::weierstrass::{
    gauss_of_immersion, integrability_residual, integrate, IntegrationOptions, ReconstructedSurface,
    ReconstructionInput,
};

/// Smallest angle function at which the Lorentzian Gauss map is compared.
pub const LORENTZ_MIN_ANGLE: f64 = 0.05;

/// Outcome of one reconstruction run.
#[derive(Debug)]
pub struct Reconstruction {
    pub map: HarmonicMap,
    pub surface: Option<ReconstructedSurface>,
    pub report: Report,
    /// Set when the run stopped on a numerical error; the report already names it.
    pub abort: Option<GeomError>,
}

/// Runs the pipeline for `cfg`. Check failures land in the report; only configuration
/// problems are returned as errors.
pub fn reconstruct(cfg: &SceneConfig, command: &str, source: &str) -> Result<Reconstruction> {
    let params = cfg.params()?;
    let spec = cfg.grid_spec()?;
    let mut report = Report::new(command, source);
    report.metadata.kappa = Some(cfg.kappa);
    report.metadata.tau = Some(cfg.tau);
    report.metadata.grid = Some([spec.nu, spec.nv]);
    let map = cfg.gauss_map()?;
    let run = run_checks(&params, &map, cfg.z0(), cfg.zeta0(), cfg.basepoint.x30, &cfg.tolerances, &mut report)?;
    Ok(Reconstruction {
        map,
        surface: run.0,
        report,
        abort: run.1,
    })
}

/// Integrates `map` from the given basepoint and appends every check to `report`.
pub fn run_checks(
    params: &ModelParams,
    map: &HarmonicMap,
    z0: Complex64,
    zeta0: Complex64,
    x30: f64,
    tol: &Tolerances,
    report: &mut Report,
) -> Result<(Option<ReconstructedSurface>, Option<GeomError>)> {
    let input = ReconstructionInput::new(*params, map, z0, zeta0, x30)
        .map_err(|e| GeomError::config("basepoint", e.to_string()))?;
    let opts = IntegrationOptions {
        domain_guard: tol.domain_guard,
        harmonic_max: tol.harmonic_max,
    };
    let harmonic = map.report().max_residual;
    report.push(Check::le("harmonic_residual", harmonic, tol.harmonic_max));

    match integrability_residual(&input, &opts) {
        Ok(r) => {
            report.push(Check::le("integrability_zeta", r.zeta, tol.integrability_max));
            report.push(Check::le("integrability_x3", r.x3, tol.integrability_x3_max));
        }
        Err(e @ GeomError::DomainGuard { .. }) => {
            report.push(Check::aborted("domain_margin", tol.domain_guard, e.to_string()));
            return Ok((None, Some(e)));
        }
        Err(e) => return Err(e),
    }
    if harmonic > tol.harmonic_max {
        return Ok((None, None));
    }
    let surface = match integrate(&input, &opts) {
        Ok(s) => s,
        Err(e @ GeomError::DomainGuard { .. }) => {
            report.push(Check::aborted("domain_margin", tol.domain_guard, e.to_string()));
            return Ok((None, Some(e)));
        }
        Err(e) => return Err(e),
    };
    report.extend(surface_checks(&surface, &map.hopf_q(), tol));
    Ok((Some(surface), None))
}

/// Checks computed from a finished surface.
pub fn surface_checks(surface: &ReconstructedSurface, q: &[Complex64], tol: &Tolerances) -> Vec<Check> {
    let params = &surface.params;
    let mut out = vec![Check::ge("domain_margin", surface.min_disk_margin, tol.domain_guard)];
    let finite = surface.zeta.iter().all(|z| z.is_finite()) && surface.x3.iter().all(|h| h.is_finite());
    out.push(Check::le("nonfinite_nodes", if finite { 0.0 } else { 1.0 }, 0.0));

    let jet = match diagnostics::jet(&SurfaceGrids::from(surface), Orientation::Upward) {
        Ok(j) => j,
        Err(e) => {
            out.push(Check::aborted("jet", 0.0, e.to_string()));
            return out;
        }
    };
    out.push(Check::le("algebraic_sum_ak", diagnostics::algebraic_residuals(&jet).max(), tol.algebraic_max));
    out.push(Check::le(
        "mean_curvature_minus_c",
        diagnostics::mean_curvature_error(&jet, params.c()),
        tol.mean_curvature_max,
    ));
    out.push(Check::le("hopf_q_plus_phi", diagnostics::verify_hopf_relation(q, &jet), tol.hopf_max));
    out.push(match lorentz_residual(params, &jet) {
        Ok((r, 0)) => Check::le("lorentz_agreement", r, tol.lorentz_max).with_note("no node with nu > 0.05"),
        Ok((r, _)) => Check::le("lorentz_agreement", r, tol.lorentz_max),
        Err(e) => Check::aborted("lorentz_agreement", tol.lorentz_max, e.to_string()),
    });
    out.push(match roundtrip_error(surface) {
        Ok(r) => Check::le("gauss_roundtrip", r, tol.roundtrip_max),
        Err(e) => Check::aborted("gauss_roundtrip", tol.roundtrip_max, e.to_string()),
    });
    out
}

/// `max |F(g) - g_tilde| / g_tilde_0` over nodes whose (possibly flipped) normal has
/// angle function above [`LORENTZ_MIN_ANGLE`], with `g` computed from the same normal.
/// Returns the residual and the number of nodes used.
pub fn lorentz_residual(params: &ModelParams, jet: &diagnostics::ImmersionJet) -> Result<(f64, usize)> {
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for k in jet.spec.interior(diagnostics::DIAGNOSTIC_MARGIN) {
        let mut n = jet.points[k].normal;
        let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        n.iter_mut().for_each(|x| *x /= len);
        if n[2] < 0.0 {
            n.iter_mut().for_each(|x| *x = -*x);
        }
        if n[2] <= LORENTZ_MIN_ANGLE {
            continue;
        }
        let zeta = jet.zeta[k];
        let g = gauss_from_normal(params, zeta, n)?
            .as_finite()
            .ok_or_else(|| GeomError::Undefined("upward normal mapped to infinity".into()))?;
        let gt = lorentz_gauss(params, zeta, n)?;
        worst = worst.max(disk_to_hyperboloid(g)?.max_abs_diff(&gt) / gt.p0);
        used += 1;
    }
    Ok((worst, used))
}

/// `max |gauss_of_immersion(surface) - g|` over all nodes.
pub fn roundtrip_error(surface: &ReconstructedSurface) -> Result<f64> {
    let back = gauss_of_immersion(&surface.params, &surface.spec, &surface.zeta, &surface.x3)?;
    Ok(back
        .iter()
        .zip(&surface.g)
        .map(|(b, g)| b.as_finite().map_or(f64::INFINITY, |b| (b - g).norm()))
        .fold(0.0, f64::max))
}

/// Sister relations for `g` and `g_hat`, plus the phase identity.
pub fn sister_checks(params: &ModelParams, g: HarmonicMap, g_hat: HarmonicMap, tol: &Tolerances) -> Result<Vec<Check>> {
    let pair = SisterPair::new(*params, g, g_hat)?;
    let r = pair.associate_checks()?;
    let note = (params.tau() == 0.0).then_some("tau = 0: theta = pi/2 limit branch");
    let mut out = vec![
        Check::le("sister_angle", r.angle, tol.sister_max),
        Check::le("sister_modulus1", r.modulus1, tol.sister_max),
        Check::le("sister_modulus2", r.modulus2, tol.sister_max),
        Check::le("sister_q_phase", r.q_phase, tol.sister_max),
        Check::le("sister_mu", r.mu, tol.sister_max),
        Check::le("sister_eta", r.eta, tol.sister_max),
        Check::le("sister_degenerate_nodes", r.degenerate_nodes as f64, 0.0),
        Check::le("phase_identity", phase_identity_residual(params), 1e-14),
    ];
    if let Some(n) = note {
        out.iter_mut().for_each(|c| c.note = Some(n.to_string()));
    }
    Ok(out)
}
