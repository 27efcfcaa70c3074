//! Reconstruction of a critical-CMC immersion `(zeta, x3)` from its Gauss map `g`
//! by integrating the first-order representation system along grid lines.
//!
//! The system is integrable exactly when `g` is harmonic into the hyperbolic disk,
//! so integrating in two different sweep orders and comparing gives a free
//! certificate of integrability.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::gauss::gauss_from_normal;
use crate::grid::{self, Axis, GridSpec};
use crate::harmonic::{HarmonicMap, MapJet};
use crate::model::{AmbientPoint, ModelParams};
use crate::moebius::ExtComplex;

pub const DEFAULT_DOMAIN_GUARD: f64 = 1e-6;
pub const DEFAULT_HARMONIC_MAX: f64 = 1e-6;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `(zeta_z, zeta_zbar, (x3)_z)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rhs {
    pub zeta_z: Complex64,
    pub zeta_zbar: Complex64,
    pub x3_z: Complex64,
}

impl Rhs {
    /// Derivatives of `(zeta, x3)` along the `u` or `v` grid direction.
    pub fn along(&self, axis: Axis) -> (Complex64, f64) {
        match axis {
            Axis::U => (self.zeta_z + self.zeta_zbar, 2.0 * self.x3_z.re),
            Axis::V => (I * (self.zeta_z - self.zeta_zbar), -2.0 * self.x3_z.im),
        }
    }
}

/// `eta = 2 <X_z, xi>` in terms of `g`, `g_z` and `zeta`.
pub fn eta_of(params: &ModelParams, g: Complex64, g_z: Complex64, zeta: Complex64) -> Complex64 {
    let c = params.c();
    let w = 1.0 - g.norm_sqr();
    let phi = params.disk_margin(zeta);
    -4.0 / params.c_plus_i_tau() * (g.conj() - c * zeta.conj()) * (1.0 - c * zeta * g.conj()) * g_z / (phi * w * w)
}

/// Right-hand side of the representation system.
pub fn rhs(params: &ModelParams, jet: &MapJet, zeta: Complex64) -> Rhs {
    let (c, tau) = (params.c(), params.tau());
    let g = jet.value;
    let w = 1.0 - g.norm_sqr();
    let w2 = w * w;
    let cit = params.c_plus_i_tau();
    let zeta_z = 2.0 / cit * (1.0 - c * zeta * g.conj()).powu(2) * jet.dz / w2;
    let zeta_zbar = -2.0 / cit.conj() * (g - c * zeta).powu(2) * jet.dz.conj() / w2;
    let eta = eta_of(params, g, jet.dz, zeta);
    let zetabar_z = zeta_zbar.conj();
    let x3_z = 0.5 * eta + 0.5 * I * tau * (zeta * zetabar_z - zeta.conj() * zeta_z) / params.disk_margin(zeta);
    Rhs {
        zeta_z,
        zeta_zbar,
        x3_z,
    }
}

/// Conformal factor `lambda = 2 <X_z, X_zbar>` of the reconstructed immersion in closed form.
pub fn lambda_of(params: &ModelParams, g: Complex64, g_z: Complex64, zeta: Complex64) -> f64 {
    let c = params.c();
    let num = (1.0 - c * zeta.conj() * g).norm_sqr() + (g - c * zeta).norm_sqr();
    let w = 1.0 - g.norm_sqr();
    let phi = params.disk_margin(zeta);
    4.0 * num * num * g_z.norm_sqr() / ((c * c + params.tau() * params.tau()) * phi * phi * w.powi(4))
}

/// The two auxiliary expressions `U(G, zeta)` and `V(G)` at mean curvature `h`.
///
/// `eta = 4 conj(G) G_z / U` and
/// `g_z / g = (1 - c^2|zeta|^2) eta V / (4 conj(G) (G + c zeta)(c conj(zeta) G + 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassKernel {
    pub u: Complex64,
    pub v: Complex64,
}

impl WeierstrassKernel {
    pub fn new(params: &ModelParams, h: f64, big_g: Complex64, zeta: Complex64) -> Self {
        let (c, tau) = (params.c(), params.tau());
        let m = big_g.norm_sqr();
        let plus = (1.0 + m) * (1.0 + m);
        let minus = (1.0 - m) * (1.0 - m);
        let u = Complex64::new(h * plus, -tau * minus)
            + 2.0 * c * c * big_g * (zeta.conj() + big_g.conj().powu(2) * zeta);
        let v = (h - c) * plus - params.c_plus_i_tau() * minus;
        Self { u, v }
    }

    pub fn critical(params: &ModelParams, big_g: Complex64, zeta: Complex64) -> Self {
        Self::new(params, params.c(), big_g, zeta)
    }
}

/// Initial data for a reconstruction: `(zeta, x3)(z0) = (zeta0, x30)` with `z0` a grid node.
#[derive(Debug, Clone, Copy)]
pub struct ReconstructionInput<'a> {
    pub params: ModelParams,
    pub map: &'a HarmonicMap,
    pub base: (usize, usize),
    pub zeta0: Complex64,
    pub x30: f64,
}

impl<'a> ReconstructionInput<'a> {
    pub fn new(params: ModelParams, map: &'a HarmonicMap, z0: Complex64, zeta0: Complex64, x30: f64) -> Result<Self> {
        if !(params.c() > 0.0) {
            return Err(GeomError::InvalidParams(
                "reconstruction needs kappa < 0 (critical curvature c > 0)".into(),
            ));
        }
        let base = map
            .spec()
            .node_of(z0)
            .ok_or_else(|| GeomError::Grid(format!("basepoint {z0} is not a grid node")))?;
        params.check_zeta(zeta0)?;
        if !x30.is_finite() {
            return Err(GeomError::InvalidParams(format!("initial height {x30} is not finite")));
        }
        Ok(Self {
            params,
            map,
            base,
            zeta0,
            x30,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Abort once `1 - c^2|zeta|^2` drops below this.
    pub domain_guard: f64,
    /// Largest harmonic residual accepted as input.
    pub harmonic_max: f64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            domain_guard: DEFAULT_DOMAIN_GUARD,
            harmonic_max: DEFAULT_HARMONIC_MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOrder {
    /// Along the basepoint row, then up and down every column.
    RowFirst,
    /// Along the basepoint column, then left and right along every row.
    ColumnFirst,
}

/// Grids of the reconstructed immersion.
#[derive(Debug, Clone)]
pub struct ReconstructedSurface {
    pub params: ModelParams,
    pub spec: GridSpec,
    pub base: (usize, usize),
    pub zeta: Vec<Complex64>,
    pub x3: Vec<f64>,
    pub eta: Vec<Complex64>,
    pub lambda: Vec<f64>,
    /// Gauss map samples the surface was built from.
    pub g: Vec<Complex64>,
    /// Right-hand side of the system at each node.
    pub derivatives: Vec<Rhs>,
    /// Smallest `1 - c^2|zeta|^2` over the grid.
    pub min_disk_margin: f64,
}

impl ReconstructedSurface {
    pub fn point(&self, i: usize, j: usize) -> AmbientPoint {
        let k = self.spec.index(i, j);
        AmbientPoint::from_zeta(self.zeta[k], self.x3[k])
    }

    pub fn points(&self) -> Vec<AmbientPoint> {
        self.zeta
            .iter()
            .zip(&self.x3)
            .map(|(z, h)| AmbientPoint::from_zeta(*z, *h))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct State {
    zeta: Complex64,
    x3: f64,
}

struct GuardHit {
    index: usize,
    margin: f64,
    filled: usize,
}

/// One RK4 step of length `sign * h` along `axis` from node `(i, j)`.
fn rk4_step(
    params: &ModelParams,
    map: &HarmonicMap,
    (i, j): (usize, usize),
    axis: Axis,
    forward: bool,
    s: State,
) -> State {
    let h = map.spec().step(axis) * if forward { 1.0 } else { -1.0 };
    // Jets at fractions 0, 1/2, 1 of the step, always read along the increasing direction.
    let (lo_i, lo_j, t0) = if forward {
        (i, j, 0.0)
    } else {
        match axis {
            Axis::U => (i - 1, j, 1.0),
            Axis::V => (i, j - 1, 1.0),
        }
    };
    let at = |t: f64| map.segment_jet(lo_i, lo_j, axis, if t0 == 0.0 { t } else { 1.0 - t });
    let (j0, jm, j1) = (at(0.0), at(0.5), at(1.0));
    let f = |jet: &MapJet, st: State| rhs(params, jet, st.zeta).along(axis);
    let shift = |st: State, k: (Complex64, f64), a: f64| State {
        zeta: st.zeta + k.0 * (a * h),
        x3: st.x3 + k.1 * (a * h),
    };
    let k1 = f(&j0, s);
    let k2 = f(&jm, shift(s, k1, 0.5));
    let k3 = f(&jm, shift(s, k2, 0.5));
    let k4 = f(&j1, shift(s, k3, 1.0));
    State {
        zeta: s.zeta + (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0) * (h / 6.0),
        x3: s.x3 + (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) * (h / 6.0),
    }
}

/// States along the whole grid line through `(i, j)` in direction `axis`, starting from `start` at that node.
fn integrate_line(
    params: &ModelParams,
    map: &HarmonicMap,
    (i, j): (usize, usize),
    axis: Axis,
    start: State,
    guard: f64,
) -> std::result::Result<Vec<State>, GuardHit> {
    let spec = map.spec();
    let (n, k0) = match axis {
        Axis::U => (spec.nu, i),
        Axis::V => (spec.nv, j),
    };
    let node = |k: usize| match axis {
        Axis::U => (k, j),
        Axis::V => (i, k),
    };
    let mut out = vec![start; n];
    let mut filled = 1;
    let check = |k: usize, s: &State, filled: usize| {
        let margin = params.disk_margin(s.zeta);
        if margin >= guard && s.x3.is_finite() {
            Ok(())
        } else {
            Err(GuardHit { index: k, margin, filled })
        }
    };
    for k in k0..n - 1 {
        let next = rk4_step(params, map, node(k), axis, true, out[k]);
        check(k + 1, &next, filled)?;
        out[k + 1] = next;
        filled += 1;
    }
    for k in (1..=k0).rev() {
        let next = rk4_step(params, map, node(k), axis, false, out[k]);
        check(k - 1, &next, filled)?;
        out[k - 1] = next;
        filled += 1;
    }
    Ok(out)
}

fn guard_error(spec: &GridSpec, node: (usize, usize), hit: &GuardHit, guard: f64, completed: usize) -> GeomError {
    let _ = spec;
    GeomError::DomainGuard {
        i: node.0,
        j: node.1,
        margin: hit.margin,
        guard,
        completed,
    }
}

/// Integrates the representation system in the given order without checking
/// harmonicity of the input.
pub fn sweep(input: &ReconstructionInput<'_>, guard: f64, order: SweepOrder) -> Result<ReconstructedSurface> {
    let params = input.params;
    let map = input.map;
    let spec = *map.spec();
    let (bi, bj) = input.base;
    let start = State {
        zeta: input.zeta0,
        x3: input.x30,
    };
    let (first_axis, second_axis) = match order {
        SweepOrder::RowFirst => (Axis::U, Axis::V),
        SweepOrder::ColumnFirst => (Axis::V, Axis::U),
    };
    let line_node = |axis: Axis, k: usize| match axis {
        Axis::U => (k, bj),
        Axis::V => (bi, k),
    };
    let spine = integrate_line(&params, map, (bi, bj), first_axis, start, guard).map_err(|hit| {
        let node = line_node(first_axis, hit.index);
        guard_error(&spec, node, &hit, guard, hit.filled)
    })?;

    let lines: Vec<_> = spine
        .par_iter()
        .enumerate()
        .map(|(k, s)| integrate_line(&params, map, line_node(first_axis, k), second_axis, *s, guard))
        .collect();

    let mut zeta = vec![Complex64::new(0.0, 0.0); spec.len()];
    let mut x3 = vec![0.0; spec.len()];
    let mut first_hit: Option<(usize, GuardHit)> = None;
    let mut completed = spine.len();
    for (k, line) in lines.into_iter().enumerate() {
        match line {
            Ok(states) => {
                completed += states.len() - 1;
                for (m, s) in states.into_iter().enumerate() {
                    let (i, j) = match second_axis {
                        Axis::U => (m, k),
                        Axis::V => (k, m),
                    };
                    let idx = spec.index(i, j);
                    zeta[idx] = s.zeta;
                    x3[idx] = s.x3;
                }
            }
            Err(hit) => {
                completed += hit.filled - 1;
                if first_hit.is_none() {
                    first_hit = Some((k, hit));
                }
            }
        }
    }
    if let Some((k, hit)) = first_hit {
        let node = match second_axis {
            Axis::U => (hit.index, k),
            Axis::V => (k, hit.index),
        };
        return Err(guard_error(&spec, node, &hit, guard, completed));
    }

    let jets = map.jets();
    let derivatives: Vec<Rhs> = (0..spec.len()).map(|k| rhs(&params, &jets[k], zeta[k])).collect();
    let eta = (0..spec.len())
        .map(|k| eta_of(&params, jets[k].value, jets[k].dz, zeta[k]))
        .collect();
    let lambda = (0..spec.len()).map(|k| lambda_of(&params, jets[k].value, jets[k].dz, zeta[k])).collect();
    let min_disk_margin = zeta.iter().map(|z| params.disk_margin(*z)).fold(f64::INFINITY, f64::min);
    Ok(ReconstructedSurface {
        params,
        spec,
        base: input.base,
        zeta,
        x3,
        eta,
        lambda,
        g: jets.iter().map(|j| j.value).collect(),
        derivatives,
        min_disk_margin,
    })
}

/// Rejects non-harmonic input, then integrates row-first.
pub fn integrate(input: &ReconstructionInput<'_>, opts: &IntegrationOptions) -> Result<ReconstructedSurface> {
    input.map.require_harmonic(opts.harmonic_max)?;
    sweep(input, opts.domain_guard, SweepOrder::RowFirst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrabilityReport {
    /// `max |zeta_rowfirst - zeta_colfirst|`.
    pub zeta: f64,
    /// `max |x3_rowfirst - x3_colfirst|`.
    pub x3: f64,
}

/// Discrepancy between the two sweep orders. Harmonicity is deliberately not
/// required, so that non-integrable data can be measured.
pub fn integrability_residual(input: &ReconstructionInput<'_>, opts: &IntegrationOptions) -> Result<IntegrabilityReport> {
    let a = sweep(input, opts.domain_guard, SweepOrder::RowFirst)?;
    let b = sweep(input, opts.domain_guard, SweepOrder::ColumnFirst)?;
    let zeta = a.zeta.iter().zip(&b.zeta).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let x3 = a.x3.iter().zip(&b.x3).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    Ok(IntegrabilityReport { zeta, x3 })
}

/// Frame components `(A1, A2, A3)` of `X_z` from coordinate derivatives.
pub fn frame_components(
    params: &ModelParams,
    zeta: Complex64,
    zeta_z: Complex64,
    zeta_zbar: Complex64,
    x3_z: Complex64,
) -> [Complex64; 3] {
    let lam = 1.0 / params.disk_margin(zeta);
    let x1_z = 0.5 * (zeta_z + zeta_zbar.conj());
    let x2_z = (zeta_z - zeta_zbar.conj()) / (2.0 * I);
    let a1 = lam * x1_z;
    let a2 = lam * x2_z;
    let a3 = x3_z - params.tau() * (zeta.re * a2 - zeta.im * a1);
    [a1, a2, a3]
}

/// Unit normal from `X_z x X_zbar = i (lambda/2) N`, together with `lambda = 2 sum |A_k|^2`.
pub fn normal_from_components(a: &[Complex64; 3]) -> ([f64; 3], f64) {
    let lambda = 2.0 * a.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let cross = |p: Complex64, q: Complex64| (-2.0 * I / lambda * (p * q.conj() - q * p.conj())).re;
    (
        [cross(a[1], a[2]), cross(a[2], a[0]), cross(a[0], a[1])],
        lambda,
    )
}

/// Gauss map of a sampled immersion: stencil `X_z`, cross-product normal, then `Pi`.
/// The normal keeps the orientation induced by the parametrization.
pub fn gauss_of_immersion(params: &ModelParams, spec: &GridSpec, zeta: &[Complex64], x3: &[f64]) -> Result<Vec<ExtComplex>> {
    if !(params.c() > 0.0) {
        return Err(GeomError::InvalidParams("Gauss map pipeline needs c > 0".into()));
    }
    let (zeta_z, zeta_zbar) = grid::wirtinger(spec, zeta);
    let x3c: Vec<Complex64> = x3.iter().map(|h| Complex64::new(*h, 0.0)).collect();
    let (x3_z, _) = grid::wirtinger(spec, &x3c);
    (0..spec.len())
        .map(|k| {
            let a = frame_components(params, zeta[k], zeta_z[k], zeta_zbar[k], x3_z[k]);
            let (mut n, lambda) = normal_from_components(&a);
            let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(lambda > 1e-14) || !(norm > 0.5) {
                let (i, j) = spec.coords(k);
                return Err(GeomError::Degenerate {
                    i,
                    j,
                    what: format!("immersion degenerates (lambda = {lambda:.3e})"),
                });
            }
            n.iter_mut().for_each(|x| *x /= norm);
            gauss_from_normal(params, zeta[k], n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::auxiliary_from_gauss;
    use crate::harmonic::{generate, GeodesicTanh, MapKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ex58_params() -> ModelParams {
        ModelParams::from_critical(1.0, 1.0).unwrap()
    }

    /// Closed-form surface with Gauss map `g(z) = z` at `c = tau = 1`.
    fn ex58_zeta(z: Complex64) -> Complex64 {
        let e = c(0.0, 1.0);
        (e - 1.0) * z / (e * z.norm_sqr() - 1.0)
    }

    fn ex58_x3(z: Complex64) -> f64 {
        -(z.norm_sqr()).atan() + 2.0 / (1.0 - z.norm_sqr())
    }

    #[test]
    fn rhs_at_origin() {
        let p = ex58_params();
        let jet = MapJet {
            value: c(0.0, 0.0),
            dz: c(1.0, 0.0),
            dzbar: c(0.0, 0.0),
            dzzbar: c(0.0, 0.0),
        };
        let r = rhs(&p, &jet, c(0.0, 0.0));
        assert!((r.zeta_z - c(1.0, -1.0)).norm() < 1e-15);
        assert!(r.zeta_zbar.norm() < 1e-15 && r.x3_z.norm() < 1e-15);
        assert!((lambda_of(&p, c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn eta_on_closed_form_surface() {
        let p = ex58_params();
        let z = c(0.5, 0.0);
        let zeta = ex58_zeta(z);
        assert!((zeta - c(0.588235294117647, -0.352941176470588)).norm() < 1e-12);
        let eta = eta_of(&p, z, c(1.0, 0.0), zeta);
        assert!((eta - c(1.0, 1.0) * (16.0 / 9.0)).norm() < 1e-12);
        assert!(eta_of(&p, c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_space_limit_has_no_correction_term() {
        let p = ModelParams::from_critical(1.0, 0.0).unwrap();
        let jet = MapJet {
            value: c(0.2, 0.1),
            dz: c(0.7, -0.3),
            dzbar: c(0.1, 0.0),
            dzzbar: c(0.0, 0.0),
        };
        let zeta = c(0.1, -0.2);
        let r = rhs(&p, &jet, zeta);
        let w = 1.0 - jet.value.norm_sqr();
        let expect = 2.0 * (1.0 - zeta * jet.value.conj()).powu(2) * jet.dz / (w * w);
        assert!((r.zeta_z - expect).norm() < 1e-14);
        assert!((r.x3_z - 0.5 * eta_of(&p, jet.value, jet.dz, zeta)).norm() < 1e-15);
    }

    #[test]
    fn kernel_v_relation_holds_pointwise() {
        let p = ModelParams::new(-2.3, 0.7).unwrap();
        let (g, g_z, zeta) = (c(0.3, -0.4), c(0.8, 0.5), c(0.2, 0.25));
        let eta = eta_of(&p, g, g_z, zeta);
        let big_g = auxiliary_from_gauss(&p, g.into(), zeta).unwrap().as_finite().unwrap();
        let k = WeierstrassKernel::critical(&p, big_g, zeta);
        let cc = p.c();
        let m = big_g.norm_sqr();
        assert!((k.v + p.c_plus_i_tau() * (1.0 - m) * (1.0 - m)).norm() < 1e-14);
        let lhs = g_z / g;
        let rhs = p.disk_margin(zeta) * eta * k.v
            / (4.0 * big_g.conj() * (big_g + cc * zeta) * (cc * zeta.conj() * big_g + 1.0));
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn reconstructs_closed_form_surface() {
        let p = ex58_params();
        let map = generate(&MapKind::Identity, GridSpec::square(0.55, 81).unwrap()).unwrap();
        let input = ReconstructionInput::new(p, &map, c(0.0, 0.0), c(0.0, 0.0), 0.0).unwrap();
        let s = integrate(&input, &IntegrationOptions::default()).unwrap();
        for (k, z) in s.spec.nodes().enumerate() {
            assert!((s.zeta[k] - ex58_zeta(z)).norm() < 1e-6);
            assert!((s.x3[k] - (ex58_x3(z) - ex58_x3(c(0.0, 0.0)))).abs() < 1e-5);
        }
        assert!(s.min_disk_margin > 0.0);
        let r = integrability_residual(&input, &IntegrationOptions::default()).unwrap();
        assert!(r.zeta < 1e-6 && r.x3 < 1e-5);
    }

    #[test]
    fn lambda_matches_metric_of_stencil_derivatives() {
        let p = ModelParams::from_critical(1.0, 0.5).unwrap();
        let map = generate(&MapKind::GeodesicTanh(GeodesicTanh::new(0.7)), GridSpec::square(0.5, 61).unwrap()).unwrap();
        let input = ReconstructionInput::new(p, &map, c(0.0, 0.0), c(0.1, 0.0), 0.0).unwrap();
        let s = integrate(&input, &IntegrationOptions::default()).unwrap();
        let (zz, zzb) = grid::wirtinger(&s.spec, &s.zeta);
        let x3c: Vec<Complex64> = s.x3.iter().map(|h| c(*h, 0.0)).collect();
        let (x3z, _) = grid::wirtinger(&s.spec, &x3c);
        for k in s.spec.interior(2) {
            let a = frame_components(&p, s.zeta[k], zz[k], zzb[k], x3z[k]);
            let (_, lam) = normal_from_components(&a);
            assert!((lam - s.lambda[k]).abs() < 1e-4 * s.lambda[k]);
            assert!((2.0 * a[2] - s.eta[k]).norm() < 1e-4 * s.eta[k].norm().max(1.0));
        }
    }

    #[test]
    fn shifting_initial_height_translates_surface() {
        let p = ex58_params();
        let map = generate(&MapKind::Identity, GridSpec::square(0.4, 21).unwrap()).unwrap();
        let a = ReconstructionInput::new(p, &map, c(0.0, 0.0), c(0.05, 0.0), 0.0).unwrap();
        let b = ReconstructionInput { x30: 1.25, ..a };
        let opts = IntegrationOptions::default();
        let (sa, sb) = (integrate(&a, &opts).unwrap(), integrate(&b, &opts).unwrap());
        for k in 0..sa.zeta.len() {
            assert_eq!(sa.zeta[k], sb.zeta[k]);
            assert!((sb.x3[k] - sa.x3[k] - 1.25).abs() < 1e-12);
        }
    }

    #[test]
    fn guard_reports_first_offending_node() {
        let p = ex58_params();
        let map = generate(&MapKind::Identity, GridSpec::square(0.6, 21).unwrap()).unwrap();
        let input = ReconstructionInput::new(p, &map, c(0.0, 0.0), c(0.0, 0.0), 0.0).unwrap();
        let err = sweep(&input, 0.6, SweepOrder::RowFirst).unwrap_err();
        match err {
            GeomError::DomainGuard { margin, guard, completed, .. } => {
                assert!(margin < guard && completed > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn input_validation() {
        let map = generate(&MapKind::Identity, GridSpec::square(0.4, 11).unwrap()).unwrap();
        let flat = ModelParams::new(0.0, 1.0).unwrap();
        assert!(ReconstructionInput::new(flat, &map, c(0.0, 0.0), c(0.0, 0.0), 0.0).is_err());
        let p = ex58_params();
        assert!(ReconstructionInput::new(p, &map, c(0.013, 0.0), c(0.0, 0.0), 0.0).is_err());
        assert!(ReconstructionInput::new(p, &map, c(0.0, 0.0), c(1.0, 0.0), 0.0).is_err());
        let control = generate(
            &MapKind::Polynomial(vec![(1, 0, c(1.0, 0.0)), (0, 2, c(0.05, 0.0))]),
            GridSpec::square(0.4, 11).unwrap(),
        )
        .unwrap();
        let input = ReconstructionInput::new(p, &control, c(0.0, 0.0), c(0.0, 0.0), 0.0).unwrap();
        assert!(matches!(
            integrate(&input, &IntegrationOptions::default()),
            Err(GeomError::NotHarmonic { .. })
        ));
    }

    #[test]
    fn gauss_roundtrip_on_closed_form_surface() {
        let p = ex58_params();
        let spec = GridSpec::square(0.55, 81).unwrap();
        let zeta = spec.sample(ex58_zeta);
        let x3 = spec.sample(ex58_x3);
        let g = gauss_of_immersion(&p, &spec, &zeta, &x3).unwrap();
        for (k, z) in spec.nodes().enumerate() {
            assert!((g[k].as_finite().unwrap() - z).norm() < 1e-4);
        }
        for k in spec.interior(3) {
            assert!((g[k].as_finite().unwrap() - spec.nodes().nth(k).unwrap()).norm() < 1e-5);
        }
    }
}
