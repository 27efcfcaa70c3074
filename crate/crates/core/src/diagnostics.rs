//! Differential geometry of a sampled immersion `X = (zeta, x3)`: frame components of
//! `X_z`, unit normal, mean curvature via Gauss-Weingarten, the Hopf differential `P`
//! and the Abresch-Rosenberg differential `Phi`.
//!
//! Covariant derivatives are assembled from the connection table, so stencils are only
//! applied to the frame components `A_k`.

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::gauss::auxiliary_from_gauss;
use crate::grid::{self, GridSpec};
use crate::harmonic::antiholomorphic_part;
use crate::model::{connection_coefficients, AmbientPoint, ModelParams};
use crate::weierstrass::{frame_components, normal_from_components, ReconstructedSurface, Rhs};

/// Nodes this close to the edge are excluded from second-derivative statistics.
pub const DIAGNOSTIC_MARGIN: usize = 3;

/// `|N3|` below this counts as a horizontal normal.
pub const HORIZONTAL_TOL: f64 = 1e-10;

/// Sampled immersion, optionally with exact first derivatives at the nodes.
#[derive(Debug, Clone)]
pub struct SurfaceGrids {
    pub params: ModelParams,
    pub spec: GridSpec,
    pub zeta: Vec<Complex64>,
    pub x3: Vec<f64>,
    pub first: Option<Vec<Rhs>>,
}

impl SurfaceGrids {
    /// Image under the rotation `r(x1, x2, x3) = (x1, -x2, -x3)`.
    pub fn rotated_r(&self) -> Self {
        Self {
            params: self.params,
            spec: self.spec,
            zeta: self.zeta.iter().map(|z| z.conj()).collect(),
            x3: self.x3.iter().map(|h| -h).collect(),
            first: self.first.as_ref().map(|d| {
                d.iter()
                    .map(|r| Rhs {
                        zeta_z: r.zeta_zbar.conj(),
                        zeta_zbar: r.zeta_z.conj(),
                        x3_z: -r.x3_z,
                    })
                    .collect()
            }),
        }
    }

    /// Drops the stored derivatives so that everything comes from stencils.
    pub fn without_derivatives(mut self) -> Self {
        self.first = None;
        self
    }
}

impl From<&ReconstructedSurface> for SurfaceGrids {
    fn from(s: &ReconstructedSurface) -> Self {
        Self {
            params: s.params,
            spec: s.spec,
            zeta: s.zeta.clone(),
            x3: s.x3.clone(),
            first: Some(s.derivatives.clone()),
        }
    }
}

/// An immersion known in closed form.
pub trait ImmersionSampler {
    /// `(zeta, x3, first derivatives)` at parameter `z`.
    fn sample(&self, z: Complex64) -> (Complex64, f64, Rhs);
}

pub fn sample_surface(params: ModelParams, spec: GridSpec, sampler: &dyn ImmersionSampler) -> SurfaceGrids {
    let samples: Vec<_> = spec.nodes().map(|z| sampler.sample(z)).collect();
    SurfaceGrids {
        params,
        spec,
        zeta: samples.iter().map(|s| s.0).collect(),
        x3: samples.iter().map(|s| s.1).collect(),
        first: Some(samples.iter().map(|s| s.2).collect()),
    }
}

/// `zeta = u / (c u + i)`, the horocycle through `0` tangent to the boundary at `1/c`,
/// lifted horizontally and swept vertically by `v`. Unit speed in both directions.
#[derive(Debug, Clone, Copy)]
pub struct Horocylinder {
    pub params: ModelParams,
}

impl ImmersionSampler for Horocylinder {
    fn sample(&self, z: Complex64) -> (Complex64, f64, Rhs) {
        let (c, tau) = (self.params.c(), self.params.tau());
        let (u, v) = (z.re, z.im);
        let den = Complex64::new(c * u, 1.0);
        let zeta = u / den;
        let dzeta = Complex64::new(0.0, 1.0) / (den * den);
        let lift = tau * (u / c - (c * u).atan() / (c * c));
        let dlift = tau * c * u * u / (c * c * u * u + 1.0);
        let rhs = Rhs {
            zeta_z: 0.5 * dzeta,
            zeta_zbar: 0.5 * dzeta,
            x3_z: Complex64::new(0.5 * dlift, -0.5),
        };
        (zeta, v + lift, rhs)
    }
}

/// The vertical cylinder over the circle `|zeta| = rho`, parametrized isometrically.
#[derive(Debug, Clone, Copy)]
pub struct VerticalCylinder {
    pub params: ModelParams,
    pub rho: f64,
}

impl ImmersionSampler for VerticalCylinder {
    fn sample(&self, z: Complex64) -> (Complex64, f64, Rhs) {
        let rho = self.rho;
        let cap = 1.0 / self.params.disk_margin(Complex64::new(rho, 0.0));
        let s = 1.0 / (cap * rho);
        let zeta = Complex64::from_polar(rho, s * z.re);
        let dzeta = Complex64::new(0.0, s) * zeta;
        let slope = self.params.tau() * rho;
        let rhs = Rhs {
            zeta_z: 0.5 * dzeta,
            zeta_zbar: 0.5 * dzeta,
            x3_z: Complex64::new(0.5 * slope, -0.5),
        };
        (zeta, z.im + slope * z.re, rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Flip the normal globally so that `N3 > 0` on most nodes.
    Upward,
    /// Keep the normal induced by the parametrization.
    Parametrization,
}

/// Differential-geometric data at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint {
    pub a: [Complex64; 3],
    pub normal: [f64; 3],
    pub lambda: f64,
    pub mean_curvature: f64,
    pub hopf_p: Complex64,
    pub phi: Complex64,
}

impl JetPoint {
    pub fn eta(&self) -> Complex64 {
        2.0 * self.a[2]
    }

    pub fn angle(&self) -> f64 {
        self.normal[2]
    }
}

#[derive(Debug, Clone)]
pub struct ImmersionJet {
    pub params: ModelParams,
    pub spec: GridSpec,
    pub zeta: Vec<Complex64>,
    pub points: Vec<JetPoint>,
    /// Whether the parametrization normal was flipped to point upwards.
    pub flipped: bool,
    /// Nodes whose normal is horizontal within [`HORIZONTAL_TOL`].
    pub horizontal_nodes: usize,
}

fn dot(a: &[Complex64; 3], n: &[f64; 3]) -> Complex64 {
    a[0] * n[0] + a[1] * n[1] + a[2] * n[2]
}

fn add3(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Builds the jet of a sampled immersion.
pub fn jet(surface: &SurfaceGrids, orientation: Orientation) -> Result<ImmersionJet> {
    let params = surface.params;
    let spec = surface.spec;
    let n = spec.len();
    let first: Vec<Rhs> = match &surface.first {
        Some(d) => d.clone(),
        None => {
            let (zz, zzb) = grid::wirtinger(&spec, &surface.zeta);
            let x3c: Vec<Complex64> = surface.x3.iter().map(|h| Complex64::new(*h, 0.0)).collect();
            let (x3z, _) = grid::wirtinger(&spec, &x3c);
            (0..n)
                .map(|k| Rhs {
                    zeta_z: zz[k],
                    zeta_zbar: zzb[k],
                    x3_z: x3z[k],
                })
                .collect()
        }
    };
    let a: Vec<[Complex64; 3]> = (0..n)
        .map(|k| {
            let d = first[k];
            frame_components(&params, surface.zeta[k], d.zeta_z, d.zeta_zbar, d.x3_z)
        })
        .collect();

    let mut normals = Vec::with_capacity(n);
    let mut lambdas = Vec::with_capacity(n);
    for (k, ak) in a.iter().enumerate() {
        let (nrm, lambda) = normal_from_components(ak);
        if !(lambda > 1e-14) || !lambda.is_finite() {
            let (i, j) = spec.coords(k);
            return Err(GeomError::Degenerate {
                i,
                j,
                what: format!("conformal factor {lambda:.3e}"),
            });
        }
        normals.push(nrm);
        lambdas.push(lambda);
    }
    let horizontal_nodes = normals.iter().filter(|v| v[2].abs() < HORIZONTAL_TOL).count();
    let downward = normals.iter().filter(|v| v[2] < -HORIZONTAL_TOL).count();
    let upward = normals.iter().filter(|v| v[2] > HORIZONTAL_TOL).count();
    let flipped = orientation == Orientation::Upward && downward > upward;
    if flipped {
        normals.iter_mut().for_each(|v| v.iter_mut().for_each(|x| *x = -*x));
    }

    // Wirtinger derivatives of each frame component.
    let mut a_z = vec![[Complex64::new(0.0, 0.0); 3]; n];
    let mut a_zbar = vec![[Complex64::new(0.0, 0.0); 3]; n];
    for comp in 0..3 {
        let col: Vec<Complex64> = a.iter().map(|x| x[comp]).collect();
        let (dz, dzbar) = grid::wirtinger_high(&spec, &col);
        for k in 0..n {
            a_z[k][comp] = dz[k];
            a_zbar[k][comp] = dzbar[k];
        }
    }

    let (c, tau) = (params.c(), params.tau());
    let cit = params.c_plus_i_tau();
    let points = (0..n)
        .map(|k| {
            let ak = a[k];
            let conn = connection_coefficients(&params, &AmbientPoint::from_zeta(surface.zeta[k], surface.x3[k]));
            let abar = [ak[0].conj(), ak[1].conj(), ak[2].conj()];
            // nabla_{X_zbar} X_z and nabla_{X_z} X_z in the frame.
            let mixed = add3(a_zbar[k], conn.apply(&abar, &ak));
            let pure = add3(a_z[k], conn.apply(&ak, &ak));
            let nk = normals[k];
            let lambda = lambdas[k];
            let h = 2.0 / lambda * dot(&mixed, &nk).re;
            let p = dot(&pure, &nk);
            let eta = 2.0 * ak[2];
            let phi = 2.0 * cit * p + (c * c + tau * tau) * eta * eta;
            JetPoint {
                a: ak,
                normal: nk,
                lambda,
                mean_curvature: h,
                hopf_p: p,
                phi,
            }
        })
        .collect();
    Ok(ImmersionJet {
        params,
        spec,
        zeta: surface.zeta.clone(),
        points,
        flipped,
        horizontal_nodes,
    })
}

pub fn mean_curvature(jet: &ImmersionJet) -> Vec<f64> {
    jet.points.iter().map(|p| p.mean_curvature).collect()
}

pub fn hopf_p(jet: &ImmersionJet) -> Vec<Complex64> {
    jet.points.iter().map(|p| p.hopf_p).collect()
}

pub fn abresch_rosenberg(jet: &ImmersionJet) -> Vec<Complex64> {
    jet.points.iter().map(|p| p.phi).collect()
}

fn interior_max(spec: &GridSpec, f: impl Fn(usize) -> f64) -> f64 {
    spec.interior(DIAGNOSTIC_MARGIN).map(f).fold(0.0, f64::max)
}

/// `max |H - target|` over the interior.
pub fn mean_curvature_error(jet: &ImmersionJet, target: f64) -> f64 {
    interior_max(&jet.spec, |k| (jet.points[k].mean_curvature - target).abs())
}

/// `max |Q(g) + Phi|` over the interior.
pub fn verify_hopf_relation(q: &[Complex64], jet: &ImmersionJet) -> f64 {
    interior_max(&jet.spec, |k| (q[k] + jet.points[k].phi).norm())
}

/// `max |d Phi / d zbar|` over the interior.
pub fn phi_holomorphy(jet: &ImmersionJet) -> f64 {
    antiholomorphic_part(&jet.spec, &abresch_rosenberg(jet), DIAGNOSTIC_MARGIN)
}

/// Residuals of the pointwise algebraic identities of a conformal immersion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicResiduals {
    /// `| sum |A_k|^2 - lambda/2 | / lambda`.
    pub modulus: f64,
    /// `| sum A_k^2 | / lambda`.
    pub isotropy: f64,
    /// `| sum N_k^2 - 1 |`.
    pub unit_normal: f64,
    /// `| sum A_k N_k | / sqrt(lambda)`.
    pub orthogonality: f64,
}

impl AlgebraicResiduals {
    pub fn max(&self) -> f64 {
        self.modulus.max(self.isotropy).max(self.unit_normal).max(self.orthogonality)
    }
}

pub fn algebraic_residuals(jet: &ImmersionJet) -> AlgebraicResiduals {
    let mut r = AlgebraicResiduals {
        modulus: 0.0,
        isotropy: 0.0,
        unit_normal: 0.0,
        orthogonality: 0.0,
    };
    for p in &jet.points {
        let sq: f64 = p.a.iter().map(|x| x.norm_sqr()).sum();
        let iso: Complex64 = p.a.iter().map(|x| x * x).sum();
        let nn: f64 = p.normal.iter().map(|x| x * x).sum();
        r.modulus = r.modulus.max((sq - 0.5 * p.lambda).abs() / p.lambda);
        r.isotropy = r.isotropy.max(iso.norm() / p.lambda);
        r.unit_normal = r.unit_normal.max((nn - 1.0).abs());
        r.orthogonality = r.orthogonality.max(dot(&p.a, &p.normal).norm() / p.lambda.sqrt());
    }
    r
}

/// `max |N3 - (1-|G|^2)/(1+|G|^2)|` with `G` the auxiliary value of `g` at `zeta`.
pub fn angle_consistency(jet: &ImmersionJet, g: &[Complex64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (k, p) in jet.points.iter().enumerate() {
        let big_g = auxiliary_from_gauss(&jet.params, g[k].into(), jet.zeta[k])?;
        let m = big_g.modulus();
        let expected = if m.is_finite() {
            (1.0 - m * m) / (1.0 + m * m)
        } else {
            -1.0
        };
        worst = worst.max((p.angle() - expected).abs());
    }
    Ok(worst)
}
