//! The model of E(kappa, tau) for kappa <= 0.
//!
//! Points live in `D(1/c) x R` (or `R^3` when kappa = 0) with coordinates
//! `(x1, x2, x3)` and metric
//!
//! ```text
//! Lambda^2 (dx1^2 + dx2^2) + (tau Lambda (x2 dx1 - x1 dx2) + dx3)^2,
//! Lambda = 1 / (1 - c^2 |zeta|^2),  zeta = x1 + i x2,  c = sqrt(-kappa) / 2.
//! ```
//!
//! Tangent vectors are expressed in the orthonormal frame
//! `V1 = (1/Lambda) d1 - tau x2 d3`, `V2 = (1/Lambda) d2 + tau x1 d3`, `V3 = d3`.

use num_complex::Complex64;

use crate::error::{GeomError, Result};

/// Ambient constants of E(kappa, tau).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    kappa: f64,
    tau: f64,
    c: f64,
    tau_hat: f64,
    theta: f64,
}

impl ModelParams {
    pub fn new(kappa: f64, tau: f64) -> Result<Self> {
        if !kappa.is_finite() || !tau.is_finite() {
            return Err(GeomError::InvalidParams("kappa and tau must be finite".into()));
        }
        if kappa > 0.0 {
            return Err(GeomError::InvalidParams(format!(
                "kappa = {kappa} > 0 is not supported"
            )));
        }
        if kappa == 0.0 && tau == 0.0 {
            return Err(GeomError::InvalidParams(
                "(kappa, tau) = (0, 0) is Euclidean space".into(),
            ));
        }
        let c = (-kappa).sqrt() / 2.0;
        let tau_hat = tau.hypot(c);
        // tau + i c = e^{i theta} tau_hat
        let theta = c.atan2(tau);
        Ok(Self {
            kappa,
            tau,
            c,
            tau_hat,
            theta,
        })
    }

    /// Parameters from the critical curvature `c` instead of `kappa = -4 c^2`.
    pub fn from_critical(c: f64, tau: f64) -> Result<Self> {
        if !(c >= 0.0) {
            return Err(GeomError::InvalidParams(format!("c = {c} must be >= 0")));
        }
        Self::new(-4.0 * c * c, tau)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Critical mean curvature `sqrt(-kappa)/2`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn tau_hat(&self) -> f64 {
        self.tau_hat
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `c + i tau`, the constant that shows up throughout the representation formula.
    pub fn c_plus_i_tau(&self) -> Complex64 {
        Complex64::new(self.c, self.tau)
    }

    /// Checks `c |zeta| < 1` (always true when kappa = 0).
    pub fn check_zeta(&self, zeta: Complex64) -> Result<()> {
        let scaled_radius = self.c * zeta.norm();
        if !scaled_radius.is_finite() || scaled_radius >= 1.0 {
            return Err(GeomError::OutsideDisk { scaled_radius });
        }
        Ok(())
    }

    /// `1 - c^2 |zeta|^2`, the reciprocal of Lambda.
    pub fn disk_margin(&self, zeta: Complex64) -> f64 {
        1.0 - self.c * self.c * zeta.norm_sqr()
    }
}

/// A point of the base H^2(kappa) in the disk model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePoint {
    pub zeta: Complex64,
    pub lambda_cap: f64,
}

/// A point of E(kappa, tau) in model coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl AmbientPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn from_zeta(zeta: Complex64, x3: f64) -> Self {
        Self::new(zeta.re, zeta.im, x3)
    }

    pub fn origin() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.x1, self.x2)
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

/// A tangent vector given by its components `(Z1, Z2, Z3)` in the frame `(V1, V2, V3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: AmbientPoint,
    pub frame: [f64; 3],
}

impl TangentVector {
    pub fn new(base: AmbientPoint, frame: [f64; 3]) -> Self {
        Self { base, frame }
    }

    pub fn norm(&self) -> f64 {
        let [a, b, c] = self.frame;
        (a * a + b * b + c * c).sqrt()
    }

    /// `Z1 + i Z2`.
    pub fn horizontal(&self) -> Complex64 {
        Complex64::new(self.frame[0], self.frame[1])
    }

    pub fn vertical(&self) -> f64 {
        self.frame[2]
    }

    pub(crate) fn require_unit(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if !((norm - 1.0).abs() <= tol) {
            return Err(GeomError::NonUnit { norm });
        }
        Ok(())
    }
}

/// A vector of Lorentz space L^3, `p0` timelike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzVector {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl LorentzVector {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Self {
        Self { p0, p1, p2 }
    }

    /// `-p0 q0 + p1 q1 + p2 q2`.
    pub fn minkowski(&self, other: &LorentzVector) -> f64 {
        -self.p0 * other.p0 + self.p1 * other.p1 + self.p2 * other.p2
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.p0, s * self.p1, s * self.p2)
    }

    pub fn add(&self, other: &LorentzVector) -> Self {
        Self::new(self.p0 + other.p0, self.p1 + other.p1, self.p2 + other.p2)
    }

    pub fn max_abs_diff(&self, other: &LorentzVector) -> f64 {
        (self.p0 - other.p0)
            .abs()
            .max((self.p1 - other.p1).abs())
            .max((self.p2 - other.p2).abs())
    }
}

/// `Lambda = 1 / (1 - c^2 |zeta|^2)`.
pub fn conformal_factor(params: &ModelParams, zeta: Complex64) -> Result<f64> {
    params.check_zeta(zeta)?;
    Ok(1.0 / params.disk_margin(zeta))
}

/// Coordinate components `(a1, a2, a3)` in the basis `d/dx_k` of a vector given in the frame.
pub fn frame_to_coordinates(params: &ModelParams, v: &TangentVector) -> Result<[f64; 3]> {
    let p = v.base;
    let lambda = conformal_factor(params, p.zeta())?;
    let [z1, z2, z3] = v.frame;
    let tau = params.tau();
    Ok([
        z1 / lambda,
        z2 / lambda,
        z3 - tau * p.x2 * z1 + tau * p.x1 * z2,
    ])
}

/// Inverse of [`frame_to_coordinates`].
pub fn coordinates_to_frame(
    params: &ModelParams,
    base: AmbientPoint,
    coords: [f64; 3],
) -> Result<TangentVector> {
    let lambda = conformal_factor(params, base.zeta())?;
    let tau = params.tau();
    let z1 = lambda * coords[0];
    let z2 = lambda * coords[1];
    let z3 = coords[2] + tau * base.x2 * z1 - tau * base.x1 * z2;
    Ok(TangentVector::new(base, [z1, z2, z3]))
}

/// Metric tensor `g_ij` in model coordinates at `p`.
pub fn metric_tensor(params: &ModelParams, p: &AmbientPoint) -> Result<[[f64; 3]; 3]> {
    let lambda = conformal_factor(params, p.zeta())?;
    // vertical 1-form omega = tau Lambda x2 dx1 - tau Lambda x1 dx2 + dx3
    let tl = params.tau() * lambda;
    let omega = [tl * p.x2, -tl * p.x1, 1.0];
    let mut g = [[0.0; 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = omega[i] * omega[j];
        }
    }
    g[0][0] += lambda * lambda;
    g[1][1] += lambda * lambda;
    Ok(g)
}

/// Inner product of two coordinate vectors at `p`.
pub fn inner_coords(g: &[[f64; 3]; 3], a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += a[i] * g[i][j] * b[j];
        }
    }
    s
}

/// Frame components of the Levi-Civita connection.
///
/// `entry(i, j)` holds the frame components of `nabla_{V_i} V_j` (zero-based indices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTable {
    table: [[[f64; 3]; 3]; 3],
}

impl ConnectionTable {
    pub fn entry(&self, i: usize, j: usize) -> [f64; 3] {
        self.table[i][j]
    }

    /// `nabla_X Y` for constant frame components of `Y` (no derivative term), with complex coefficients.
    pub fn apply(&self, x: &[Complex64; 3], y: &[Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let e = self.table[i][j];
                let w = xi * yj;
                for k in 0..3 {
                    out[k] += w * e[k];
                }
            }
        }
        out
    }
}

pub fn connection_coefficients(params: &ModelParams, p: &AmbientPoint) -> ConnectionTable {
    let half_kappa = params.kappa() / 2.0;
    let tau = params.tau();
    let (x1, x2) = (p.x1, p.x2);
    let table = [
        [
            [0.0, half_kappa * x2, 0.0],
            [-half_kappa * x2, 0.0, tau],
            [0.0, -tau, 0.0],
        ],
        [
            [0.0, -half_kappa * x1, -tau],
            [half_kappa * x1, 0.0, 0.0],
            [tau, 0.0, 0.0],
        ],
        [[0.0, -tau, 0.0], [tau, 0.0, 0.0], [0.0, 0.0, 0.0]],
    ];
    ConnectionTable { table }
}

/// The fibration `(x1, x2, x3) -> (x1, x2)`.
pub fn project(params: &ModelParams, p: &AmbientPoint) -> Result<BasePoint> {
    let zeta = p.zeta();
    let lambda_cap = conformal_factor(params, zeta)?;
    Ok(BasePoint { zeta, lambda_cap })
}

fn require_curved(params: &ModelParams) -> Result<()> {
    if params.c() <= 0.0 {
        return Err(GeomError::InvalidParams(
            "the hyperboloid model requires kappa < 0".into(),
        ));
    }
    Ok(())
}

/// Disk-to-hyperboloid chart `p(zeta) = (1 + c^2|zeta|^2, 2c Re zeta, 2c Im zeta) / (2c (1 - c^2|zeta|^2))`.
pub fn hyperboloid_embed(params: &ModelParams, zeta: Complex64) -> Result<LorentzVector> {
    require_curved(params)?;
    params.check_zeta(zeta)?;
    let c = params.c();
    let w = zeta * c;
    let r = w.norm_sqr();
    let s = 1.0 / (2.0 * c * (1.0 - r));
    Ok(LorentzVector::new((1.0 + r) * s, 2.0 * w.re * s, 2.0 * w.im * s))
}

/// Differential of [`hyperboloid_embed`] applied to the coordinate vector `v = dx1 + i dx2`.
pub fn hyperboloid_pushforward(
    params: &ModelParams,
    zeta: Complex64,
    v: Complex64,
) -> Result<LorentzVector> {
    require_curved(params)?;
    params.check_zeta(zeta)?;
    let c = params.c();
    let w = zeta * c;
    let dw = v * c;
    let s = 1.0 - w.norm_sqr();
    let dr = 2.0 * (w.conj() * dw).re;
    // p = F(w) / (2c) with F(w) = (1 + r, 2 Re w, 2 Im w) / (1 - r)
    let k = 1.0 / (2.0 * c);
    let d0 = 2.0 * dr / (s * s);
    let d1 = 2.0 * dw.re / s + 2.0 * w.re * dr / (s * s);
    let d2 = 2.0 * dw.im / s + 2.0 * w.im * dr / (s * s);
    Ok(LorentzVector::new(k * d0, k * d1, k * d2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_derived_constants() {
        let p = ModelParams::new(-4.0, 1.0).unwrap();
        assert_eq!(p.c(), 1.0);
        assert!((p.tau_hat() - 2f64.sqrt()).abs() < 1e-15);
        assert!((p.theta() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let e = Complex64::from_polar(p.tau_hat(), p.theta());
        assert!((e - c(p.tau(), p.c())).norm() < 1e-15);

        let product = ModelParams::new(-1.0, 0.0).unwrap();
        assert!((product.theta() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn params_rejects_bad_input() {
        assert!(ModelParams::new(1.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
        assert!(ModelParams::new(0.0, 0.5).is_ok());
    }

    #[test]
    fn conformal_factor_values() {
        let p = ModelParams::from_critical(1.0, 0.0).unwrap();
        assert_eq!(conformal_factor(&p, c(0.0, 0.0)).unwrap(), 1.0);
        assert!((conformal_factor(&p, c(0.5, 0.0)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(conformal_factor(&p, c(1.0, 0.0)).is_err());
        let flat = ModelParams::new(0.0, 1.0).unwrap();
        assert_eq!(conformal_factor(&flat, c(37.0, -2.0)).unwrap(), 1.0);
    }

    #[test]
    fn frame_to_coordinates_examples() {
        let p = ModelParams::from_critical(1.0, 1.0).unwrap();
        let v = TangentVector::new(AmbientPoint::origin(), [1.0, 0.0, 0.0]);
        assert_eq!(frame_to_coordinates(&p, &v).unwrap(), [1.0, 0.0, 0.0]);

        let base = AmbientPoint::new(0.0, 0.5, 0.0);
        let a = frame_to_coordinates(&p, &TangentVector::new(base, [1.0, 0.0, 0.0])).unwrap();
        assert!((a[0] - 0.75).abs() < 1e-15 && a[1] == 0.0 && (a[2] + 0.5).abs() < 1e-15);

        let vert = TangentVector::new(AmbientPoint::new(0.3, -0.2, 4.0), [0.0, 0.0, 1.0]);
        assert_eq!(frame_to_coordinates(&p, &vert).unwrap(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn frame_roundtrip_and_orthonormality() {
        let p = ModelParams::from_critical(0.7, -1.3).unwrap();
        let base = AmbientPoint::new(0.4, -0.9, 2.0);
        let g = metric_tensor(&p, &base).unwrap();
        let e: Vec<[f64; 3]> = (0..3)
            .map(|k| {
                let mut f = [0.0; 3];
                f[k] = 1.0;
                frame_to_coordinates(&p, &TangentVector::new(base, f)).unwrap()
            })
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner_coords(&g, &e[i], &e[j]) - expect).abs() < 1e-12);
            }
        }
        let z = [0.3, -0.7, 1.9];
        let a = frame_to_coordinates(&p, &TangentVector::new(base, z)).unwrap();
        let back = coordinates_to_frame(&p, base, a).unwrap();
        for k in 0..3 {
            assert!((back.frame[k] - z[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn connection_examples() {
        let p = ModelParams::new(-4.0, 0.8).unwrap();
        let t = connection_coefficients(&p, &AmbientPoint::origin());
        assert_eq!(t.entry(0, 0), [0.0, 0.0, 0.0]);
        assert_eq!(t.entry(0, 1), [0.0, 0.0, 0.8]);
        let anywhere = connection_coefficients(&p, &AmbientPoint::new(0.2, -0.4, 9.0));
        assert_eq!(anywhere.entry(2, 2), [0.0, 0.0, 0.0]);

        let product = ModelParams::new(-4.0, 0.0).unwrap();
        let t = connection_coefficients(&product, &AmbientPoint::new(0.3, 0.0, 1.0));
        let e = t.entry(1, 1);
        assert!((e[0] + 0.6).abs() < 1e-15 && e[1] == 0.0 && e[2] == 0.0);
    }

    #[test]
    fn connection_is_metric_compatible() {
        let p = ModelParams::new(-2.5, 1.7).unwrap();
        let t = connection_coefficients(&p, &AmbientPoint::new(0.31, -0.44, 0.0));
        for x in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(t.entry(x, i)[j] + t.entry(x, j)[i], 0.0);
                }
            }
        }
    }

    #[test]
    fn projection() {
        let p = ModelParams::from_critical(1.0, 1.0).unwrap();
        assert_eq!(project(&p, &AmbientPoint::new(0.0, 0.0, 5.0)).unwrap().zeta, c(0.0, 0.0));
        assert_eq!(
            project(&p, &AmbientPoint::new(0.1, 0.2, -3.0)).unwrap().zeta,
            c(0.1, 0.2)
        );
        assert!(project(&p, &AmbientPoint::new(0.8, 0.8, 0.0)).is_err());
    }

    #[test]
    fn hyperboloid_examples() {
        let half = ModelParams::from_critical(0.5, 0.0).unwrap();
        assert_eq!(
            hyperboloid_embed(&half, c(0.0, 0.0)).unwrap(),
            LorentzVector::new(1.0, 0.0, 0.0)
        );
        let one = ModelParams::from_critical(1.0, 0.3).unwrap();
        assert_eq!(
            hyperboloid_embed(&one, c(0.0, 0.0)).unwrap(),
            LorentzVector::new(0.5, 0.0, 0.0)
        );
        let p = hyperboloid_embed(&one, c(0.5, 0.0)).unwrap();
        assert!(p.max_abs_diff(&LorentzVector::new(5.0 / 6.0, 2.0 / 3.0, 0.0)) < 1e-15);
        assert!((p.minkowski(&p) + 0.25).abs() < 1e-15);
        assert!(hyperboloid_embed(&one, c(1.0, 0.0)).is_err());
        let flat = ModelParams::new(0.0, 1.0).unwrap();
        assert!(hyperboloid_embed(&flat, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn hyperboloid_chart_is_isometric() {
        let p = ModelParams::from_critical(0.8, 0.0).unwrap();
        let h = 1e-4;
        for zeta in [c(0.1, 0.2), c(-0.6, 0.3), c(0.0, -1.1)] {
            let lambda = conformal_factor(&p, zeta).unwrap();
            for dir in [c(1.0, 0.0), c(0.0, 1.0), c(0.6, -0.8)] {
                let fwd = hyperboloid_embed(&p, zeta + dir * h).unwrap();
                let bwd = hyperboloid_embed(&p, zeta - dir * h).unwrap();
                let d = fwd.add(&bwd.scale(-1.0)).scale(1.0 / (2.0 * h));
                let pulled = d.minkowski(&d);
                let expected = lambda * lambda;
                assert!(((pulled - expected) / expected).abs() < 1e-6);
                let exact = hyperboloid_pushforward(&p, zeta, dir).unwrap();
                assert!(exact.max_abs_diff(&d) < 1e-6 * exact.p0.abs().max(1.0));
            }
        }
    }
}
