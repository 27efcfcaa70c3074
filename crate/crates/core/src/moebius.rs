//! SU(1,1) and its actions: `psi_M` on the Riemann sphere, `phi_M` on H^2(kappa),
//! and lifts of `phi_M` to isometries of E(kappa, tau).

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::model::{
    conformal_factor, coordinates_to_frame, frame_to_coordinates, metric_tensor, AmbientPoint,
    ModelParams, TangentVector,
};
use crate::quadrature;

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex64::new(re, im))
    }

    /// `num / den`, with a zero denominator sent to ∞.
    pub fn from_ratio(num: Complex64, den: Complex64) -> Self {
        if den == Complex64::new(0.0, 0.0) {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(num / den)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(*z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn modulus(&self) -> f64 {
        match self {
            ExtComplex::Finite(z) => z.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            ExtComplex::Finite(z) => ExtComplex::from_ratio(Complex64::new(1.0, 0.0), *z),
            ExtComplex::Infinity => ExtComplex::Finite(Complex64::new(0.0, 0.0)),
        }
    }

    /// Chordal distance on the Riemann sphere of diameter 2.
    pub fn chordal_distance(&self, other: &ExtComplex) -> f64 {
        match (self, other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
            (ExtComplex::Finite(a), ExtComplex::Infinity)
            | (ExtComplex::Infinity, ExtComplex::Finite(a)) => 2.0 / (1.0 + a.norm_sqr()).sqrt(),
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => {
                2.0 * (a - b).norm()
                    / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{z}"),
            ExtComplex::Infinity => write!(f, "∞"),
        }
    }
}

/// `[[alpha, beta], [conj(beta), conj(alpha)]]` with `|alpha|^2 - |beta|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU11Matrix {
    alpha: Complex64,
    beta: Complex64,
}

const SU11_TOL: f64 = 1e-12;

impl SU11Matrix {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !((det - 1.0).abs() <= SU11_TOL * (alpha.norm_sqr() + beta.norm_sqr()).max(1.0)) {
            return Err(GeomError::NotSu11 { det });
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales `(alpha, beta)` by a positive real so that it lands in SU(1,1).
    /// The Möbius actions are unchanged by the rescaling.
    pub fn from_unnormalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(GeomError::NotSu11 { det });
        }
        let s = det.sqrt().recip();
        Ok(Self {
            alpha: alpha * s,
            beta: beta * s,
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// The rotation `w -> e^{i angle} w`.
    pub fn rotation(angle: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(1.0, angle / 2.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// A hyperbolic element with translation length `2 t` along the direction `e^{i dir}`
    /// followed by the rotation `e^{i spin}`.
    pub fn from_polar_parts(t: f64, spin: f64, dir: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(t.cosh(), spin),
            beta: Complex64::from_polar(t.sinh(), dir),
        }
    }

    /// The element with `beta = -alpha c w` sending `w` (a point of H^2(kappa)) to the origin.
    pub fn to_origin(params: &ModelParams, w: Complex64) -> Result<Self> {
        params.check_zeta(w)?;
        let cw = w * params.c();
        let alpha = Complex64::new((1.0 - cw.norm_sqr()).sqrt().recip(), 0.0);
        Ok(Self {
            alpha,
            beta: -alpha * cw,
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn det(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }
}

impl Mul for SU11Matrix {
    type Output = SU11Matrix;

    fn mul(self, rhs: SU11Matrix) -> SU11Matrix {
        SU11Matrix {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.beta.conj(),
            beta: self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        }
    }
}

/// `psi_M(w) = (alpha w + beta) / (conj(beta) w + conj(alpha))` on the Riemann sphere.
pub fn psi(m: &SU11Matrix, w: ExtComplex) -> ExtComplex {
    let (num, den) = match w {
        ExtComplex::Finite(w) => (m.alpha * w + m.beta, m.beta.conj() * w + m.alpha.conj()),
        ExtComplex::Infinity => (m.alpha, m.beta.conj()),
    };
    ExtComplex::from_ratio(num, den)
}

fn require_curved(params: &ModelParams) -> Result<()> {
    if params.c() <= 0.0 {
        return Err(GeomError::InvalidParams(
            "the SU(1,1) action on H^2(kappa) requires kappa < 0".into(),
        ));
    }
    Ok(())
}

/// `phi_M(zeta) = (1/c) (alpha c zeta + beta) / (conj(beta) c zeta + conj(alpha))`.
pub fn phi(params: &ModelParams, m: &SU11Matrix, zeta: Complex64) -> Result<Complex64> {
    require_curved(params)?;
    params.check_zeta(zeta)?;
    let c = params.c();
    let w = zeta * c;
    Ok((m.alpha * w + m.beta) / (m.beta.conj() * w + m.alpha.conj()) / c)
}

/// Complex derivative of `phi_M`.
pub fn phi_derivative(params: &ModelParams, m: &SU11Matrix, zeta: Complex64) -> Result<Complex64> {
    require_curved(params)?;
    params.check_zeta(zeta)?;
    let den = m.beta.conj() * zeta * params.c() + m.alpha.conj();
    Ok((den * den).inv())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsometryKind {
    /// `(zeta, x3) -> (zeta, x3 + t)`.
    VerticalTranslation(f64),
    /// Rotation by `angle` about the x3-axis.
    AxisRotation(f64),
    /// Lift `(zeta, x3) -> (phi_M(zeta), x3 + h(zeta))` with `h(anchor) = 0`.
    GeneralLift {
        matrix: SU11Matrix,
        anchor: Complex64,
    },
    /// `r(x1, x2, x3) = (x1, -x2, -x3)`.
    PiRotation,
}

/// An explicit isometry of E(kappa, tau).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientIsometry {
    params: ModelParams,
    kind: IsometryKind,
}

const LIFT_TOL: f64 = 1e-12;

impl AmbientIsometry {
    pub fn vertical_translation(params: ModelParams, t: f64) -> Self {
        Self {
            params,
            kind: IsometryKind::VerticalTranslation(t),
        }
    }

    pub fn axis_rotation(params: ModelParams, angle: f64) -> Self {
        Self {
            params,
            kind: IsometryKind::AxisRotation(angle),
        }
    }

    pub fn pi_rotation(params: ModelParams) -> Self {
        Self {
            params,
            kind: IsometryKind::PiRotation,
        }
    }

    pub fn kind(&self) -> IsometryKind {
        self.kind
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// The matrix whose `phi_M` is the horizontal part. `None` for `r`,
    /// which is not in the identity component.
    pub fn matrix(&self) -> Option<SU11Matrix> {
        match self.kind {
            IsometryKind::VerticalTranslation(_) => Some(SU11Matrix::identity()),
            IsometryKind::AxisRotation(angle) => Some(SU11Matrix::rotation(angle)),
            IsometryKind::GeneralLift { matrix, .. } => Some(matrix),
            IsometryKind::PiRotation => None,
        }
    }

    /// `true` unless the isometry reverses the vertical field.
    pub fn preserves_vertical(&self) -> bool {
        !matches!(self.kind, IsometryKind::PiRotation)
    }

    /// Vertical component `h(zeta)` of a general lift, by quadrature of
    /// `beta - phi_M^* beta` along the chord from the anchor.
    pub fn lift_height(&self, zeta: Complex64) -> Result<f64> {
        let IsometryKind::GeneralLift { matrix, anchor } = self.kind else {
            return Ok(0.0);
        };
        let params = &self.params;
        let tau = params.tau();
        if tau == 0.0 || zeta == anchor {
            return Ok(0.0);
        }
        params.check_zeta(zeta)?;
        let v = zeta - anchor;
        // beta_x(v) = tau Lambda (x2 v1 - x1 v2) = -tau Lambda Im(conj(x) v)
        let one_form = |x: Complex64, w: Complex64| -> f64 {
            let lambda = 1.0 / params.disk_margin(x);
            -tau * lambda * (x.conj() * w).im
        };
        let integrand = |t: f64| -> f64 {
            let x = anchor + v * t;
            let (fx, dfx) = match (
                phi(params, &matrix, x),
                phi_derivative(params, &matrix, x),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return f64::NAN,
            };
            one_form(x, v) - one_form(fx, dfx * v)
        };
        let scale = v.norm() * tau.abs() * (1.0 / params.disk_margin(zeta)).max(1.0);
        Ok(quadrature::integrate(integrand, 0.0, 1.0, LIFT_TOL * scale.max(1.0))?.value)
    }

    pub fn apply(&self, p: &AmbientPoint) -> Result<AmbientPoint> {
        let params = &self.params;
        match self.kind {
            IsometryKind::VerticalTranslation(t) => Ok(AmbientPoint::new(p.x1, p.x2, p.x3 + t)),
            IsometryKind::AxisRotation(angle) => {
                params.check_zeta(p.zeta())?;
                let z = p.zeta() * Complex64::from_polar(1.0, angle);
                Ok(AmbientPoint::from_zeta(z, p.x3))
            }
            IsometryKind::GeneralLift { matrix, .. } => {
                let z = phi(params, &matrix, p.zeta())?;
                Ok(AmbientPoint::from_zeta(z, p.x3 + self.lift_height(p.zeta())?))
            }
            IsometryKind::PiRotation => {
                params.check_zeta(p.zeta())?;
                Ok(rotation_r(p))
            }
        }
    }

    /// Differential in frame components: `df(Z)` at `f(p)`.
    pub fn push_frame(&self, v: &TangentVector) -> Result<TangentVector> {
        let target = self.apply(&v.base)?;
        let [z1, z2, z3] = v.frame;
        let frame = match self.kind {
            IsometryKind::VerticalTranslation(_) => [z1, z2, z3],
            IsometryKind::AxisRotation(angle) => {
                let h = v.horizontal() * Complex64::from_polar(1.0, angle);
                [h.re, h.im, z3]
            }
            IsometryKind::GeneralLift { matrix, .. } => {
                // horizontal part rotates by arg phi'; the vertical component is preserved
                let zeta = v.base.zeta();
                let u = phi_derivative(&self.params, &matrix, zeta)?
                    * conformal_factor(&self.params, target.zeta())?
                    / conformal_factor(&self.params, zeta)?;
                let h = v.horizontal() * u;
                [h.re, h.im, z3]
            }
            IsometryKind::PiRotation => rotation_r_frame(v.frame),
        };
        Ok(TangentVector::new(target, frame))
    }

    /// Differential by central differences of [`AmbientIsometry::apply`] in model coordinates.
    pub fn push_frame_fd(&self, v: &TangentVector, step: f64) -> Result<TangentVector> {
        let a = frame_to_coordinates(&self.params, v)?;
        let p = v.base.coords();
        let shifted = |s: f64| AmbientPoint::new(p[0] + s * a[0], p[1] + s * a[1], p[2] + s * a[2]);
        let fwd = self.apply(&shifted(step))?;
        let bwd = self.apply(&shifted(-step))?;
        let target = self.apply(&v.base)?;
        let d = [
            (fwd.x1 - bwd.x1) / (2.0 * step),
            (fwd.x2 - bwd.x2) / (2.0 * step),
            (fwd.x3 - bwd.x3) / (2.0 * step),
        ];
        coordinates_to_frame(&self.params, target, d)
    }

    pub fn compose(&self, inner: &AmbientIsometry) -> ComposedIsometry {
        ComposedIsometry {
            outer: *self,
            inner: *inner,
        }
    }
}

/// `outer ∘ inner`.
#[derive(Debug, Clone, Copy)]
pub struct ComposedIsometry {
    outer: AmbientIsometry,
    inner: AmbientIsometry,
}

impl ComposedIsometry {
    pub fn apply(&self, p: &AmbientPoint) -> Result<AmbientPoint> {
        self.outer.apply(&self.inner.apply(p)?)
    }
}

/// Lifts `phi_M` to an isometry of E(kappa, tau), normalised so that `h(anchor) = 0`.
pub fn lift_isometry(
    params: &ModelParams,
    m: SU11Matrix,
    anchor: AmbientPoint,
) -> Result<AmbientIsometry> {
    require_curved(params)?;
    params.check_zeta(anchor.zeta())?;
    Ok(AmbientIsometry {
        params: *params,
        kind: IsometryKind::GeneralLift {
            matrix: m,
            anchor: anchor.zeta(),
        },
    })
}

/// The rotation of angle pi about the x1-axis.
pub fn rotation_r(p: &AmbientPoint) -> AmbientPoint {
    AmbientPoint::new(p.x1, -p.x2, -p.x3)
}

/// Differential of [`rotation_r`] on frame components.
pub fn rotation_r_frame(z: [f64; 3]) -> [f64; 3] {
    [z[0], -z[1], -z[2]]
}

/// Largest entry of `J^T g(f(p)) J - g(p)` with `J` the central-difference Jacobian of `f`.
pub fn isometry_defect<F>(params: &ModelParams, f: F, p: &AmbientPoint, step: f64) -> Result<f64>
where
    F: Fn(&AmbientPoint) -> Result<AmbientPoint>,
{
    let x = p.coords();
    let mut jac = [[0.0; 3]; 3];
    for k in 0..3 {
        let mut fwd = x;
        let mut bwd = x;
        fwd[k] += step;
        bwd[k] -= step;
        let a = f(&AmbientPoint::new(fwd[0], fwd[1], fwd[2]))?.coords();
        let b = f(&AmbientPoint::new(bwd[0], bwd[1], bwd[2]))?.coords();
        for i in 0..3 {
            jac[i][k] = (a[i] - b[i]) / (2.0 * step);
        }
    }
    let g_target = metric_tensor(params, &f(p)?)?;
    let g_source = metric_tensor(params, p)?;
    let mut defect: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let mut pulled = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    pulled += jac[i][a] * g_target[i][j] * jac[j][b];
                }
            }
            defect = defect.max((pulled - g_source[a][b]).abs());
        }
    }
    Ok(defect)
}
