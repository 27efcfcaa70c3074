//! Maps from a parameter rectangle into the unit disk: sampling, Wirtinger jets,
//! the hyperbolic harmonic-map residual, the Hopf differential `Q(g)` and the
//! energy density `mu(g)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::grid::{self, Axis, Field, GridSpec};

/// Boundary rows excluded from residual statistics.
pub const RESIDUAL_MARGIN: usize = 2;

/// `min |g_z| <= ANTIHOLOMORPHIC_RATIO * max |g_z|` marks a degenerate input.
pub const ANTIHOLOMORPHIC_RATIO: f64 = 1e-10;

/// Value and Wirtinger derivatives of a map at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub value: Complex64,
    pub dz: Complex64,
    pub dzbar: Complex64,
    pub dzzbar: Complex64,
}

impl MapJet {
    pub fn conformal_weight(&self) -> f64 {
        1.0 - self.value.norm_sqr()
    }

    /// `|(1-|g|^2) g_{z zbar} + 2 conj(g) g_z g_zbar|`.
    pub fn residual(&self) -> f64 {
        (self.dzzbar * self.conformal_weight() + 2.0 * self.value.conj() * self.dz * self.dzbar).norm()
    }

    /// `Q = 4 g_z conj(g_zbar) / (1-|g|^2)^2`; note `conj(g)_z = conj(g_zbar)`.
    pub fn hopf_q(&self) -> Complex64 {
        let w = self.conformal_weight();
        4.0 * self.dz * self.dzbar.conj() / (w * w)
    }

    /// `mu = 4 (|g_z|^2 + |g_zbar|^2) / (1-|g|^2)^2`.
    pub fn energy_mu(&self) -> f64 {
        let w = self.conformal_weight();
        4.0 * (self.dz.norm_sqr() + self.dzbar.norm_sqr()) / (w * w)
    }

    /// The jet of `e^{i rho} g`.
    pub fn rotated(&self, rho: f64) -> Self {
        let r = Complex64::from_polar(1.0, rho);
        *self * r
    }
}

impl Add for MapJet {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            dz: self.dz + o.dz,
            dzbar: self.dzbar + o.dzbar,
            dzzbar: self.dzzbar + o.dzzbar,
        }
    }
}

impl Sub for MapJet {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            value: self.value - o.value,
            dz: self.dz - o.dz,
            dzbar: self.dzbar - o.dzbar,
            dzzbar: self.dzzbar - o.dzzbar,
        }
    }
}

impl Mul<f64> for MapJet {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self * Complex64::new(s, 0.0)
    }
}

impl Mul<Complex64> for MapJet {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        Self {
            value: self.value * s,
            dz: self.dz * s,
            dzbar: self.dzbar * s,
            dzzbar: self.dzzbar * s,
        }
    }
}

impl Field for MapJet {
    fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            value: z,
            dz: z,
            dzbar: z,
            dzzbar: z,
        }
    }
}

/// A map known in closed form, with analytic derivatives.
pub trait MapSampler: Send + Sync + fmt::Debug {
    fn jet(&self, z: Complex64) -> MapJet;
    fn describe(&self) -> String;
}

/// `sum c_{mn} z^m conj(z)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialMap {
    terms: Vec<(u32, u32, Complex64)>,
}

impl PolynomialMap {
    pub fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn identity() -> Self {
        Self::new(vec![(1, 0, Complex64::new(1.0, 0.0))])
    }

    /// `sum_k coeffs[k] z^k`.
    pub fn holomorphic(coeffs: &[Complex64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.norm() > 0.0)
                .map(|(k, c)| (k as u32, 0, *c))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(u32, u32, Complex64)] {
        &self.terms
    }
}

fn powi(z: Complex64, k: u32) -> Complex64 {
    z.powu(k)
}

impl MapSampler for PolynomialMap {
    fn jet(&self, z: Complex64) -> MapJet {
        let zb = z.conj();
        let mut jet = MapJet::zero();
        for &(m, n, c) in &self.terms {
            let (fm, fn_) = (m as f64, n as f64);
            jet.value += c * powi(z, m) * powi(zb, n);
            if m > 0 {
                jet.dz += c * fm * powi(z, m - 1) * powi(zb, n);
            }
            if n > 0 {
                jet.dzbar += c * fn_ * powi(z, m) * powi(zb, n - 1);
            }
            if m > 0 && n > 0 {
                jet.dzzbar += c * fm * fn_ * powi(z, m - 1) * powi(zb, n - 1);
            }
        }
        jet
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, n, c)| format!("({}{:+}i) z^{m} zbar^{n}", c.re, c.im))
            .collect();
        parts.join(" + ")
    }
}

/// `e^{i phase} tanh(a s)` with `s = Re(e^{-i direction} z)`: a harmonic map whose
/// image is a geodesic of the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicTanh {
    pub a: f64,
    pub phase: f64,
    pub direction: f64,
}

impl GeodesicTanh {
    pub fn new(a: f64) -> Self {
        Self {
            a,
            phase: 0.0,
            direction: 0.0,
        }
    }

    /// Closed form of `Q`, independent of `phase`: `a^2 e^{-2i direction}`.
    pub fn hopf_q(&self) -> Complex64 {
        Complex64::from_polar(self.a * self.a, -2.0 * self.direction)
    }
}

impl MapSampler for GeodesicTanh {
    fn jet(&self, z: Complex64) -> MapJet {
        let dir = Complex64::from_polar(1.0, self.direction);
        let rot = Complex64::from_polar(1.0, self.phase);
        let s = (z * dir.conj()).re;
        let t = (self.a * s).tanh();
        let sech2 = 1.0 - t * t;
        let d1 = self.a * sech2;
        let d2 = -2.0 * self.a * self.a * t * sech2;
        MapJet {
            value: rot * t,
            dz: rot * dir.conj() * (0.5 * d1),
            dzbar: rot * dir * (0.5 * d1),
            dzzbar: rot * (0.25 * d2),
        }
    }

    fn describe(&self) -> String {
        format!(
            "geodesic_tanh(a={}, phase={}, direction={})",
            self.a, self.phase, self.direction
        )
    }
}

#[derive(Debug, Clone)]
pub enum DerivativeMode {
    Exact(Arc<dyn MapSampler>),
    FiniteDifference,
}

/// Complex samples on a [`GridSpec`] plus the means to differentiate them.
#[derive(Debug, Clone)]
pub struct ComplexGrid {
    spec: GridSpec,
    values: Vec<Complex64>,
    mode: DerivativeMode,
}

impl ComplexGrid {
    pub fn from_sampler(spec: GridSpec, sampler: Arc<dyn MapSampler>) -> Self {
        let values = spec.sample(|z| sampler.jet(z).value);
        Self {
            spec,
            values,
            mode: DerivativeMode::Exact(sampler),
        }
    }

    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(GeomError::Grid(format!(
                "expected {} samples, got {}",
                spec.len(),
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let (i, j) = spec.coords(k);
            return Err(GeomError::Grid(format!("non-finite sample at node ({i}, {j})")));
        }
        Ok(Self {
            spec,
            values,
            mode: DerivativeMode::FiniteDifference,
        })
    }

    /// Reads a CSV with header `u,v,re,im` covering a regular grid (any row order).
    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| csv_error(path, e))?;
            if record.len() != 4 {
                return Err(GeomError::config(
                    "gauss_map.path",
                    format!("{}: expected 4 columns, found {}", path.display(), record.len()),
                ));
            }
            let mut vals = [0.0; 4];
            for (slot, field) in vals.iter_mut().zip(record.iter()) {
                *slot = field.parse().map_err(|_| {
                    GeomError::config("gauss_map.path", format!("{}: bad number '{field}'", path.display()))
                })?;
            }
            rows.push(vals);
        }
        Self::from_samples(&rows)
            .map_err(|e| GeomError::config("gauss_map.path", format!("{}: {e}", path.display())))
    }

    /// Builds an FD-mode grid from `(u, v, re, im)` rows.
    pub fn from_samples(rows: &[[f64; 4]]) -> Result<Self> {
        let axis_values = |col: usize| {
            let mut xs: Vec<f64> = rows.iter().map(|r| r[col]).collect();
            xs.sort_by(|a, b| a.total_cmp(b));
            xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
            xs
        };
        let us = axis_values(0);
        let vs = axis_values(1);
        if us.len() < 2 || vs.len() < 2 {
            return Err(GeomError::Grid("samples do not span a rectangle".into()));
        }
        let spec = GridSpec::from_bounds(us[0], us[us.len() - 1], vs[0], vs[vs.len() - 1], us.len(), vs.len())?;
        if rows.len() != spec.len() {
            return Err(GeomError::Grid(format!(
                "{} samples for a {}x{} grid",
                rows.len(),
                spec.nu,
                spec.nv
            )));
        }
        let mut values = vec![Complex64::new(f64::NAN, f64::NAN); spec.len()];
        for r in rows {
            let (i, j) = spec
                .node_of(Complex64::new(r[0], r[1]))
                .ok_or_else(|| GeomError::Grid(format!("sample ({}, {}) is off the regular grid", r[0], r[1])))?;
            values[spec.index(i, j)] = Complex64::new(r[2], r[3]);
        }
        Self::from_values(spec, values)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn mode(&self) -> &DerivativeMode {
        &self.mode
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.mode, DerivativeMode::Exact(_))
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.spec.index(i, j)]
    }

    /// Jets at every node, from the sampler or from stencils.
    pub fn jets(&self) -> Vec<MapJet> {
        match &self.mode {
            DerivativeMode::Exact(s) => self.spec.sample(|z| s.jet(z)),
            DerivativeMode::FiniteDifference => self.stencil_jets(),
        }
    }

    pub fn stencil_jets(&self) -> Vec<MapJet> {
        let (dz, dzbar) = grid::wirtinger(&self.spec, &self.values);
        let dzzbar = grid::laplacian_quarter(&self.spec, &self.values);
        (0..self.spec.len())
            .map(|k| MapJet {
                value: self.values[k],
                dz: dz[k],
                dzbar: dzbar[k],
                dzzbar: dzzbar[k],
            })
            .collect()
    }

    /// Largest relative disagreement between analytic and stencil derivatives at
    /// `count` random nodes; `None` in finite-difference mode.
    pub fn cross_check(&self, count: usize, seed: u64) -> Option<f64> {
        let DerivativeMode::Exact(sampler) = &self.mode else {
            return None;
        };
        let fd = self.stencil_jets();
        let exact: Vec<MapJet> = self.spec.sample(|z| sampler.jet(z));
        let scale = |f: fn(&MapJet) -> Complex64| exact.iter().map(|j| f(j).norm()).fold(1e-2, f64::max);
        let fields: [fn(&MapJet) -> Complex64; 3] = [|j| j.dz, |j| j.dzbar, |j| j.dzzbar];
        let scales: Vec<f64> = fields.iter().map(|f| scale(*f)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..count {
            let k = rng.gen_range(0..self.spec.len());
            for (f, s) in fields.iter().zip(&scales) {
                worst = worst.max((f(&exact[k]) - f(&fd[k])).norm() / s);
            }
        }
        Some(worst)
    }
}

fn csv_error(path: &Path, e: csv::Error) -> GeomError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => GeomError::io(path, io),
        other => GeomError::config("gauss_map.path", format!("{}: {:?}", path.display(), other)),
    }
}

fn require_in_disk(grid: &ComplexGrid) -> Result<()> {
    for (k, v) in grid.values.iter().enumerate() {
        if v.norm() >= 1.0 {
            let (i, j) = grid.spec.coords(k);
            return Err(GeomError::OutsideUnitDisk { i, j, modulus: v.norm() });
        }
    }
    Ok(())
}

/// Per-node harmonic residual `|(1-|g|^2) g_{z zbar} + 2 conj(g) g_z g_zbar|`.
pub fn harmonic_residual(g: &ComplexGrid) -> Result<Vec<f64>> {
    require_in_disk(g)?;
    Ok(g.jets().iter().map(MapJet::residual).collect())
}

pub fn hopf_q(g: &ComplexGrid) -> Result<Vec<Complex64>> {
    require_in_disk(g)?;
    Ok(g.jets().iter().map(MapJet::hopf_q).collect())
}

pub fn energy_mu(g: &ComplexGrid) -> Result<Vec<f64>> {
    require_in_disk(g)?;
    Ok(g.jets().iter().map(MapJet::energy_mu).collect())
}

/// Maximum of `|d/dzbar f|` over nodes at least `margin` from the edge.
pub fn antiholomorphic_part(spec: &GridSpec, f: &[Complex64], margin: usize) -> f64 {
    let (_, dzbar) = grid::wirtinger(spec, f);
    spec.interior(margin).map(|k| dzbar[k].norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicReport {
    pub max_residual: f64,
    pub mean_residual: f64,
    pub min_gz: f64,
    pub max_gz: f64,
    /// Smallest `1 - |g|^2` on the grid.
    pub min_disk_margin: f64,
    /// Analytic vs stencil derivative agreement (exact mode only).
    pub cross_check: Option<f64>,
}

/// A sampled map into the unit disk that is nowhere antiholomorphic, with cached jets.
#[derive(Debug, Clone)]
pub struct HarmonicMap {
    grid: ComplexGrid,
    jets: Vec<MapJet>,
    report: HarmonicReport,
}

impl HarmonicMap {
    pub fn new(grid: ComplexGrid) -> Result<Self> {
        require_in_disk(&grid)?;
        let jets = grid.jets();
        let spec = grid.spec;
        let (mut max_r, mut sum_r, mut count) = (0.0f64, 0.0, 0usize);
        for k in spec.interior(RESIDUAL_MARGIN) {
            let r = jets[k].residual();
            max_r = max_r.max(r);
            sum_r += r;
            count += 1;
        }
        let gz: Vec<f64> = jets.iter().map(|j| j.dz.norm()).collect();
        let min_gz = gz.iter().copied().fold(f64::INFINITY, f64::min);
        let max_gz = gz.iter().copied().fold(0.0, f64::max);
        if !(min_gz > ANTIHOLOMORPHIC_RATIO * max_gz) || max_gz == 0.0 {
            return Err(GeomError::Antiholomorphic { min_gz, max_gz });
        }
        let min_disk_margin = jets
            .iter()
            .map(MapJet::conformal_weight)
            .fold(f64::INFINITY, f64::min);
        let report = HarmonicReport {
            max_residual: max_r,
            mean_residual: if count > 0 { sum_r / count as f64 } else { 0.0 },
            min_gz,
            max_gz,
            min_disk_margin,
            cross_check: grid.cross_check(10, 0x5eed),
        };
        Ok(Self { grid, jets, report })
    }

    pub fn grid(&self) -> &ComplexGrid {
        &self.grid
    }

    pub fn spec(&self) -> &GridSpec {
        &self.grid.spec
    }

    pub fn jets(&self) -> &[MapJet] {
        &self.jets
    }

    pub fn jet(&self, i: usize, j: usize) -> MapJet {
        self.jets[self.grid.spec.index(i, j)]
    }

    pub fn report(&self) -> &HarmonicReport {
        &self.report
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.jets.iter().map(MapJet::residual).collect()
    }

    pub fn hopf_q(&self) -> Vec<Complex64> {
        self.jets.iter().map(MapJet::hopf_q).collect()
    }

    pub fn energy_mu(&self) -> Vec<f64> {
        self.jets.iter().map(MapJet::energy_mu).collect()
    }

    /// `max |d Q / d zbar|` over the interior, by stencils.
    pub fn hopf_q_holomorphy(&self, margin: usize) -> f64 {
        antiholomorphic_part(self.spec(), &self.hopf_q(), margin)
    }

    pub fn require_harmonic(&self, threshold: f64) -> Result<()> {
        if self.report.max_residual > threshold || !self.report.max_residual.is_finite() {
            return Err(GeomError::NotHarmonic {
                residual: self.report.max_residual,
                threshold,
            });
        }
        Ok(())
    }

    /// Jet at the fraction `t` of the way from node `(i, j)` to its neighbour along `axis`
    /// in the increasing direction. Exact mode evaluates the sampler; otherwise cubic
    /// interpolation of the node jets along the grid line.
    pub fn segment_jet(&self, i: usize, j: usize, axis: Axis, t: f64) -> MapJet {
        let spec = &self.grid.spec;
        if let DerivativeMode::Exact(s) = &self.grid.mode {
            let offset = match axis {
                Axis::U => Complex64::new(t * spec.hu, 0.0),
                Axis::V => Complex64::new(0.0, t * spec.hv),
            };
            return s.jet(spec.node(i, j) + offset);
        }
        match axis {
            Axis::U => grid::interpolate_line(|s| self.jets[spec.index(s, j)], i, t, spec.nu),
            Axis::V => grid::interpolate_line(|s| self.jets[spec.index(i, s)], j, t, spec.nv),
        }
    }
}

/// Closed-form harmonic maps (and, for controls, arbitrary polynomials in `z`, `zbar`).
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    Identity,
    Holomorphic(Vec<Complex64>),
    GeodesicTanh(GeodesicTanh),
    Polynomial(Vec<(u32, u32, Complex64)>),
}

impl MapKind {
    pub fn sampler(&self) -> Arc<dyn MapSampler> {
        match self {
            MapKind::Identity => Arc::new(PolynomialMap::identity()),
            MapKind::Holomorphic(c) => Arc::new(PolynomialMap::holomorphic(c)),
            MapKind::GeodesicTanh(t) => Arc::new(*t),
            MapKind::Polynomial(terms) => Arc::new(PolynomialMap::new(terms.clone())),
        }
    }
}

/// Samples `kind` on `spec` in exact-derivative mode.
pub fn generate(kind: &MapKind, spec: GridSpec) -> Result<HarmonicMap> {
    HarmonicMap::new(ComplexGrid::from_sampler(spec, kind.sampler()))
}

/// The same map sampled without its derivatives, so every derivative comes from stencils.
pub fn generate_sampled(kind: &MapKind, spec: GridSpec) -> Result<HarmonicMap> {
    let s = kind.sampler();
    HarmonicMap::new(ComplexGrid::from_values(spec, spec.sample(|z| s.jet(z).value))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(half: f64, n: usize) -> GridSpec {
        GridSpec::square(half, n).unwrap()
    }

    #[test]
    fn identity_is_harmonic_with_vanishing_q() {
        let m = generate(&MapKind::Identity, spec(0.55, 21)).unwrap();
        assert!(m.report().max_residual < 1e-14);
        assert!(m.hopf_q().iter().all(|q| q.norm() < 1e-14));
        let mu0 = m.jet(10, 10).energy_mu();
        assert!((mu0 - 4.0).abs() < 1e-12);
        assert!(m.report().cross_check.unwrap() < 1e-4);
    }

    #[test]
    fn geodesic_tanh_closed_forms() {
        let a = 0.7;
        let t = GeodesicTanh::new(a);
        // (1-g^2) g'' + 2 g g'^2 = 0 along u, checked by hand-rolled derivatives.
        for u in [-0.9, -0.2, 0.0, 0.4, 1.3] {
            let g = (a * u as f64).tanh();
            let g1 = a * (1.0 - g * g);
            let g2 = -2.0 * a * g * g1;
            assert!(((1.0 - g * g) * g2 + 2.0 * g * g1 * g1).abs() < 1e-15);
            let jet = t.jet(c(u, 0.3));
            assert!((jet.dz - c(0.5 * g1, 0.0)).norm() < 1e-15);
            assert!((jet.hopf_q() - c(a * a, 0.0)).norm() < 1e-13);
            assert!(jet.residual() < 1e-15);
        }
        assert!((t.jet(c(0.0, 0.0)).energy_mu() - 2.0 * a * a).abs() < 1e-15);
        let vert = GeodesicTanh {
            direction: std::f64::consts::FRAC_PI_2,
            ..t
        };
        assert!((vert.jet(c(0.2, -0.4)).hopf_q() + a * a).norm() < 1e-13);
        assert!((vert.hopf_q() + a * a).norm() < 1e-15);
    }

    #[test]
    fn rotated_image_keeps_harmonicity_and_q() {
        let t = GeodesicTanh {
            a: 0.9,
            phase: 1.1,
            direction: 0.4,
        };
        let m = generate(&MapKind::GeodesicTanh(t), spec(0.8, 33)).unwrap();
        assert!(m.report().max_residual < 1e-14);
        for q in m.hopf_q() {
            assert!((q - t.hopf_q()).norm() < 1e-13);
        }
        assert!(m.report().cross_check.unwrap() < 1e-4);
    }

    #[test]
    fn polynomial_jet_matches_stencils() {
        let p = PolynomialMap::new(vec![(1, 0, c(0.5, 0.0)), (0, 2, c(0.05, 0.02)), (2, 1, c(-0.1, 0.3))]);
        let g = ComplexGrid::from_sampler(spec(0.5, 41), Arc::new(p));
        assert!(g.cross_check(50, 3).unwrap() < 1e-8);
    }

    #[test]
    fn antiholomorphic_input_is_rejected() {
        let kind = MapKind::Polynomial(vec![(0, 1, c(0.5, 0.0))]);
        let g = ComplexGrid::from_sampler(spec(0.5, 11), kind.sampler());
        assert!(harmonic_residual(&g).unwrap().iter().all(|r| *r < 1e-15));
        assert!(matches!(generate(&kind, spec(0.5, 11)), Err(GeomError::Antiholomorphic { .. })));
        let constant = MapKind::Holomorphic(vec![c(0.3, 0.0)]);
        assert!(matches!(generate(&constant, spec(0.5, 11)), Err(GeomError::Antiholomorphic { .. })));
    }

    #[test]
    fn image_must_stay_in_disk() {
        let err = generate(&MapKind::Identity, spec(0.8, 11)).unwrap_err();
        assert!(matches!(err, GeomError::OutsideUnitDisk { .. }));
        let g = ComplexGrid::from_sampler(spec(0.8, 11), MapKind::Identity.sampler());
        assert!(hopf_q(&g).is_err() && energy_mu(&g).is_err());
    }

    #[test]
    fn non_harmonic_control_has_large_residual() {
        let kind = MapKind::Polynomial(vec![(1, 0, c(1.0, 0.0)), (0, 2, c(0.05, 0.0))]);
        let m = generate(&kind, spec(0.55, 21)).unwrap();
        assert!(m.report().max_residual > 1e-2);
        assert!(m.require_harmonic(1e-6).is_err());
    }

    #[test]
    fn stencil_residual_converges() {
        let kind = MapKind::GeodesicTanh(GeodesicTanh::new(0.7));
        let coarse = generate_sampled(&kind, spec(0.55, 41)).unwrap();
        let fine = generate_sampled(&kind, spec(0.55, 81)).unwrap();
        let slope = (coarse.report().max_residual / fine.report().max_residual).log2();
        assert!(slope >= 1.8, "slope {slope}");
        let qc = coarse.hopf_q_holomorphy(3);
        let qf = fine.hopf_q_holomorphy(3);
        assert!((qc / qf).log2() >= 2.0, "{qc} {qf}");
    }

    #[test]
    fn densities_scale_under_dilation() {
        // g_a(z) = g(a z): Q(g_a)(z) = a^2 Q(g)(a z) and mu(g_a)(z) = |a|^2 mu(g)(a z).
        let a = c(0.6, 0.3);
        let p = PolynomialMap::holomorphic(&[c(0.1, 0.0), c(0.5, 0.1), c(0.2, -0.1)]);
        let t = GeodesicTanh::new(0.8);
        let dilate = |jet: MapJet| MapJet {
            value: jet.value,
            dz: jet.dz * a,
            dzbar: jet.dzbar * a.conj(),
            dzzbar: jet.dzzbar * a.norm_sqr(),
        };
        for z in [c(0.1, 0.2), c(-0.3, 0.05)] {
            for jet in [p.jet(a * z), t.jet(a * z)] {
                let scaled = dilate(jet);
                assert!((scaled.hopf_q() - a * a * jet.hopf_q()).norm() < 1e-13);
                assert!((scaled.energy_mu() - a.norm_sqr() * jet.energy_mu()).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn segment_jets_follow_the_map() {
        let kind = MapKind::GeodesicTanh(GeodesicTanh::new(0.7));
        let exact = generate(&kind, spec(0.5, 41)).unwrap();
        let sampled = generate_sampled(&kind, spec(0.5, 41)).unwrap();
        for (i, j) in [(0, 0), (20, 7), (39, 40)] {
            for axis in [Axis::U, Axis::V] {
                if axis == Axis::V && j == 40 {
                    continue;
                }
                let e = exact.segment_jet(i, j, axis, 0.5);
                let s = sampled.segment_jet(i, j, axis, 0.5);
                assert!((e.value - s.value).norm() < 1e-6);
                assert!((e.dz - s.dz).norm() < 1e-4);
            }
        }
    }

    #[test]
    fn csv_roundtrip() {
        let kind = MapKind::Identity;
        let sp = spec(0.4, 7);
        let s = kind.sampler();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        let mut text = String::from("u,v,re,im\n");
        for z in sp.nodes().collect::<Vec<_>>().into_iter().rev() {
            let g = s.jet(z).value;
            text.push_str(&format!("{},{},{},{}\n", z.re, z.im, g.re, g.im));
        }
        std::fs::write(&path, text).unwrap();
        let g = ComplexGrid::read_csv(&path).unwrap();
        assert_eq!(g.spec().nu, 7);
        assert!(!g.is_exact());
        assert!((g.value(3, 2) - sp.node(3, 2)).norm() < 1e-15);
        std::fs::write(&path, "u,v,re,im\n0,0,0,0\n1,0,0,0\n0,1,0\n").unwrap();
        assert!(ComplexGrid::read_csv(&path).is_err());
    }
}
