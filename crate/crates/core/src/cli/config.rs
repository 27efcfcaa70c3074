//! Scene configuration: JSON with unknown keys rejected. Complex numbers are `[re, im]`.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{GeomError, Result};
use crate::grid::GridSpec;
use crate::harmonic::{ComplexGrid, GeodesicTanh, HarmonicMap, MapKind};
use crate::model::ModelParams;
use crate::weierstrass::IntegrationOptions;

/// Smallest accepted grid size along each axis.
pub const MIN_GRID: usize = 33;

pub type ComplexPair = [f64; 2];

fn cx(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub kappa: f64,
    pub tau: f64,
    pub domain: DomainConfig,
    pub grid: GridConfig,
    pub gauss_map: GaussMapConfig,
    pub basepoint: BasepointConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: Outputs,
    /// Candidate sister Gauss map in `Nil3(tau_hat)`, used by `sister-check`.
    #[serde(default)]
    pub sister: Option<GaussMapConfig>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub center: ComplexPair,
    pub half_width: f64,
    pub half_height: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nu: usize,
    pub nv: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GaussMapConfig {
    #[serde(rename = "identity")]
    Identity {},
    /// `sum_k coefficients[k] z^k`.
    #[serde(rename = "holomorphic")]
    Holomorphic { coefficients: Vec<ComplexPair> },
    #[serde(rename = "geodesic_tanh")]
    GeodesicTanh {
        a: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default)]
        direction: f64,
    },
    /// Arbitrary `sum c z^m zbar^n`; not harmonic in general, useful as a control.
    #[serde(rename = "polynomial")]
    Polynomial { terms: Vec<(u32, u32, ComplexPair)> },
    /// CSV with header `u,v,re,im`; relative paths are resolved against the config file.
    #[serde(rename = "sampled-file")]
    SampledFile { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasepointConfig {
    pub z0: ComplexPair,
    pub zeta0: ComplexPair,
    pub x30: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub domain_guard: f64,
    pub harmonic_max: f64,
    pub hopf_max: f64,
    pub mean_curvature_max: f64,
    pub integrability_max: f64,
    pub integrability_x3_max: f64,
    pub algebraic_max: f64,
    pub lorentz_max: f64,
    pub roundtrip_max: f64,
    pub sister_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            domain_guard: 1e-6,
            harmonic_max: 1e-6,
            hopf_max: 1e-4,
            mean_curvature_max: 1e-4,
            integrability_max: 1e-6,
            integrability_x3_max: 1e-5,
            algebraic_max: 1e-6,
            lorentz_max: 1e-10,
            roundtrip_max: 1e-5,
            sister_max: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub mesh_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    /// Per-node CSV of `g`, `zeta` and `x3`.
    pub samples_path: Option<PathBuf>,
}

impl SceneConfig {
    /// Parses and validates. JSON syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SceneConfig = serde_json::from_str(text).map_err(|e| {
            GeomError::config(format!("line {}, column {}", e.line(), e.column()), e.to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `path`, resolving a relative sampled-file path against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| GeomError::io(path, e))?;
        let mut cfg = Self::parse(&text)
            .map_err(|e| match e {
                GeomError::Config { field, message } => {
                    GeomError::config(format!("{}: {field}", path.display()), message)
                }
                other => other,
            })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        for m in std::iter::once(&mut cfg.gauss_map).chain(cfg.sister.as_mut()) {
            if let GaussMapConfig::SampledFile { path: p } = m {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !(self.kappa < 0.0) {
            return Err(GeomError::config(
                "kappa",
                format!("reconstruction needs kappa < 0, got {}", self.kappa),
            ));
        }
        if !self.tau.is_finite() {
            return Err(GeomError::config("tau", "must be finite"));
        }
        let d = &self.domain;
        if !(d.half_width > 0.0 && d.half_height > 0.0) || !d.center.iter().all(|x| x.is_finite()) {
            return Err(GeomError::config("domain", "needs a finite center and positive half sizes"));
        }
        if self.grid.nu < MIN_GRID || self.grid.nv < MIN_GRID {
            return Err(GeomError::config(
                "grid",
                format!("at least {MIN_GRID}x{MIN_GRID} nodes required, got {}x{}", self.grid.nu, self.grid.nv),
            ));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tolerances.domain_guard", t.domain_guard),
            ("tolerances.harmonic_max", t.harmonic_max),
            ("tolerances.hopf_max", t.hopf_max),
            ("tolerances.mean_curvature_max", t.mean_curvature_max),
            ("tolerances.integrability_max", t.integrability_max),
            ("tolerances.integrability_x3_max", t.integrability_x3_max),
            ("tolerances.algebraic_max", t.algebraic_max),
            ("tolerances.lorentz_max", t.lorentz_max),
            ("tolerances.roundtrip_max", t.roundtrip_max),
            ("tolerances.sister_max", t.sister_max),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GeomError::config(name, format!("must be positive, got {v}")));
            }
        }
        let b = &self.basepoint;
        if !(b.z0.iter().chain(&b.zeta0).all(|x| x.is_finite()) && b.x30.is_finite()) {
            return Err(GeomError::config("basepoint", "values must be finite"));
        }
        for (field, m) in std::iter::once(("gauss_map", &self.gauss_map)).chain(self.sister.as_ref().map(|s| ("sister", s))) {
            if let GaussMapConfig::GeodesicTanh { a, .. } = m {
                if !(*a != 0.0 && a.is_finite()) {
                    return Err(GeomError::config(format!("{field}.a"), "must be finite and nonzero"));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.kappa, self.tau).map_err(|e| GeomError::config("kappa/tau", e.to_string()))
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        let d = &self.domain;
        GridSpec::new(cx(d.center), d.half_width, d.half_height, self.grid.nu, self.grid.nv)
            .map_err(|e| GeomError::config("grid", e.to_string()))
    }

    pub fn z0(&self) -> Complex64 {
        cx(self.basepoint.z0)
    }

    pub fn zeta0(&self) -> Complex64 {
        cx(self.basepoint.zeta0)
    }

    pub fn options(&self) -> IntegrationOptions {
        IntegrationOptions {
            domain_guard: self.tolerances.domain_guard,
            harmonic_max: self.tolerances.harmonic_max,
        }
    }

    pub fn gauss_map(&self) -> Result<HarmonicMap> {
        build_map(&self.gauss_map, self.grid_spec()?, "gauss_map")
    }

    pub fn sister_map(&self) -> Result<Option<HarmonicMap>> {
        self.sister
            .as_ref()
            .map(|m| build_map(m, self.grid_spec()?, "sister"))
            .transpose()
    }
}

impl GaussMapConfig {
    /// The closed-form kind, or `None` for sampled files.
    pub fn kind(&self) -> Option<MapKind> {
        Some(match self {
            GaussMapConfig::Identity {} => MapKind::Identity,
            GaussMapConfig::Holomorphic { coefficients } => {
                MapKind::Holomorphic(coefficients.iter().copied().map(cx).collect())
            }
            GaussMapConfig::GeodesicTanh { a, phase, direction } => MapKind::GeodesicTanh(GeodesicTanh {
                a: *a,
                phase: *phase,
                direction: *direction,
            }),
            GaussMapConfig::Polynomial { terms } => {
                MapKind::Polynomial(terms.iter().map(|&(m, n, c)| (m, n, cx(c))).collect())
            }
            GaussMapConfig::SampledFile { .. } => return None,
        })
    }
}

fn build_map(m: &GaussMapConfig, spec: GridSpec, field: &str) -> Result<HarmonicMap> {
    let grid = match (m, m.kind()) {
        (_, Some(kind)) => ComplexGrid::from_sampler(spec, kind.sampler()),
        (GaussMapConfig::SampledFile { path }, None) => {
            let grid = ComplexGrid::read_csv(path)?;
            if !same_grid(grid.spec(), &spec) {
                return Err(GeomError::config(
                    format!("{field}.path"),
                    format!("{}: samples do not match the configured domain and grid", path.display()),
                ));
            }
            grid
        }
        _ => unreachable!("only sampled files lack a closed form"),
    };
    HarmonicMap::new(grid)
}

fn same_grid(a: &GridSpec, b: &GridSpec) -> bool {
    let close = |x: f64, y: f64, h: f64| (x - y).abs() <= 1e-9 * h;
    a.nu == b.nu && a.nv == b.nv && close(a.u0, b.u0, b.hu) && close(a.v0, b.v0, b.hv) && close(a.hu, b.hu, b.hu) && close(a.hv, b.hv, b.hv)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EX58: &str = r#"{
        "kappa": -4.0, "tau": 1.0,
        "domain": {"center": [0, 0], "half_width": 0.55, "half_height": 0.55},
        "grid": {"nu": 41, "nv": 41},
        "gauss_map": {"kind": "identity"},
        "basepoint": {"z0": [0, 0], "zeta0": [0, 0], "x30": 2.0}
    }"#;

    #[test]
    fn parses_minimal_config() {
        let cfg = SceneConfig::parse(EX58).unwrap();
        assert_eq!(cfg.gauss_map, GaussMapConfig::Identity {});
        assert_eq!(cfg.tolerances, Tolerances::default());
        assert!((cfg.params().unwrap().c() - 1.0).abs() < 1e-15);
        assert_eq!(cfg.grid_spec().unwrap().len(), 41 * 41);
        assert!(cfg.sister.is_none());
    }

    #[test]
    fn parses_every_map_kind() {
        for (text, expect) in [
            (r#"{"kind": "holomorphic", "coefficients": [[0, 0], [0.5, 0.1]]}"#, true),
            (r#"{"kind": "geodesic_tanh", "a": 0.7}"#, true),
            (r#"{"kind": "geodesic_tanh", "a": 0.7, "direction": 1.5707963267948966}"#, true),
            (r#"{"kind": "polynomial", "terms": [[1, 0, [1, 0]], [0, 2, [0.05, 0]]]}"#, true),
            (r#"{"kind": "sampled-file", "path": "g.csv"}"#, false),
        ] {
            let m: GaussMapConfig = serde_json::from_str(text).unwrap();
            assert_eq!(m.kind().is_some(), expect, "{text}");
        }
    }

    fn with(key: &str, value: &str) -> String {
        let mut v: serde_json::Value = serde_json::from_str(EX58).unwrap();
        let mut target = &mut v;
        let parts: Vec<&str> = key.split('.').collect();
        for p in &parts[..parts.len() - 1] {
            target = &mut target[*p];
        }
        target[parts[parts.len() - 1]] = serde_json::from_str(value).unwrap();
        v.to_string()
    }

    fn field_of(text: &str) -> String {
        match SceneConfig::parse(text) {
            Err(GeomError::Config { field, .. }) => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_values() {
        assert_eq!(field_of(&with("kappa", "0.0")), "kappa");
        assert_eq!(field_of(&with("kappa", "1.0")), "kappa");
        assert_eq!(field_of(&with("grid.nu", "32")), "grid");
        assert_eq!(field_of(&with("tolerances", r#"{"hopf_max": -1}"#)), "tolerances.hopf_max");
        assert_eq!(field_of(&with("gauss_map", r#"{"kind": "geodesic_tanh", "a": 0}"#)), "gauss_map.a");
    }

    #[test]
    fn rejects_unknown_keys_with_position() {
        let field = field_of(&with("extra", "1"));
        assert!(field.starts_with("line "), "{field}");
        assert!(SceneConfig::parse(&with("grid.nw", "3")).is_err());
        assert!(SceneConfig::parse(&with("gauss_map", r#"{"kind": "identity", "a": 1}"#)).is_err());
        assert!(SceneConfig::parse(&with("gauss_map", r#"{"kind": "spiral"}"#)).is_err());
        assert!(SceneConfig::parse("{\n\"kappa\": -1,").is_err());
    }

    #[test]
    fn sampled_file_must_match_grid() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GridSpec::square(0.55, 41).unwrap();
        let mut csv = String::from("u,v,re,im\n");
        for z in spec.nodes() {
            csv.push_str(&format!("{},{},{},{}\n", z.re, z.im, z.re, z.im));
        }
        std::fs::write(dir.path().join("g.csv"), &csv).unwrap();
        let cfg_text = with("gauss_map", r#"{"kind": "sampled-file", "path": "g.csv"}"#);
        let cfg_path = dir.path().join("scene.json");
        std::fs::write(&cfg_path, &cfg_text).unwrap();
        let cfg = SceneConfig::load(&cfg_path).unwrap();
        let map = cfg.gauss_map().unwrap();
        assert!(!map.grid().is_exact());

        let other = with("domain.half_width", "0.5");
        let other = serde_json::from_str::<serde_json::Value>(&other).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&cfg_text).unwrap();
        v["domain"] = other["domain"].clone();
        std::fs::write(&cfg_path, v.to_string()).unwrap();
        let cfg = SceneConfig::load(&cfg_path).unwrap();
        assert!(matches!(cfg.gauss_map(), Err(GeomError::Config { .. })));
    }
}
