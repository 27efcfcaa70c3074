//! Triangle-mesh export of a reconstructed grid in model coordinates `(x1, x2, x3)`.
//!
//! Vertices are emitted in row-major node order (`u` fastest). Each grid quad
//! `(i,j), (i+1,j), (i+1,j+1), (i,j+1)` is split along its main diagonal.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{GeomError, Result};
use crate::grid::GridSpec;
use crate::weierstrass::ReconstructedSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl FromStr for MeshFormat {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(GeomError::config("format", format!("unknown mesh format '{other}' (obj or ply)"))),
        }
    }
}

impl MeshFormat {
    /// Picks the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension()?.to_str()?.parse().ok()
    }
}

/// A structured grid of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMesh {
    pub nu: usize,
    pub nv: usize,
    pub vertices: Vec<[f64; 3]>,
}

impl GridMesh {
    /// Fails if any coordinate is not finite, so that no NaN or infinity reaches a file.
    pub fn new(nu: usize, nv: usize, vertices: Vec<[f64; 3]>) -> Result<Self> {
        if nu < 2 || nv < 2 || vertices.len() != nu * nv {
            return Err(GeomError::Grid(format!(
                "mesh needs a {nu}x{nv} grid of at least 2x2 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(k) = vertices.iter().position(|v| v.iter().any(|x| !x.is_finite())) {
            return Err(GeomError::Undefined(format!(
                "non-finite vertex at node ({}, {})",
                k % nu,
                k / nu
            )));
        }
        Ok(Self { nu, nv, vertices })
    }

    pub fn from_surface(surface: &ReconstructedSurface) -> Result<Self> {
        Self::from_grids(&surface.spec, surface.points().iter().map(|p| p.coords()).collect())
    }

    pub fn from_grids(spec: &GridSpec, vertices: Vec<[f64; 3]>) -> Result<Self> {
        Self::new(spec.nu, spec.nv, vertices)
    }

    /// Zero-based triangles.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(2 * (self.nu - 1) * (self.nv - 1));
        for j in 0..self.nv - 1 {
            for i in 0..self.nu - 1 {
                let a = j * self.nu + i;
                let b = a + 1;
                let c = b + self.nu;
                let d = a + self.nu;
                out.push([a, b, c]);
                out.push([a, c, d]);
            }
        }
        out
    }

    /// Coordinates use the shortest decimal that round-trips the `f64` exactly.
    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in self.faces() {
            let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        s
    }

    pub fn to_ply(&self) -> String {
        let faces = self.faces();
        let mut s = String::new();
        let _ = write!(
            s,
            "ply\nformat ascii 1.0\nelement vertex {}\nproperty float x\nproperty float y\nproperty float z\n\
             element face {}\nproperty list uchar int vertex_indices\nend_header\n",
            self.vertices.len(),
            faces.len()
        );
        for v in &self.vertices {
            let _ = writeln!(s, "{} {} {}", v[0], v[1], v[2]);
        }
        for f in faces {
            let _ = writeln!(s, "3 {} {} {}", f[0], f[1], f[2]);
        }
        s
    }

    pub fn render(&self, format: MeshFormat) -> String {
        match format {
            MeshFormat::Obj => self.to_obj(),
            MeshFormat::Ply => self.to_ply(),
        }
    }
}

/// Writes `surface` to `path`.
pub fn export_mesh(surface: &ReconstructedSurface, path: &Path, format: MeshFormat) -> Result<()> {
    let mesh = GridMesh::from_surface(surface)?;
    std::fs::write(path, mesh.render(format)).map_err(|e| GeomError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> GridMesh {
        GridMesh::new(2, 2, vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.5]]).unwrap()
    }

    #[test]
    fn two_by_two_obj() {
        let obj = square().to_obj();
        assert_eq!(obj, "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0.5\nf 1 2 4\nf 1 4 3\n");
        assert!(!obj.contains('\r'));
    }

    #[test]
    fn face_count() {
        let m = GridMesh::new(4, 3, vec![[0.0; 3]; 12]).unwrap();
        assert_eq!(m.faces().len(), 2 * 3 * 2);
        assert!(m.faces().iter().flatten().all(|&k| k < 12));
    }

    #[test]
    fn ply_header() {
        let ply = square().to_ply();
        assert!(ply.starts_with("ply\nformat ascii 1.0\nelement vertex 4\n"));
        assert!(ply.contains("element face 2\n"));
        assert!(ply.ends_with("3 0 1 3\n3 0 3 2\n"));
    }

    #[test]
    fn full_precision() {
        let x = 0.123456789012345_f64;
        let m = GridMesh::new(2, 2, vec![[x, 0.0, 0.0]; 4]).unwrap();
        let line = m.to_obj().lines().next().unwrap().to_string();
        let parsed: f64 = line.split(' ').nth(1).unwrap().parse().unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn rejects_non_finite_and_bad_shape() {
        let mut v = vec![[0.0; 3]; 4];
        v[3][2] = f64::NAN;
        assert!(matches!(GridMesh::new(2, 2, v), Err(GeomError::Undefined(_))));
        assert!(GridMesh::new(2, 3, vec![[0.0; 3]; 4]).is_err());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("OBJ".parse::<MeshFormat>().unwrap(), MeshFormat::Obj);
        assert_eq!(MeshFormat::from_path(Path::new("a/b.ply")), Some(MeshFormat::Ply));
        assert!("stl".parse::<MeshFormat>().is_err());
    }
}
