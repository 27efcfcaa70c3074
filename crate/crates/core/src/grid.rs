//! Rectangular parameter grids in the conformal coordinate `z = u + i v` and
//! finite-difference Wirtinger calculus on them.
//!
//! Node `(i, j)` sits at `u0 + i hu + i (v0 + j hv)` and is stored at `j * nu + i`
//! (rows of constant `v`). Stencils are fourth order, with one-sided five-point
//! formulas at the two nodes next to each edge; `*_high` variants switch to sixth order
//! where three neighbours exist on both sides.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::{GeomError, Result};

pub const MIN_NODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u0: f64,
    pub v0: f64,
    pub hu: f64,
    pub hv: f64,
    pub nu: usize,
    pub nv: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    U,
    V,
}

impl GridSpec {
    pub fn new(center: Complex64, half_width: f64, half_height: f64, nu: usize, nv: usize) -> Result<Self> {
        Self::from_bounds(
            center.re - half_width,
            center.re + half_width,
            center.im - half_height,
            center.im + half_height,
            nu,
            nv,
        )
    }

    pub fn from_bounds(u0: f64, u1: f64, v0: f64, v1: f64, nu: usize, nv: usize) -> Result<Self> {
        if nu < MIN_NODES || nv < MIN_NODES {
            return Err(GeomError::Grid(format!(
                "need at least {MIN_NODES}x{MIN_NODES} nodes, got {nu}x{nv}"
            )));
        }
        if !(u1 > u0) || !(v1 > v0) || !(u0.is_finite() && u1.is_finite() && v0.is_finite() && v1.is_finite()) {
            return Err(GeomError::Grid(format!(
                "degenerate domain [{u0}, {u1}] x [{v0}, {v1}]"
            )));
        }
        Ok(Self {
            u0,
            v0,
            hu: (u1 - u0) / (nu - 1) as f64,
            hv: (v1 - v0) / (nv - 1) as f64,
            nu,
            nv,
        })
    }

    /// Square grid `[-half, half]^2` with `n x n` nodes.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        Self::new(Complex64::new(0.0, 0.0), half, half, n, n)
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.nu, index / self.nu)
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.u0 + i as f64 * self.hu, self.v0 + j as f64 * self.hv)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(move |k| {
            let (i, j) = self.coords(k);
            self.node(i, j)
        })
    }

    pub fn step(&self, axis: Axis) -> f64 {
        match axis {
            Axis::U => self.hu,
            Axis::V => self.hv,
        }
    }

    /// The node at `z`, if `z` coincides with one up to `1e-9` of the spacing.
    pub fn node_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let fi = (z.re - self.u0) / self.hu;
        let fj = (z.im - self.v0) / self.hv;
        let (ri, rj) = (fi.round(), fj.round());
        if (fi - ri).abs() > 1e-9 || (fj - rj).abs() > 1e-9 {
            return None;
        }
        if ri < 0.0 || rj < 0.0 || ri as usize >= self.nu || rj as usize >= self.nv {
            return None;
        }
        Some((ri as usize, rj as usize))
    }

    pub fn is_interior(&self, i: usize, j: usize, margin: usize) -> bool {
        i >= margin && j >= margin && i + margin < self.nu && j + margin < self.nv
    }

    /// Flat indices at distance `>= margin` from the edges.
    pub fn interior(&self, margin: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| {
            let (i, j) = self.coords(k);
            self.is_interior(i, j, margin)
        })
    }

    /// The grid with spacing halved (twice the nodes minus one along each axis).
    pub fn refined(&self) -> Self {
        Self {
            hu: self.hu / 2.0,
            hv: self.hv / 2.0,
            nu: 2 * self.nu - 1,
            nv: 2 * self.nv - 1,
            ..*self
        }
    }

    pub fn sample<T, F: Fn(Complex64) -> T>(&self, f: F) -> Vec<T> {
        self.nodes().map(f).collect()
    }
}

/// Values that stencils can combine.
pub trait Field: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

fn combine<T: Field>(weights: &[f64], values: impl Iterator<Item = T>) -> T {
    weights
        .iter()
        .zip(values)
        .fold(T::zero(), |acc, (w, v)| acc + v * *w)
}

/// Fourth-order first derivative at position `k` of `n` samples fetched by `f`.
pub fn first_derivative<T: Field>(f: impl Fn(usize) -> T, k: usize, n: usize, h: f64) -> T {
    let scale = 1.0 / (12.0 * h);
    let d = if k >= 2 && k + 2 < n {
        combine(&[1.0, -8.0, 0.0, 8.0, -1.0], (k - 2..=k + 2).map(&f))
    } else if k == 0 {
        combine(&[-25.0, 48.0, -36.0, 16.0, -3.0], (0..5).map(&f))
    } else if k == 1 {
        combine(&[-3.0, -10.0, 18.0, -6.0, 1.0], (0..5).map(&f))
    } else if k == n - 1 {
        combine(&[25.0, -48.0, 36.0, -16.0, 3.0], (0..5).map(|s| f(n - 1 - s)))
    } else {
        combine(&[3.0, 10.0, -18.0, 6.0, -1.0], (0..5).map(|s| f(n - 1 - s)))
    };
    d * scale
}

/// Sixth-order first derivative where three neighbours exist on each side, else [`first_derivative`].
pub fn first_derivative_high<T: Field>(f: impl Fn(usize) -> T, k: usize, n: usize, h: f64) -> T {
    if k >= 3 && k + 3 < n {
        combine(&[-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0], (k - 3..=k + 3).map(&f)) * (1.0 / (60.0 * h))
    } else {
        first_derivative(f, k, n, h)
    }
}

/// Second derivative: fourth order in the interior, five-point one-sided near the edges.
pub fn second_derivative<T: Field>(f: impl Fn(usize) -> T, k: usize, n: usize, h: f64) -> T {
    let scale = 1.0 / (12.0 * h * h);
    let d = if k >= 2 && k + 2 < n {
        combine(&[-1.0, 16.0, -30.0, 16.0, -1.0], (k - 2..=k + 2).map(&f))
    } else if k == 0 {
        combine(&[35.0, -104.0, 114.0, -56.0, 11.0], (0..5).map(&f))
    } else if k == 1 {
        combine(&[11.0, -20.0, 6.0, 4.0, -1.0], (0..5).map(&f))
    } else if k == n - 1 {
        combine(&[35.0, -104.0, 114.0, -56.0, 11.0], (0..5).map(|s| f(n - 1 - s)))
    } else {
        combine(&[11.0, -20.0, 6.0, 4.0, -1.0], (0..5).map(|s| f(n - 1 - s)))
    };
    d * scale
}

/// Partial derivative along `axis` at every node.
pub fn partial<T: Field>(spec: &GridSpec, values: &[T], axis: Axis) -> Vec<T> {
    (0..spec.len())
        .map(|k| {
            let (i, j) = spec.coords(k);
            match axis {
                Axis::U => first_derivative(|s| values[spec.index(s, j)], i, spec.nu, spec.hu),
                Axis::V => first_derivative(|s| values[spec.index(i, s)], j, spec.nv, spec.hv),
            }
        })
        .collect()
}

/// [`partial`] with the sixth-order interior stencil.
pub fn partial_high<T: Field>(spec: &GridSpec, values: &[T], axis: Axis) -> Vec<T> {
    (0..spec.len())
        .map(|k| {
            let (i, j) = spec.coords(k);
            match axis {
                Axis::U => first_derivative_high(|s| values[spec.index(s, j)], i, spec.nu, spec.hu),
                Axis::V => first_derivative_high(|s| values[spec.index(i, s)], j, spec.nv, spec.hv),
            }
        })
        .collect()
}

/// `(f_z, f_zbar)` with `f_z = (f_u - i f_v)/2`, `f_zbar = (f_u + i f_v)/2`.
pub fn wirtinger(spec: &GridSpec, values: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let fu = partial(spec, values, Axis::U);
    let fv = partial(spec, values, Axis::V);
    combine_wirtinger(fu, fv)
}

/// [`wirtinger`] with sixth-order stencils at nodes three or more away from the edge.
pub fn wirtinger_high(spec: &GridSpec, values: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let fu = partial_high(spec, values, Axis::U);
    let fv = partial_high(spec, values, Axis::V);
    combine_wirtinger(fu, fv)
}

fn combine_wirtinger(fu: Vec<Complex64>, fv: Vec<Complex64>) -> (Vec<Complex64>, Vec<Complex64>) {
    let i = Complex64::new(0.0, 1.0);
    let dz = fu.iter().zip(&fv).map(|(a, b)| (a - i * b) * 0.5).collect();
    let dzbar = fu.iter().zip(&fv).map(|(a, b)| (a + i * b) * 0.5).collect();
    (dz, dzbar)
}

/// `f_{z zbar} = (f_uu + f_vv) / 4`.
pub fn laplacian_quarter(spec: &GridSpec, values: &[Complex64]) -> Vec<Complex64> {
    (0..spec.len())
        .map(|k| {
            let (i, j) = spec.coords(k);
            let fuu = second_derivative(|s| values[spec.index(s, j)], i, spec.nu, spec.hu);
            let fvv = second_derivative(|s| values[spec.index(i, s)], j, spec.nv, spec.hv);
            (fuu + fvv) * 0.25
        })
        .collect()
}

/// Lagrange interpolation weights for nodes `0..weights.len()` evaluated at `x`.
pub(crate) fn lagrange_weights<const N: usize>(x: f64) -> [f64; N] {
    let mut w = [1.0; N];
    for (a, wa) in w.iter_mut().enumerate() {
        for b in 0..N {
            if a != b {
                *wa *= (x - b as f64) / (a as f64 - b as f64);
            }
        }
    }
    w
}

/// Cubic interpolation along a line of `n` samples at fractional position `k + t`, `0 <= t <= 1`.
pub fn interpolate_line<T: Field>(f: impl Fn(usize) -> T, k: usize, t: f64, n: usize) -> T {
    if t == 0.0 {
        return f(k);
    }
    if t == 1.0 {
        return f(k + 1);
    }
    let start = if k == 0 {
        0
    } else if k + 2 >= n {
        n - 4
    } else {
        k - 1
    };
    let x = (k - start) as f64 + t;
    let w = lagrange_weights::<4>(x);
    combine(&w, (start..start + 4).map(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_geometry() {
        let g = GridSpec::new(c(0.1, -0.2), 0.5, 0.25, 11, 6).unwrap();
        assert!((g.node(0, 0) - c(-0.4, -0.45)).norm() < 1e-15);
        assert!((g.node(10, 5) - c(0.6, 0.05)).norm() < 1e-15);
        assert_eq!(g.index(3, 2), 25);
        assert_eq!(g.coords(25), (3, 2));
        assert_eq!(g.node_of(g.node(4, 3)), Some((4, 3)));
        assert_eq!(g.node_of(c(0.0, 0.0) + g.node(4, 3) + c(1e-3, 0.0)), None);
        assert!(GridSpec::square(1.0, 4).is_err());
        assert_eq!(g.interior(2).count(), 7 * 2);
        let r = g.refined();
        assert_eq!((r.nu, r.nv), (21, 11));
        assert!((r.node(20, 10) - g.node(10, 5)).norm() < 1e-15);
    }

    #[test]
    fn wirtinger_examples() {
        let g = GridSpec::square(1.0, 9).unwrap();
        let z = g.sample(|z| z);
        let (dz, dzbar) = wirtinger(&g, &z);
        assert!(dz.iter().all(|d| (d - c(1.0, 0.0)).norm() < 1e-13));
        assert!(dzbar.iter().all(|d| d.norm() < 1e-13));

        let zbar = g.sample(|z| z.conj());
        let (dz, dzbar) = wirtinger(&g, &zbar);
        assert!(dz.iter().all(|d| d.norm() < 1e-13));
        assert!(dzbar.iter().all(|d| (d - c(1.0, 0.0)).norm() < 1e-13));

        let modsq = g.sample(|z| c(z.norm_sqr(), 0.0));
        let (dz, dzbar) = wirtinger(&g, &modsq);
        for (k, node) in g.nodes().enumerate() {
            assert!((dz[k] - node.conj()).norm() < 1e-13);
            assert!((dzbar[k] - node).norm() < 1e-13);
        }
    }

    #[test]
    fn stencils_exact_on_cubics_everywhere() {
        let g = GridSpec::from_bounds(-0.3, 0.9, 0.2, 1.0, 7, 5).unwrap();
        // f = u^3 - 2 u v^2 + i (v^3 + u^2 v)
        let f = |z: Complex64| c(z.re.powi(3) - 2.0 * z.re * z.im.powi(2), z.im.powi(3) + z.re.powi(2) * z.im);
        let fu = |z: Complex64| c(3.0 * z.re.powi(2) - 2.0 * z.im.powi(2), 2.0 * z.re * z.im);
        let fv = |z: Complex64| c(-4.0 * z.re * z.im, 3.0 * z.im.powi(2) + z.re.powi(2));
        let lap = |z: Complex64| c(6.0 * z.re - 4.0 * z.re, 6.0 * z.im + 2.0 * z.im) * 0.25;
        let vals = g.sample(f);
        let (dz, dzbar) = wirtinger(&g, &vals);
        let l = laplacian_quarter(&g, &vals);
        let i = c(0.0, 1.0);
        for (k, z) in g.nodes().enumerate() {
            assert!((dz[k] - (fu(z) - i * fv(z)) * 0.5).norm() < 1e-12);
            assert!((dzbar[k] - (fu(z) + i * fv(z)) * 0.5).norm() < 1e-12);
            assert!((l[k] - lap(z)).norm() < 1e-10);
        }
    }

    #[test]
    fn high_order_stencil_is_exact_on_quintics() {
        let g = GridSpec::from_bounds(-0.5, 0.7, -0.4, 0.4, 11, 9).unwrap();
        let f = |z: Complex64| z.powu(5) + z.conj().powu(4) * 0.5;
        let vals = g.sample(f);
        let (dz, dzbar) = wirtinger_high(&g, &vals);
        for k in g.interior(3) {
            let z = g.nodes().nth(k).unwrap();
            assert!((dz[k] - 5.0 * z.powu(4)).norm() < 1e-12);
            assert!((dzbar[k] - 2.0 * z.conj().powu(3)).norm() < 1e-12);
        }
    }

    #[test]
    fn interpolation_is_exact_on_cubics() {
        let n = 6;
        let f = |s: usize| {
            let x = s as f64 * 0.1;
            x * x * x - x + 2.0
        };
        for k in 0..n - 1 {
            for t in [0.0, 0.25, 0.5, 1.0] {
                let x = (k as f64 + t) * 0.1;
                let v = interpolate_line(f, k, t, n);
                assert!((v - (x * x * x - x + 2.0)).abs() < 1e-14);
            }
        }
    }
}
