//! Gauss map and Weierstrass-type representation for surfaces of critical constant
//! mean curvature in the homogeneous spaces E(kappa, tau), kappa <= 0.

pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod gauss;
pub mod grid;
pub mod harmonic;
pub mod mesh;
pub mod model;
pub mod moebius;
pub mod quadrature;
pub mod sister;
pub mod weierstrass;

pub use error::{GeomError, Result};
pub use num_complex::Complex64;
