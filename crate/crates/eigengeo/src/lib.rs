//! # eigengeo
//!
//! Numerical spectral geometry for immersed submanifolds.
//!
//! The library discretizes curves and surfaces immersed in Euclidean
//! space, computes Laplace–Beltrami spectra by piecewise-linear finite
//! elements, estimates extrinsic intersection indices by Monte Carlo
//! integral geometry, builds the capacitor families that certify
//! eigenvalue upper bounds on metric-measure spaces, and evaluates the
//! resulting inequalities end to end, including the sharp bounds for
//! complex curves in projective space.
//!
//! ## Layout
//!
//! - [`geom`] — meshes, generators, file I/O, metric-measure spaces;
//! - [`spectrum`] — operator assembly, eigensolver, closed-form spectra,
//!   mean curvature;
//! - [`grassmann`] — Haar sampling, intersection indices, Crofton
//!   constants, projected volumes, ball growth;
//! - [`capacitor`] — covering numbers, capacitor packings, test
//!   functions, explicit eigenvalue bounds;
//! - [`cpn`] — holomorphic curves in `CP^N` and their pullback spectra;
//! - [`harness`] — inequality reports, experiment configs, and the
//!   machinery behind the CLI.
//!
//! ## Example
//!
//! ```
//! use eigengeo::geom::generators;
//! use eigengeo::spectrum;
//!
//! let circle = generators::circle(256).unwrap();
//! let ops = spectrum::assemble(&circle, None).unwrap();
//! let spec = spectrum::solve_spectrum(&ops, 3, 1e-8, 7).unwrap();
//! // Unit circle: 0, then 1 with multiplicity two.
//! assert!(spec.eigenvalues[0].abs() < 1e-9);
//! assert!((spec.eigenvalues[1] - 1.0).abs() < 0.01);
//! assert!((spec.eigenvalues[2] - 1.0).abs() < 0.01);
//! ```

pub mod capacitor;
pub mod cpn;
pub mod error;
pub mod geom;
pub mod grassmann;
pub mod harness;
pub mod linalg;
pub mod spectrum;

pub use error::{Error, Result};

// Every fenced Rust block in the guide doubles as a doc-test, so the
// book cannot drift from the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }
    chapter!(Ch01Meshes, "../../../book/src/ch01-meshes.md");
    chapter!(Ch02Spectra, "../../../book/src/ch02-spectra.md");
    chapter!(Ch03Indices, "../../../book/src/ch03-indices.md");
    chapter!(Ch04Capacitors, "../../../book/src/ch04-capacitors.md");
    chapter!(Ch05Curves, "../../../book/src/ch05-curves.md");
    chapter!(Ch06Harness, "../../../book/src/ch06-harness.md");
}
