//! Finite Weyl-Heisenberg (Gabor) frames on the cyclic group `Z_L`.
//!
//! The crate decides whether a window generates a normalized tight Gabor
//! frame through several independent characterizations, constructs every
//! normalized tight window at critical density from a phase array, and
//! describes all Gabor dual windows of a frame as an affine space around the
//! canonical dual. A brute-force [`oracle`] module cross-checks the fast paths.
//!
//! ```
//! use whframe::{fixtures, tightness::classify};
//!
//! let (lat, g) = fixtures::box_window();
//! let report = classify(&lat, &g, 1e-9).unwrap();
//! assert!(report.normalized_tight && report.onb);
//! ```

pub mod cli;
pub mod correlation;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod io;
pub mod lattice;
mod linalg;
pub mod oracle;
pub mod synth;
pub mod tightness;

pub use error::{Error, Result};
pub use lattice::{GaborLattice, Signal};
pub use num_complex::Complex64;
