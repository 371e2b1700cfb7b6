//! Exact harmonic analysis on the compact quantum group `SU_q(2)`.
//!
//! The crate is layered bottom up:
//!
//! * [`qarith`] exact scalars in `q^{1/2}` with formal square roots,
//! * [`cqalg`] the coordinate Hopf *-algebra, Haar state and matrix coefficients,
//! * [`fourier`] the Fourier transform on the dual and `ℓ^p` norms,
//! * [`multiplier`] coinvariant operators and their matrix symbols,
//! * [`spectral`] Dirac-type operators and their summability,
//! * [`calculus`] first-order differential calculi in symbol form.
//!
//! [`verify`] bundles the exact identity suites and [`sampling`] the seeded
//! random inputs they run on.

pub mod calculus;
pub mod cqalg;
pub mod error;
pub mod fourier;
pub mod matrix;
pub mod multiplier;
pub mod qarith;
pub mod sampling;
pub mod spectral;
pub mod verify;
mod serde_pairs;

pub use error::{Error, Result};
