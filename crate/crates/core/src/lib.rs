#![no_std]
#![forbid(unsafe_code)]

//! Noncommutative Fourier analysis on compact Lie groups.
//!
//! The crate works in principal-branch coordinates on the Lie algebra and
//! covers U(1), SU(2) and the r-torus:
//!
//! * [`lie`]: brackets, BCH composition, the Haar Jacobian and branch lattices
//!   for any algebra described by structure constants;
//! * [`groups`]: the concrete catalog with exact exponential/logarithm maps,
//!   characters and spin representations;
//! * [`starprod`]: plane-wave sums and their star products in the symmetric
//!   and Duflo orderings;
//! * [`waves`]: I-invariant plane waves and their localization supports;
//! * [`fourier`]: transforms, coefficients, series, pairings and convolutions;
//! * [`poisson`]: both sides of the commutative and SU(2) Poisson summation
//!   formulas;
//! * [`quadrature`]: the deterministic Gaussian rules everything integrates with.
//!
//! All numbers are reported in the *reduced* convention: the formal infinite
//! factors `sqrt|Z|^r` are stripped and tracked by [`waves::Normalization`].

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod fourier;
pub mod groups;
pub mod lie;
pub mod linalg;
pub mod poisson;
pub mod quadrature;
mod special;
pub mod starprod;
pub mod vector;
pub mod waves;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use vector::{AlgebraVector, MomentumVector};
