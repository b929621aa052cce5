//! Exact computations with differential Gerstenhaber algebras attached to
//! nilpotent complex and symplectic structures on six-dimensional nilpotent
//! Lie algebras.
//!
//! Everything runs over the Gaussian rationals; see [`scalars`]. The crate is
//! `no_std` with `alloc` when the default `std` feature is disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod scalars;
pub mod exterior;
pub mod lie;
pub mod notation;
pub mod cplx;
pub mod dga;
pub mod poly;
pub mod solve;
pub mod mirror;
pub mod tables;

pub use scalars::{GaussianRational, Rational, GR};
pub use exterior::{Matrix, Multivector};
pub use lie::{Fingerprint, LieAlgebra};
