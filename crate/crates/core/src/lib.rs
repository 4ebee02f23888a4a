//! Local stability of common fixed points in periodic discrete dynamical
//! systems: exact 1-D jets and their stability constants, first Birkhoff
//! constants of planar elliptic maps, composition of periodic sets and
//! detection of stability reversals under composition.

pub mod error;
pub mod gallery;
pub mod jet;
pub mod periodic;
pub mod planar;
pub mod simulate;
pub mod stability1d;

pub use error::{Error, Result};
pub use jet::{Jet1D, Rational};
