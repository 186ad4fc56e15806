//! Newton-polygon invariants, normal-form classification and sharp
//! `L^p → L^{p'}` exponents for convolution operators whose phase surface is
//! the graph of a bivariate polynomial with a rank-zero critical point.
//!
//! The symbolic side ([`polyring`], [`newton`], [`classify`], [`exponent`])
//! is exact rational arithmetic throughout. [`oscint`] numerically checks the
//! oscillatory-integral decay rates that sit underneath the upper bounds.

pub mod classify;
pub mod cli;
pub mod error;
pub mod exponent;
pub mod newton;
pub mod oscint;
pub mod polyring;

pub use error::Error;
