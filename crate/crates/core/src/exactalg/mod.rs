//! Exact number types: rationals, Gaussian rationals, truncated Laurent
//! series in `u`, rational functions in `q = Q^{1/2}`, and bivariate
//! rational functions in the torus weights `s1`, `s2`.
//!
//! Everything here is immutable once built and free of floating point.

mod bivariate;
mod gaussian;
mod poly;
mod qratfunc;
mod rational;
mod scalar;
mod series;
mod sfactor;
mod text;

pub use bivariate::{BivariatePoly, BivariateRatFunc};
pub use gaussian::GaussianRational;
pub use poly::QPoly;
pub use qratfunc::{q_to_u, QRatFunc};
pub use rational::{factorial, fmt_rational, parse_rational, rat, BigRational};
pub use scalar::{SLaurent, Scalar};
pub use series::{cot_half, sin_half, USeries, DEFAULT_ORDER};
pub use sfactor::SFactor;
