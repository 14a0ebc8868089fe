//! Infinitesimal generators of semigroups of holomorphic self-maps of the unit disk
//! with a prescribed Denjoy–Wolff point and prescribed boundary regular fixed points.

pub mod error;
pub mod extremals;
pub mod generator;
pub mod herglotz;
mod json;
pub mod loewner;
pub mod ode;
pub mod quadrature;
pub mod sampling;
pub mod semiflow;
pub mod value_regions;

pub use error::{Error, Result};
pub use num_complex::Complex64;
