//! Exact rational computations for matched pairs of Lie algebras.

pub mod combinat;
pub mod error;
pub mod exact_linalg;
pub mod io;
pub mod lie_core;
pub mod bigraded;
pub mod matched_pair;
pub mod mp_rep;
pub mod mp_cohomology;
pub mod deform_ext;
pub mod skeletal;

pub use error::{Error, Result};
pub use exact_linalg::{Matrix, Rational, Scalar};
