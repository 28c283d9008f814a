pub mod clifford;
pub mod error;
pub mod inflation;
pub mod linalg;
pub mod quadrature;
pub mod rep_theory;
pub mod spectral_action;
pub mod spectrum;
pub mod sum;
pub mod test_function;

pub use error::{Error, Result};
