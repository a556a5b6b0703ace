pub mod characters;
pub mod error;
pub mod jet;
pub mod local_terms;
pub mod positivity;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod spectral;
pub mod test_functions;
pub mod zeros;

pub use error::{Error, Result};
