//! Computations in braided monoidal supercategories on a fusion-tree basis.

pub mod algebra;
pub mod backend;
pub mod error;
pub mod instance;
pub mod ir;
pub mod linalg;
pub mod orbifold;
pub mod report;
pub mod repv;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
