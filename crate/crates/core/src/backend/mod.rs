//! Skeletal braided supercategories given by fusion data.

pub mod category;
pub mod eval;
pub mod factor;
pub mod instances;
pub mod spec;
pub mod validate;
pub mod word;

pub use category::{Category, Morph};
pub use eval::Environment;
pub use factor::{factor, solve, FactorMode, Side, Solved};
pub use spec::{CategorySpec, ScalarMode};
pub use validate::validate_spec;
pub use word::{Basis, ConcreteObject, Word};
