use thiserror::Error;

use crate::ir::catalog::FormulaError;
use crate::ir::text::SyntaxError;
use crate::ir::TypeError;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("missing table entry {0}")]
    MissingEntry(String),
    #[error("residual {residual:e} exceeds tolerance in {check} at {at}")]
    ResidualExceeded {
        check: String,
        at: String,
        residual: f64,
    },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("binding for `{name}` does not match its declaration: {detail}")]
    BindingMismatch { name: String, detail: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism is not of pure even parity")]
    MixedParityInput,
    #[error("rank decision is ambiguous (singular value {0:e}); use exact mode")]
    RankAmbiguous(f64),
    #[error("no solution (residual {0:e})")]
    NoSolution(f64),
    #[error("not a bicharacter: {0}")]
    NotBicharacter(String),
    #[error("parity assignment is not a homomorphism: {0}")]
    ParityNotHomomorphism(String),
    #[error("algebra is not haploid: even hom(1, V) has dimension {0}")]
    NotHaploid(usize),
    #[error("no counit: the averaged projector does not factor through the unit")]
    NoCounit,
    #[error("pairing is degenerate: no solution of the snake equations")]
    PairingDegenerate,
    #[error("mu after coev is {found} times the unit, expected {expected}")]
    DimensionMismatch { expected: String, found: String },
    #[error("group does not close within {0} elements")]
    NotClosed(usize),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("projector defect in {check}: residual {residual:e}")]
    ProjectorDefect { check: String, residual: f64 },
    #[error("phi is not a representation: {0}")]
    PhiNotRepresentation(String),
    #[error("phi(P_V) differs from the parity operator of the module")]
    PhiParityMismatch,
    #[error("equivalence defect in {check}: residual {residual:e}")]
    EquivalenceDefect { check: String, residual: f64 },
    #[error("instance file: {0}")]
    Format(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
