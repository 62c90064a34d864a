//! Exact computations of characteristic-class, surgery and bordism invariants
//! (L-genus and the signature theorem, intersection forms and the Arf
//! invariant, Euler characteristic calculus, exotic-sphere group tables,
//! jet-space dimension counts) together with a desk-scale Ricci flow stepper
//! on periodic grids.
//!
//! All symbolic work is done over [`Rational`](exactnum::Rational); only the
//! [`ricci`] module uses floating point.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod bordism;
pub mod cli;
pub mod eulercalc;
pub mod exactnum;
pub mod forms;
pub mod genus;
pub mod jets;
pub mod milnor;
pub mod ricci;
pub mod symmpoly;
pub mod verify;

pub use exactnum::Rational;

/// Errors raised across the crate. Each variant corresponds to one failure
/// class named in the public contracts.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient variables: need at least {needed}, got {got}")]
    InsufficientVariables { needed: usize, got: usize },
    #[error("missing components: weight {weight} requested but only {available} supplied")]
    MissingComponents { weight: usize, available: usize },
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("not tabulated: {0}")]
    NotTabulated(String),
    #[error("near-degenerate metric: det(g) = {det:e} at node {node}")]
    NearDegenerateMetric { det: f64, node: usize },
    #[error("flow degeneration: det(g) = {det:e} at node {node} after step")]
    FlowDegeneration { det: f64, node: usize },
    #[error("time step {dt:e} exceeds stability bound {bound:e}")]
    StepTooLarge { dt: f64, bound: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
