//! Exact operator calculus for the Heisenberg group vector fields `L_j`, `L̄_j`, `T`.
//!
//! The crate is organised in four layers:
//!
//! * [`algebra`]: the normal-ordered algebra generated by `L_j`, `L̄_j` and the
//!   central field `T`, with coefficients that are polynomials in derivative
//!   jets of cutoff functions.
//! * [`rewrite`]: a slow free-word rewriter used as an independent oracle for
//!   the closed-form normal ordering.
//! * [`localization`]: the localized powers `(T^p)_Ψ`, their brackets with
//!   `L_k` / `L̄_k`, and structural checks on the residual terms.
//! * [`estimate`]: the scalar coercivity constant, exact spline cutoffs with
//!   certified derivative bounds, and the nested-domain schedule.
//!
//! [`suite`] strings the checks together and produces [`report::VerificationReport`]s.

pub mod algebra;
pub mod error;
pub mod estimate;
pub mod localization;
pub mod props;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod suite;

pub use algebra::{
    Base, GenKind, Generator, JetIndex, JetMonomial, LocSign, MultiIndex, NormalWord,
    OperatorExpr, Sigma, SignConvention, Term,
};
pub use error::{Error, Result};
pub use report::{Status, VerificationReport};
pub use scalar::Scalar;
