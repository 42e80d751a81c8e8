//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

use crate::C64;

/// Result alias for fallible core operations.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or frame dimensions do not match.
    DimensionMismatch { expected: usize, found: usize },
    /// A matrix that must be invertible is singular to working precision.
    SingularMatrix,
    /// Determinant differs from 1 beyond tolerance.
    NotUnimodular { det: C64 },
    /// A frame member fails the Hermitian check.
    NotHermitian { index: usize, deviation: f64 },
    /// Vector lies outside the complex span of the frame.
    SpanViolation { residual: f64 },
    /// Denominator of a rational function is identically zero.
    ZeroDenominator,
    /// Polynomial degree exceeded the hard cap.
    DegreeOverflow { degree: usize, cap: usize },
    /// Evaluation requested at a declared pole.
    EvaluationAtPole { point: C64 },
    /// The requested pole is not among the declared punctures.
    UndeclaredPole,
    /// An entry has a pole outside the declared puncture set.
    UndeclaredPoleInEntry { row: usize, col: usize },
    /// Matrix form is not trace-free.
    TraceNotZero { residual_norm: f64 },
    /// Weierstrass data induced a non-null form.
    NullityViolated { residual_norm: f64 },
    /// Frame size does not match the component count of the data.
    FrameSizeMismatch { expected: usize, found: usize },
    /// Path segments do not share endpoints.
    DisconnectedPath,
    /// Path comes closer to a puncture than the declared clearance.
    ClearanceViolation { distance: f64, clearance: f64 },
    /// Step budget exhausted before reaching the end of the path.
    StepBudgetExhausted { steps: usize },
    /// Non-finite values appeared during integration.
    NonFiniteState,
    /// A loop passed to monodromy is not closed.
    LoopNotClosed { gap: f64 },
    /// Eigenvalue gap hit in the series recursion at the named order.
    Resonance { order: usize },
    /// Supplied vector is not an eigenvector to tolerance.
    NotAnEigenvector { residual: f64 },
    /// Supplied pair is not a Jordan chain to tolerance.
    BrokenJordanChain { residual: f64 },
    /// Form does not have pole order exactly 1 at the expansion point.
    NotASimplePole { order: usize },
    /// Evaluation point lies outside the estimated convergence radius.
    RadiusExceeded { radius: f64, requested: f64 },
    /// Conformal factor vanishes (branch point) at the sampled point.
    BranchPoint { point: C64 },
    /// Metric degenerate or incomplete at an end where completeness is required.
    IncompleteEnd { end: usize, order: f64 },
    /// Quadrature failed to converge to the requested tolerance.
    QuadratureNotConverged { estimate: f64, error: f64 },
    /// Exact degree and quadrature disagree beyond combined tolerance.
    InconsistentDegree { exact: f64, quadrature: f64 },
    /// Laurent fit is unreliable (conditioning or multivaluedness).
    IllConditionedFit { detail: String },
    /// Deformation parameters are degenerate (pole collision etc.).
    DegenerateParameters { detail: String },
    /// A structurally-zero monodromy entry exceeded tolerance.
    StructuralZeroViolation { value: f64 },
    /// Newton continuation failed to converge.
    ContinuationDiverged { c: f64, residual: f64 },
    /// Finn ratio sequence did not settle over the radius schedule.
    FinnNotConverged { last_delta: f64 },
    /// Anything else worth an explicit message.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular to working precision"),
            Error::NotUnimodular { det } => write!(f, "determinant {det} is not 1"),
            Error::NotHermitian { index, deviation } => {
                write!(f, "frame member {index} is not Hermitian (deviation {deviation:e})")
            }
            Error::SpanViolation { residual } => {
                write!(f, "matrix lies outside the frame span (residual {residual:e})")
            }
            Error::ZeroDenominator => write!(f, "denominator is identically zero"),
            Error::DegreeOverflow { degree, cap } => {
                write!(f, "polynomial degree {degree} exceeds cap {cap}")
            }
            Error::EvaluationAtPole { point } => write!(f, "evaluation at declared pole {point}"),
            Error::UndeclaredPole => write!(f, "pole is not among the declared punctures"),
            Error::UndeclaredPoleInEntry { row, col } => {
                write!(f, "entry ({row},{col}) has a pole outside the declared punctures")
            }
            Error::TraceNotZero { residual_norm } => {
                write!(f, "form trace is not zero (residual {residual_norm:e})")
            }
            Error::NullityViolated { residual_norm } => {
                write!(f, "induced form is not null (residual {residual_norm:e})")
            }
            Error::FrameSizeMismatch { expected, found } => {
                write!(f, "frame size mismatch: expected {expected}, found {found}")
            }
            Error::DisconnectedPath => write!(f, "path segments do not share endpoints"),
            Error::ClearanceViolation { distance, clearance } => {
                write!(f, "path comes within {distance:e} of a puncture (clearance {clearance:e})")
            }
            Error::StepBudgetExhausted { steps } => {
                write!(f, "integration step budget exhausted after {steps} steps")
            }
            Error::NonFiniteState => write!(f, "non-finite values during integration"),
            Error::LoopNotClosed { gap } => write!(f, "loop is not closed (gap {gap:e})"),
            Error::Resonance { order } => {
                write!(f, "resonance: (lambda + {order})I - R is singular")
            }
            Error::NotAnEigenvector { residual } => {
                write!(f, "v0 is not an eigenvector (residual {residual:e})")
            }
            Error::BrokenJordanChain { residual } => {
                write!(f, "(p0, q0) is not a Jordan chain (residual {residual:e})")
            }
            Error::NotASimplePole { order } => {
                write!(f, "pole order is {order}, expected exactly 1")
            }
            Error::RadiusExceeded { radius, requested } => {
                write!(f, "|z| = {requested:e} exceeds convergence radius {radius:e}")
            }
            Error::BranchPoint { point } => {
                write!(f, "conformal factor vanishes at {point} (branch point)")
            }
            Error::IncompleteEnd { end, order } => {
                write!(f, "end {end} is not complete (metric order {order})")
            }
            Error::QuadratureNotConverged { estimate, error } => {
                write!(f, "quadrature stalled at {estimate} with error {error:e}")
            }
            Error::InconsistentDegree { exact, quadrature } => {
                write!(f, "total curvature mismatch: exact {exact}, quadrature {quadrature}")
            }
            Error::IllConditionedFit { detail } => write!(f, "laurent fit unreliable: {detail}"),
            Error::DegenerateParameters { detail } => {
                write!(f, "degenerate parameters: {detail}")
            }
            Error::StructuralZeroViolation { value } => {
                write!(f, "structurally-zero monodromy entry reached {value:e}")
            }
            Error::ContinuationDiverged { c, residual } => {
                write!(f, "continuation diverged at c = {c} (residual {residual:e})")
            }
            Error::FinnNotConverged { last_delta } => {
                write!(f, "finn ratio did not settle (last delta {last_delta:e})")
            }
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
