use thiserror::Error;

use crate::algebra::VariableFrame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("frame mismatch: {left} vs {right}")]
    FrameMismatch {
        left: VariableFrame,
        right: VariableFrame,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {j} out of range 0..={d}")]
    DegreeOutOfRange { j: usize, d: usize },
    #[error("substitution image for variable {var} has degree other than 1")]
    NonLinearImage { var: String },
    #[error("substitution is not invertible")]
    NonInvertibleSubstitution,
    #[error("substitution has {got} images, source frame {frame} needs {expected}")]
    SubstitutionArity {
        frame: VariableFrame,
        expected: usize,
        got: usize,
    },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("operation not supported in frame {0}")]
    UnsupportedFrame(VariableFrame),
    #[error("matrix does not stabilize the form; equivariance check would be vacuous")]
    NotStabilizer,
    #[error("generators do not form a Gröbner basis")]
    NotGroebner,
    #[error("Hilbert function mismatch in degree {degree}: rank method {by_rank}, standard monomials {by_standard}")]
    HilbertMismatch {
        degree: usize,
        by_rank: usize,
        by_standard: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Failure while reading the polynomial text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` for frame {frame} at position {position}")]
    UnknownVariable {
        name: String,
        frame: VariableFrame,
        position: usize,
    },
}

/// A certification step that did not hold, with the evidence that failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("step {step} failed: {detail}")]
    CheckFailed { step: String, detail: String },
    #[error("residual {residual:e} is not below tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
