//! Exact apolarity and harmonic-polynomial toolkit for powers of quadratic forms.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: Gaussian-rational scalars, multi-indices, variable frames,
//!   sparse polynomials, the text grammar and exact dense/sparse linear algebra.
//! - [`apolarity`]: the contraction action, catalecticant matrices, graded
//!   components of apolar ideals and the catalecticant lower bound.
//! - [`harmonic`]: Laplace operators, harmonic decomposition, the canonical
//!   basis `p_{d,k}` of ternary harmonic forms and the `so(3)` action.
//! - [`groebner`]: lex division, the colon-ideal form of Buchberger's
//!   criterion, monomial ideals, saturation and Hilbert functions.
//! - [`certify`]: the end-to-end border-rank certificate for `q_3^s`, the
//!   classification of ternary quadratics and the binary decompositions of
//!   `q_2^s`.
//!
//! ```
//! use apolarity_lab::certify::certify_border_rank_q3;
//!
//! let cert = certify_border_rank_q3(2).unwrap();
//! assert_eq!(cert.conclusion, 6);
//! ```

pub mod algebra;
pub mod apolarity;
pub mod certify;
mod error;
pub mod groebner;
pub mod harmonic;

pub use algebra::{
    change_frame, parse_poly, ExactMatrix, FrameKind, GaussianRational, LinearSubstitution,
    MonomialBasis, MultiIndex, Poly, Rational, SparseEchelon, VariableFrame,
};
pub use error::{AlgebraError, CertifyError, ParseError};

/// `C(n, k)` as a machine integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(d + n - 1, n - 1)
}
