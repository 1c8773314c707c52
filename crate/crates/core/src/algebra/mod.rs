//! Exact scalars, polynomials and linear algebra shared by every other module.

mod basis;
mod frame;
mod linalg;
mod multiindex;
mod parse;
mod poly;
mod scalar;
mod subst;

pub use basis::MonomialBasis;
pub use frame::{FrameKind, VariableFrame};
pub use linalg::{ExactMatrix, SparseEchelon, SparseVec};
pub use multiindex::MultiIndex;
pub(crate) use multiindex::factorial as factorial_of;
pub use parse::parse_poly;
pub use poly::Poly;
pub use scalar::{GaussianRational, Rational};
pub use subst::{change_frame, LinearSubstitution};
