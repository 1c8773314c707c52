//! Runs the Rust snippets of the guide in `book/` as doc-tests.
//!
//! mdbook cannot test snippets that depend on a workspace crate, so each
//! chapter is included as the documentation of an empty module and
//! `cargo test --doc` does the rest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/apolarity.md")]
pub mod apolarity {}
#[doc = include_str!("../../../book/src/harmonic.md")]
pub mod harmonic {}
#[doc = include_str!("../../../book/src/groebner.md")]
pub mod groebner {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
