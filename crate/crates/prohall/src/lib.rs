//! Exact computational algebra for free nilpotent Hall R-groups over
//! binomial exponent rings.
//!
//! The crate provides, bottom up:
//!
//! * [`ring`] -- exact integers, truncated p-adic integers, integer-valued
//!   polynomials in the binomial basis, the recursive closure tower, ring
//!   homomorphisms and ring-level discrimination;
//! * [`lie`] -- Hall bases of basic commutators, the free nilpotent Lie
//!   algebra with integer structure constants, truncated
//!   Baker-Campbell-Hausdorff multiplication and coordinate conversion,
//!   plus an independent free-associative-algebra oracle;
//! * [`group`] -- normal forms of the free Hall R-group: multiplication,
//!   R-exponentiation, Petresco words, class projections, the axiom test
//!   suite and a naive collection oracle;
//! * [`term`] -- finite terms denoting elements of the free pro-Hall
//!   R-group, truncation towers, coherence checks and substitution maps;
//! * [`disc`] -- the constructive discrimination pipeline producing
//!   machine-checkable separation certificates.
//!
//! Data-parallel inner loops (axiom trials, certificate searches, batch
//! discrimination) run on rayon when the default `parallel` feature is on
//! and fall back to sequential iterators otherwise; results are identical
//! either way.

pub mod error;
pub(crate) mod par;
pub mod ring;

pub use error::{Error, Result};
