//! Skew convolutional codes and skew trellis codes over finite fields.
//!
//! Codes are generated by polynomial matrices over the skew polynomial ring
//! `F[D; theta]`, where `D a = theta(a) D` and `theta` is a power of the
//! Frobenius automorphism. A left-module code ([`SkewConvCode`]) is a
//! periodic time-varying convolutional code; a right-module code
//! ([`SkewTrellisCode`]) twists the stored inputs instead, giving a code that
//! is linear only over the fixed field of `theta`.
//!
//! The crate covers field and ring arithmetic, encoding, trellis
//! construction, distance analysis, syndrome formers, Viterbi and BCJR
//! decoding, and Monte-Carlo simulation over a q-ary symmetric channel.

#![allow(clippy::needless_range_loop)]

pub mod code;
pub mod codespec;
pub mod decoder;
pub mod distance;
pub mod dual;
pub mod exec;
pub mod field;
pub mod linalg;
pub mod presets;
pub mod report;
pub mod sequence;
pub mod sim;
pub mod skewpoly;
pub mod skewtrellis;
pub mod trellis;

#[cfg(test)]
mod testutil;

pub use code::SkewConvCode;
pub use codespec::{AnyCode, CodeSpec, ModuleSide};
pub use decoder::{bcjr, viterbi, BcjrResult, QsChannel, ViterbiResult};
pub use exec::Execution;
pub use field::{Elem, FieldElement, FiniteField};
pub use sequence::Sequence;
pub use skewpoly::{SkewPoly, SkewPolyMatrix};
pub use skewtrellis::SkewTrellisCode;
pub use trellis::Trellis;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error(transparent)]
    SkewPoly(#[from] skewpoly::SkewPolyError),
    #[error(transparent)]
    Code(#[from] code::CodeError),
    #[error(transparent)]
    Sequence(#[from] sequence::SequenceError),
    #[error(transparent)]
    Trellis(#[from] trellis::TrellisError),
    #[error(transparent)]
    Distance(#[from] distance::DistanceError),
    #[error(transparent)]
    Decode(#[from] decoder::DecodeError),
    #[error(transparent)]
    Dual(#[from] dual::DualError),
    #[error(transparent)]
    Spec(#[from] codespec::SpecError),
}
