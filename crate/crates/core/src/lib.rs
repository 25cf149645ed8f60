//! Index coding with side information over finite fields.
//!
//! The crate covers finite-field minrank (exact search, bounds and field
//! reductions), the set-system graphs whose minrank differs sharply between
//! fields of different characteristic, linear and non-linear index codes with
//! a brute-force optimality oracle, and the multi-round / shared-request
//! problem variants.

pub mod error;
pub mod extensions;
pub mod gf;
pub mod graph;
pub mod indexcode;
pub mod matrix;
pub mod minrank;
pub mod ramsey;
pub mod search;

pub use error::{Error, Result};
pub use extensions::{P4Instance, Reduction};
pub use gf::{binomial_mod_p, field_ops, parse_field_spec, FieldElement, FieldOp, FieldSpec};
pub use graph::Graph;
pub use indexcode::{
    BitString, ConcatCode, ConfusionGraph, IndexCode, LinearIndexCode, TournamentComposeCode,
};
pub use matrix::{EchelonAccumulator, FFMatrix};
pub use minrank::{MinrankBounds, MinrankOutcome, Representation};
pub use ramsey::{RamseyInstance, RamseyParams};
