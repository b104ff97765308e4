//! Exact computations for principal series induced from a Heisenberg
//! parabolic of a real simple Lie group: admissible K-types, transition
//! coefficients of the generating operator, the complementary-series bound,
//! reducibility points and the K-types of the minimal representation.
//!
//! Everything that depends on `ν` is computed in exact rational arithmetic.

pub mod algebra;
pub mod casimir;
pub mod cli;
pub mod error;
pub mod exact;
pub mod exec;
pub mod ktype;
pub mod minrep;
pub mod submodule;
pub mod transition;
pub mod unitarity;

pub use algebra::{lookup, lookup_name, AlgebraData, AlgebraId};
pub use error::{Error, Result};
pub use exact::Rational;
pub use exec::Execution;
pub use ktype::{Family, KType, Weight};
