//! Overlap coincidence and multiple strong coincidence for the suspension
//! tilings of Pisot substitutions, computed in exact arithmetic.

pub mod analysis;
pub mod error;
pub mod graphkit;
pub mod io;
pub mod numberfield;
pub mod overlap;
pub mod poly;
pub mod strongcoin;
pub mod substitution;
pub mod tiling;

pub use error::{Error, Result};
pub use numberfield::{AlgebraicReal, NumberField, Signum};
pub use substitution::{PerronData, Seed, Substitution, SubstitutionMatrix};
