//! Exact computations on regular polygon translation surfaces and their coverings.
//!
//! The library builds the regular double `n`-gon (odd `n`) and the regular `n`-gon with
//! opposite sides glued (even `n`), finite and `Z`-indexed coverings defined by monodromy,
//! cylinder decompositions in periodic directions, and certificates identifying the Veech
//! group of the coverings with an explicit finite-index subgroup of the Hecke group.
//!
//! All geometry is exact: coordinates live in the cyclotomic field of conductor `4n`.

pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod flat_surface;
pub mod word;
pub mod cylinders;
pub mod covering;
pub mod infinite_cover;
pub mod veech_group;
pub mod quotient;
pub mod certificates;
pub mod cli;
