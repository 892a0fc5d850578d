//! Ordinal arithmetic in Cantor normal form, monoids of ordinals under
//! natural operations, and exact Chomp on finite posets drawn from them.

pub mod chomp;
pub mod cli;
pub mod error;
pub mod monoid;
pub mod ordinal;
pub mod selftest;
pub mod wpog;

pub use error::{Error, Result};
pub use ordinal::{Ordinal, Term};
