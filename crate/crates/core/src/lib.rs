//! Exact polynomial arithmetic for Higman-type root-product invariants, with
//! finite group checks of the resulting nilpotency bounds.

pub mod density;
pub mod error;
pub mod experiments;
pub mod expr;
pub mod factorz;
pub mod groupkit;
pub mod higman;
pub mod polycore;
pub mod report;
pub mod rootset;

pub use error::{Error, Result};
pub use polycore::Poly;
